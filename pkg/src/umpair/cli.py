"""Command-line front end.

Subcommands: enumerate, pair, verify-lemma, certify, null-search and
fourdim-demo.  All file I/O is UTF-8 JSON in the schemas of the library
types, outputs are byte-identical across reruns of the same configuration,
and exit codes are scriptable:

    0   success (command ran; positive/pass result where one was expected)
    1   input error (bad flags, malformed files, incompatible boundaries)
    2   mathematical negative (lemma violation, failed certificate,
        or a demonstration hypothesis that does not hold)

A null-search exits 0 whether or not it finds a vector; the finding is in
the report.  Vector files hold a formal sum as a JSON list of
{"basis": <descriptor>, "coeff": {"re": "p/q", "im": "r/s"}} terms.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from . import dim1, dim2, engine, fourdim, monomial
from .algebra import FormalSum, Scalar, UniverseMismatchError

THEORIES = ("dim1", "dim2", "monomial", "fourdim")


@dataclass(frozen=True)
class RunConfig:
    """Everything a command run depends on; echoed into reports for audit."""

    theory: str
    seed: int
    jobs: int
    bounds: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.jobs < 1:
            raise ValueError("--jobs must be at least 1")
        for name, value in self.bounds.items():
            if isinstance(value, int) and value < 0:
                raise ValueError(f"bound {name} must be nonnegative, got {value}")

    def to_json(self) -> dict[str, Any]:
        return {"theory": self.theory, "seed": self.seed, "jobs": self.jobs,
                "bounds": self.bounds}


def _label_from_json(data: Any) -> str:
    if not isinstance(data, str):
        raise ValueError(f"a fourdim basis descriptor is a label string, got {data!r}")
    return data


DECODERS: dict[str, Callable[[Any], Any]] = {
    "dim1": dim1.Bounded1Manifold.from_json,
    "dim2": dim2.Bounded2Manifold.from_json,
    "monomial": monomial.Monomial.from_json,
    "fourdim": _label_from_json,
}


def _read_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def _write_output(payload: Any, out: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=True) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)


def _parse_grid(spec: str) -> tuple[Scalar, ...]:
    if spec == "pm1":
        return engine.PM_ONE_GRID
    if spec.startswith("gauss"):
        try:
            radius = int(spec[len("gauss"):])
        except ValueError:
            raise ValueError(f"bad grid spec {spec!r}, expected gauss<k>") from None
        return engine.gaussian_integer_grid(radius)
    raise ValueError(f"unknown coefficient grid {spec!r} (use pm1 or gauss<k>)")


def _involution_from_args(args: argparse.Namespace) -> monomial.Involution:
    if not args.alphabet:
        raise ValueError("--alphabet is required for the monomial theory")
    alphabet = tuple(p for p in args.alphabet.split(",") if p)
    swaps = []
    if args.swaps:
        for chunk in args.swaps.split(","):
            left, sep, right = chunk.partition(":")
            if not sep:
                raise ValueError(f"bad swap {chunk!r}, expected a:b")
            swaps.append((left, right))
    return monomial.Involution(alphabet, tuple(swaps))


def _table_from_args(args: argparse.Namespace) -> fourdim.GluingTable:
    if args.in_path:
        return fourdim.GluingTable.from_json(_read_json(args.in_path))
    if args.table == "mazur":
        return fourdim.build_mazur_table()
    if args.table == "scob":
        return fourdim.build_scob_table(args.k)
    raise ValueError("the fourdim theory needs --table mazur|scob or --in <table.json>")


def _theory_and_basis(args: argparse.Namespace
                      ) -> tuple[engine.GluingTheory, list, dict[str, Any]]:
    """Theory plus enumerated basis plus the bounds actually used."""
    if args.theory == "dim1":
        bounds = {"j": args.j, "max_closed": args.max_closed}
        RunConfig(args.theory, args.seed, args.jobs, bounds)
        boundary = dim1.standard_boundary(args.j)
        return (dim1.Dim1Theory(boundary),
                dim1.enumerate1(boundary, args.max_closed), bounds)
    if args.theory == "dim2":
        bounds = {"j": args.j, "gmax": args.gmax, "closed_budget": args.closed_budget}
        RunConfig(args.theory, args.seed, args.jobs, bounds)
        return (dim2.Dim2Theory(args.j),
                dim2.enumerate2(args.j, args.gmax, args.closed_budget), bounds)
    if args.theory == "monomial":
        sigma = _involution_from_args(args)
        bounds = {"alphabet": list(sigma.alphabet),
                  "swaps": [list(s) for s in sigma.swaps], "degree": args.degree}
        RunConfig(args.theory, args.seed, args.jobs, bounds)
        return (monomial.MonomialTheory(sigma),
                monomial.enumerate_monomials(sigma.alphabet, args.degree), bounds)
    table = _table_from_args(args)
    bounds = {"labels": list(table.labels)}
    RunConfig(args.theory, args.seed, args.jobs, bounds)
    return (fourdim.FourDimTheory(table), list(table.labels), bounds)


def _theory_for_vectors(args: argparse.Namespace,
                        sums: Sequence[FormalSum]) -> engine.GluingTheory | None:
    """Theory context for pair/certify, derived from flags or the vectors."""
    if args.theory == "monomial":
        return monomial.MonomialTheory(_involution_from_args(args))
    if args.theory == "fourdim":
        return fourdim.FourDimTheory(_table_from_args(args))
    for total in sums:
        for descriptor in total.support():
            if args.theory == "dim1":
                return dim1.Dim1Theory(descriptor.boundary)
            return dim2.Dim2Theory(descriptor.boundary_circles)
    return None  # every vector empty; the pairing is empty regardless


def _load_vector(path: str, theory_name: str) -> FormalSum:
    return FormalSum.from_json(_read_json(path), DECODERS[theory_name])


def _config_block(args: argparse.Namespace, bounds: dict[str, Any]) -> dict[str, Any]:
    return RunConfig(args.theory, args.seed, args.jobs, bounds).to_json()


def cmd_enumerate(args: argparse.Namespace) -> int:
    theory, basis, bounds = _theory_and_basis(args)
    payload = {
        "command": "enumerate",
        "config": _config_block(args, bounds),
        "count": len(basis),
        "basis": [engine.descriptor_to_json(b) for b in basis],
    }
    _write_output(payload, args.out)
    return 0


def cmd_pair(args: argparse.Namespace) -> int:
    x = _load_vector(args.x, args.theory)
    y = _load_vector(args.y, args.theory)
    theory = _theory_for_vectors(args, (x, y))
    result = FormalSum.zero() if theory is None else engine.pair(x, y, theory)
    _write_output(result.to_json(), args.out)
    return 0


def cmd_verify_lemma(args: argparse.Namespace) -> int:
    if args.theory == "dim2":
        bounds = {"j": args.j, "gmax": args.gmax, "closed_budget": args.closed_budget}
        RunConfig(args.theory, args.seed, args.jobs, bounds)
        report = dim2.verify_lemma_grid(args.j, args.gmax, args.closed_budget)
    else:
        theory, basis, bounds = _theory_and_basis(args)
        report = engine.verify_lemma(basis, theory, jobs=args.jobs)
    payload = {
        "command": "verify-lemma",
        "config": _config_block(args, bounds),
        "report": report.to_json(),
    }
    _write_output(payload, args.out)
    return 0 if report.passed else 2


def cmd_certify(args: argparse.Namespace) -> int:
    x = _load_vector(args.x, args.theory)
    if x.is_zero():
        raise ValueError("cannot certify a zero (or empty) vector")
    theory = _theory_for_vectors(args, (x,))
    outcome = engine.certify_positive(x, theory)
    payload = {
        "command": "certify",
        "config": _config_block(args, {}),
        "result": outcome.to_json(),
    }
    _write_output(payload, args.out)
    return 0 if isinstance(outcome, engine.PositivityCertificate) else 2


def cmd_null_search(args: argparse.Namespace) -> int:
    theory, basis, bounds = _theory_and_basis(args)
    grid = _parse_grid(args.coeff_grid)
    result = engine.null_search(basis, grid, theory, jobs=args.jobs)
    payload = {
        "command": "null-search",
        "config": _config_block(args, dict(bounds, coeff_grid=args.coeff_grid)),
        "search": result.to_json(),
    }
    _write_output(payload, args.out)
    return 0


def cmd_fourdim_demo(args: argparse.Namespace) -> int:
    table = _table_from_args(args)
    demo = fourdim.demo_null(table)
    payload = {
        "command": "fourdim-demo",
        "config": _config_block(args, {}),
        "table": table.to_json(),
        "demo": demo.to_json(),
    }
    _write_output(payload, args.out)
    return 0 if demo.found else 2


def _add_common(parser: argparse.ArgumentParser, theory: bool = True) -> None:
    if theory:
        parser.add_argument("--theory", choices=THEORIES, required=True)
    parser.add_argument("--j", type=int, default=0,
                        help="boundary size: point pairs (dim1) or circles (dim2)")
    parser.add_argument("--max-closed", type=int, default=0, dest="max_closed",
                        help="dim1: closed circles allowed per basis element")
    parser.add_argument("--gmax", type=int, default=0,
                        help="dim2: genus bound for boundary-meeting parts")
    parser.add_argument("--closed-budget", type=int, default=0, dest="closed_budget",
                        help="dim2: closed-component count and total-genus bound")
    parser.add_argument("--degree", type=int, default=2,
                        help="monomial: total degree bound for the basis")
    parser.add_argument("--alphabet", default="",
                        help="monomial: comma-separated prime names")
    parser.add_argument("--swaps", default="",
                        help="monomial: involution swaps as a:b[,c:d...]")
    parser.add_argument("--table", choices=("mazur", "scob"), default=None,
                        help="fourdim: builtin gluing table")
    parser.add_argument("--k", type=int, default=0,
                        help="fourdim: parameter of the scob table")
    parser.add_argument("--in", dest="in_path", default=None,
                        help="fourdim: user-supplied gluing table JSON")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed echoed into reports (commands are deterministic)")
    parser.add_argument("--jobs", type=int, default=1,
                        help="worker processes for enumeration grids")
    parser.add_argument("--out", default=None, help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="umpair",
        description="Exact manifold-gluing pairings: enumerate bases, pair vectors, "
                    "verify complexity dominance, certify positivity, search for "
                    "null vectors.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="write the enumerated basis")
    _add_common(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("pair", help="pair two vectors from files")
    _add_common(p)
    p.add_argument("--x", required=True, help="left vector JSON file")
    p.add_argument("--y", required=True, help="right vector JSON file")
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("verify-lemma",
                       help="check diagonal dominance on the whole enumerated basis")
    _add_common(p)
    p.set_defaults(func=cmd_verify_lemma)

    p = sub.add_parser("certify", help="positivity certificate for one vector")
    _add_common(p)
    p.add_argument("--x", required=True, help="vector JSON file")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("null-search",
                       help="exhaustive coefficient-grid search for a null vector")
    _add_common(p)
    p.add_argument("--coeff-grid", dest="coeff_grid", default="pm1",
                   help="pm1, or gauss<k> for Gaussian integers of modulus <= k")
    p.set_defaults(func=cmd_null_search)

    p = sub.add_parser("fourdim-demo",
                       help="exhibit the null vector of a fourdim gluing table")
    _add_common(p, theory=False)
    p.set_defaults(func=cmd_fourdim_demo, theory="fourdim")

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except UniverseMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
