"""Compact oriented surfaces: canonical forms, gluing, lexicographic complexity.

A compact oriented surface with boundary a fixed union of j labelled circles
is classified, rel boundary, by which circles each connected component meets
and the genus of each component, plus the genera of any closed components
carried along.  A bounded descriptor is therefore a partition of the circle
labels with a genus per block, together with a multiset of closed genera.
(The classification of the boundary-meeting data as partition plus genus is
a modelling assumption of this package; its consequences are verified
exhaustively at the scales the test suite covers, never assumed.)

Gluing m to the reversal of n identifies the two copies of each boundary
circle.  Components of the result correspond to connected components of the
bipartite graph with the parts of m and n as vertices and the j circles as
edges; Euler characteristic adds over parts, a part of genus g with b
boundary circles contributing 2 - 2g - b.

Complexity of a closed surface with components of Euler characteristics
chi_1 <= ... <= chi_n and total chi is the integer tuple

    (n, -chi, -chi_1, ..., -chi_n),

compared lexicographically.  Entries after the second are at most 2 in
absolute value (chi of a connected closed surface is at most 2), so padding
comparisons with -3 makes tuples of different lengths comparable without
ever colliding with a real entry.

``euler_oracle`` recomputes the Euler characteristic of a gluing from an
explicit cell decomposition, counting identified vertices, edges and faces
one by one.  It shares no code with glue2 and exists to catch errors in it.

``verify_lemma_grid`` is an exhaustive diagonal-dominance check over the
full enumerated basis, vectorized so that grids with tens of millions of
pairs finish in seconds.  It must agree with engine.verify_lemma (the plain
pairwise check) wherever both are feasible; the tests enforce that.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import total_ordering
from typing import Any, Iterator

import numpy as np

from .algebra import UniverseMismatchError
from .engine import GluingTheory, LemmaReport, LemmaViolation


@dataclass(frozen=True)
class Bounded2Manifold:
    """Partition of the boundary circles with genera, plus closed pieces.

    ``parts`` lists the components meeting the boundary as (circle labels,
    genus); ``closed_genera`` is the sorted multiset of genera of closed
    components.  Construction canonicalizes ordering, so structural equality
    is equivalence rel boundary.
    """

    boundary_circles: int
    parts: tuple[tuple[tuple[int, ...], int], ...]
    closed_genera: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        j = self.boundary_circles
        if j < 0:
            raise ValueError("boundary circle count must be nonnegative")
        parts = tuple(sorted((tuple(sorted(circles)), genus)
                             for circles, genus in self.parts))
        covered = [c for circles, _ in parts for c in circles]
        if sorted(covered) != list(range(j)):
            raise ValueError(
                f"parts must partition the circle labels 0..{j - 1}, got {covered}")
        for circles, genus in parts:
            if not circles:
                raise ValueError("every part must meet the boundary")
            if genus < 0:
                raise ValueError("genus must be nonnegative")
        closed = tuple(sorted(self.closed_genera))
        if any(g < 0 for g in closed):
            raise ValueError("closed genera must be nonnegative")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "closed_genera", closed)

    def universe_key(self) -> int:
        return self.boundary_circles

    def to_json(self) -> dict[str, Any]:
        return {
            "dim": 2,
            "boundary_circles": self.boundary_circles,
            "parts": [{"circles": list(circles), "genus": genus}
                      for circles, genus in self.parts],
            "closed": list(self.closed_genera),
        }

    @classmethod
    def from_json(cls, data: Any) -> Bounded2Manifold:
        if data.get("dim") != 2 or "parts" not in data:
            raise ValueError(f"not a bounded 2-manifold descriptor: {data!r}")
        parts = tuple((tuple(int(c) for c in p["circles"]), int(p["genus"]))
                      for p in data["parts"])
        return cls(int(data["boundary_circles"]), parts,
                   tuple(int(g) for g in data.get("closed", [])))


@dataclass(frozen=True)
class ClosedSurface:
    """A closed oriented surface: the sorted multiset of component genera."""

    genera: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(g < 0 for g in self.genera):
            raise ValueError("genera must be nonnegative")
        object.__setattr__(self, "genera", tuple(sorted(self.genera)))

    def euler_characteristic(self) -> int:
        return sum(2 - 2 * g for g in self.genera)

    def to_json(self) -> dict[str, Any]:
        return {"dim": 2, "genera": list(self.genera)}

    @classmethod
    def from_json(cls, data: Any) -> ClosedSurface:
        if data.get("dim") != 2 or "genera" not in data:
            raise ValueError(f"not a closed surface descriptor: {data!r}")
        return cls(tuple(int(g) for g in data["genera"]))


PAD = -3  # below every real tuple entry; -chi of a component is >= -2


@total_ordering
class ComplexityTuple:
    """(n, -chi, -chi_1, ..., -chi_n) compared lexicographically with padding."""

    __slots__ = ("entries",)

    def __init__(self, entries: tuple[int, ...] | list[int]):
        self.entries = tuple(int(e) for e in entries)
        if len(self.entries) < 2 or self.entries[0] < 0:
            raise ValueError(f"malformed complexity tuple {self.entries}")
        if any(e < -2 for e in self.entries[2:]):
            raise ValueError(
                f"component entries must be >= -2, got {self.entries}")

    def _padded_cmp(self, other: ComplexityTuple) -> int:
        for k in range(max(len(self.entries), len(other.entries))):
            a = self.entries[k] if k < len(self.entries) else PAD
            b = other.entries[k] if k < len(other.entries) else PAD
            if a != b:
                return -1 if a < b else 1
        return 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ComplexityTuple):
            return NotImplemented
        return self._padded_cmp(other) == 0

    def __lt__(self, other: ComplexityTuple) -> bool:
        return self._padded_cmp(other) < 0

    def __hash__(self) -> int:
        trimmed = self.entries
        while trimmed and trimmed[-1] == PAD:
            trimmed = trimmed[:-1]
        return hash(trimmed)

    def to_json(self) -> list[int]:
        return list(self.entries)

    def __repr__(self) -> str:
        return f"ComplexityTuple{self.entries}"


def compare_complexity(a: ComplexityTuple, b: ComplexityTuple) -> int:
    """-1, 0 or 1 as a is less than, equal to or greater than b."""
    return a._padded_cmp(b)


def complexity2(c: ClosedSurface) -> ComplexityTuple:
    """Complexity of a closed surface: components count heaviest, then -chi."""
    chis = sorted(2 - 2 * g for g in c.genera)
    return ComplexityTuple((len(chis), -sum(chis), *(-x for x in chis)))


def glue2(m: Bounded2Manifold, n: Bounded2Manifold) -> ClosedSurface:
    """Glue m to the reversal of n along their j shared boundary circles."""
    if m.boundary_circles != n.boundary_circles:
        raise UniverseMismatchError(
            f"boundary mismatch: {m.boundary_circles} vs {n.boundary_circles} circles")
    j = m.boundary_circles
    nodes = len(m.parts) + len(n.parts)
    owner = [0] * (2 * j)  # node owning each circle, per side
    for idx, (circles, _) in enumerate(m.parts):
        for c in circles:
            owner[c] = idx
    for idx, (circles, _) in enumerate(n.parts):
        for c in circles:
            owner[j + c] = len(m.parts) + idx
    parent = list(range(nodes))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in range(j):
        a, b = find(owner[c]), find(owner[j + c])
        if a != b:
            parent[a] = b
    chi_of: dict[int, int] = {}
    all_parts = list(m.parts) + list(n.parts)
    for idx, (circles, genus) in enumerate(all_parts):
        root = find(idx)
        chi_of[root] = chi_of.get(root, 0) + 2 - 2 * genus - len(circles)
    genera = []
    for chi in chi_of.values():
        if chi % 2 != 0 or chi > 2:
            raise AssertionError(f"impossible component chi {chi} in gluing")
        genera.append((2 - chi) // 2)
    genera.extend(m.closed_genera)
    genera.extend(n.closed_genera)
    return ClosedSurface(tuple(genera))


def euler_oracle(m: Bounded2Manifold, n: Bounded2Manifold) -> int:
    """Euler characteristic of the gluing from an explicit cell structure.

    Each boundary circle is one shared vertex and one shared edge; a part of
    genus g is one centre vertex, 2g loop edges, one spoke edge per boundary
    circle it meets, and one face (the standard one-polygon model); a closed
    piece of genus g is one vertex, 2g edges and one face.  The identified
    complex is counted cell by cell.
    """
    if m.boundary_circles != n.boundary_circles:
        raise UniverseMismatchError("boundary mismatch")
    vertices: set[tuple] = set()
    edges: set[tuple] = set()
    faces: set[tuple] = set()
    for c in range(m.boundary_circles):
        vertices.add(("circle", c, "v"))
        edges.add(("circle", c, "e"))
    for side, mani in (("m", m), ("n", n)):
        for idx, (circles, genus) in enumerate(mani.parts):
            vertices.add((side, idx, "centre"))
            for t in range(2 * genus):
                edges.add((side, idx, "loop", t))
            for c in circles:
                edges.add((side, idx, "spoke", c))
            faces.add((side, idx, "face"))
        for cdx, genus in enumerate(mani.closed_genera):
            vertices.add((side, "closed", cdx, "v"))
            for t in range(2 * genus):
                edges.add((side, "closed", cdx, "loop", t))
            faces.add((side, "closed", cdx, "face"))
    return len(vertices) - len(edges) + len(faces)


def _set_partitions(n: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Partitions of range(n) into blocks ordered by smallest element."""
    blocks: list[list[int]] = []

    def place(i: int) -> Iterator[tuple[tuple[int, ...], ...]]:
        if i == n:
            yield tuple(tuple(b) for b in blocks)
            return
        for b in blocks:
            b.append(i)
            yield from place(i + 1)
            b.pop()
        blocks.append([i])
        yield from place(i + 1)
        blocks.pop()

    yield from place(0)


def closed_multisets(g_max: int, budget: int) -> list[tuple[int, ...]]:
    """Sorted genus multisets with at most ``budget`` components, total genus
    at most ``budget`` and each genus at most ``g_max``."""
    if g_max < 0 or budget < 0:
        raise ValueError("genus bound and closed budget must be nonnegative")
    found: list[tuple[int, ...]] = []

    def grow(prefix: list[int], start: int, total: int) -> None:
        found.append(tuple(prefix))
        if len(prefix) == budget:
            return
        for g in range(start, g_max + 1):
            if total + g <= budget:
                grow(prefix + [g], g, total + g)

    grow([], 0, 0)
    return sorted(found, key=lambda t: (len(t), t))


def enumerate2(j: int, g_max: int, closed_budget: int = 0) -> list[Bounded2Manifold]:
    """Every canonical bounded surface over j circles within the bounds.

    Deterministic order: partitions of the circle labels, then genus
    assignments, then closed multisets (so consecutive runs agree exactly).
    """
    if j < 0:
        raise ValueError("boundary circle count must be nonnegative")
    out = []
    closeds = closed_multisets(g_max, closed_budget)
    for partition in _set_partitions(j):
        for genera in itertools.product(range(g_max + 1), repeat=len(partition)):
            parts = tuple(zip(partition, genera))
            for closed in closeds:
                out.append(Bounded2Manifold(j, parts, closed))
    return out


@dataclass(frozen=True)
class Dim2Theory(GluingTheory):
    """Gluing theory of bounded surfaces over j labelled circles."""

    boundary_circles: int
    name: str = "dim2"

    def glue(self, a: Bounded2Manifold, b: Bounded2Manifold) -> ClosedSurface:
        return glue2(a, b)

    def reverse(self, closed: ClosedSurface) -> ClosedSurface:
        # A closed oriented surface is diffeomorphic to its reversal.
        return closed

    def complexity(self, closed: ClosedSurface) -> ComplexityTuple:
        return complexity2(closed)

    def validate_basis(self, descriptor: Any) -> None:
        if not isinstance(descriptor, Bounded2Manifold):
            raise UniverseMismatchError(f"not a bounded surface: {descriptor!r}")
        if descriptor.boundary_circles != self.boundary_circles:
            raise UniverseMismatchError(
                f"boundary mismatch: {descriptor.boundary_circles} vs "
                f"{self.boundary_circles} circles")


def verify_lemma_grid(j: int, g_max: int, closed_budget: int) -> LemmaReport:
    """Exhaustive diagonal-dominance check over the full enumerated basis.

    Semantically identical to engine.verify_lemma(enumerate2(...), Dim2Theory(j))
    but factored through the grid structure: a basis element is a bounded
    core plus a carried closed multiset, and the complexity of any gluing
    depends only on (core pair, multiset union).  All distinct combinations
    are ranked exactly once with exact arithmetic; the quadratic sweep over
    element pairs then compares precomputed integer ranks, vectorized.
    """
    bounded = enumerate2(j, g_max, 0)
    closeds = closed_multisets(g_max, closed_budget)
    nb, nk = len(bounded), len(closeds)
    basis_size = nb * nk

    genera_ids: dict[tuple[int, ...], int] = {}
    gid = np.empty((nb, nb), dtype=np.int32)
    for a in range(nb):
        for b in range(a, nb):
            genera = glue2(bounded[a], bounded[b]).genera
            idx = genera_ids.setdefault(genera, len(genera_ids))
            gid[a, b] = gid[b, a] = idx

    union_ids: dict[tuple[int, ...], int] = {}
    kuid = np.empty((nk, nk), dtype=np.int32)
    for p in range(nk):
        for q in range(nk):
            u = tuple(sorted(closeds[p] + closeds[q]))
            idx = union_ids.setdefault(u, len(union_ids))
            kuid[p, q] = idx

    combo_entries: dict[tuple[int, int], tuple[int, ...]] = {}
    for genera, gi in genera_ids.items():
        for union, ui in union_ids.items():
            surface = ClosedSurface(tuple(sorted(genera + union)))
            combo_entries[(gi, ui)] = complexity2(surface).entries
    width = max(len(e) for e in combo_entries.values())

    def padded(entries: tuple[int, ...]) -> tuple[int, ...]:
        return entries + (PAD,) * (width - len(entries))

    ordered = sorted({padded(e) for e in combo_entries.values()})
    rank_of = {t: r for r, t in enumerate(ordered)}
    rank = np.empty((len(genera_ids), len(union_ids)), dtype=np.int32)
    for (gi, ui), entries in combo_entries.items():
        rank[gi, ui] = rank_of[padded(entries)]

    diag_rank = rank[gid.diagonal()][:, kuid.diagonal()]  # (nb, nk)

    def element(b: int, k: int) -> Bounded2Manifold:
        return Bounded2Manifold(j, bounded[b].parts, closeds[k])

    bad_pairs = []  # (left, right) positions in the enumerate2 order, left < right
    strict_upper = np.triu(np.ones((nk, nk), dtype=bool), k=1)
    for a in range(nb):
        off = rank[gid[a, a:]][:, kuid]                     # (nb-a, nk, nk)
        biggest = np.maximum(diag_rank[a][None, :, None],
                             diag_rank[a:][:, None, :])
        checked = np.ones_like(off, dtype=bool)
        checked[0] = strict_upper                           # b == a: need k2 > k1
        for bi, k1, k2 in np.argwhere(checked & ~(off < biggest)):
            bad_pairs.append((a * nk + int(k1), (a + int(bi)) * nk + int(k2)))
    violations = []
    for left_idx, right_idx in sorted(bad_pairs):
        left = element(left_idx // nk, left_idx % nk)
        right = element(right_idx // nk, right_idx % nk)
        violations.append(LemmaViolation(
            left, right,
            complexity2(glue2(left, right)),
            complexity2(glue2(left, left)),
            complexity2(glue2(right, right))))
    return LemmaReport(passed=not violations, basis_size=basis_size,
                       pairs_checked=basis_size * (basis_size - 1) // 2,
                       violations=tuple(violations))
