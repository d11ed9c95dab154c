"""Independent oracles and seeded generators shared by the test modules.

The convolution oracle multiplies x * conj(y) with raw dicts and Fractions,
sharing no code with FormalSum or the pairing engine, so the two routes can
check each other.
"""

from fractions import Fraction

from umpair.algebra import FormalSum, Scalar
from umpair.monomial import Monomial


def convolution_oracle(x_terms, y_terms, sigma):
    swap = {}
    for a, b in sigma.swaps:
        swap[a], swap[b] = b, a
    acc = {}
    for exps_x, (xr, xi) in x_terms:
        for exps_y, (yr, yi) in y_terms:
            merged = dict(exps_x)
            for p, e in exps_y.items():
                q = swap.get(p, p)
                merged[q] = merged.get(q, 0) + e
            key = tuple(sorted((p, e) for p, e in merged.items() if e))
            re, im = acc.get(key, (Fraction(0), Fraction(0)))
            # (xr + xi i) * (yr - yi i)
            acc[key] = (re + xr * yr + xi * yi, im + xi * yr - xr * yi)
    return {k: v for k, v in acc.items() if v != (0, 0)}


def as_raw(formal_sum):
    """A formal sum of monomials as the oracle's raw exponent/value dict."""
    return {m.exponents: (c.re, c.im) for m, c in formal_sum.items()}


def raw_terms(formal_sum):
    return [(m.as_dict(), (c.re, c.im)) for m, c in formal_sum.items()]


def random_poly(rng, sigma, max_terms=8, max_exp=3):
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        exps = {p: rng.randint(0, max_exp) for p in sigma.alphabet}
        coeff = Scalar(Fraction(rng.randint(-9, 9), rng.randint(1, 4)),
                       Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
        terms.append((Monomial.from_dict(exps), coeff))
    return FormalSum(terms)


def random_vector(rng, basis, max_support=8, bound=3):
    """A nonzero formal sum: small random support, nonzero Gaussian-integer
    coefficients with both parts in [-bound, bound]."""
    support = rng.sample(basis, rng.randint(1, min(max_support, len(basis))))
    terms = []
    for descriptor in support:
        re = im = 0
        while re == 0 and im == 0:
            re, im = rng.randint(-bound, bound), rng.randint(-bound, bound)
        terms.append((descriptor, Scalar(re, im)))
    return FormalSum(terms)
