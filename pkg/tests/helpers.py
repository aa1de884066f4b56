"""Shared oracles for the test-suite (independent of the package internals)."""
import numpy as np
import sympy

from fiberlift.lpoly import LaurentPoly


def to_sympy(p: LaurentPoly, syms):
    """Polynomial in sympy, shifted so every exponent is nonnegative."""
    lo = p.min_exponents() if not p.is_zero() else (0,) * p.num_vars
    expr = 0
    for e, c in p.items():
        term = c
        for s, k, m in zip(syms, e, lo):
            term *= s ** (k - m)
        expr += term
    return sympy.Poly(expr, *syms)


def from_sympy(poly, num_vars):
    return LaurentPoly({tuple(int(x) for x in m): int(c) for m, c in poly.terms()}, num_vars)


def companion_mahler(asc):
    """M from numpy's companion-matrix eigenvalues (ascending integer coefficients)."""
    c = list(asc)
    while c and c[-1] == 0:
        c.pop()
    while c and c[0] == 0:
        c.pop(0)
    lead = abs(c[-1])
    if len(c) == 1:
        return float(lead)
    roots = np.roots(c[::-1])
    return float(lead * np.prod(np.maximum(1.0, np.abs(roots))))
