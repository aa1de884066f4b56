"""Mahler measures of integer Laurent polynomials.

Univariate values come from simultaneous (Aberth) root refinement on the
square-free parts.  Multivariate values integrate log M of one-variable
slices over the remaining torus coordinates.
"""
from __future__ import annotations

import cmath
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .lpoly import (
    LaurentPoly,
    collapse_along,
    cyclotomic,
    divide_exact,
    divmod_lex,
    euler_phi,
    normalize_unit,
    normalized,
    poly_gcd,
    support_direction,
)

log = logging.getLogger(__name__)

ROOT_TOL = 1e-14
DEGENERATE_TOL = 1e-13
# fractional parts of sqrt(5), sqrt(2), sqrt(3), sqrt(7), ... used as grid offsets
_OFFSETS = tuple(math.sqrt(p) % 1.0 for p in (5, 2, 3, 7, 11, 13, 17, 19))


class MahlerConvergenceError(RuntimeError):
    """Quadrature did not settle within the doubling cap."""

    def __init__(self, message: str, last: "MahlerResult"):
        super().__init__(message)
        self.last = last


@dataclass(frozen=True)
class MahlerResult:
    value: float
    log_value: float
    method: str  # "roots", "slice_quadrature" or "exact_one"
    error_estimate: float

    @classmethod
    def exact_one(cls) -> "MahlerResult":
        return cls(1.0, 0.0, "exact_one", 0.0)

    @classmethod
    def from_log(cls, log_value: float, method: str, error: float) -> "MahlerResult":
        return cls(math.exp(log_value), log_value, method, error)

    def exceeds_one(self, tol: float = 1e-9) -> bool:
        return self.value > 1.0 + max(tol, self.error_estimate)


@dataclass(frozen=True)
class SlicePoint:
    coords: Tuple[Fraction, ...]

    def __init__(self, coords: Sequence):
        fr = tuple(Fraction(c) % 1 for c in coords)
        object.__setattr__(self, "coords", fr)

    @property
    def denominator(self) -> int:
        k = 1
        for c in self.coords:
            k = k * c.denominator // math.gcd(k, c.denominator)
        return k

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


# -- root finding --------------------------------------------------------


def aberth_batch(coeffs: np.ndarray, tol: float = ROOT_TOL, max_iter: int = 800):
    """Roots of each row of ``coeffs`` (descending, nonzero leading entry).

    Returns (roots, last_correction), both of shape (rows, degree).
    """
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    if coeffs.ndim == 1:
        coeffs = coeffs[None, :]
    rows, width = coeffs.shape
    deg = width - 1
    if deg == 0:
        empty = np.zeros((rows, 0), dtype=np.complex128)
        return empty, np.zeros((rows, 0))
    monic = coeffs / coeffs[:, :1]
    if deg == 1:
        return -monic[:, 1:2], np.zeros((rows, 1))
    dcoeffs = monic[:, :-1] * np.arange(deg, 0, -1)
    # start on a circle whose radius is the geometric mean of the root moduli
    tail = np.abs(monic[:, -1])
    upper = 2.0 * np.max(np.abs(monic[:, 1:]) ** (1.0 / np.arange(1, width)), axis=1)
    radius = np.where(tail > 0, tail ** (1.0 / deg), 0.5 * upper)
    radius = np.clip(radius, 1e-8, None)
    angles = 2 * np.pi * np.arange(deg) / deg + 0.4
    z = radius[:, None] * np.exp(1j * angles)[None, :]
    step = np.full(z.shape, np.inf)
    active = np.ones(rows, dtype=bool)
    eye = np.eye(deg, dtype=bool)
    for _ in range(max_iter):
        za = z[active]
        ca, da = monic[active], dcoeffs[active]
        pv = np.ones_like(za)
        for k in range(1, width):
            pv = pv * za + ca[:, k, None]
        dv = np.full_like(za, deg)
        for k in range(1, deg):
            dv = dv * za + da[:, k, None]
        diff = za[:, :, None] - za[:, None, :]
        diff[:, eye] = np.inf
        with np.errstate(divide="ignore", invalid="ignore"):
            rep = np.sum(1.0 / diff, axis=2)
            ratio = pv / dv
            w = ratio / (1.0 - ratio * rep)
        w = np.where(np.isfinite(w), w, 0.0)
        w = np.where(pv == 0, 0.0, w)
        za = za - w
        z[active] = za
        mag = np.abs(w)
        step[active] = mag
        done = np.all(mag <= tol * np.maximum(1.0, np.abs(za)), axis=1)
        idx = np.flatnonzero(active)
        active[idx[done]] = False
        if not active.any():
            break
    else:
        log.debug("aberth: %d rows hit the iteration cap", int(active.sum()))
    return z, step


def squarefree_parts(p: LaurentPoly) -> Tuple[int, List[LaurentPoly]]:
    """Write a univariate polynomial (no monomial factor) as c * prod(parts).

    Each part is square-free and primitive; a root of multiplicity m lies
    in exactly the first m parts.
    """
    f = normalized(p)
    parts = []
    while f.span(0) > 0:
        g = poly_gcd(f, f.derivative(0))
        s = normalized(divide_exact(f, g)) if not g.is_constant() else normalized(f)
        s = s.exact_div_int(s.content())
        parts.append(s)
        f = divide_exact(f, s)
    const = f.constant_value() * normalize_unit(p).sign
    return const, parts


def _descending(p: LaurentPoly) -> List[int]:
    lo, asc = p.univariate_coeffs()
    return asc[::-1]


def integer_roots(p: LaurentPoly) -> Tuple[int, List[Tuple[complex, float]]]:
    """(constant, [(root, error)]) with p = constant * prod lc(part) * prod (z - root) up to a unit.

    Roots of the monomial factor (z = 0) are omitted.
    """
    if p.num_vars != 1:
        raise ValueError("expected a univariate polynomial")
    if p.is_zero():
        raise ValueError("zero polynomial has no roots")
    const, parts = squarefree_parts(p)
    out = []
    for part in parts:
        roots, step = aberth_batch(np.array(_descending(part), dtype=np.complex128))
        out.extend(zip(roots[0].tolist(), step[0].tolist()))
    return const, out


def _log_measure_from_roots(log_lead: float, roots, steps) -> Tuple[float, float]:
    total, err = log_lead, 0.0
    for w, s in zip(roots, steps):
        a = abs(w)
        if a > 1.0:
            total += math.log(a)
        if a + s > 1.0 and s > 0:
            err += s / max(a, 1e-300)
    return total, err


def mahler_univariate(p: LaurentPoly) -> MahlerResult:
    """M(p) = |lead| * prod max(1, |root|) for a one-variable integer polynomial."""
    if p.num_vars != 1:
        raise ValueError("mahler_univariate needs a one-variable polynomial")
    if p.is_zero():
        raise ValueError("Mahler measure of the zero polynomial is undefined")
    q = normalized(p)
    if q.is_constant():
        c = abs(q.constant_value())
        return MahlerResult.exact_one() if c == 1 else MahlerResult(float(c), math.log(c), "roots", 0.0)
    if is_cyclotomic_product_univariate(q):
        return MahlerResult.exact_one()
    const, parts = squarefree_parts(q)
    total = math.log(abs(const))
    err = 0.0
    deg = 0
    for part in parts:
        coeffs = _descending(part)
        deg += len(coeffs) - 1
        roots, step = aberth_batch(np.array(coeffs, dtype=np.complex128))
        lt, e = _log_measure_from_roots(math.log(abs(coeffs[0])), roots[0], step[0])
        total += lt
        err += e
    value = math.exp(total)
    err = float(value * (err + 4 * deg * np.finfo(float).eps))
    return MahlerResult(value, total, "roots", err)


# -- slices --------------------------------------------------------------


def _root_of_unity(phase: Fraction) -> complex:
    phase %= 1
    exact = {Fraction(0): 1 + 0j, Fraction(1, 4): 1j, Fraction(1, 2): -1 + 0j, Fraction(3, 4): -1j}
    if phase in exact:
        return exact[phase]
    return cmath.exp(2j * math.pi * float(phase))


def _trim(coeffs: np.ndarray) -> Optional[np.ndarray]:
    """Drop numerically vanishing leading/trailing entries of a descending array."""
    scale = np.max(np.abs(coeffs)) if coeffs.size else 0.0
    if scale == 0.0:
        return None
    keep = np.flatnonzero(np.abs(coeffs) > DEGENERATE_TOL * scale)
    return coeffs[keep[0]: keep[-1] + 1]


def complex_log_measure(coeffs_desc: Sequence[complex]) -> float:
    """log of the Mahler measure of a complex-coefficient polynomial (descending coefficients)."""
    c = _trim(np.asarray(coeffs_desc, dtype=np.complex128))
    if c is None:
        raise ValueError("identically zero slice")
    roots, step = aberth_batch(c)
    return _log_measure_from_roots(math.log(abs(c[0])), roots[0], step[0])[0]


def slice_coefficients(p: LaurentPoly, point: SlicePoint, inner: int = 0) -> np.ndarray:
    """Descending coefficients in the inner variable after fixing the others at e^{2 pi i r}."""
    others = [i for i in range(p.num_vars) if i != inner]
    if len(point.coords) != len(others):
        raise ValueError(f"point has {len(point.coords)} coordinates, need {len(others)}")
    lo, hi = p.valuation(inner), p.degree(inner)
    acc = [0j] * (hi - lo + 1)
    for e, c in p.items():
        phase = sum((r * e[j] for r, j in zip(point.coords, others)), Fraction(0))
        acc[e[inner] - lo] += c * _root_of_unity(phase)
    return np.array(acc[::-1], dtype=np.complex128)


def jensen_slice_integral(p: LaurentPoly, point: SlicePoint) -> float:
    """Integral over s of log|p(e^{2 pi i s}, e^{2 pi i r_2}, ...)|, via the root-product formula."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    return complex_log_measure(slice_coefficients(p, point, 0))


def inner_variable(p: LaurentPoly) -> int:
    """Variable of largest degree span, lowest index on ties."""
    spans = [p.span(i) for i in range(p.num_vars)]
    return spans.index(max(spans))


def _slice_block(args) -> List[float]:
    """log M of slices for a block of outer points (picklable worker)."""
    inner_exps, outer_exps, coeffs, lo, width, points = args
    phase = points @ outer_exps.T
    vals = coeffs[None, :] * np.exp(2j * np.pi * phase)
    mat = np.zeros((points.shape[0], width), dtype=np.complex128)
    for col in range(width):
        sel = inner_exps == lo + width - 1 - col
        if sel.any():
            mat[:, col] = vals[:, sel].sum(axis=1)
    out = np.empty(points.shape[0])
    scale = np.max(np.abs(mat), axis=1)
    live = np.abs(mat) > DEGENERATE_TOL * scale[:, None]
    first = np.argmax(live, axis=1)
    last = width - 1 - np.argmax(live[:, ::-1], axis=1)
    zero_rows = ~live.any(axis=1)
    groups = {}
    for i in range(points.shape[0]):
        if zero_rows[i]:
            groups.setdefault(None, []).append(i)
        else:
            groups.setdefault((first[i], last[i]), []).append(i)
    for key, idx in groups.items():
        if key is None:
            for i in idx:
                out[i] = _perturbed_row(args, points[i])
            continue
        a, b = key
        block = mat[idx, a: b + 1]
        lead = np.log(np.abs(block[:, 0]))
        roots, _ = aberth_batch(block)
        out[idx] = lead + np.sum(np.log(np.maximum(1.0, np.abs(roots))), axis=1)
    return out.tolist()


def _perturbed_row(args, point: np.ndarray) -> float:
    inner_exps, outer_exps, coeffs, lo, width, _ = args
    for j in range(1, 20):
        shifted = (point + 1e-9 * j * np.array(_OFFSETS[: point.size])) % 1.0
        val = _slice_block((inner_exps, outer_exps, coeffs, lo, width, shifted[None, :]))
        if np.isfinite(val[0]):
            return val[0]
    raise ValueError("could not move off an identically-zero slice")


def slice_quadrature(
    p: LaurentPoly, grid: int, inner: Optional[int] = None, jobs: int = 1, block: int = 16384
) -> float:
    """Mean of log M(slice) over a shifted uniform grid of ``grid`` points per outer dimension."""
    if inner is None:
        inner = inner_variable(p)
    outer = [i for i in range(p.num_vars) if i != inner]
    exps = np.array([e for e, _ in p.items()], dtype=np.int64)
    coeffs = np.array([c for _, c in p.items()], dtype=np.float64)
    lo, hi = p.valuation(inner), p.degree(inner)
    width = hi - lo + 1
    axes = [(np.arange(grid) + _OFFSETS[j % len(_OFFSETS)]) / grid for j in range(len(outer))]
    mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, len(outer))
    inner_exps = exps[:, inner]
    outer_exps = exps[:, outer].astype(np.float64)
    tasks = [
        (inner_exps, outer_exps, coeffs, lo, width, mesh[i: i + block])
        for i in range(0, mesh.shape[0], block)
    ]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_slice_block, tasks))
    else:
        chunks = [_slice_block(t) for t in tasks]
    values = [v for chunk in chunks for v in chunk]
    return math.fsum(values) / len(values)


def _strip_unused(p: LaurentPoly) -> LaurentPoly:
    q = normalized(p)
    for i in reversed(range(q.num_vars)):
        if q.span(i) == 0 and q.num_vars > 1:
            q = q.drop_var(i)
    return q


def mahler_multivariate(
    p: LaurentPoly,
    grid: Optional[int] = None,
    tol: float = 1e-4,
    max_doublings: int = 6,
    max_points: int = 1 << 22,
    jobs: int = 1,
) -> MahlerResult:
    """exp of the torus mean of log|p|, with the inner variable handled exactly per slice.

    Starts at ``grid`` points per outer dimension and doubles until two
    successive estimates differ by less than ``tol``; the last difference
    is reported as the (heuristic) error.
    """
    if p.is_zero():
        raise ValueError("Mahler measure of the zero polynomial is undefined")
    q = _strip_unused(p)
    if q.num_vars == 1:
        return mahler_univariate(q)
    if q.is_monomial():
        return mahler_univariate(LaurentPoly.constant(q.leading_term()[1], 1))
    outer_dims = q.num_vars - 1
    if grid is None:
        grid = 64 if outer_dims == 1 else 16
    inner = inner_variable(q)
    prev = slice_quadrature(q, grid, inner, jobs)
    for _ in range(max_doublings):
        grid *= 2
        if grid ** outer_dims > max_points:
            break
        cur = slice_quadrature(q, grid, inner, jobs)
        diff = abs(math.exp(cur) - math.exp(prev))
        prev = cur
        if diff < tol:
            return MahlerResult.from_log(cur, "slice_quadrature", diff)
    last = MahlerResult.from_log(prev, "slice_quadrature", float("nan"))
    raise MahlerConvergenceError(
        f"slice quadrature not within tol={tol} at grid {grid}", last
    )


def mahler_measure(p: LaurentPoly, **kwargs) -> MahlerResult:
    if p.num_vars == 1:
        return mahler_univariate(p)
    return mahler_multivariate(p, **kwargs)


# -- Mahler measure one ---------------------------------------------------


def is_cyclotomic_product_univariate(p: LaurentPoly) -> bool:
    """True iff p is +-(monomial) times a product of cyclotomic polynomials."""
    if p.num_vars != 1:
        raise ValueError("expected a univariate polynomial")
    if p.is_zero():
        raise ValueError("zero polynomial")
    q = normalized(p)
    lo, asc = q.univariate_coeffs()
    if abs(asc[0]) != 1 or abs(asc[-1]) != 1:
        return False
    if len(asc) == 1:
        return True
    # cheap numeric filter on the square-free part before exact certification
    g = poly_gcd(q, q.derivative(0))
    s = normalized(divide_exact(q, g))
    roots, _ = aberth_batch(np.array(_descending(s), dtype=np.complex128))
    if np.any(np.abs(np.abs(roots) - 1.0) > 1e-8):
        return False
    rem = q
    deg = rem.degree(0)
    n = 1
    while deg > 0 and n <= 2 * deg * deg + 2:
        if euler_phi(n) <= deg:
            psi = cyclotomic(n)
            while True:
                quo, r = divmod_lex(rem, psi)
                if r:
                    break
                rem = normalized(quo)
                deg = rem.degree(0)
        n += 1
    return rem.is_constant() and abs(rem.constant_value()) == 1


def is_extended_cyclotomic_product(p: LaurentPoly, factors: Sequence[LaurentPoly]) -> bool:
    """Boyd's criterion given a factorization: every factor a unit monomial or extended cyclotomic."""
    if not factors:
        raise ValueError("empty factor list")
    prod = LaurentPoly.constant(1, p.num_vars)
    for f in factors:
        prod = prod * f
    if normalized(prod) != normalized(p):
        raise ValueError("factors do not multiply to the polynomial up to a unit")
    for f in factors:
        if f.is_monomial():
            if abs(f.leading_term()[1]) != 1:
                return False
            continue
        sd = support_direction(f)
        if sd is None:
            return False
        if not is_cyclotomic_product_univariate(collapse_along(f, *sd)):
            return False
    return True


def find_positive_slice(
    p: LaurentPoly, max_denominator: int = 16, delta: float = 1e-3
) -> Optional[SlicePoint]:
    """First rational point (r_2, ..., r_m) whose slice integral exceeds ``delta``.

    Denominators are scanned coarse to fine starting at 2; the all-zero
    point (trivial character) is tried last.  None means the search
    bound was exhausted, which proves nothing.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    if p.num_vars < 2:
        raise ValueError("need at least two variables")
    dims = p.num_vars - 1
    for q in list(range(2, max_denominator + 1)) + [1]:
        for nums in product(range(q), repeat=dims):
            if math.gcd(q, *nums) != 1:
                continue
            point = SlicePoint([Fraction(a, q) for a in nums])
            try:
                val = jensen_slice_integral(p, point)
            except ValueError:
                continue
            if val > delta:
                return point
    return None
