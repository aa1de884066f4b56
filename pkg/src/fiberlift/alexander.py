"""Alexander polynomials of 3-manifolds and of their finite abelian covers."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .lpoly import (
    IntLinearMap,
    LaurentPoly,
    char_poly,
    divide_exact,
    int_det,
    normalized,
    poly_det,
    poly_gcd,
    resultant,
    substitute_linear,
)
from .mahler import MahlerResult, complex_log_measure, mahler_univariate
from .words import Word, abelianize, format_word, parse_word


class ZeroAlexanderPolynomial(ArithmeticError):
    """All relevant minors vanish: the order of the module is 0."""


class ZeroSpecialization(ArithmeticError):
    """A class sends the polynomial to 0; the correction factor bookkeeping is needed."""


@dataclass(frozen=True)
class FiberedClass:
    a: Tuple[int, ...]
    monodromy: Tuple[Tuple[int, ...], ...]
    fiber_genus_data: Optional[dict] = None

    def __init__(self, a, monodromy, fiber_genus_data=None):
        object.__setattr__(self, "a", tuple(int(x) for x in a))
        object.__setattr__(self, "monodromy", tuple(tuple(int(x) for x in r) for r in monodromy))
        object.__setattr__(self, "fiber_genus_data", fiber_genus_data)
        n = len(self.monodromy)
        if any(len(r) != n for r in self.monodromy):
            raise ValueError("monodromy matrix is not square")
        if n and abs(int_det(self.monodromy)) != 1:
            raise ValueError("monodromy is not invertible over the integers")


@dataclass(frozen=True)
class GroupPresentation:
    generators: int
    relators: Tuple[Word, ...]
    psi: IntLinearMap

    def __init__(self, generators: int, relators, psi):
        rels = tuple(parse_word(r, generators) if isinstance(r, str) else tuple(r) for r in relators)
        psi = psi if isinstance(psi, IntLinearMap) else IntLinearMap(psi)
        object.__setattr__(self, "generators", int(generators))
        object.__setattr__(self, "relators", rels)
        object.__setattr__(self, "psi", psi)
        if psi.cols != self.generators:
            raise ValueError("psi must have one column per generator")
        for w in rels:
            if any(psi.apply(abelianize(w, self.generators))):
                raise ValueError(f"psi does not kill relator {format_word(w)}")

    def image(self, gen: int) -> Tuple[int, ...]:
        return tuple(row[gen] for row in self.psi.matrix)


@dataclass(frozen=True)
class CharacterSpec:
    """xi(t_i) = exp(2 pi i a_i / k)."""

    modulus: int
    exponents: Tuple[int, ...]

    def __init__(self, modulus: int, exponents):
        object.__setattr__(self, "modulus", int(modulus))
        object.__setattr__(self, "exponents", tuple(int(a) % int(modulus) for a in exponents))

    def value(self, i: int) -> complex:
        return cmath.exp(2j * math.pi * self.exponents[i] / self.modulus)


@dataclass
class ManifoldRecord:
    name: str
    b1: int
    closed: bool = False
    delta_pi: Optional[LaurentPoly] = None
    presentation: Optional[GroupPresentation] = None
    fibered_classes: List[FiberedClass] = field(default_factory=list)
    delta_factors: Optional[List[LaurentPoly]] = None

    def __post_init__(self):
        if self.b1 < 1:
            raise ValueError("b1 must be positive")
        if self.delta_pi is not None and self.delta_pi.num_vars != self.b1:
            raise ValueError("delta_pi must have b1 variables")
        for fc in self.fibered_classes:
            if len(fc.a) != self.b1:
                raise ValueError("fibered class vector length differs from b1")
        if self.presentation is not None and self.presentation.psi.rows != self.b1:
            raise ValueError("presentation psi must map onto Z^b1")
        if self.delta_pi is None and self.presentation is None and not self.fibered_classes:
            raise ValueError("record needs delta_pi, a presentation or a fibered class")

    def alexander(self) -> LaurentPoly:
        """The multivariable Alexander polynomial, from the stored value or the presentation."""
        if self.delta_pi is not None:
            return self.delta_pi
        if self.presentation is not None:
            return alexander_polynomial(self.presentation)
        if self.b1 == 1:
            return char_poly_fibered(self.fibered_classes[0])
        raise ValueError(f"{self.name}: no multivariable Alexander polynomial available")


# -- fibered classes -----------------------------------------------------


def char_poly_fibered(fc: FiberedClass) -> LaurentPoly:
    """det(tI - monodromy): the Alexander polynomial of the fibered class."""
    return char_poly(fc.monodromy)


# -- Fox calculus --------------------------------------------------------


def fox_derivative(word: Word, gen: int, gp: GroupPresentation) -> LaurentPoly:
    n = gp.psi.rows
    acc: dict = {}
    prefix = [0] * n
    for g, s in word:
        img = gp.image(g)
        if s < 0:
            prefix = [p - i for p, i in zip(prefix, img)]
        if g == gen:
            key = tuple(prefix)
            acc[key] = acc.get(key, 0) + s
        if s > 0:
            prefix = [p + i for p, i in zip(prefix, img)]
    return LaurentPoly({e: c for e, c in acc.items() if c}, n)


def fox_presentation_matrix(gp: GroupPresentation) -> List[List[LaurentPoly]]:
    """Rows are relators, columns generators; entries pushed into Z[Z^n]."""
    return [[fox_derivative(w, j, gp) for j in range(gp.generators)] for w in gp.relators]


def fox_identity_holds(gp: GroupPresentation) -> bool:
    """sum_j (dw/dx_j)(psi(x_j) - 1) == psi(w) - 1 for every relator."""
    n = gp.psi.rows
    one = LaurentPoly.constant(1, n)
    for w, row in zip(gp.relators, fox_presentation_matrix(gp)):
        lhs = LaurentPoly.zero(n)
        for j, d in enumerate(row):
            lhs = lhs + d * (LaurentPoly.monomial(gp.image(j)) - one)
        rhs = LaurentPoly.monomial(gp.psi.apply(abelianize(w, gp.generators))) - one
        if lhs != rhs:
            return False
    return True


def _gcd_of_minors(m: Sequence[Sequence[LaurentPoly]], size: int, nv: int) -> LaurentPoly:
    g = LaurentPoly.zero(nv)
    for rows in combinations(range(len(m)), size):
        minor = poly_det([list(m[r]) for r in rows], nv)
        if minor:
            g = poly_gcd(g, minor)
            if g.is_constant() and abs(g.constant_value()) == 1:
                break
    return g


def alexander_from_presentation(
    m: Sequence[Sequence[LaurentPoly]], delete_column: Optional[int] = None
) -> LaurentPoly:
    """Order of the module presented by ``m``: gcd of its maximal (s x s) minors.

    With ``delete_column`` the given column is removed first (deficiency
    one convention).  Result is in unit normal form.
    """
    if not m or not m[0]:
        raise ValueError("empty presentation matrix")
    nv = m[0][0].num_vars
    if delete_column is not None:
        m = [[e for j, e in enumerate(row) if j != delete_column] for row in m]
    r, s = len(m), len(m[0])
    if r < s:
        raise ValueError(f"{r}x{s} matrix has no {s}x{s} minors; delete a column first")
    g = _gcd_of_minors(m, s, nv)
    if g.is_zero():
        raise ZeroAlexanderPolynomial("all maximal minors vanish")
    return normalized(g)


def alexander_polynomial(gp: GroupPresentation) -> LaurentPoly:
    """Multivariable Alexander polynomial of the group, up to units.

    Deficiency-one presentations: delete the column of a generator with
    primitive (preferably) psi-image and divide the remaining minor by
    (t^psi(x_j) - 1), times (t - 1) when b1 = 1.  Otherwise the gcd of all
    (s-1)-minors is used, divided by (t - 1) when b1 = 1.
    """
    m = fox_presentation_matrix(gp)
    n = gp.psi.rows
    r, s = len(m), gp.generators
    one = LaurentPoly.constant(1, n)
    if r == s - 1:
        cands = [j for j in range(s) if any(gp.image(j))]
        if not cands:
            raise ValueError("psi is zero on every generator")
        j = min(cands, key=lambda c: (math.gcd(*gp.image(c)), c))
        minor = poly_det([[e for i, e in enumerate(row) if i != j] for row in m], n)
        if minor.is_zero():
            raise ZeroAlexanderPolynomial("the deficiency-one minor vanishes")
        g = LaurentPoly.monomial(gp.image(j)) - one
        if n == 1:
            delta = divide_exact(minor * (LaurentPoly.variable(0, 1) - 1), g)
        else:
            delta = divide_exact(minor, g)
        return normalized(delta)
    if r < s - 1:
        raise ZeroAlexanderPolynomial("deficiency above one: the order vanishes")
    g = _gcd_of_minors(m, s - 1, n)
    if g.is_zero():
        raise ZeroAlexanderPolynomial("all (s-1)-minors vanish")
    if n == 1:
        g = divide_exact(g, LaurentPoly.variable(0, 1) - 1)
    return normalized(g)


# -- specialization ------------------------------------------------------


@dataclass(frozen=True)
class CorrectedSpecialization:
    """a(delta) * prod (t - root) with the correction roots kept symbolically."""

    base: LaurentPoly
    correction_roots: Tuple[complex, ...]

    def coefficients(self) -> np.ndarray:
        """Descending complex coefficients of the full product."""
        lo, asc = self.base.univariate_coeffs()
        c = np.array(asc[::-1], dtype=np.complex128)
        for r in self.correction_roots:
            c = np.polymul(c, np.array([1.0, -r]))
        return c

    def to_laurent(self, tol: float = 1e-12) -> LaurentPoly:
        """Exact integer polynomial, when the correction factor has integer coefficients."""
        p = np.array([1.0 + 0j])
        for r in self.correction_roots:
            p = np.polymul(p, np.array([1.0, -r]))
        ints = np.round(p.real)
        if np.max(np.abs(p - ints)) > tol:
            raise ValueError("correction factor does not have integer coefficients")
        corr = LaurentPoly.from_coeffs([int(x) for x in ints[::-1]])
        return self.base * corr

    def __str__(self) -> str:
        if not self.correction_roots:
            return str(self.base)
        try:
            return str(self.to_laurent())
        except ValueError:
            factors = "".join(f"(t - ({r:.6g}))" for r in self.correction_roots)
            return f"({self.base}){factors}"


def correction_roots(xi_trivial_on_kernel: bool, closed: bool, xi_at_dual: complex) -> Tuple[complex, ...]:
    """Roots of the factor p(t): none; conj(xi(a*)); or xi(a*) and its conjugate."""
    if not xi_trivial_on_kernel:
        return ()
    xi = complex(xi_at_dual)
    if abs(abs(xi) - 1.0) > 1e-12:
        raise ValueError("xi(a*) must lie on the unit circle")
    if closed:
        return (xi, xi.conjugate())
    return (xi.conjugate(),)


def specialize_with_correction(
    delta: LaurentPoly,
    a: IntLinearMap,
    xi_trivial_on_kernel: bool,
    closed: bool,
    xi_at_dual: complex = 1.0,
) -> Tuple[CorrectedSpecialization, MahlerResult]:
    """One-variable Alexander polynomial of the class a from the multivariable one.

    Returns a(delta) * p(t) and M(a(delta)); the equality of the two
    Mahler measures is checked numerically.
    """
    if delta.num_vars < 2:
        raise ValueError("specialization formula needs rank at least 2")
    if a.rows != 1 or not a.is_surjective():
        raise ValueError("a must be a surjection onto Z")
    base = substitute_linear(delta, a)
    if base.is_zero():
        raise ZeroSpecialization("a(delta) = 0")
    spec = CorrectedSpecialization(base, correction_roots(xi_trivial_on_kernel, closed, xi_at_dual))
    m_base = mahler_univariate(base)
    full_log = complex_log_measure(spec.coefficients())
    gap = abs(full_log - m_base.log_value)
    if gap > 1e-9 + m_base.error_estimate:
        raise ArithmeticError(f"correction factor changed the Mahler measure by {gap:g}")
    return spec, m_base


# -- abelian covers ------------------------------------------------------


def abelian_cover_alexander(delta: LaurentPoly, k: int, twisted_vars: Sequence[int]) -> LaurentPoly:
    """Alexander polynomial of the Z_k^m cover twisting the given variables (0-based).

    Equals the product over characters xi of delta(conj(xi)(t_1) t_1, ...),
    computed as iterated resultants Res_z(z^k - t_j^k, delta|t_j -> z).
    """
    if delta.is_zero():
        raise ValueError("zero polynomial")
    if k < 1:
        raise ValueError("k must be positive")
    n = delta.num_vars
    P = delta
    for j in sorted(set(twisted_vars)):
        if not 0 <= j < n:
            raise ValueError(f"variable index {j} out of range")
        # new variable z in slot n takes over the exponent of t_j
        moved = {}
        for e, c in P.items():
            ne = list(e) + [e[j]]
            ne[j] = 0
            moved[tuple(ne)] = c
        Pz = LaurentPoly(moved, n + 1)
        zk = [0] * (n + 1)
        zk[n] = k
        tk = [0] * (n + 1)
        tk[j] = k
        f = LaurentPoly({tuple(zk): 1, tuple(tk): -1}, n + 1)
        P = resultant(f, Pz, n).drop_var(n)
    return normalized(P)


def pullback_class_specialization(
    cover_delta: LaurentPoly, b1_class: IntLinearMap, require_monic: bool = True
) -> LaurentPoly:
    """b(cover_delta) in unit normal form; fibered classes give leading coefficient +-1."""
    if b1_class.rows != 1 or not b1_class.is_surjective():
        raise ValueError("class must be a surjection onto Z")
    spec = substitute_linear(cover_delta, b1_class)
    if spec.is_zero():
        raise ZeroSpecialization("pullback specialization is 0")
    spec = normalized(spec)
    if require_monic and abs(spec.leading_term()[1]) != 1:
        raise ArithmeticError(
            f"leading coefficient {spec.leading_term()[1]} is not +-1; class is not fibered"
        )
    return spec


def change_basis(delta: LaurentPoly, basis: Sequence[Sequence[int]]) -> LaurentPoly:
    """Rewrite delta in the homology basis dual to the cohomology basis given as rows."""
    return substitute_linear(delta, IntLinearMap(basis))
