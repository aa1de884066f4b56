"""Sparse multivariable Laurent polynomials with integer coefficients.

A polynomial is a map from exponent vectors (tuples of ints, possibly
negative) to nonzero ints.  Everything here is exact; Python ints carry
the coefficient growth of iterated resultants.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import gcd
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

Exponent = Tuple[int, ...]


class LaurentPoly:
    """Immutable sparse Laurent polynomial over Z in ``num_vars`` variables."""

    __slots__ = ("_terms", "_nvars", "_hash")

    def __init__(self, terms: Optional[Dict[Exponent, int]] = None, num_vars: int = 1):
        if num_vars < 0:
            raise ValueError("num_vars must be nonnegative")
        clean: Dict[Exponent, int] = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != num_vars:
                raise ValueError(f"exponent {exp} does not have length {num_vars}")
            if int(coeff) != coeff:
                raise TypeError(f"non-integer coefficient {coeff!r}")
            if coeff:
                clean[exp] = int(coeff)
        self._terms = clean
        self._nvars = num_vars
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def _raw(cls, terms: Dict[Exponent, int], num_vars: int) -> "LaurentPoly":
        # trusted path: terms already have correct length and no zeros
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._nvars = num_vars
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, num_vars: int = 1) -> "LaurentPoly":
        return cls._raw({}, num_vars)

    @classmethod
    def constant(cls, c: int, num_vars: int = 1) -> "LaurentPoly":
        return cls({(0,) * num_vars: c}, num_vars)

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff: int = 1) -> "LaurentPoly":
        exp = tuple(exp)
        return cls({exp: coeff}, len(exp))

    @classmethod
    def variable(cls, index: int, num_vars: int) -> "LaurentPoly":
        exp = [0] * num_vars
        exp[index] = 1
        return cls._raw({tuple(exp): 1}, num_vars)

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int], low: int = 0) -> "LaurentPoly":
        """Univariate polynomial from ascending coefficients starting at degree ``low``."""
        return cls({(low + i,): c for i, c in enumerate(coeffs)}, 1)

    @classmethod
    def from_pairs(cls, pairs: Iterable, num_vars: Optional[int] = None) -> "LaurentPoly":
        """Build from the fixture encoding ``[[exponent-vector, coefficient], ...]``."""
        terms: Dict[Exponent, int] = {}
        n = num_vars
        for exp, coeff in pairs:
            exp = tuple(int(e) for e in exp)
            if n is None:
                n = len(exp)
            terms[exp] = terms.get(exp, 0) + int(coeff)
        return cls(terms, 0 if n is None else n)

    def to_pairs(self) -> List[list]:
        return [[list(e), c] for e, c in sorted(self._terms.items(), reverse=True)]

    # -- basic accessors --------------------------------------------------

    @property
    def num_vars(self) -> int:
        return self._nvars

    @property
    def terms(self) -> Dict[Exponent, int]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Exponent, int]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self._terms.values()), 0)

    def coeff(self, exp: Sequence[int]) -> int:
        return self._terms.get(tuple(exp), 0)

    def min_exponents(self) -> Exponent:
        if not self._terms:
            return (0,) * self._nvars
        return tuple(min(e[i] for e in self._terms) for i in range(self._nvars))

    def max_exponents(self) -> Exponent:
        if not self._terms:
            return (0,) * self._nvars
        return tuple(max(e[i] for e in self._terms) for i in range(self._nvars))

    def degree(self, var: int = 0) -> int:
        """Top exponent in ``var`` (not the span)."""
        if not self._terms:
            raise ValueError("degree of the zero polynomial")
        return max(e[var] for e in self._terms)

    def valuation(self, var: int = 0) -> int:
        if not self._terms:
            raise ValueError("valuation of the zero polynomial")
        return min(e[var] for e in self._terms)

    def span(self, var: int) -> int:
        return self.degree(var) - self.valuation(var)

    def leading_term(self) -> Tuple[Exponent, int]:
        """Lexicographically largest exponent and its coefficient."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self._terms)
        return exp, self._terms[exp]

    def content(self) -> int:
        g = 0
        for c in self._terms.values():
            g = gcd(g, c)
        return g

    # -- ring structure ---------------------------------------------------

    def _check(self, other: "LaurentPoly") -> None:
        if self._nvars != other._nvars:
            raise ValueError(f"variable-count mismatch: {self._nvars} vs {other._nvars}")

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other, self._nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for e, c in other._terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return LaurentPoly._raw(terms, self._nvars)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()}, self._nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._terms or not other._terms:
            return LaurentPoly.zero(self._nvars)
        terms: Dict[Exponent, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return LaurentPoly._raw({e: c for e, c in terms.items() if c}, self._nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if not self.is_monomial() or abs(next(iter(self._terms.values()))) != 1:
                raise ValueError("negative powers only for unit monomials")
            (e, c), = self._terms.items()
            return LaurentPoly._raw({tuple(-x * -k for x in e): c ** (-k)}, self._nvars)
        result = LaurentPoly.constant(1, self._nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other, self._nvars)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._nvars == other._nvars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_pairs()!r}, num_vars={self._nvars})"

    def __str__(self) -> str:
        return format_poly(self)

    # -- structural operations --------------------------------------------

    def shift(self, exp: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial with exponent ``exp``."""
        return LaurentPoly._raw(
            {tuple(a + b for a, b in zip(e, exp)): c for e, c in self._terms.items()}, self._nvars
        )

    def scale(self, k: int) -> "LaurentPoly":
        if k == 0:
            return LaurentPoly.zero(self._nvars)
        return LaurentPoly._raw({e: c * k for e, c in self._terms.items()}, self._nvars)

    def exact_div_int(self, k: int) -> "LaurentPoly":
        out = {}
        for e, c in self._terms.items():
            q, r = divmod(c, k)
            if r:
                raise ArithmeticError(f"{k} does not divide coefficient {c}")
            out[e] = q
        return LaurentPoly._raw(out, self._nvars)

    def insert_var(self, index: int) -> "LaurentPoly":
        """Embed into one more variable, inserted at position ``index``."""
        return LaurentPoly._raw(
            {e[:index] + (0,) + e[index:]: c for e, c in self._terms.items()}, self._nvars + 1
        )

    def drop_var(self, index: int) -> "LaurentPoly":
        """Remove a variable that does not occur."""
        out = {}
        for e, c in self._terms.items():
            if e[index]:
                raise ValueError(f"variable {index} occurs in the polynomial")
            out[e[:index] + e[index + 1:]] = c
        return LaurentPoly._raw(out, self._nvars - 1)

    def permute_vars(self, order: Sequence[int]) -> "LaurentPoly":
        """New variable i is old variable ``order[i]``."""
        return LaurentPoly._raw(
            {tuple(e[j] for j in order): c for e, c in self._terms.items()}, self._nvars
        )

    def coefficients_in(self, var: int) -> Dict[int, "LaurentPoly"]:
        """Split as sum of var^k * c_k(others); the c_k keep all num_vars slots with var set to 0."""
        out: Dict[int, Dict[Exponent, int]] = {}
        for e, c in self._terms.items():
            k = e[var]
            out.setdefault(k, {})[e[:var] + (0,) + e[var + 1:]] = c
        return {k: LaurentPoly._raw(t, self._nvars) for k, t in out.items()}

    def derivative(self, var: int = 0) -> "LaurentPoly":
        out = {}
        for e, c in self._terms.items():
            if e[var]:
                ne = list(e)
                ne[var] -= 1
                out[tuple(ne)] = c * e[var]
        return LaurentPoly._raw(out, self._nvars)

    def evaluate(self, point: Sequence[complex]) -> complex:
        total = 0j
        for e, c in self._terms.items():
            term = complex(c)
            for z, k in zip(point, e):
                if k:
                    term *= z ** k
            total += term
        return total

    def univariate_coeffs(self) -> Tuple[int, List[int]]:
        """For a one-variable polynomial: (valuation, ascending coefficient list)."""
        if self._nvars != 1:
            raise ValueError("not a univariate polynomial")
        if not self._terms:
            return 0, []
        lo, hi = self.valuation(0), self.degree(0)
        return lo, [self._terms.get((k,), 0) for k in range(lo, hi + 1)]


def format_poly(p: LaurentPoly, names: Optional[Sequence[str]] = None) -> str:
    if p.is_zero():
        return "0"
    n = p.num_vars
    if names is None:
        names = ["t"] if n == 1 else [f"t{i + 1}" for i in range(n)]
    parts = []
    for e, c in sorted(p.items(), reverse=True):
        mono = "*".join(
            names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
        )
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# -- unit normal form ----------------------------------------------------


@dataclass(frozen=True)
class UnitNormalForm:
    """``original == sign * monomial(shift) * poly``."""

    poly: LaurentPoly
    sign: int
    shift: Exponent

    def reconstruct(self) -> LaurentPoly:
        return self.poly.shift(self.shift).scale(self.sign)


def normalize_unit(p: LaurentPoly) -> UnitNormalForm:
    """Divide out the unit of Z[Z^n]: minimum exponent 0 per variable, positive lex-leading coefficient."""
    if p.is_zero():
        return UnitNormalForm(p, 1, (0,) * p.num_vars)
    shift = p.min_exponents()
    q = p.shift(tuple(-s for s in shift))
    sign = 1 if q.leading_term()[1] > 0 else -1
    if sign < 0:
        q = -q
    return UnitNormalForm(q, sign, shift)


def normalized(p: LaurentPoly) -> LaurentPoly:
    return normalize_unit(p).poly


def equal_up_to_unit(p: LaurentPoly, q: LaurentPoly) -> bool:
    return normalized(p) == normalized(q)


# -- linear substitution -------------------------------------------------


@dataclass(frozen=True)
class IntLinearMap:
    """Integer matrix acting on exponent vectors (rows = target rank)."""

    matrix: Tuple[Tuple[int, ...], ...]

    def __init__(self, matrix):
        rows = tuple(tuple(int(x) for x in row) for row in matrix)
        if rows and len({len(r) for r in rows}) != 1:
            raise ValueError("ragged matrix")
        object.__setattr__(self, "matrix", rows)

    @property
    def rows(self) -> int:
        return len(self.matrix)

    @property
    def cols(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    def apply(self, v: Sequence[int]) -> Exponent:
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.matrix)

    def is_surjective(self) -> bool:
        """Surjective onto Z^rows iff the gcd of the maximal minors is 1."""
        if self.rows > self.cols:
            return False
        g = 0
        for cols in combinations(range(self.cols), self.rows):
            g = gcd(g, int_det([[row[c] for c in cols] for row in self.matrix]))
            if g == 1:
                return True
        return g == 1


def substitute_linear(p: LaurentPoly, f: IntLinearMap) -> LaurentPoly:
    """Send each monomial t^e to t^(f e), summing colliding coefficients."""
    if f.cols != p.num_vars:
        raise ValueError(f"map has {f.cols} columns but polynomial has {p.num_vars} variables")
    terms: Dict[Exponent, int] = {}
    for e, c in p.items():
        img = f.apply(e)
        terms[img] = terms.get(img, 0) + c
    return LaurentPoly({e: c for e, c in terms.items() if c}, f.rows)


def complete_to_basis(a: Sequence[int]) -> List[List[int]]:
    """Unimodular integer matrix whose first row is the primitive vector ``a``."""
    n = len(a)
    if gcd(*a) != 1:
        raise ValueError(f"{list(a)} is not primitive")
    # column operations V with a^T V = e1^T; track V^{-1} as row operations
    row = list(a)
    vinv = [[int(i == j) for j in range(n)] for i in range(n)]

    def add_col(dst: int, src: int, k: int) -> None:
        # col_dst += k col_src ; inverse update: row_src -= k row_dst
        row[dst] += k * row[src]
        vinv[src] = [x - k * y for x, y in zip(vinv[src], vinv[dst])]

    def swap(i: int, j: int) -> None:
        row[i], row[j] = row[j], row[i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    while sum(1 for x in row if x) > 1 or row[0] == 0:
        nz = [i for i in range(n) if row[i]]
        piv = min(nz, key=lambda i: abs(row[i]))
        if piv != 0:
            swap(0, piv)
        for i in range(1, n):
            if row[i]:
                add_col(i, 0, -(row[i] // row[0]))
    if row[0] == -1:
        row[0] = 1
        vinv[0] = [-x for x in vinv[0]]
    return vinv


# -- exact division and gcd ----------------------------------------------


def divide_exact(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    """Quotient p / d in the Laurent ring; ArithmeticError if d does not divide p."""
    q, r = divmod_lex(p, d)
    if r:
        raise ArithmeticError("division is not exact")
    return q


def divmod_lex(p: LaurentPoly, d: LaurentPoly) -> Tuple[LaurentPoly, LaurentPoly]:
    """Lex-leading-term division after clearing monomial units.

    The remainder is zero exactly when d divides p in Z[t^{+-1}].
    """
    p._check(d)
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    n = p.num_vars
    if p.is_zero():
        return LaurentPoly.zero(n), LaurentPoly.zero(n)
    ps, ds = p.min_exponents(), d.min_exponents()
    pp = p.shift(tuple(-x for x in ps))
    dd = d.shift(tuple(-x for x in ds))
    lexp, lc = dd.leading_term()
    quot: Dict[Exponent, int] = {}
    rem = dict(pp._terms)
    dterms = list(dd._terms.items())
    while rem:
        e = max(rem)
        c = rem[e]
        diff = tuple(a - b for a, b in zip(e, lexp))
        if any(x < 0 for x in diff) or c % lc:
            break
        k = c // lc
        quot[diff] = k
        for de, dc in dterms:
            te = tuple(a + b for a, b in zip(diff, de))
            v = rem.get(te, 0) - k * dc
            if v:
                rem[te] = v
            else:
                del rem[te]
    back = tuple(a - b for a, b in zip(ps, ds))
    q = LaurentPoly._raw(quot, n).shift(back)
    if rem:
        r = p - q * d
        return q, r
    return q, LaurentPoly.zero(n)


def _prem(a: LaurentPoly, b: LaurentPoly, var: int) -> LaurentPoly:
    """Pseudo-remainder (up to a power of lc(b)) of polynomials with nonnegative exponents."""
    db = b.degree(var)
    lcb = b.coefficients_in(var)[db]
    r = a
    while r and r.degree(var) >= db:
        dr = r.degree(var)
        lcr = r.coefficients_in(var)[dr]
        shift = [0] * r.num_vars
        shift[var] = dr - db
        r = r * lcb - b.shift(shift) * lcr
    return r


def _content_in(p: LaurentPoly, var: int) -> LaurentPoly:
    g = None
    for c in p.coefficients_in(var).values():
        g = c if g is None else poly_gcd(g, c)
        if g.is_constant() and abs(g.constant_value()) == 1:
            break
    return g


def poly_gcd(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """gcd in Z[t1^{+-1},...,tn^{+-1}], returned in unit normal form.

    Recursive primitive-remainder sequences on the highest-index variable
    that occurs; integer content handled at the bottom.
    """
    p._check(q)
    n = p.num_vars
    if p.is_zero():
        return normalized(q)
    if q.is_zero():
        return normalized(p)
    p, q = normalized(p), normalized(q)
    occurring = [i for i in range(n) if p.span(i) or q.span(i)]
    if not occurring:
        return LaurentPoly.constant(gcd(p.constant_value(), q.constant_value()), n)
    var = occurring[-1]
    cp, cq = _content_in(p, var), _content_in(q, var)
    cont = poly_gcd(cp, cq)
    a, b = divide_exact(p, cp), divide_exact(q, cq)
    if a.degree(var) < b.degree(var):
        a, b = b, a
    while b and b.degree(var) > 0:
        r = _prem(a, b, var)
        a = b
        if not r:
            b = r
            break
        b = divide_exact(r, _content_in(r, var))
    if b:
        # b is a nonzero constant in var: the primitive gcd is trivial
        g = LaurentPoly.constant(1, n)
    else:
        g = divide_exact(a, _content_in(a, var))
    return normalized(g * cont)


# -- determinants and resultants -----------------------------------------


def int_det(m: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant of an integer matrix."""
    a = [list(map(int, row)) for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def poly_det(m: Sequence[Sequence[LaurentPoly]], num_vars: Optional[int] = None) -> LaurentPoly:
    """Bareiss fraction-free determinant over the Laurent ring (exact divisions)."""
    a = [list(row) for row in m]
    n = len(a)
    if n == 0:
        return LaurentPoly.constant(1, num_vars or 0)
    nv = a[0][0].num_vars
    sign = 1
    prev = LaurentPoly.constant(1, nv)
    for k in range(n - 1):
        if a[k][k].is_zero():
            # prefer the sparsest available pivot
            cands = [i for i in range(k + 1, n) if a[i][k]]
            if not cands:
                return LaurentPoly.zero(nv)
            i = min(cands, key=lambda r: len(a[r][k]))
            a[k], a[i] = a[i], a[k]
            sign = -sign
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                num = a[i][j] * piv - aik * a[k][j]
                a[i][j] = num if prev == 1 else divide_exact(num, prev)
        prev = piv
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def sylvester_matrix(p: LaurentPoly, q: LaurentPoly, var: int) -> List[List[LaurentPoly]]:
    n = p.num_vars
    dp, dq = p.degree(var), q.degree(var)
    pc, qc = p.coefficients_in(var), q.coefficients_in(var)
    zero = LaurentPoly.zero(n)
    size = dp + dq
    rows = []
    for i in range(dq):
        rows.append([pc.get(dp - (j - i), zero) if 0 <= j - i <= dp else zero for j in range(size)])
    for i in range(dp):
        rows.append([qc.get(dq - (j - i), zero) if 0 <= j - i <= dq else zero for j in range(size)])
    return rows


def resultant(p: LaurentPoly, q: LaurentPoly, var: int) -> LaurentPoly:
    """Sylvester resultant in ``var`` of p and q.

    Each input is first multiplied by the power of ``var`` that makes its
    minimum exponent in ``var`` zero; the result is exact for those
    shifted polynomials (so a unit multiple of any other convention).
    """
    p._check(q)
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant with a zero polynomial")
    shift = [0] * p.num_vars
    shift[var] = -p.valuation(var)
    p = p.shift(shift)
    shift[var] = -q.valuation(var)
    q = q.shift(shift)
    dp, dq = p.degree(var), q.degree(var)
    if dp == 0 and dq == 0:
        return LaurentPoly.constant(1, p.num_vars)
    if dq == 0:
        return q ** dp
    if dp == 0:
        return p ** dq
    return poly_det(sylvester_matrix(p, q, var))


# -- cyclotomics ---------------------------------------------------------


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> LaurentPoly:
    """n-th cyclotomic polynomial, by dividing z^n - 1 by Psi_d for proper divisors d."""
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    p = LaurentPoly({(n,): 1, (0,): -1}, 1)
    for d in range(1, n):
        if n % d == 0:
            p = divide_exact(p, cyclotomic(d))
    return p


def euler_phi(n: int) -> int:
    result, m, f = n, n, 2
    while f * f <= m:
        if m % f == 0:
            while m % f == 0:
                m //= f
            result -= result // f
        f += 1
    if m > 1:
        result -= result // m
    return result


def extended_cyclotomic(n: int, v: Sequence[int]) -> LaurentPoly:
    """z^b * Psi_n(z^v) with b_k = max(0, -v_k deg Psi_n), so all powers are nonnegative."""
    v = tuple(int(x) for x in v)
    if not v:
        raise ValueError("direction vector must have at least one entry")
    if not any(v):
        raise ValueError("zero direction gives a constant, not an extended cyclotomic")
    psi = cyclotomic(n)
    deg = psi.degree(0)
    b = tuple(max(0, -vk * deg) for vk in v)
    terms = {}
    for (j,), c in psi.items():
        terms[tuple(bk + j * vk for bk, vk in zip(b, v))] = c
    return LaurentPoly(terms, len(v))


def support_direction(p: LaurentPoly) -> Optional[Tuple[Exponent, Exponent]]:
    """(base, primitive direction) if the support lies on base + k*direction, k >= 0.

    A single monomial gets the first coordinate direction.
    """
    if p.is_zero():
        raise ValueError("support of the zero polynomial")
    n = p.num_vars
    exps = sorted(e for e, _ in p.items())
    base = exps[0]
    if len(exps) == 1:
        return base, tuple(int(i == 0) for i in range(n))
    diffs = [tuple(a - b for a, b in zip(e, base)) for e in exps[1:]]
    g = gcd(*diffs[0])
    v = tuple(x // g for x in diffs[0])
    idx = next(i for i, x in enumerate(v) if x)
    for d in diffs[1:]:
        k, r = divmod(d[idx], v[idx])
        if r or k < 0 or any(a != k * b for a, b in zip(d, v)):
            return None
    return base, v


def collapse_along(p: LaurentPoly, base: Exponent, direction: Exponent) -> LaurentPoly:
    """Univariate image sum c_k t^k of a polynomial supported on base + k*direction."""
    idx = next(i for i, x in enumerate(direction) if x)
    terms = {}
    for e, c in p.items():
        terms[((e[idx] - base[idx]) // direction[idx],)] = c
    return LaurentPoly(terms, 1)


def char_poly(m: Sequence[Sequence[int]]) -> LaurentPoly:
    """det(t I - m) for a square integer matrix."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    t = LaurentPoly.variable(0, 1)
    rows = [
        [(t if i == j else LaurentPoly.zero(1)) - int(m[i][j]) for j in range(n)]
        for i in range(n)
    ]
    return poly_det(rows, num_vars=1)
