"""Torsion in the first homology of finite abelian covers.

Two independent routes: resultants against cyclotomic quotients for
cyclic covers, and Smith normal form of the presentation matrix expanded
over the regular representation of the deck group.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Sequence, Tuple

from .lpoly import LaurentPoly, int_det, resultant

Matrix = List[List[int]]


@dataclass(frozen=True)
class SNFResult:
    diagonal: Tuple[int, ...]
    rank_free: int

    @property
    def torsion(self) -> int:
        out = 1
        for d in self.diagonal:
            if d:
                out *= d
        return out


@dataclass(frozen=True)
class CoverSpec:
    """Sublattice Gamma < Z^n spanned by the columns of ``lattice``."""

    lattice: Tuple[Tuple[int, ...], ...]

    def __init__(self, lattice):
        rows = tuple(tuple(int(x) for x in r) for r in lattice)
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("lattice matrix must be square")
        if int_det(rows) == 0:
            raise ValueError("lattice is not of full rank")
        object.__setattr__(self, "lattice", rows)

    @classmethod
    def diagonal(cls, ns: Sequence[int]) -> "CoverSpec":
        return cls([[ns[i] if i == j else 0 for j in range(len(ns))] for i in range(len(ns))])

    @property
    def rank(self) -> int:
        return len(self.lattice)

    @property
    def index(self) -> int:
        return abs(int_det(self.lattice))


def smith_decomposition(m: Sequence[Sequence[int]]) -> Tuple[Matrix, Matrix, Matrix]:
    """(U, D, V) with U m V = D diagonal, U and V unimodular, d_i | d_{i+1}."""
    a = [list(map(int, r)) for r in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    U = [[int(i == j) for j in range(rows)] for i in range(rows)]
    V = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, k):
        for row in a:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    for t in range(min(rows, cols)):
        while True:
            nz = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
            if not nz:
                break
            _, pi, pj = min(nz)
            swap_rows(t, pi)
            swap_cols(t, pj)
            clean = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
                    clean = clean and a[t][j] == 0
            if not clean:
                continue
            # divisibility fix-up: pivot must divide the rest of the block
            bad = next(
                ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % a[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
    return U, a, V


def smith_normal_form(m: Sequence[Sequence[int]]) -> SNFResult:
    if not m or not m[0]:
        return SNFResult((), 0)
    _, D, _ = smith_decomposition(m)
    diag = tuple(D[i][i] for i in range(min(len(D), len(D[0]))))
    return SNFResult(diag, sum(1 for d in diag if d == 0))


# -- cyclic covers -------------------------------------------------------


class RootOfUnityZero(ArithmeticError):
    """The Alexander polynomial vanishes at a nontrivial n-th root of unity."""


def torsion_cyclic_cover(delta: LaurentPoly, n: int) -> int:
    """|Res(delta, (t^n - 1)/(t - 1))|: torsion of H_1 of the n-fold cyclic cover."""
    if delta.num_vars != 1:
        raise ValueError("expected a one-variable polynomial")
    if delta.is_zero():
        raise ValueError("zero polynomial")
    if n < 1:
        raise ValueError("n must be positive")
    quot = LaurentPoly.from_coeffs([1] * n)
    res = resultant(delta, quot, 0)
    val = abs(res.constant_value())
    if val == 0:
        raise RootOfUnityZero(f"delta vanishes at a nontrivial {n}-th root of unity")
    return val


@dataclass(frozen=True)
class GrowthPoint:
    n: int
    value: float  # log(torsion) / n, nan when skipped
    skipped: bool = False


def growth_series(delta: LaurentPoly, n_max: int) -> List[GrowthPoint]:
    """(n, log|Tor H_1| / n) for the cyclic covers n = 1..n_max."""
    out = []
    for n in range(1, n_max + 1):
        try:
            tor = torsion_cyclic_cover(delta, n)
        except RootOfUnityZero:
            out.append(GrowthPoint(n, float("nan"), True))
            continue
        out.append(GrowthPoint(n, math.log(tor) / n))
    return out


# -- general abelian covers ------------------------------------------------


class ExpansionTooLarge(ValueError):
    pass


def deck_group(cover: CoverSpec) -> Tuple[Tuple[int, ...], List[Tuple[int, ...]]]:
    """Invariant factors of Z^n / Gamma and the image of each basis vector e_j."""
    U, D, _ = smith_decomposition(cover.lattice)
    n = cover.rank
    orders = tuple(D[i][i] for i in range(n))
    gens = [tuple(U[i][j] % orders[i] for i in range(n)) for j in range(n)]
    return orders, gens


def regular_representation(cover: CoverSpec):
    """Element list of G = Z^n/Gamma, an index lookup, and the images of e_j."""
    orders, gens = deck_group(cover)
    elems = list(product(*[range(d) for d in orders]))
    index = {g: i for i, g in enumerate(elems)}
    return orders, elems, index, gens


def expand_matrix(
    m: Sequence[Sequence[LaurentPoly]], cover: CoverSpec, max_dim: int = 2000
) -> Matrix:
    """Replace each entry by its image under the regular representation of Z^n/Gamma."""
    orders, elems, index, gens = regular_representation(cover)
    size = len(elems)
    r, s = len(m), len(m[0])
    if r * size > max_dim or s * size > max_dim:
        raise ExpansionTooLarge(f"expanded matrix would be {r * size}x{s * size}")
    out = [[0] * (s * size) for _ in range(r * size)]
    for bi, row in enumerate(m):
        for bj, poly in enumerate(row):
            if poly.num_vars != cover.rank:
                raise ValueError("polynomial variable count differs from lattice rank")
            for e, c in poly.items():
                shift = tuple(
                    sum(k * g[i] for k, g in zip(e, gens)) % orders[i] for i in range(len(orders))
                )
                # t^e sends basis element g to g + shift
                for gi, g in enumerate(elems):
                    h = index[tuple((x + y) % d for x, y, d in zip(g, shift, orders))]
                    out[bi * size + h][bj * size + gi] += c
    return out


def torsion_abelian_cover_snf(
    delta_presentation: Sequence[Sequence[LaurentPoly]], cover: CoverSpec, max_dim: int = 2000
) -> Tuple[int, int]:
    """(torsion order, free rank) of the module presented after expansion over Z^n / Gamma."""
    snf = smith_normal_form(expand_matrix(delta_presentation, cover, max_dim))
    return snf.torsion, snf.rank_free


def monodromy_presentation(phi: Sequence[Sequence[int]]) -> List[List[LaurentPoly]]:
    """tI - phi as a matrix over Z[t^{+-1}]."""
    n = len(phi)
    t = LaurentPoly.variable(0, 1)
    zero = LaurentPoly.zero(1)
    return [[(t if i == j else zero) - int(phi[i][j]) for j in range(n)] for i in range(n)]
