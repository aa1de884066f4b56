"""Finite covers of punctured surfaces and lifts of automorphisms.

The surface retracts to a rose, so pi_1 is free of rank r and a degree-d
cover is a transitive action of F_r on d points (a Schreier graph).  The
homology of the cover is the cycle space of that graph, of rank d(r-1)+1.

Points are 0-based internally; fixture one-line notation is 1-based.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import Dict, List, Optional, Sequence, Tuple

from .lpoly import char_poly, divmod_lex, int_det
from .mahler import integer_roots
from .words import Word, abelianize, format_word, invert_word, parse_word, reduce_word, substitute

log = logging.getLogger(__name__)

Perm = Tuple[int, ...]
Matrix = List[List[int]]

DEFAULT_DEGREE_CAP = 7


def _inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


@dataclass(frozen=True)
class PermCover:
    """Right action of F_r on {0..d-1}: point . x_j = perms[j][point]."""

    degree: int
    perms: Tuple[Perm, ...]

    def __init__(self, degree: int, perms: Sequence[Sequence[int]], check: bool = True):
        perms = tuple(tuple(int(x) for x in p) for p in perms)
        object.__setattr__(self, "degree", int(degree))
        object.__setattr__(self, "perms", perms)
        if check:
            for p in perms:
                if sorted(p) != list(range(self.degree)):
                    raise ValueError(f"{p} is not a permutation of {self.degree} points")
            if not self.is_transitive():
                raise ValueError("action is not transitive")

    @classmethod
    def from_one_line(cls, perms: Sequence[Sequence[int]]) -> "PermCover":
        perms = [[x - 1 for x in p] for p in perms]
        return cls(len(perms[0]), perms)

    def to_one_line(self) -> List[List[int]]:
        return [[x + 1 for x in p] for p in self.perms]

    @property
    def rank(self) -> int:
        return len(self.perms)

    def step(self, point: int, gen: int, sign: int) -> int:
        p = self.perms[gen]
        return p[point] if sign > 0 else p.index(point)

    def act(self, point: int, word: Sequence[Tuple[int, int]]) -> int:
        for g, s in word:
            point = self.step(point, g, s)
        return point

    def word_perm(self, word: Sequence[Tuple[int, int]]) -> Perm:
        return tuple(self.act(p, word) for p in range(self.degree))

    def is_transitive(self) -> bool:
        seen, stack = {0}, [0]
        while stack:
            p = stack.pop()
            for perm in self.perms:
                for q in (perm[p], perm.index(p)):
                    if q not in seen:
                        seen.add(q)
                        stack.append(q)
        return len(seen) == self.degree

    @property
    def homology_rank(self) -> int:
        return self.degree * (self.rank - 1) + 1


@dataclass(frozen=True)
class FreeAutomorphism:
    rank: int
    images: Tuple[Word, ...]
    inverse: Optional[Tuple[Word, ...]] = None

    def __init__(self, rank: int, images, inverse=None):
        def conv(ws):
            return tuple(parse_word(w, rank) if isinstance(w, str) else reduce_word(w) for w in ws)

        object.__setattr__(self, "rank", int(rank))
        object.__setattr__(self, "images", conv(images))
        object.__setattr__(self, "inverse", conv(inverse) if inverse is not None else None)
        if len(self.images) != self.rank:
            raise ValueError("need one image per generator")
        if abs(int_det(self.abelianization())) != 1:
            raise ValueError("abelianization is not unimodular; not an automorphism")
        if self.inverse is not None:
            if len(self.inverse) != self.rank:
                raise ValueError("need one inverse image per generator")
            for j in range(self.rank):
                gen = ((j, 1),)
                if substitute(self.inverse[j], self.images) != gen or substitute(
                    self.images[j], self.inverse
                ) != gen:
                    raise ValueError("supplied inverse does not compose to the identity")

    @classmethod
    def _trusted(cls, rank: int, images, inverse) -> "FreeAutomorphism":
        """Skip validation; only for values correct by construction."""
        out = cls.__new__(cls)
        object.__setattr__(out, "rank", rank)
        object.__setattr__(out, "images", tuple(images))
        object.__setattr__(out, "inverse", tuple(inverse) if inverse is not None else None)
        return out

    @classmethod
    def identity(cls, rank: int) -> "FreeAutomorphism":
        gens = [((j, 1),) for j in range(rank)]
        return cls(rank, gens, gens)

    @property
    def verified(self) -> bool:
        return self.inverse is not None

    def abelianization(self) -> Matrix:
        """Column j is the exponent-sum vector of the image of x_j."""
        cols = [abelianize(w, self.rank) for w in self.images]
        return [[cols[j][i] for j in range(self.rank)] for i in range(self.rank)]

    def __call__(self, word: Sequence[Tuple[int, int]]) -> Word:
        return substitute(word, self.images)

    def then(self, other: "FreeAutomorphism") -> "FreeAutomorphism":
        """other after self: x -> other(self(x))."""
        imgs = [other(w) for w in self.images]
        if self.inverse is not None and other.inverse is not None:
            # composite of two checked automorphisms needs no re-check
            inv = [substitute(w, self.inverse) for w in other.inverse]
            return FreeAutomorphism._trusted(self.rank, imgs, inv)
        return FreeAutomorphism(self.rank, imgs)

    def power(self, k: int) -> "FreeAutomorphism":
        out = FreeAutomorphism.identity(self.rank)
        for _ in range(k):
            out = out.then(self)
        return out

    def to_strings(self) -> Dict[str, List[str]]:
        out = {"images": [format_word(w) for w in self.images]}
        if self.inverse is not None:
            out["inverse"] = [format_word(w) for w in self.inverse]
        return out


@dataclass(frozen=True)
class LiftData:
    tau: Perm
    homology_matrix: Tuple[Tuple[int, ...], ...]
    power: int = 1


# -- Schreier graphs -----------------------------------------------------


class SchreierGraph:
    """Edges (p, j) run from p to p . x_j; the BFS tree from point 0 fixes a cycle basis."""

    def __init__(self, cover: PermCover):
        self.cover = cover
        d, r = cover.degree, cover.rank
        self.edges = [(p, j) for p in range(d) for j in range(r)]
        parent: Dict[int, Tuple[Tuple[int, int], int]] = {}
        order, seen = [0], {0}
        tree = set()
        i = 0
        while i < len(order):
            p = order[i]
            i += 1
            for j in range(r):
                for q, edge, sign in ((cover.perms[j][p], (p, j), 1), (cover.perms[j].index(p), None, -1)):
                    if sign < 0:
                        edge = (q, j)
                    if q not in seen:
                        seen.add(q)
                        order.append(q)
                        parent[q] = (edge, sign)
                        tree.add(edge)
        self.tree = tree
        self.basis = [e for e in self.edges if e not in tree]
        self.basis_index = {e: k for k, e in enumerate(self.basis)}
        # chain of the tree path from the root to each vertex
        self.root_path: Dict[int, Dict[Tuple[int, int], int]] = {0: {}}
        for q in order[1:]:
            edge, sign = parent[q]
            prev = edge[0] if sign > 0 else cover.perms[edge[1]][edge[0]]
            chain = dict(self.root_path[prev])
            chain[edge] = chain.get(edge, 0) + sign
            self.root_path[q] = chain

    def basis_cycle(self, k: int) -> Dict[Tuple[int, int], int]:
        p, j = self.basis[k]
        q = self.cover.perms[j][p]
        chain: Dict[Tuple[int, int], int] = {}
        _add(chain, self.root_path[p], 1)
        _add(chain, {(p, j): 1}, 1)
        _add(chain, self.root_path[q], -1)
        return chain

    def path_chain(self, start: int, word: Sequence[Tuple[int, int]]) -> Tuple[Dict, int]:
        chain: Dict[Tuple[int, int], int] = {}
        v = start
        for g, s in word:
            if s > 0:
                _add(chain, {(v, g): 1}, 1)
                v = self.cover.perms[g][v]
            else:
                u = self.cover.perms[g].index(v)
                _add(chain, {(u, g): 1}, -1)
                v = u
        return chain, v

    def coordinates(self, cycle: Dict[Tuple[int, int], int]) -> List[int]:
        return [cycle.get(e, 0) for e in self.basis]


def _add(acc: Dict, chain: Dict, k: int) -> None:
    for e, c in chain.items():
        v = acc.get(e, 0) + k * c
        if v:
            acc[e] = v
        else:
            acc.pop(e, None)


def _chain_map_matrix(src: SchreierGraph, dst: SchreierGraph, vertex_map, edge_word) -> Matrix:
    """Matrix of the chain map sending edge (p, j) to the path edge_word(j) from vertex_map[p]."""
    images = {}
    for (p, j) in src.edges:
        chain, end = dst.path_chain(vertex_map[p], edge_word(j))
        q = src.cover.perms[j][p]
        if end != vertex_map[q]:
            raise ValueError("vertex map is not compatible with the edge map")
        images[(p, j)] = chain
    cols = []
    for k in range(len(src.basis)):
        img: Dict = {}
        for e, c in src.basis_cycle(k).items():
            _add(img, images[e], c)
        cols.append(dst.coordinates(img))
    return [[cols[j][i] for j in range(len(cols))] for i in range(len(dst.basis))]


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


# -- lifts ---------------------------------------------------------------


def pulled_back(cover: PermCover, phi: FreeAutomorphism) -> PermCover:
    """The action x_j -> sigma(phi(x_j))."""
    return PermCover(cover.degree, [cover.word_perm(w) for w in phi.images], check=False)


def intertwiners(src: PermCover, dst: PermCover) -> List[Perm]:
    """All bijections tau with tau(p . x_j) = tau(p) . x_j (src action left, dst right)."""
    d = src.degree
    out = []
    for start in range(d):
        tau = {0: start}
        stack = [0]
        ok = True
        while stack and ok:
            p = stack.pop()
            for j in range(src.rank):
                for q, tq in (
                    (src.perms[j][p], dst.perms[j][tau[p]]),
                    (src.perms[j].index(p), dst.perms[j].index(tau[p])),
                ):
                    if q in tau:
                        if tau[q] != tq:
                            ok = False
                            break
                    else:
                        tau[q] = tq
                        stack.append(q)
                if not ok:
                    break
        if ok and len(tau) == d and len(set(tau.values())) == d:
            out.append(tuple(tau[p] for p in range(d)))
    return out


def lift_exists(cover: PermCover, phi: FreeAutomorphism) -> List[Perm]:
    """Vertex maps tau of the lifts of phi to the cover (empty when phi does not lift)."""
    if cover.rank != phi.rank:
        raise ValueError("cover and automorphism have different ranks")
    return intertwiners(cover, pulled_back(cover, phi))


def lifted_homology_action(cover: PermCover, phi: FreeAutomorphism, tau: Sequence[int]) -> Matrix:
    """Action on H_1 of the cover of the lift with vertex map tau (columns = images of basis cycles)."""
    tau = tuple(tau)
    if tau not in lift_exists(cover, phi):
        raise ValueError("tau does not intertwine the cover with its pullback")
    g = SchreierGraph(cover)
    return _chain_map_matrix(g, g, tau, lambda j: phi.images[j])


def power_lifts(
    cover: PermCover, phi: FreeAutomorphism, max_power: int
) -> Tuple[int, List[LiftData]]:
    """Smallest k <= max_power such that phi^k lifts, with all its lifts.

    Works through the chain sigma, sigma.phi, sigma.phi^2, ... so only the
    words phi(x_j) are ever traced; returns (0, []) if no power lifts.
    """
    chain = [cover]
    for k in range(1, max_power + 1):
        chain.append(pulled_back(chain[-1], phi))
        taus = intertwiners(cover, chain[-1])
        if not taus:
            continue
        graphs = [SchreierGraph(c) for c in chain]
        ident = list(range(cover.degree))
        step = [
            _chain_map_matrix(graphs[i + 1], graphs[i], ident, lambda j: phi.images[j])
            for i in range(k)
        ]
        total = step[0]
        for m in step[1:]:
            total = _matmul(total, m)
        lifts = []
        for tau in taus:
            T = _chain_map_matrix(graphs[0], graphs[k], tau, lambda j: ((j, 1),))
            L = _matmul(total, T)
            lifts.append(LiftData(tau, tuple(tuple(r) for r in L), k))
        return k, lifts
    return 0, []


def pushforward_matrix(cover: PermCover) -> Matrix:
    """H_1(cover) -> H_1(base) = Z^r in the graph cycle basis."""
    g = SchreierGraph(cover)
    cols = []
    for k in range(len(g.basis)):
        v = [0] * cover.rank
        for (p, j), c in g.basis_cycle(k).items():
            v[j] += c
        cols.append(v)
    return [[cols[k][i] for k in range(len(cols))] for i in range(cover.rank)]


def spectral_radius(m: Sequence[Sequence[int]]) -> float:
    """Largest root modulus of the characteristic polynomial."""
    if not m:
        return 0.0
    _, roots = integer_roots(char_poly(m))
    return max((abs(r) for r, _ in roots), default=0.0)


def _rank_q(m: Sequence[Sequence[int]]) -> int:
    a = [[Fraction(x) for x in row] for row in m]
    rank, cols = 0, len(a[0]) if a else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(len(a)):
            if i != rank and a[i][c]:
                f = a[i][c] / a[rank][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def verify_quotient_divisibility(base, lift, pushforward) -> bool:
    """char_poly(base) divides char_poly(lift), given pushforward . lift == base . pushforward."""
    base = [list(r) for r in base]
    lift = [list(r) for r in lift]
    P = [list(r) for r in pushforward]
    if _matmul(P, lift) != _matmul(base, P):
        raise ValueError("pushforward does not intertwine lift and base")
    if _rank_q(P) != len(P):
        raise ValueError("pushforward is not surjective over Q")
    _, rem = divmod_lex(char_poly(lift), char_poly(base))
    return rem.is_zero()


# -- enumeration ---------------------------------------------------------


def count_transitive_tuples(rank: int, degree: int, limit: int = 2_000_000) -> int:
    """Brute-force count of transitive r-tuples in S_d (no deduplication)."""
    return len(list(_labelled_transitive(rank, degree, limit)))


def _labelled_transitive(rank: int, degree: int, limit: int):
    perms = list(permutations(range(degree)))
    if len(perms) ** rank > limit:
        raise ValueError(f"{len(perms) ** rank} tuples exceeds the brute-force limit {limit}")
    for tup in product(perms, repeat=rank):
        c = PermCover(degree, tup, check=False)
        if c.is_transitive():
            yield c


def _standard_form(perms: Sequence[Perm], base: int) -> Tuple[Perm, ...]:
    """Relabel points in order of first appearance scanning from ``base``."""
    d = len(perms[0])
    inv = [_inverse(p) for p in perms]
    label = {base: 0}
    order = [base]
    i = 0
    while i < len(order):
        p = order[i]
        i += 1
        for j in range(len(perms)):
            for q in (perms[j][p], inv[j][p]):
                if q not in label:
                    label[q] = len(order)
                    order.append(q)
    out = []
    for perm in perms:
        new = [0] * d
        for p in range(d):
            new[label[p]] = label[perm[p]]
        out.append(tuple(new))
    return tuple(out)


def _subgroup_tables(rank: int, degree: int):
    """Coset tables (in standard form) of all index-``degree`` subgroups of F_rank."""
    cols = 2 * rank  # column 2j is x_j, 2j+1 is its inverse
    table = [[None] * cols for _ in range(degree)]
    count = [1]

    def first_gap():
        for c in range(count[0]):
            for g in range(cols):
                if table[c][g] is None:
                    return c, g
        return None

    def rec():
        gap = first_gap()
        if gap is None:
            if count[0] == degree:
                yield tuple(tuple(table[c][2 * j] for c in range(degree)) for j in range(rank))
            return
        c, g = gap
        ig = g ^ 1
        targets = [t for t in range(count[0]) if table[t][ig] is None]
        if count[0] < degree:
            targets.append(count[0])
        for t in targets:
            new = t == count[0]
            if new:
                count[0] += 1
            table[c][g] = t
            table[t][ig] = c
            yield from rec()
            table[c][g] = None
            table[t][ig] = None
            if new:
                count[0] -= 1

    yield from rec()


def enumerate_covers(
    rank: int, degree: int, dedup: bool = True, cap: int = DEFAULT_DEGREE_CAP
) -> List[PermCover]:
    """Transitive degree-d actions of F_rank.

    With ``dedup`` one representative per simultaneous-conjugacy class
    (equivalently per conjugacy class of index-d subgroups), in sorted
    canonical order; otherwise every labelled transitive tuple.
    """
    if degree < 1 or rank < 1:
        raise ValueError("rank and degree must be positive")
    if degree > cap:
        raise ValueError(f"degree {degree} exceeds the enumeration cap {cap}")
    if not dedup:
        return list(_labelled_transitive(rank, degree, limit=10**7))
    classes = set()
    for perms in _subgroup_tables(rank, degree):
        classes.add(min(_standard_form(perms, b) for b in range(degree)))
    return [PermCover(degree, perms, check=False) for perms in sorted(classes)]


# -- search --------------------------------------------------------------


@dataclass(frozen=True)
class SpectralLift:
    cover: PermCover
    lift: LiftData
    radius: float


def spectral_lift_search(
    phi: FreeAutomorphism,
    d_max: int,
    tol: float = 1e-9,
    cap: int = DEFAULT_DEGREE_CAP,
) -> Optional[SpectralLift]:
    """First lift (by degree, then canonical cover order) with homological spectral radius > 1 + tol.

    When phi does not lift to a cover, powers phi^k are tried with k up to
    the number of covers of that degree.  None is inconclusive.
    """
    if d_max > cap:
        log.warning("degree cap %d below requested %d; search truncated (inconclusive)", cap, d_max)
        d_max = cap
    for d in range(1, d_max + 1):
        covers = enumerate_covers(phi.rank, d, cap=cap)
        for cover in covers:
            k, lifts = power_lifts(cover, phi, max_power=len(covers))
            for lift in lifts:
                rho = spectral_radius(lift.homology_matrix)
                if rho > 1 + tol:
                    return SpectralLift(cover, lift, rho)
        log.info("degree %d: %d covers, no spectral lift", d, len(covers))
    return None
