"""End-to-end check of the three equivalent statements on one manifold record.

(1) some fibered monodromy has homological spectral radius > 1;
(2) the multivariable Alexander polynomial has Mahler measure > 1;
(3) for each fibered class, an explicit abelian cover whose pulled-back
    class has an Alexander polynomial of Mahler measure > 1.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import product
from typing import List, Optional, Tuple

from .alexander import (
    ManifoldRecord,
    ZeroSpecialization,
    abelian_cover_alexander,
    change_basis,
    char_poly_fibered,
    correction_roots,
    CorrectedSpecialization,
    pullback_class_specialization,
)
from .lpoly import IntLinearMap, LaurentPoly, complete_to_basis, equal_up_to_unit, normalized, substitute_linear
from .mahler import (
    MahlerConvergenceError,
    MahlerResult,
    SlicePoint,
    find_positive_slice,
    is_extended_cyclotomic_product,
    jensen_slice_integral,
    mahler_multivariate,
    mahler_univariate,
)
from .surfcover import spectral_radius

UNCERTIFIED = "record not certified hyperbolic; conclusions assume the stated fibered/pseudo-Anosov type"


@dataclass
class PipelineConfig:
    tol: float = 1e-9  # threshold above 1 for radii and Mahler measures
    quad_tol: float = 1e-4
    grid: Optional[int] = None
    max_doublings: int = 6
    max_denominator: int = 16
    delta: float = 1e-3
    jobs: int = 1


@dataclass
class ClassRadius:
    a: List[int]
    spectral_radius: float
    char_poly: str
    char_poly_mahler: float


@dataclass
class Statement1:
    fibered_class: Optional[List[int]]
    spectral_radius: Optional[float]
    holds: bool
    classes: List[ClassRadius] = field(default_factory=list)


@dataclass
class Statement2:
    mahler: float
    method: str
    error_estimate: float
    positive_slice: Optional[str]
    holds: bool


@dataclass
class CoverEvidence:
    fibered_class: List[int]
    slice_point: Optional[str]
    cover_k: Optional[int]
    cover_delta: Optional[str]
    pullback_class: Optional[List[int]]
    pullback_poly: Optional[str]
    cover_char_poly: Optional[str]
    fiber_components: Optional[int]
    leading_coefficient_unit: Optional[bool]
    mahler: Optional[float]
    character_product: Optional[float]
    holds: bool


@dataclass
class PipelineReport:
    name: str
    statement1: Statement1
    statement2: Statement2
    statement3_evidence: List[CoverEvidence]
    warnings: List[str]

    @property
    def statement3_holds(self) -> bool:
        return bool(self.statement3_evidence) and all(e.holds for e in self.statement3_evidence)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["statement3_holds"] = self.statement3_holds
        return d


def _statement1(rec: ManifoldRecord, cfg: PipelineConfig) -> Statement1:
    rows = []
    for fc in rec.fibered_classes:
        cp = char_poly_fibered(fc)
        rows.append(
            ClassRadius(list(fc.a), float(spectral_radius(fc.monodromy)), str(cp), mahler_univariate(cp).value)
        )
    if not rows:
        return Statement1(None, None, False, [])
    best = max(rows, key=lambda r: r.spectral_radius)
    return Statement1(best.a, best.spectral_radius, best.spectral_radius > 1 + cfg.tol, rows)


def _measure(delta: LaurentPoly, rec: ManifoldRecord, cfg: PipelineConfig, warnings: List[str]) -> MahlerResult:
    if rec.delta_factors is not None and is_extended_cyclotomic_product(delta, rec.delta_factors):
        return MahlerResult.exact_one()
    if delta.num_vars == 1:
        return mahler_univariate(delta)
    try:
        return mahler_multivariate(
            delta, grid=cfg.grid, tol=cfg.quad_tol, max_doublings=cfg.max_doublings, jobs=cfg.jobs
        )
    except MahlerConvergenceError as exc:
        warnings.append(f"Mahler quadrature did not converge: {exc}")
        return exc.last


def _classes(rec: ManifoldRecord, warnings: List[str]) -> List[Tuple[int, ...]]:
    if rec.fibered_classes:
        return [fc.a for fc in rec.fibered_classes]
    warnings.append("no fibered class supplied; using the first basis class (fiberedness not asserted)")
    return [tuple(int(i == 0) for i in range(rec.b1))]


def character_product_log(delta: LaurentPoly, k: int) -> float:
    """Sum over the k^(n-1) characters of the slice integrals (first variable inner)."""
    dims = delta.num_vars - 1
    return math.fsum(
        jensen_slice_integral(delta, SlicePoint([Fraction(a, k) for a in nums]))
        for nums in product(range(k), repeat=dims)
    )


def _evidence(
    delta: LaurentPoly, a: Tuple[int, ...], rec: ManifoldRecord, cfg: PipelineConfig, warnings: List[str]
) -> CoverEvidence:
    n = delta.num_vars
    if n == 1:
        spec = normalized(substitute_linear(delta, IntLinearMap([[a[0]]])))
        m = mahler_univariate(spec)
        return CoverEvidence(
            list(a), None, 1, str(delta), [1], str(spec), str(spec), 1,
            abs(spec.leading_term()[1]) == 1, m.value, m.log_value, m.exceeds_one(cfg.tol),
        )
    basis = complete_to_basis(a)
    local = change_basis(delta, basis)
    point = find_positive_slice(local, cfg.max_denominator, cfg.delta)
    if point is None:
        return CoverEvidence(list(a), None, None, None, None, None, None, None, None, None, None, False)
    k = point.denominator
    cover = local if k == 1 else abelian_cover_alexander(local, k, range(1, n))
    pull = [1] + [0] * (n - 1)
    try:
        spec = pullback_class_specialization(cover, IntLinearMap([pull]), require_monic=False)
    except ZeroSpecialization:
        warnings.append(f"class {list(a)}: pullback specialization vanished")
        return CoverEvidence(list(a), str(point), k, str(cover), pull, "0", None, None, None, None, None, False)
    lc_unit = abs(spec.leading_term()[1]) == 1
    if not lc_unit:
        warnings.append(f"class {list(a)}: pullback leading coefficient is not +-1 (class not fibered?)")
    m = mahler_univariate(spec)
    # the trivial character is trivial on every kernel, with xi(a*) = 1
    corrected = CorrectedSpecialization(spec, correction_roots(True, rec.closed, 1.0))
    # cover lattice is spanned by e_1, k e_2, ..., k e_n; the class reads off first coordinates
    lattice = [[(1 if i == 0 else k) * (i == j) for j in range(n)] for i in range(n)]
    components = math.gcd(*[gen[0] for gen in lattice])
    prod_log = character_product_log(local, k)
    return CoverEvidence(
        list(a), str(point), k, str(cover), pull, str(spec), str(corrected), components,
        lc_unit, m.value, prod_log, m.exceeds_one(cfg.tol),
    )


def run_pipeline(rec: ManifoldRecord, cfg: Optional[PipelineConfig] = None) -> PipelineReport:
    cfg = cfg or PipelineConfig()
    warnings = [UNCERTIFIED]
    s1 = _statement1(rec, cfg)
    delta = rec.alexander()
    if delta.is_zero():
        raise ValueError("Alexander polynomial is 0; higher-order polynomials are not supported")
    m = _measure(delta, rec, cfg, warnings)
    classes = _classes(rec, warnings)
    evidence = [_evidence(delta, a, rec, cfg, warnings) for a in classes]
    if rec.b1 == 1:
        slice_text = "n/a (b1 = 1)"
        slice_ok = True
    else:
        slice_text = evidence[0].slice_point
        slice_ok = slice_text is not None
    s2 = Statement2(m.value, m.method, m.error_estimate, slice_text, m.exceeds_one(cfg.tol) and slice_ok)
    for fc in rec.fibered_classes:
        cp = char_poly_fibered(fc)
        if rec.b1 == 1:
            expected = normalized(substitute_linear(delta, IntLinearMap([list(fc.a)])))
        else:
            spec = normalized(substitute_linear(delta, IntLinearMap([list(fc.a)])))
            if spec.is_zero():
                roots = correction_roots(True, rec.closed, 1.0)
                warnings.append(
                    f"class {list(fc.a)}: a(delta) = 0, so a(delta) * p(t) with p(t) = (t - 1)^{len(roots)} "
                    "is 0 and cannot be compared with the monodromy"
                )
                continue
            expected = CorrectedSpecialization(spec, correction_roots(True, rec.closed, 1.0)).to_laurent()
        if not equal_up_to_unit(cp, expected):
            warnings.append(
                f"class {list(fc.a)}: monodromy characteristic polynomial {cp} differs from "
                f"the specialized Alexander polynomial {expected}"
            )
    return PipelineReport(rec.name, s1, s2, evidence, warnings)


def format_report(rep: PipelineReport) -> str:
    s1, s2 = rep.statement1, rep.statement2
    lines = [f"manifold: {rep.name}"]
    if s1.spectral_radius is None:
        lines.append("(1) spectral radius > 1: False  (no fibered class)")
    else:
        lines.append(
            f"(1) spectral radius > 1: {s1.holds}  (class {s1.fibered_class}, radius {s1.spectral_radius:.12g})"
        )
        for row in s1.classes:
            lines.append(f"    class {row.a}: radius {row.spectral_radius:.12g}, char poly {row.char_poly}")
    lines.append(
        f"(2) M(Delta) > 1: {s2.holds}  (M = {s2.mahler:.12g}, method {s2.method}, "
        f"error {s2.error_estimate:.3g}, positive slice {s2.positive_slice})"
    )
    lines.append(f"(3) cover evidence: {rep.statement3_holds}")
    for ev in rep.statement3_evidence:
        lines.append(f"    class {ev.fibered_class}: holds {ev.holds}")
        if ev.cover_k is not None:
            lines.append(f"      slice {ev.slice_point}, cover Z_{ev.cover_k}, pullback {ev.pullback_class}")
            lines.append(f"      cover Alexander polynomial: {ev.cover_delta}")
            lines.append(f"      pulled-back polynomial: {ev.pullback_poly}")
            if ev.cover_char_poly is not None:
                lines.append(
                    f"      cover monodromy char poly: {ev.cover_char_poly} (fiber components {ev.fiber_components})"
                )
            if ev.mahler is not None:
                lines.append(
                    f"      M = {ev.mahler:.12g}, character product exp(sum) = {math.exp(ev.character_product):.12g}"
                )
    for w in rep.warnings:
        lines.append(f"warning: {w}")
    return "\n".join(lines) + "\n"
