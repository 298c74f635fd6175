"""Decay bounds, divergence classification, and L² limits.

The decay theorem says the normalized (p,q)-rank is O(d^(-e)) with
e = 2(|n-p-q| - N) when the defect of semismallness is at most N.  The
engine checks this two ways: numerically (the exact rational sequence
B_d = normalized·d^e over a finite range) and analytically (a stratum of
real dimension v contributes on the order of d^(v - 2g + e) along the
multiples of its translate order, so v > 2g - e forces unboundedness no
matter how a finite range looks).  A finite-range pass never overrides an
analytic failure.

L² Betti numbers of the infinite Albanese cover are limits of normalized
Betti numbers along the factorial subtower; since the limits of the full
sequence exist, they are computed symbolically rather than by building
covers of factorial degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .counting import DEFAULT_COMPONENT_BUDGET
from .model import RankFunction, VarietyModel, satisfies_weak_generic_nakano
from .torus import TorusPoint
from .tower import betti_cover, chi_of_forms, normalized_sequence


@dataclass(frozen=True)
class BoundFit:
    """Result of fitting B with normalized rank <= B · d^(-exponent)."""

    p: int
    q: int
    defect_bound: int
    exponent: int
    fitted_b: Fraction
    passes: bool
    violating_dim: Optional[int] = None  # real dimension witnessing unboundedness


@dataclass(frozen=True)
class DivergenceReport:
    """Whether the cover irregularities q(X_d) stay bounded."""

    divergent: bool
    max_stratum_dim: int          # real dimension, 0 when bounded
    witness_order: Optional[int]  # q(X_d) >= q(X) + d^dim - 1 when this divides d
    base_irregularity: int


@dataclass(frozen=True)
class L2Report:
    betti: tuple[Fraction, ...]
    hodge: tuple[tuple[Fraction, ...], ...]
    nonvanishing: frozenset[int]
    weak_gnv: bool  # when False the closed form is not certified


def _unbounded_dimension(rf: RankFunction, exponent: int) -> Optional[int]:
    """Real dimension of a locus component that defeats d^(-exponent) decay.

    The full torus counts as a component of dimension 2g when the effective
    generic value is positive; jump strata count with their own dimension.
    Such a component meets the d-torsion grid with d^dim points along every
    multiple of its translate order, hence for infinitely many d.
    """
    allowed = rf.ambient_dim - exponent
    if rf.effective_generic_value() > 0 and rf.ambient_dim > allowed:
        return rf.ambient_dim
    worst = None
    for nc, _ in rf.effective_strata():
        if nc.dim > allowed and (worst is None or nc.dim > worst):
            worst = nc.dim
    return worst


def fit_bound(model: VarietyModel, p: int, q: int, defect_bound: int, d_max: int,
              *, budget: int = DEFAULT_COMPONENT_BUDGET) -> BoundFit:
    """Fit the decay constant for (p,q) at the declared defect bound.

    ``fitted_b`` is the exact supremum of normalized·d^e over d = 1..d_max;
    the verdict additionally applies the dimension criterion, because a
    finite range cannot see the torsion orders of a too-large stratum.
    """
    if d_max < 2:
        raise ValueError("d_max must be at least 2")
    exponent = 2 * (abs(model.n - p - q) - defect_bound)
    seq = normalized_sequence(model, ("hodge", p, q), range(1, d_max + 1), budget=budget)
    fitted = max(value * Fraction(d) ** exponent for d, value in enumerate(seq, start=1))
    bad_dim = _unbounded_dimension(model.hodge[p][q], exponent)
    return BoundFit(
        p=p, q=q,
        defect_bound=defect_bound,
        exponent=exponent,
        fitted_b=fitted,
        passes=bad_dim is None,
        violating_dim=bad_dim,
    )


def converse_defect_witness(model: VarietyModel, defect_bound: int) -> Optional[tuple[int, int]]:
    """First (p,q) whose locus is too large for the d^(-e) decay, if any.

    A witness certifies that the defect of semismallness exceeds the
    declared bound: its stratum carries at least d^dim torsion points for
    infinitely many d, beating the claimed decay.
    """
    for p in range(model.n + 1):
        for q in range(model.n + 1):
            exponent = 2 * (abs(model.n - p - q) - defect_bound)
            if _unbounded_dimension(model.hodge[p][q], exponent) is not None:
                return (p, q)
    return None


def divergence_class(model: VarietyModel) -> DivergenceReport:
    """Classify the irregularity sequence q(X_d): bounded or divergent.

    Divergence happens exactly when the h^(0,1) locus has a component of
    positive dimension; along multiples of that component's translate
    order, q(X_d) >= q(X) + d^dim - 1.
    """
    rf = model.hodge[0][1]
    origin_value = rf.rank_at(TorusPoint.zero(model.torus_dim))
    positive = [(nc, value) for nc, value in rf.effective_strata() if nc.dim > 0]
    if rf.effective_generic_value() > 0:
        return DivergenceReport(True, rf.ambient_dim, 1, origin_value)
    if not positive:
        return DivergenceReport(False, 0, None, origin_value)
    best = max(nc.dim for nc, _ in positive)
    order = min(nc.translate_order for nc, _ in positive if nc.dim == best)
    return DivergenceReport(True, best, order, origin_value)


def l2_betti(model: VarietyModel) -> L2Report:
    """L² Betti and Hodge numbers of the infinite Albanese cover.

    Each entry is the limit of the corresponding normalized invariant, the
    value the approximation theorem assigns along the factorial subtower.
    Under weak generic Nakano vanishing the Betti column is zero away from
    the middle degree and equals (-1)^n·chi_top there; otherwise the same
    limits are reported with ``weak_gnv`` false, meaning the identification
    with von Neumann dimensions is not certified.
    """
    n = model.n
    h2 = tuple(
        tuple(Fraction(model.hodge[p][q].effective_generic_value())
              for q in range(n + 1))
        for p in range(n + 1))
    betti = tuple(
        sum((h2[p][k - p] for p in range(n + 1) if 0 <= k - p <= n), Fraction(0))
        for k in range(2 * n + 1))
    flags = frozenset(p for p in range(n + 1) if chi_of_forms(model, p) != 0)
    return L2Report(
        betti=betti,
        hodge=h2,
        nonvanishing=flags,
        weak_gnv=satisfies_weak_generic_nakano(model),
    )


def betti_deviation_constant(model: VarietyModel) -> int:
    """Explicit C with |b_n(X_d)/deg - limit| <= C·d^(-2).

    Each effective stratum of a middle-degree entry contributes at most its
    value times d^(dim - 2g) <= value·d^(-2); summing the stratum values
    over p+q = n gives a valid constant.
    """
    total = 0
    for p in range(model.n + 1):
        q = model.n - p
        if 0 <= q <= model.n:
            for _, value in model.hodge[p][q].effective_strata():
                total += value
    return max(total, 1)


def l2_euler_characteristic(report: L2Report) -> Fraction:
    return sum(((-1) ** k * b for k, b in enumerate(report.betti)), Fraction(0))


def betti_limit_deviation(model: VarietyModel, d: int,
                          *, budget: int = DEFAULT_COMPONENT_BUDGET) -> Fraction:
    """|b_n(X_d)/deg - L² middle Betti number| as an exact rational."""
    report = l2_betti(model)
    exact = Fraction(betti_cover(model, d, model.n, budget=budget), d ** model.torus_dim)
    return abs(exact - report.betti[model.n])
