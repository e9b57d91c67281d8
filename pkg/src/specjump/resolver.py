"""Embedded resolution of a plane curve germ by iterated point blow-ups.

Every point under consideration lives in a local chart ``(s, t)`` centred at
the point, with the chart map ``(s, t) -> (x, y)`` kept exactly. The newest
exceptional curve through a point is always the axis ``{s = 0}``; an older
one, if present, is ``{t = 0}``.

Blowing up the centred point uses two charts:

* slope chart ``(s, t) -> (s, s*t)`` where the new curve is ``{s = 0}`` and
  ``t`` is the slope; a rational slope ``c`` is recentred by ``t -> t + c``;
* the point at infinity ``(s, t) -> (s*t, s)``, swapped so that the new curve
  is again ``{s = 0}``.

Conjugate points (roots of an irreducible residual factor of degree > 1) are
never given coordinates; they are resolved only when they are already SNC and
are then recorded as one strict cluster component.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple

from .errors import BlowupLimitExceeded, FactorDegreeExceeded, InvalidGerm, NonRationalCenter
from .exact import (
    DEFAULT_MAX_FACTOR_DEGREE,
    SparsePoly2,
    UniPoly,
    _yun,
    irreducible_factors,
    order_at_origin,
    rational_roots,
    squarefree_parts,
    substitute,
)
from .resdata import EXCEPTIONAL, STRICT, Chart, Component, ResolutionData, check

log = logging.getLogger(__name__)

DEFAULT_MAX_BLOWUPS = 64

S = SparsePoly2.x()
T = SparsePoly2.y()


@dataclass(frozen=True)
class Limits:
    max_blowups: int = DEFAULT_MAX_BLOWUPS
    max_factor_degree: int = DEFAULT_MAX_FACTOR_DEGREE

    def __post_init__(self):
        if self.max_blowups <= 0 or self.max_factor_degree <= 0:
            raise ValueError("limits must be positive")


@dataclass(frozen=True)
class InfinitelyNearPoint:
    """Worklist state for one point (or one conjugate cluster of points).

    ``factors`` holds the strict-transform factors through the point as
    ``(germ, multiplicity in f)``. ``axes`` names the exceptional curves
    ``{s = 0}`` and ``{t = 0}`` (``None`` when absent). For a conjugate cluster
    ``conjugate`` is the irreducible residual factor locating the points on
    the ``{s = 0}`` axis and ``contact`` its multiplicity in the full residual.
    """

    chart: Chart
    axes: Tuple[Optional[str], Optional[str]]
    factors: Tuple[Tuple[SparsePoly2, int], ...]
    conjugate: Optional[UniPoly] = None
    contact: int = 1

    def pullback_is_consistent(self, f: SparsePoly2, m: Dict[str, int]) -> bool:
        """Check ``f o chart == s^a t^b * prod(g^mult) * unit`` at the origin.

        Only meaningful for rational points: the quotient of the pullback by
        the exceptional and strict parts must not vanish at the point.
        """
        pulled = self.chart.pullback(f)
        a = m[self.axes[0]] if self.axes[0] else 0
        b = m[self.axes[1]] if self.axes[1] else 0
        if pulled.x_order() < a or pulled.y_order() < b:
            return False
        pulled = pulled.divide_x_power(a).swap().divide_x_power(b).swap()
        strict = SparsePoly2.constant(1)
        for g, mult in self.factors:
            strict = strict * g**mult
        return order_at_origin(pulled) == order_at_origin(strict)


@dataclass
class BlowupRecord:
    component: str
    parents: Tuple[str, ...]
    point: InfinitelyNearPoint = field(repr=False)


@dataclass(frozen=True)
class Verdict:
    snc: bool
    branch: Optional[Tuple[SparsePoly2, int]] = None
    cluster_degree: int = 1


def _univariate_order(p: UniPoly) -> float:
    return next((i for i, c in enumerate(p.coeffs) if c), float("inf"))


def _transverse_to_s_axis(g: SparsePoly2) -> bool:
    return _univariate_order(g.restrict_x0()) == 1


def _transverse_to_t_axis(g: SparsePoly2) -> bool:
    return _univariate_order(g.swap().restrict_x0()) == 1


def inspect_point(state: InfinitelyNearPoint) -> Verdict:
    """Decide whether the total transform is SNC at ``state``.

    A blow-up is requested when a strict factor is singular, tangent to an
    exceptional axis, or when three or more curves meet. Conjugate clusters
    that would need blowing up raise :class:`NonRationalCenter`.
    """
    if state.conjugate is not None:
        if len(state.factors) == 1 and state.contact == 1:
            return Verdict(True, state.factors[0], state.conjugate.degree)
        raise NonRationalCenter(state.conjugate)

    axes = [a for a in state.axes if a is not None]
    if len(axes) + len(state.factors) > 2:
        return Verdict(False)
    for g, _ in state.factors:
        if order_at_origin(g) != 1:
            return Verdict(False)
        if state.axes[0] is not None and not _transverse_to_s_axis(g):
            return Verdict(False)
        if state.axes[1] is not None and not _transverse_to_t_axis(g):
            return Verdict(False)
    if len(state.factors) == 2:
        l1, l2 = (g.leading_form() for g, _ in state.factors)
        if l1.coeff(1, 0) * l2.coeff(0, 1) == l1.coeff(0, 1) * l2.coeff(1, 0):
            return Verdict(False)
    branch = state.factors[0] if len(state.factors) == 1 else None
    return Verdict(True, branch)


class _Builder:
    def __init__(self, limits: Limits):
        self.limits = limits
        self.components: Dict[str, dict] = {}
        self.inter: Dict[FrozenSet[str], int] = {}
        self.charts: Dict[str, Chart] = {}
        self.records: List[BlowupRecord] = []
        self.n_strict = 0

    def bump(self, a: str, b: str, delta: int):
        key = frozenset((a, b))
        self.inter[key] = self.inter.get(key, 0) + delta

    def add_strict(self, on: str, mult: int, degree: int):
        self.n_strict += 1
        sid = f"S{self.n_strict}"
        self.components[sid] = dict(kind=STRICT, m=mult, k=0, cluster_degree=degree)
        self.bump(on, sid, degree)

    def blow_up(self, p: InfinitelyNearPoint) -> List[InfinitelyNearPoint]:
        if len(self.records) >= self.limits.max_blowups:
            raise BlowupLimitExceeded(self.limits.max_blowups)
        eid = f"E{len(self.records) + 1}"
        axes = [a for a in p.axes if a is not None]
        orders = [(g, a, order_at_origin(g)) for g, a in p.factors]
        m = sum(a * o for _, a, o in orders) + sum(self.components[a]["m"] for a in axes)
        k = 1 + sum(self.components[a]["k"] for a in axes)
        self.components[eid] = dict(kind=EXCEPTIONAL, m=m, k=k, self_intersection=-1)
        for a in axes:
            self.components[a]["self_intersection"] -= 1
            self.bump(a, eid, 1)
        if len(axes) == 2:
            self.bump(axes[0], axes[1], -1)
        self.records.append(BlowupRecord(eid, tuple(axes), p))
        log.debug("blow-up %s: m=%d k=%d parents=%s", eid, m, k, axes)

        slope = (S, S * T)
        self.charts[eid] = Chart(substitute(p.chart.x, *slope), substitute(p.chart.y, *slope))

        transformed = []
        for g, a, o in orders:
            gs = substitute(g, *slope).divide_x_power(o)
            transformed.append((g, a, o, gs, gs.restrict_x0()))
        residual = UniPoly([1])
        for *_, r in transformed:
            residual = residual * r

        if residual.degree > self.limits.max_factor_degree:
            raise FactorDegreeExceeded(residual.degree, self.limits.max_factor_degree)

        out: List[InfinitelyNearPoint] = []
        roots = rational_roots(residual) if residual.degree > 0 else {}
        for c in roots:
            sigma = (S, S * (T + c))
            factors = tuple(
                (substitute(g, *sigma).divide_x_power(o), a)
                for g, a, o, _, r in transformed
                if r(c) == 0
            )
            chart = Chart(substitute(p.chart.x, *sigma), substitute(p.chart.y, *sigma))
            out.append(InfinitelyNearPoint(chart, (eid, p.axes[1] if c == 0 else None), factors))

        # slope 0 with an old {t = 0} axis but no strict factor is a plain corner
        infinity = tuple((g, a, o) for g, a, o, _, r in transformed if r.degree < o)
        if infinity:
            sigma = (S * T, S)
            factors = tuple((substitute(g, *sigma).divide_x_power(o), a) for g, a, o in infinity)
            chart = Chart(substitute(p.chart.x, *sigma), substitute(p.chart.y, *sigma))
            out.append(InfinitelyNearPoint(chart, (eid, p.axes[0]), factors))

        if residual.degree > 0:
            for part, mult in _yun(residual):
                for q in irreducible_factors(part, self.limits.max_factor_degree):
                    if q.degree < 2:
                        continue
                    factors = tuple((g, a) for g, a, o, _, r in transformed if not (r % q))
                    out.append(InfinitelyNearPoint(self.charts[eid], (eid, None), factors, q, mult))
        return out


def _run(f: SparsePoly2, limits: Limits) -> Tuple[_Builder, SparsePoly2]:
    if f.is_zero():
        raise InvalidGerm("the zero polynomial does not define a divisor")
    if f.evaluate(0, 0) != 0:
        raise InvalidGerm("f does not vanish at the origin")
    parts = [(q, a) for q, a in squarefree_parts(f) if q.evaluate(0, 0) == 0]
    germ = SparsePoly2.constant(1)
    for q, a in parts:
        germ = germ * q**a

    b = _Builder(limits)
    origin = InfinitelyNearPoint(Chart(S, T), (None, None), tuple(parts))
    work = deque(b.blow_up(origin))
    while work:
        point = work.popleft()
        verdict = inspect_point(point)
        if not verdict.snc:
            work.extend(b.blow_up(point))
        elif verdict.branch is not None:
            b.add_strict(point.axes[0], verdict.branch[1], verdict.cluster_degree)
    return b, germ


def resolve_germ(f: SparsePoly2, limits: Limits | None = None) -> ResolutionData:
    """Embedded resolution of ``div(f)`` at the origin.

    Factors of ``f`` that do not vanish at the origin are dropped. The origin
    is always blown up once, so the fiber over it is a divisor even for a
    smooth germ. The result is validated before it is returned.
    """
    b, germ = _run(f, limits or Limits())
    comps = []
    for cid, c in b.components.items():
        if c["kind"] == EXCEPTIONAL:
            comps.append(Component(cid, EXCEPTIONAL, c["m"], c["k"], True, c["self_intersection"]))
    for cid, c in b.components.items():
        if c["kind"] == STRICT:
            comps.append(Component(cid, STRICT, c["m"], 0, False, None, c["cluster_degree"]))
    data = ResolutionData(tuple(comps), b.inter, charts=dict(b.charts), germ=germ)
    return check(data)


def blowup_records(f: SparsePoly2, limits: Limits | None = None) -> List[BlowupRecord]:
    """The blow-up sequence behind :func:`resolve_germ`, for inspection and tests."""
    return _run(f, limits or Limits())[0].records
