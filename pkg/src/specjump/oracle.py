"""Brute-force multiplier-ideal colengths from the valuative description.

For a reduced germ and ``alpha < 1`` a polynomial ``h`` lies in the multiplier
ideal ``J(alpha D)`` at the origin exactly when

    ord_{E_i}(h o mu) >= floor(alpha * m_i) - k_i

for every exceptional curve ``E_i``. Each order condition says that the
coefficients of ``s^0 .. s^(b-1)`` in the chart pullback of ``h`` vanish, which
is a finite set of linear equations on the coefficients of ``h``. The colength
of the ideal is then the rank of the map sending polynomials of degree ``<= N``
to those truncated pullbacks, for ``N`` large enough that every monomial of
degree ``N`` already satisfies all conditions.

Nothing here uses intersection numbers; this is the independent check on the
Euler-characteristic formulas.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import AlphaOutOfRange, InvalidGerm, MissingCharts, NotStabilized
from .exact import SparsePoly2, as_fraction
from .multiplier import candidate_alphas
from .resdata import ResolutionData

DEFAULT_CUTOFF = 96

ValuationProfile = Dict[str, int]


def _require_charts(data: ResolutionData):
    if not data.has_charts():
        raise MissingCharts("the valuative oracle needs chart maps; resolve a polynomial instead of loading JSON")


def valuation_order(data: ResolutionData, cid: str, h: SparsePoly2) -> int:
    """Order of vanishing of ``h o mu`` along exceptional curve ``cid``."""
    _require_charts(data)
    if h.is_zero():
        raise ValueError("valuation of the zero polynomial is infinite")
    comp = data.component(cid)
    if not comp.is_exceptional:
        raise ValueError(f"{cid} is not an exceptional curve")
    return int(data.charts[cid].pullback(h).x_order())


def profile(data: ResolutionData, alpha, left: bool = False) -> ValuationProfile:
    """Required orders ``b_i``; with ``left=True`` the limit from below at ``alpha``."""
    alpha = as_fraction(alpha)
    out = {}
    for c in data.exceptional:
        am = alpha * c.m
        if left and am.denominator == 1:
            out[c.id] = am.numerator - 1 - c.k
        else:
            out[c.id] = math.floor(am) - c.k
    return out


def _truncate(p: SparsePoly2, below: int) -> SparsePoly2:
    return SparsePoly2({e: c for e, c in p.items() if e[0] < below})


class _Pullbacks:
    """Truncated pullbacks of monomials along one chart, memoised by exponent."""

    def __init__(self, chart, below: int):
        self.below = below
        self.xp = [SparsePoly2.constant(1)]
        self.yp = [SparsePoly2.constant(1)]
        self.chart = chart

    def _power(self, cache, base, n):
        while len(cache) <= n:
            cache.append(_truncate(cache[-1] * base, self.below))
        return cache[n]

    def monomial(self, a: int, b: int) -> SparsePoly2:
        return _truncate(
            self._power(self.xp, self.chart.x, a) * self._power(self.yp, self.chart.y, b), self.below
        )


def _primitive(vec: Dict) -> Dict:
    den = reduce(math.lcm, (c.denominator for c in vec.values()), 1)
    ints = {k: int(c * den) for k, c in vec.items()}
    g = reduce(math.gcd, ints.values(), 0)
    return {k: v // g for k, v in ints.items()}


def _rank(vectors: Sequence[Dict]) -> int:
    """Rank of sparse rational vectors by fraction-free elimination.

    Vectors are scaled to primitive integer vectors; reduction against a pivot
    row uses cross-multiplication followed by content removal, so every
    intermediate stays integral.
    """
    basis: Dict = {}
    for vec in vectors:
        v = _primitive({k: c for k, c in vec.items() if c}) if vec else {}
        while v:
            pivot = min(v)
            if pivot not in basis:
                basis[pivot] = v
                break
            row = basis[pivot]
            a, b = row[pivot], v[pivot]
            merged = {}
            for k in set(v) | set(row):
                val = a * v.get(k, 0) - b * row.get(k, 0)
                if val:
                    merged[k] = val
            g = reduce(math.gcd, merged.values(), 0)
            v = {k: val // g for k, val in merged.items()} if g else {}
    return len(basis)


def _images(data: ResolutionData, prof: Mapping[str, int], degree: int, cache) -> List[Dict]:
    active = [(cid, b) for cid, b in sorted(prof.items()) if b > 0]
    out = []
    for total in range(degree + 1):
        for a in range(total, -1, -1):
            vec = {}
            for cid, b in active:
                if cid not in cache:
                    cache[cid] = _Pullbacks(data.charts[cid], b)
                for (i, j), c in cache[cid].monomial(a, total - a).items():
                    vec[(cid, i, j)] = c
            out.append(vec)
    return out


def colength_for_profile(
    data: ResolutionData, prof: Mapping[str, int], cutoff: int = DEFAULT_CUTOFF
) -> Tuple[int, int]:
    """Colength of the ideal cut out by ``prof``, with the degree bound used.

    The degree bound starts at ``2 * max(b)`` and doubles until the rank is
    the same at ``N``, ``N + 1`` and ``N + 2`` and every monomial of degree
    ``N - 1`` satisfies all conditions.
    """
    _require_charts(data)
    top = max((b for b in prof.values()), default=0)
    if top <= 0:
        return 0, 0
    cache: Dict[str, _Pullbacks] = {}
    n = max(2 * top, 1)
    while n + 2 <= cutoff:
        images = _images(data, prof, n + 2, cache)
        sizes = [(d + 1) * (d + 2) // 2 for d in (n, n + 1, n + 2)]
        ranks = [_rank(images[:size]) for size in sizes]
        edge = images[(n - 1) * n // 2 : n * (n + 1) // 2]
        if ranks[0] == ranks[1] == ranks[2] and not any(edge):
            return ranks[0], n
        n *= 2
    raise NotStabilized(f"colength did not stabilize below degree cutoff {cutoff}")


def _check_oracle_input(data: ResolutionData, alpha) -> Fraction:
    alpha = as_fraction(alpha)
    if alpha >= 1:
        raise AlphaOutOfRange("the oracle refuses alpha >= 1 (infinite colength)")
    if alpha <= 0:
        raise AlphaOutOfRange(f"alpha = {alpha} is not positive")
    _require_charts(data)
    if any(c.m != 1 for c in data.strict):
        raise InvalidGerm("the oracle requires a reduced germ")
    return alpha


def colength(data: ResolutionData, alpha, cutoff: int = DEFAULT_CUTOFF) -> int:
    """``dim O/J(alpha D)`` at the origin for ``0 < alpha < 1``."""
    alpha = _check_oracle_input(data, alpha)
    return colength_for_profile(data, profile(data, alpha), cutoff)[0]


def left_colength(data: ResolutionData, alpha, cutoff: int = DEFAULT_CUTOFF) -> int:
    """Colength of ``J((1 - eps) alpha D)``, using one-sided floors."""
    alpha = _check_oracle_input(data, alpha)
    return colength_for_profile(data, profile(data, alpha, left=True), cutoff)[0]


def jump_sizes(data: ResolutionData, candidates, cutoff: int = DEFAULT_CUTOFF) -> Dict[Fraction, int]:
    return {
        as_fraction(a): colength(data, a, cutoff) - left_colength(data, a, cutoff) for a in candidates
    }


@dataclass
class OracleReport:
    grid: List[Fraction]
    colengths: Dict[Fraction, int]
    jumps: Dict[Fraction, int]
    cutoff: int
    degrees_used: Dict[Fraction, int] = field(default_factory=dict)

    @property
    def monotone(self) -> bool:
        values = [self.colengths[a] for a in self.grid]
        return all(x <= y for x, y in zip(values, values[1:]))


def scan(data: ResolutionData, cutoff: int = DEFAULT_CUTOFF, extra: Optional[Sequence] = None) -> OracleReport:
    """Colengths at every candidate below 1 and at the midpoints between them."""
    cands = [a for a in candidate_alphas(data) if a < 1]
    marks = [Fraction(0)] + cands + [Fraction(1)]
    mids = [(a + b) / 2 for a, b in zip(marks, marks[1:])]
    grid = sorted(set(cands) | set(mids) | {as_fraction(a) for a in (extra or ())})
    colengths, degrees = {}, {}
    for a in grid:
        _check_oracle_input(data, a)
        colengths[a], degrees[a] = colength_for_profile(data, profile(data, a), cutoff)
    jumps = {a: colengths[a] - left_colength(data, a, cutoff) for a in cands}
    return OracleReport(grid, colengths, jumps, cutoff, degrees)
