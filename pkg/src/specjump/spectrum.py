"""Hodge spectrum multiplicities on (0, 1] from the stratified resolution sum.

With ``d`` the denominator of ``alpha``, ``J_d`` the components whose
multiplicity ``d`` divides and ``M`` the strata ``E_I`` (``I`` inside ``J_d``,
meeting at least one exceptional curve of ``J_d``), the top Hodge-graded piece
of the stratified sum collapses on a surface to

    n_alpha(f) = - sum_{I in M} (-1)^{|I|-1} chi(O_{E_I} (x) O_Y(floor(alpha mu^*D)))

where ``chi`` on a curve ``E_i`` is ``1 + degree`` and on a set of points is
the point count.

Sign convention: the twist is ``+floor(alpha mu^*D)``. Writing it as
``-floor((1 - alpha) mu^*D)`` instead gives -2 on the cusp at 5/6 and on
three lines at 2/3 (the two forms agree at alpha = 1), so that form is not used.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, FrozenSet, List, Optional

from .errors import SpecjumpError
from .exact import as_fraction, format_rational
from .multiplier import (
    SpectrumTable,
    candidate_alphas,
    check_alpha,
    inner_jump_multiplicity,
)
from .resdata import ResolutionData

AMBIENT_DIM = 2

SIGN_CONVENTION = (
    "twist O_Y(+floor(alpha mu^*D)) on strata; the form O_Y(-floor((1-alpha) mu^*D)) "
    "gives -2 on the cusp at 5/6 and on x^3 + y^3 at 2/3"
)


def twist(data: ResolutionData, alpha) -> Dict[str, int]:
    """Coefficients of ``floor(alpha mu^*D)``."""
    alpha = as_fraction(alpha)
    return {c.id: math.floor(alpha * c.m) for c in data.components}


def strata(data: ResolutionData, alpha) -> List[FrozenSet[str]]:
    """The index set ``M``: singletons of divisible exceptional curves and the
    pairs of divisible components meeting one of them."""
    d = as_fraction(alpha).denominator
    jd = [c.id for c in data.components if c.m % d == 0]
    jdx = {c.id for c in data.exceptional if c.m % d == 0}
    out = [frozenset([i]) for i in jd if i in jdx]
    for n, a in enumerate(jd):
        for b in jd[n + 1 :]:
            if (a in jdx or b in jdx) and data.points(a, b):
                out.append(frozenset([a, b]))
    return out


def _closed_chi(data: ResolutionData, stratum: FrozenSet[str], tw: Dict[str, int]) -> int:
    if len(stratum) == 1:
        (i,) = stratum
        return 1 + data.degree_on(tw, i)
    a, b = stratum
    return data.points(a, b)


def closed_sum(data: ResolutionData, alpha) -> int:
    tw = twist(data, alpha)
    return sum((-1) ** (len(I) - 1) * _closed_chi(data, I, tw) for I in strata(data, alpha))


def _graded(data: ResolutionData, K: FrozenSet[str], divisible: set, tw) -> Dict[int, Optional[int]]:
    """``gr_F^p`` of the eigen-part of the compactly supported class of the
    cover over the closed stratum ``E_K``; ``None`` marks a value never needed."""
    if len(K) == 1:
        (i,) = K
        return {1: 1 + data.degree_on(tw, i), 0: None}
    if not K <= divisible:
        # the group action factors through a proper quotient: class vanishes
        return {1: 0, 0: 0}
    a, b = K
    return {1: 0, 0: data.points(a, b)}


def open_strata_sum(data: ResolutionData, alpha) -> int:
    """The same total, summed over open strata ``E_I^o`` with ``(1 - L)^{|I|-1}``.

    Each open stratum is expanded by inclusion-exclusion over the components
    it avoids; classes over points supported on a non-divisible component are
    dropped, and ``L`` lowers the Hodge index by one.
    """
    tw = twist(data, alpha)
    d = as_fraction(alpha).denominator
    divisible = {c.id for c in data.components if c.m % d == 0}
    total = 0
    for I in strata(data, alpha):
        others = [c.id for c in data.components if c.id not in I]
        closures = [(0, I)]
        if len(I) == 1:
            (i,) = I
            closures += [(1, I | {j}) for j in others if data.points(i, j)]
        for sign_exp, K in closures:
            graded = _graded(data, K, divisible, tw)
            s = len(I) - 1
            value = 0
            for i in range(s + 1):
                g = graded[1 - i]
                if g is None:
                    raise SpecjumpError(f"graded piece gr^{1 - i} of a curve requested for stratum {sorted(K)}")
                value += (-1) ** i * comb(s, i) * g
            total += (-1) ** sign_exp * value
    return total


def stratum_multiplicity(data: ResolutionData, alpha) -> int:
    """Spectrum multiplicity ``n_alpha(f)`` from the stratified sum."""
    alpha = check_alpha(alpha)
    closed = closed_sum(data, alpha)
    opened = open_strata_sum(data, alpha)
    if closed != opened:
        raise SpecjumpError(f"closed and open strata sums disagree at {alpha}: {closed} != {opened}")
    return (-1) ** (AMBIENT_DIM - 1) * closed


def support_alphas(data: ResolutionData) -> List[Fraction]:
    """Candidates together with every ``r / m_i`` in ``(0, 1]`` for exceptional ``E_i``."""
    out = set(candidate_alphas(data))
    for c in data.exceptional:
        out.update(Fraction(r, c.m) for r in range(1, c.m + 1))
    return sorted(out)


def spectrum_table(data: ResolutionData) -> SpectrumTable:
    return SpectrumTable.from_mapping({a: stratum_multiplicity(data, a) for a in support_alphas(data)})


# ---------------------------------------------------------------------------
# cross-check
# ---------------------------------------------------------------------------


@dataclass
class VerifyEntry:
    alpha: Fraction
    inner: int
    stratum: int
    oracle: Optional[int] = None
    oracle_note: str = ""

    @property
    def passed(self) -> bool:
        if self.inner != self.stratum or self.inner < 0:
            return False
        return self.oracle is None or self.oracle == self.inner

    def to_json(self) -> dict:
        return {
            "alpha": format_rational(self.alpha),
            "inner": self.inner,
            "stratum": self.stratum,
            "oracle": self.oracle if self.oracle is not None else "skipped",
            **({"oracle_note": self.oracle_note} if self.oracle_note else {}),
            "pass": self.passed,
        }


@dataclass
class VerifyReport:
    entries: List[VerifyEntry] = field(default_factory=list)
    oracle_used: bool = False
    convention: str = SIGN_CONVENTION

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def to_json(self) -> dict:
        return {
            "entries": [e.to_json() for e in self.entries],
            "oracle_used": self.oracle_used,
            "convention": self.convention,
            "pass": self.passed,
        }


def oracle_applicable(data: ResolutionData) -> Optional[str]:
    """``None`` when the oracle can run, otherwise the reason it cannot."""
    if not data.has_charts():
        return "no chart maps"
    if any(c.m != 1 for c in data.strict):
        return "germ is not reduced"
    return None


def verify_theorem(data: ResolutionData, use_oracle: bool = True, cutoff: Optional[int] = None) -> VerifyReport:
    """Compare both formulas, and the oracle jump where it applies, at every
    alpha in the merged candidate set."""
    from . import oracle

    reason = oracle_applicable(data) if use_oracle else "oracle disabled"
    report = VerifyReport(oracle_used=use_oracle and reason is None)
    for a in support_alphas(data):
        entry = VerifyEntry(a, inner_jump_multiplicity(data, a), stratum_multiplicity(data, a))
        if reason is not None:
            entry.oracle_note = reason
        elif a.denominator == 1:
            entry.oracle_note = "integral alpha: colength infinite"
        else:
            kw = {} if cutoff is None else {"cutoff": cutoff}
            entry.oracle = oracle.jump_sizes(data, [a], **kw)[a]
        report.entries.append(entry)
    return report
