"""Log canonical threshold, jumping-number candidates and inner jump multiplicities.

For ``alpha = r/d`` in lowest terms the divisor

    K_{Y/X} - floor((1 - eps) * alpha * mu^*D),   0 < eps << 1,

has coefficient ``k_j + 1 - alpha*m_j`` on components with ``d | m_j`` and
``k_j - floor(alpha*m_j)`` elsewhere, so no small parameter is ever needed.
The inner jump multiplicity is the Euler characteristic of that divisor
restricted to ``F``, the union of exceptional curves with ``d | m_i``. Every
exceptional curve is rational and ``F`` has only nodes, so

    chi(O_F(L)) = sum_{E_i in F} (1 + deg L|E_i) - #(nodes of F).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Tuple

from .errors import AlphaOutOfRange
from .exact import as_fraction, format_rational
from .resdata import ResolutionData

DivisorOnY = Dict[str, int]


@dataclass(frozen=True)
class SpectrumTable:
    """Sorted ``(alpha, n)`` pairs with ``0 < alpha <= 1`` and ``n > 0``."""

    entries: Tuple[Tuple[Fraction, int], ...] = ()

    def __post_init__(self):
        entries = tuple(sorted((as_fraction(a), int(n)) for a, n in self.entries if n))
        for a, n in entries:
            if not 0 < a <= 1:
                raise AlphaOutOfRange(f"spectrum exponent {a} outside (0, 1]")
            if n < 0:
                raise ValueError(f"negative multiplicity {n} at {a}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_mapping(cls, values: Dict[Fraction, int]) -> "SpectrumTable":
        return cls(tuple(values.items()))

    def __iter__(self) -> Iterator[Tuple[Fraction, int]]:
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def as_dict(self) -> Dict[Fraction, int]:
        return dict(self.entries)

    def get(self, alpha, default: int = 0) -> int:
        return self.as_dict().get(as_fraction(alpha), default)

    def to_json(self) -> List[dict]:
        return [{"alpha": format_rational(a), "n": n} for a, n in self.entries]

    def __str__(self):
        if not self.entries:
            return "{}"
        return "{" + ", ".join(f"{format_rational(a)} -> {n}" for a, n in self.entries) + "}"


def check_alpha(alpha) -> Fraction:
    alpha = as_fraction(alpha)
    if not 0 < alpha <= 1:
        raise AlphaOutOfRange(f"alpha = {alpha} is outside (0, 1]")
    return alpha


def lct(data: ResolutionData) -> Fraction:
    """Log canonical threshold ``min_i (k_i + 1) / m_i``."""
    if not data.components:
        raise ValueError("resolution data has no components")
    return min(Fraction(c.k + 1, c.m) for c in data.components)


def candidate_alphas(data: ResolutionData) -> List[Fraction]:
    """All ``(k_i + 1 + n) / m_i`` with ``n >= 0`` lying in ``(0, 1]``."""
    out = set()
    for c in data.components:
        for num in range(c.k + 1, c.m + 1):
            out.add(Fraction(num, c.m))
    return sorted(out)


def divisible_support(data: ResolutionData, alpha) -> List[str]:
    """Ids of exceptional curves whose multiplicity is divisible by the denominator of ``alpha``."""
    d = as_fraction(alpha).denominator
    return [c.id for c in data.exceptional if c.m % d == 0]


def inner_coefficients(data: ResolutionData, alpha) -> DivisorOnY:
    """Integer coefficients of ``K_{Y/X} - floor((1 - eps) alpha mu^*D)``."""
    alpha = check_alpha(alpha)
    out = {}
    for c in data.components:
        am = alpha * c.m
        if am.denominator == 1:
            out[c.id] = c.k + 1 - am.numerator
        else:
            out[c.id] = c.k - math.floor(am)
    return out


def nodes(data: ResolutionData, ids) -> int:
    """Intersection points among the listed components (each pair counted once)."""
    ids = list(ids)
    return sum(data.points(a, b) for i, a in enumerate(ids) for b in ids[i + 1 :])


def inner_jump_multiplicity(data: ResolutionData, alpha) -> int:
    coeffs = inner_coefficients(data, alpha)
    support = divisible_support(data, alpha)
    if not support:
        return 0
    chi = sum(1 + data.degree_on(coeffs, i) for i in support)
    return chi - nodes(data, support)


def inner_spectrum(data: ResolutionData) -> SpectrumTable:
    return SpectrumTable.from_mapping({a: inner_jump_multiplicity(data, a) for a in candidate_alphas(data)})
