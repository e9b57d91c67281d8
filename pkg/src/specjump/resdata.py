"""Resolution data: the combinatorics of an embedded resolution of a curve germ.

A :class:`ResolutionData` lists the components of the total transform
``mu^*D = sum m_i E_i`` (exceptional curves over the origin and strict
branches), the discrepancies ``k_i`` of ``K_{Y/X}``, self-intersections of the
exceptional curves, and geometric intersection counts between components.
Everything downstream consumes only these integers.

Resolver output additionally carries chart maps (one per exceptional curve) and
the germ itself; those are ignored by equality and by the JSON format.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple

import jsonschema

from .errors import ResolutionDataError
from .exact import SparsePoly2, substitute

EXCEPTIONAL = "exceptional"
STRICT = "strict"


@dataclass(frozen=True)
class Component:
    id: str
    kind: str
    m: int
    k: int
    over_origin: bool
    self_intersection: Optional[int] = None
    cluster_degree: int = 1

    @property
    def is_exceptional(self) -> bool:
        return self.kind == EXCEPTIONAL


@dataclass(frozen=True)
class Chart:
    """Polynomial chart ``(s, t) -> (x, y)`` in which a component is ``{s = 0}``.

    The chart polynomials use the variable names ``x`` for ``s`` and ``y`` for
    ``t`` since :class:`SparsePoly2` is always in two variables.
    """

    x: SparsePoly2
    y: SparsePoly2

    def pullback(self, h: SparsePoly2) -> SparsePoly2:
        return substitute(h, self.x, self.y)


@dataclass(frozen=True)
class Violation:
    identity: str
    component: str
    detail: str = ""

    def __str__(self):
        return f"{self.identity} violated at {self.component}" + (f": {self.detail}" if self.detail else "")


def _pair(a: str, b: str) -> FrozenSet[str]:
    return frozenset((a, b))


@dataclass(frozen=True)
class ResolutionData:
    components: Tuple[Component, ...]
    intersections: Mapping[FrozenSet[str], int] = field(default_factory=dict)
    charts: Optional[Mapping[str, Chart]] = field(default=None, compare=False)
    germ: Optional[SparsePoly2] = field(default=None, compare=False)
    ambient_dimension: int = 2

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        clean = {}
        for key, n in dict(self.intersections).items():
            key = frozenset(key)
            if n:
                clean[key] = clean.get(key, 0) + int(n)
        object.__setattr__(self, "intersections", clean)

    def __hash__(self):
        return hash((self.components, frozenset(self.intersections.items())))

    # -- lookups ------------------------------------------------------------
    def component(self, cid: str) -> Component:
        for c in self.components:
            if c.id == cid:
                return c
        raise KeyError(f"unknown component id {cid!r}")

    @property
    def ids(self) -> List[str]:
        return [c.id for c in self.components]

    @property
    def exceptional(self) -> List[Component]:
        return [c for c in self.components if c.is_exceptional]

    @property
    def strict(self) -> List[Component]:
        return [c for c in self.components if not c.is_exceptional]

    def points(self, a: str, b: str) -> int:
        """Geometric intersection count of two distinct components."""
        return self.intersections.get(_pair(a, b), 0)

    def dot(self, a: str, b: str) -> int:
        """Intersection number ``E_a . E_b``; self-intersection when ``a == b``."""
        if a == b:
            si = self.component(a).self_intersection
            if si is None:
                raise ValueError(f"component {a} has no recorded self-intersection")
            return si
        return self.points(a, b)

    def degree_on(self, coefficients: Mapping[str, int], cid: str) -> int:
        """Degree of the divisor ``sum c_j E_j`` restricted to exceptional ``cid``."""
        total = 0
        for j, c in coefficients.items():
            if c:
                total += c * self.dot(j, cid)
        return total

    def neighbours(self, cid: str) -> List[str]:
        return [o for o in self.ids if o != cid and self.points(cid, o)]

    def has_charts(self) -> bool:
        return bool(self.charts) and all(c.id in self.charts for c in self.exceptional)

    def without_charts(self) -> "ResolutionData":
        return replace(self, charts=None, germ=None)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def validate(data: ResolutionData) -> List[Violation]:
    """Return every violated invariant; an empty list means the data is valid."""
    out: List[Violation] = []
    seen = set()
    for c in data.components:
        if c.id in seen:
            out.append(Violation("unique ids", c.id, "duplicate id"))
        seen.add(c.id)
        if c.kind not in (EXCEPTIONAL, STRICT):
            out.append(Violation("kind", c.id, f"unknown kind {c.kind!r}"))
            continue
        if c.m <= 0:
            out.append(Violation("positive multiplicity", c.id, f"m = {c.m}"))
        if c.cluster_degree < 1:
            out.append(Violation("cluster degree", c.id, f"cluster_degree = {c.cluster_degree}"))
        if c.is_exceptional:
            if not c.over_origin:
                out.append(Violation("over origin", c.id, "exceptional component must lie over the origin"))
            if c.self_intersection is None:
                out.append(Violation("self-intersection", c.id, "missing"))
            if c.k < 0:
                out.append(Violation("discrepancy", c.id, f"k = {c.k} is negative"))
            if c.cluster_degree != 1:
                out.append(Violation("cluster degree", c.id, "exceptional components are never clusters"))
        else:
            if c.k != 0:
                out.append(Violation("discrepancy", c.id, "strict components have k = 0"))
            if c.over_origin:
                out.append(Violation("over origin", c.id, "strict components do not lie over the origin"))
            if c.self_intersection is not None:
                out.append(Violation("self-intersection", c.id, "recorded only for exceptional components"))
    if out:
        return out

    for key, n in data.intersections.items():
        ends = sorted(key)
        if len(ends) != 2:
            out.append(Violation("intersections", ends[0], "self-pair in intersection list"))
            continue
        a, b = ends
        if a not in seen or b not in seen:
            out.append(Violation("intersections", f"{a}/{b}", "unknown component id"))
            continue
        ca, cb = data.component(a), data.component(b)
        if n < 0:
            out.append(Violation("intersections", f"{a}/{b}", f"negative count {n}"))
        if ca.is_exceptional and cb.is_exceptional and n > 1:
            out.append(Violation("intersections", f"{a}/{b}", f"exceptional curves meet in {n} > 1 points"))
    if out:
        return out

    for e in data.exceptional:
        princ = sum(c.m * data.dot(c.id, e.id) for c in data.components if c.id == e.id or data.points(c.id, e.id))
        if princ != 0:
            out.append(Violation("principality", e.id, f"sum m_j (E_j . E_i) = {princ}"))
        adj = sum(c.k * data.dot(c.id, e.id) for c in data.exceptional if c.id == e.id or data.points(c.id, e.id))
        expected = -2 - e.self_intersection
        if adj != expected:
            out.append(Violation("adjunction", e.id, f"sum k_j (E_j . E_i) = {adj}, expected {expected}"))
    return out


def check(data: ResolutionData) -> ResolutionData:
    problems = validate(data)
    if problems:
        raise ResolutionDataError(
            "resolution data failed validation: " + "; ".join(map(str, problems)), violations=problems
        )
    return data


# ---------------------------------------------------------------------------
# free-point blow-up
# ---------------------------------------------------------------------------


def _fresh_id(data: ResolutionData) -> str:
    taken = set(data.ids)
    n = len(data.exceptional) + 1
    while f"E{n}" in taken:
        n += 1
    return f"E{n}"


def _free_point_chart(data: ResolutionData, parent: str) -> Optional[Chart]:
    chart = data.charts[parent]
    m = data.component(parent).m
    residual = chart.pullback(data.germ).divide_x_power(m).restrict_x0()
    c = 0
    while residual(c) == 0:
        c += 1
    s, t = SparsePoly2.x(), SparsePoly2.y()
    # blow up (s, t) = (0, c); the new curve is {s' = 0} with t - c = s' t'
    return Chart(substitute(chart.x, s, t * s + c), substitute(chart.y, s, t * s + c))


def extra_blowup(data: ResolutionData, cid: str) -> ResolutionData:
    """Blow up a point of ``cid`` lying on no other component.

    The new curve inherits ``m`` from its parent, gets ``k = k_parent + 1`` and
    self-intersection ``-1``; the parent's self-intersection drops by one.
    Charts are carried along when present, so the result still supports the
    valuative oracle.
    """
    parent = data.component(cid)
    if not parent.is_exceptional:
        raise ResolutionDataError(f"component {cid!r} is strict; only exceptional curves can be blown up")
    new_id = _fresh_id(data)
    new = Component(new_id, EXCEPTIONAL, parent.m, parent.k + 1, True, -1)
    comps = [
        replace(c, self_intersection=c.self_intersection - 1) if c.id == cid else c for c in data.components
    ]
    comps.append(new)
    inter = dict(data.intersections)
    inter[_pair(cid, new_id)] = 1
    charts = None
    if data.charts is not None and data.germ is not None and cid in data.charts:
        charts = dict(data.charts)
        charts[new_id] = _free_point_chart(data, cid)
    return ResolutionData(tuple(comps), inter, charts=charts, germ=data.germ if charts else None)


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["components", "intersections"],
    "properties": {
        "components": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["id", "kind", "m", "k", "over_origin"],
                "properties": {
                    "id": {"type": "string"},
                    "kind": {"enum": [EXCEPTIONAL, STRICT]},
                    "m": {"type": "integer"},
                    "k": {"type": "integer"},
                    "over_origin": {"type": "boolean"},
                    "self_intersection": {"type": "integer"},
                    "cluster_degree": {"type": "integer", "minimum": 1},
                },
                "if": {"properties": {"kind": {"const": EXCEPTIONAL}}},
                "then": {"required": ["self_intersection"]},
                "else": {"not": {"required": ["self_intersection"]}},
            },
        },
        "intersections": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["a", "b", "points"],
                "properties": {
                    "a": {"type": "string"},
                    "b": {"type": "string"},
                    "points": {"type": "integer", "minimum": 0},
                },
            },
        },
    },
}


def to_dict(data: ResolutionData) -> dict:
    comps = []
    for c in data.components:
        d = {"id": c.id, "kind": c.kind, "m": c.m, "k": c.k, "over_origin": c.over_origin}
        if c.self_intersection is not None:
            d["self_intersection"] = c.self_intersection
        d["cluster_degree"] = c.cluster_degree
        comps.append(d)
    order = {cid: i for i, cid in enumerate(data.ids)}
    rank = lambda cid: (order.get(cid, len(order)), cid)
    pairs = sorted(tuple(sorted(key, key=rank)) + (n,) for key, n in data.intersections.items())
    pairs.sort(key=lambda p: (rank(p[0]), rank(p[1])))
    inter = [{"a": a, "b": b, "points": n} for a, b, n in pairs]
    return {"components": comps, "intersections": inter}


def from_dict(obj, force: bool = False) -> ResolutionData:
    try:
        jsonschema.validate(obj, SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ResolutionDataError(f"schema error at {where}: {exc.message}") from None
    comps = tuple(
        Component(
            id=c["id"],
            kind=c["kind"],
            m=c["m"],
            k=c["k"],
            over_origin=c["over_origin"],
            self_intersection=c.get("self_intersection"),
            cluster_degree=c.get("cluster_degree", 1),
        )
        for c in obj["components"]
    )
    inter: Dict[FrozenSet[str], int] = {}
    for entry in obj["intersections"]:
        if entry["a"] == entry["b"]:
            raise ResolutionDataError(f"schema error: intersection of {entry['a']!r} with itself")
        key = _pair(entry["a"], entry["b"])
        if key in inter:
            raise ResolutionDataError(f"schema error: duplicate intersection {entry['a']}/{entry['b']}")
        inter[key] = entry["points"]
    data = ResolutionData(comps, inter)
    return data if force else check(data)


def dumps(data: ResolutionData) -> str:
    return json.dumps(to_dict(data), indent=2)


def loads(text: str, force: bool = False) -> ResolutionData:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ResolutionDataError(
            f"JSON parse error at line {exc.lineno} column {exc.colno}: {exc.msg}", position=exc.pos
        ) from None
    return from_dict(obj, force=force)


def store(data: ResolutionData, path) -> None:
    Path(path).write_text(dumps(data) + "\n")


def load(path, force: bool = False) -> ResolutionData:
    return loads(Path(path).read_text(), force=force)
