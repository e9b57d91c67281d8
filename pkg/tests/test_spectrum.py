import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import EXTENDED, perturb, seed
from specjump.exact import parse_poly
from specjump.multiplier import candidate_alphas, inner_jump_multiplicity, inner_spectrum
from specjump.resdata import extra_blowup
from specjump.resolver import resolve_germ
from specjump.spectrum import (
    closed_sum,
    open_strata_sum,
    spectrum_table,
    strata,
    stratum_multiplicity,
    support_alphas,
    twist,
    verify_theorem,
)


def lattice_spectrum(a, b):
    """Independent count of i/a + j/b <= 1 for 1 <= i < a, 1 <= j < b."""
    out = {}
    for i in range(1, a):
        for j in range(1, b):
            v = Q(i, a) + Q(j, b)
            if v <= 1:
                out[v] = out.get(v, 0) + 1
    return out


def test_cusp_at_five_sixths(corpus_files):
    data = corpus_files["cusp"]
    assert strata(data, Q(5, 6)) == [frozenset({"E3"})]
    assert twist(data, Q(5, 6)) == {"E1": 1, "E2": 2, "E3": 5, "S1": 0}
    assert closed_sum(data, Q(5, 6)) == -1
    assert stratum_multiplicity(data, Q(5, 6)) == 1


def test_node_at_one(corpus_files):
    data = corpus_files["node"]
    assert set(strata(data, 1)) == {frozenset({"E1"}), frozenset({"E1", "S1"}), frozenset({"E1", "S2"})}
    assert closed_sum(data, 1) == -1
    assert stratum_multiplicity(data, 1) == 1


def test_three_lines_at_one_counts_cluster_points(corpus_files):
    data = corpus_files["three_lines"]
    assert closed_sum(data, 1) == 1 - 1 - 2
    assert stratum_multiplicity(data, 1) == 2


@pytest.mark.parametrize(
    "name, table",
    [
        ("cusp", {Q(5, 6): 1}),
        ("node", {Q(1): 1}),
        ("three_lines", {Q(2, 3): 1, Q(1): 2}),
        ("smooth", {}),
    ],
)
def test_spectrum_table(corpus_files, name, table):
    assert spectrum_table(corpus_files[name]).as_dict() == table


def test_cusp_at_one_vanishes(corpus_files):
    assert stratum_multiplicity(corpus_files["cusp"], 1) == 0


@pytest.mark.parametrize("a, b", [(2, 3), (2, 5), (3, 4), (3, 5), (4, 5), (2, 7)])
def test_quasi_homogeneous(a, b):
    data = resolve_germ(parse_poly(f"x^{a} + y^{b}"))
    assert spectrum_table(data).as_dict() == lattice_spectrum(a, b)


@pytest.mark.parametrize("name", sorted(EXTENDED))
def test_theorem_and_scissor_on_corpus(resolved, name):
    data = resolved[name]
    for a in support_alphas(data):
        assert closed_sum(data, a) == open_strata_sum(data, a)
        assert stratum_multiplicity(data, a) == inner_jump_multiplicity(data, a)
    assert spectrum_table(data) == inner_spectrum(data)


def test_support_covers_candidates(resolved):
    for data in resolved.values():
        assert set(candidate_alphas(data)) <= set(support_alphas(data))


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(sorted(EXTENDED)), st.integers(0, 2**32 - 1), st.integers(1, 4))
def test_theorem_under_random_blowups(resolved, name, salt, steps):
    data = perturb(resolved[name], random.Random(seed() ^ salt), steps)
    for a in support_alphas(data):
        n = stratum_multiplicity(data, a)
        assert n >= 0
        assert n == inner_jump_multiplicity(data, a)
    assert spectrum_table(data) == spectrum_table(resolved[name])


def test_verify_cusp():
    report = verify_theorem(resolve_germ(parse_poly("x^2 + y^3")))
    assert report.passed and report.oracle_used
    rows = {e.alpha: (e.inner, e.stratum, e.oracle) for e in report.entries}
    assert rows[Q(5, 6)] == (1, 1, 1)
    assert rows[Q(1)] == (0, 0, None)


def test_verify_cusp_after_extra_blowup():
    data = extra_blowup(resolve_germ(parse_poly("x^2 + y^3")), "E3")
    report = verify_theorem(data)
    assert report.passed
    assert {e.alpha: e.stratum for e in report.entries if e.stratum} == {Q(5, 6): 1}


def test_verify_node_skips_oracle_at_one(corpus_files, resolved):
    report = verify_theorem(resolved["node"])
    [entry] = [e for e in report.entries if e.alpha == 1]
    assert entry.passed and entry.oracle is None and entry.inner == entry.stratum == 1
    # loaded JSON has no charts: the oracle is skipped with a note
    loaded = verify_theorem(corpus_files["node"])
    assert loaded.passed and not loaded.oracle_used
    assert all(e.oracle_note == "no chart maps" for e in loaded.entries)


def test_verify_non_reduced_skips_oracle():
    report = verify_theorem(resolve_germ(parse_poly("x^2*y")))
    assert report.passed and not report.oracle_used


def test_verify_report_json(resolved):
    obj = verify_theorem(resolved["cusp"]).to_json()
    assert obj["pass"] is True
    assert [e["alpha"] for e in obj["entries"]] == ["1/6", "1/3", "1/2", "2/3", "5/6", "1"]
    assert obj["entries"][-1]["oracle"] == "skipped"
    assert all(isinstance(e["inner"], int) for e in obj["entries"])
