import json
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from johnson_turan.bounds import (
    BoundReport,
    alpha_estimate,
    distance_bound_leading,
    peel_certify,
    peeling_sum,
    t4_bound_leading,
    turan_applies,
    turan_bound,
)
from johnson_turan.census import census
from johnson_turan.combinatorics import GraphParams
from johnson_turan.errors import DomainError, SizingError
from johnson_turan.graph import VertexSet, induced_edge_count, random_vertex_set

from oracles import edge_count, gamma_counts, r_of_l_brute, subsets


def fs(v):
    return frozenset(v.support())


def test_turan_examples():
    assert turan_bound(4, 4) == 0 and not turan_applies(4, 4)
    for a in range(1, 20):
        assert turan_bound(2 * a, a) == a
    assert turan_bound(8, 4) == 4
    # Petersen: r(8) from exhaustive search is at least that
    assert r_of_l_brute(subsets(5, 2), 0, 8) >= 4
    with pytest.raises(DomainError):
        turan_bound(3, 0)


def test_distance_and_t4_examples():
    assert distance_bound_leading(7, 7) == 7
    assert distance_bound_leading(10, 4) == 25
    assert t4_bound_leading(10, 4) == Fraction(75, 2)
    assert distance_bound_leading(10, 4) == 2 * (turan_bound(10, 4) + Fraction(10, 2))
    # with alpha = n the G(n,3,1) leading term is 3 l^2 / 2n
    for n in range(5, 30):
        l = 3 * n * n
        assert t4_bound_leading(l, n) == Fraction(3 * l * l, 2 * n)
    for bad in (distance_bound_leading, t4_bound_leading):
        with pytest.raises(DomainError):
            bad(5, 0)


def test_peeling_sum_examples():
    assert peeling_sum(100, 4, 10, 1, 10**9) == 0
    assert peeling_sum(12, 4, 50, 3, 0) == 36
    assert peeling_sum(10, 4, 50, 3, 0) == 24
    # unclamped sum goes negative when the penalty dominates
    assert peeling_sum(10, 4, 3, 1, 1, clamp=False) == 3 * 6 + 3 * 2 - 2 * 2 * 9
    assert peeling_sum(10, 4, 3, 1, 1) == 0
    # terms 18 - 8 and 6 - 8
    assert peeling_sum(10, 4, 2, 1, 1) == 10
    assert peeling_sum(10, 4, 2, 1, 1, clamp=False) == 8
    with pytest.raises(DomainError):
        peeling_sum(10, 4, 3, 1, -1)


@given(st.integers(1, 200), st.integers(0, 30))
def test_peeling_sum_closed_form(alpha, k):
    assert peeling_sum(k * alpha, alpha, 9, 2, 0) == Fraction(3 * alpha * k * (k - 1), 2)


def test_peel_independent_w():
    w = VertexSet.full(GraphParams(4, 3, 1))
    trace = peel_certify(w)
    assert len(trace.rounds) == 1 and trace.rounds[0].beta == 4
    assert trace.total_certified == 0 == induced_edge_count(w)


def test_peel_single_edge():
    p = GraphParams(5, 3, 1)
    w = VertexSet.of(p, [[1, 2, 3], [1, 4, 5]])
    trace = peel_certify(w)
    assert [r.beta for r in trace.rounds] == [1, 1]
    assert trace.total_certified == 1 == induced_edge_count(w)


def _round_accounting(trace, s):
    for rnd in trace.rounds:
        counts = gamma_counts([fs(v) for v in rnd.residual], {fs(u) for u in rnd.gamma.witness}, s)
        light = sum(1 for c in counts.values() if c in (1, 2))
        heavy = sum(1 for c in counts.values() if c >= 3)
        assert min(counts.values(), default=1) >= 1
        assert (rnd.f, rnd.heavy) == (light, heavy)
        if trace.tight:
            expected = 3 * heavy + sum(c for c in counts.values() if c in (1, 2))
        else:
            expected = 3 * heavy + light
        assert rnd.edges == expected
        rep = census(rnd.residual, rnd.gamma)
        assert rnd.f == rep.u1_size + rep.u2_size
        if not trace.tight:
            assert rnd.edges == 3 * (len(rnd.residual) - rnd.beta - rnd.f) + rnd.f


@pytest.mark.parametrize("mode", ["exact", "greedy"])
@pytest.mark.parametrize("tight", [False, True])
def test_peel_sound_on_random_corpus(mode, tight):
    rng = random.Random(7)
    p = GraphParams(7, 3, 1)
    for _ in range(40):
        w = random_vertex_set(p, 25, rng)
        trace = peel_certify(w, mode=mode, tight=tight)
        truth = edge_count([fs(v) for v in w], 1)
        assert trace.total_certified <= truth
        assert sum(r.beta for r in trace.rounds) == len(w)
        _round_accounting(trace, 1)


def test_tight_dominates_default():
    rng = random.Random(8)
    p = GraphParams(6, 3, 1)
    for _ in range(20):
        w = random_vertex_set(p, 15, rng)
        assert peel_certify(w, tight=True).total_certified >= peel_certify(w).total_certified


def test_peel_exact_cap():
    w = VertexSet.full(GraphParams(8, 3, 1))
    with pytest.raises(SizingError, match="greedy"):
        peel_certify(w)
    assert peel_certify(w, mode="greedy").total_certified <= induced_edge_count(w)


def test_alpha_sources():
    p = GraphParams(7, 3, 1)
    assert alpha_estimate(p, "exact") == 5
    assert alpha_estimate(p, "midpoint") == 6
    assert alpha_estimate(p, "frankl") == 7
    with pytest.raises(DomainError):
        alpha_estimate(GraphParams(9, 5, 2), "midpoint")


def test_bound_report_roundtrip_and_violations():
    p = GraphParams(5, 2, 0)
    rep = BoundReport.build(p, 5, 4, "exact", exact_rl=2, peeling_certified=2, method="exhaustive", rl_value=2)
    assert rep.turan == Fraction(5, 8) and rep.violations() == []
    assert BoundReport.from_csv_row(rep.to_csv_row()) == rep
    json.dumps(rep.to_json())
    bad = BoundReport.build(p, 8, 4, "exact", exact_rl=3)
    assert bad.violations() and math.ceil(bad.turan) == 4


@settings(max_examples=200)
@given(st.integers(0, 10**6), st.integers(1, 10**6))
def test_ratio_t4_distance(l, alpha):
    assert t4_bound_leading(l, alpha) == Fraction(3, 2) * distance_bound_leading(l, alpha)
