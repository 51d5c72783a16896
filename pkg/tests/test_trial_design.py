from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import enumerate_stopped_paths
from stopwalk import count_paths, unbiased_estimate
from stopwalk.errors import InvalidDesign, NotDecisionStage, NotStopState
from stopwalk.lattice import enumerate_slice
from stopwalk.trial_design import (
    Decision,
    Stage,
    TrialDesign,
    TrialState,
    continuation_regions,
    stop_states,
    trial_decision,
    trial_region,
    trial_unbiased_estimate,
    validate_design,
    verify_trial,
)

GRID = [(F(1, 3), F(1, 3), F(1, 3)), (F(1, 2), F(1, 4), F(1, 4)), (F(1, 5), F(1, 2), F(3, 10))]


def test_decisions(example_design):
    assert trial_decision(example_design, TrialState(3, 3, 0)) is Decision.PROMISING
    assert trial_decision(example_design, TrialState(3, 0, 3)) is Decision.INEFFECTIVE
    assert trial_decision(example_design, TrialState(3, 1, 1)) is Decision.CONTINUE
    with pytest.raises(NotDecisionStage):
        trial_decision(example_design, TrialState(2, 1, 1))


def test_continuation_regions(example_design):
    conts = continuation_regions(example_design)
    all_states = {(r, e) for r in range(4) for e in range(4) if r + e <= 3}
    assert conts[0] == all_states - {(3, 0), (0, 2), (0, 3)}
    assert conts[1] == frozenset()


def test_single_stage_design_has_no_continuation():
    d = TrialDesign((Stage(5, promising=(3, 1), final=True),))
    assert continuation_regions(d) == [frozenset()]


def test_stop_everything_design_reports_unreachable_stage():
    d = TrialDesign.from_json({"stages": [
        {"n": 3, "promising": {"r_min": 4, "e_max": -1}, "ineffective": {"r_max": 3, "e_min": 0}},
        {"n": 3, "final": {"promising": {"r_min": 4, "e_max": 1}}},
    ]})
    assert continuation_regions(d)[0] == frozenset()
    assert validate_design(d).unreachable_stages == (2,)


def test_invalid_designs():
    with pytest.raises(InvalidDesign):
        validate_design(TrialDesign((Stage(3, (1, 1), (2, 2)), Stage(3, (4, 1), final=True))))
    with pytest.raises(InvalidDesign):  # final stage with both rules but a gap
        validate_design(TrialDesign((Stage(3, promising=(3, 0), ineffective=(0, 3), final=True),)))
    with pytest.raises(InvalidDesign):
        TrialDesign.from_json({"stages": [{"n": 3, "final": {"promising": {"r_min": 1, "e_max": 1}}},
                                          {"n": 2, "final": {"promising": {"r_min": 1, "e_max": 1}}}]})


def test_trial_region_membership(example_design):
    region = trial_region(example_design)
    assert region.is_accessible((2, 1, 0))
    assert region.is_boundary((3, 0, 0))
    sl = enumerate_slice(region, 6)
    assert sl.accessible == ()
    reachable6 = {y for y in sl.boundary}
    assert reachable6 and all(sum(y) == 6 for y in reachable6)


def test_single_stage_collapse():
    d = TrialDesign((Stage(5, promising=(3, 1), final=True),))
    est = trial_unbiased_estimate(d, TrialState(5, 2, 1))
    assert (est.response, est.progression) == (F(2, 5), F(1, 5))


def test_stage1_promising_terminal(example_design):
    est = trial_unbiased_estimate(example_design, TrialState(3, 3, 0), 1)
    assert (est.response, est.progression) == (1, 0)
    assert est.decision is Decision.PROMISING


def test_not_stop_state(example_design):
    with pytest.raises(NotStopState):
        trial_unbiased_estimate(example_design, TrialState(3, 1, 1), 1)
    with pytest.raises(NotStopState):
        trial_unbiased_estimate(example_design, TrialState(4, 1, 1))


def _general_estimates(design):
    region = trial_region(design)
    table = count_paths(region, region.horizon)
    cum = design.cumulative
    out = {}
    for s in stop_states(design):
        out[s] = unbiased_estimate(table, s.point)
    return out, table


def test_framework_equivalence_example(example_design):
    general, table = _general_estimates(example_design)
    assert len(general) > 0
    for s, est in general.items():
        tr = trial_unbiased_estimate(example_design, s)
        assert (tr.response, tr.nonresponse, tr.progression) == est
    # the boundary of the embedded region is exactly the set of stop states
    assert set(table.boundary) == {s.point for s in general}


def test_brute_force_patient_sequences(example_design):
    region = trial_region(example_design)
    brute = enumerate_stopped_paths(region.admits, 3, 6)
    assert len(brute) == len(stop_states(example_design))
    for s in stop_states(example_design):
        tot, star = brute[s.point]
        est = trial_unbiased_estimate(example_design, s)
        assert (est.response, est.progression) == (F(star[0], tot), F(star[2], tot))


def test_exact_unbiasedness(example_design):
    rows = verify_trial(example_design, GRID)
    assert all(r["holds"] for r in rows)


def test_estimates_in_unit_interval(example_design):
    for s in stop_states(example_design):
        est = trial_unbiased_estimate(example_design, s)
        assert 0 <= est.response <= 1 and 0 <= est.progression <= 1
        assert est.response + est.progression <= 1


@st.composite
def small_designs(draw):
    K = draw(st.integers(1, 2))
    stages = []
    for s in range(K):
        n = draw(st.integers(1, 4))
        if s < K - 1:
            cum = sum(st_.n for st_ in stages) + n
            rho_i = draw(st.integers(-1, cum))
            rho_p = draw(st.integers(rho_i + 1, cum + 1))
            eps_p = draw(st.integers(-1, cum))
            eps_i = draw(st.integers(eps_p + 1, cum + 1))
            stages.append(Stage(n, (rho_p, eps_p), (rho_i, eps_i)))
        else:
            stages.append(Stage(n, (draw(st.integers(0, 8)), draw(st.integers(0, 8))), final=True))
    return TrialDesign(tuple(stages))


@settings(max_examples=40, deadline=None)
@given(small_designs())
def test_framework_equivalence_random(design):
    validate_design(design)
    general, _ = _general_estimates(design)
    for s, est in general.items():
        tr = trial_unbiased_estimate(design, s)
        assert (tr.response, tr.nonresponse, tr.progression) == est
    assert all(r["holds"] for r in verify_trial(design, GRID[:2]))


def test_every_reachable_state_decided_once(example_design):
    for r, e in product(range(4), repeat=2):
        if r + e <= 3:
            d = trial_decision(example_design, TrialState(3, r, e))
            assert d in Decision


def test_design_json_round_trip(example_design):
    assert TrialDesign.from_json(example_design.to_json()) == example_design
