import pytest
from hypothesis import given, settings, strategies as st

from bucalc import (
    bounds_report,
    coincidence_bound,
    compare_prior_bounds,
    delta,
    make_group,
    make_rep,
    module_zero_set_bound,
    rep_from_profile,
    sphere_map_necessary,
    zero_set_lower_bound,
)
from bucalc.bounds import report_to_json


def test_zero_set_lower_bound_examples():
    two_l = rep_from_profile(make_group(2, 0), [2])
    assert zero_set_lower_bound(two_l, 5) == 4
    assert zero_set_lower_bound(two_l, 2) is None  # n = delta

    rep = rep_from_profile(make_group(3, 1), [2, 1])
    assert zero_set_lower_bound(rep, 6) == 4

    with pytest.raises(ValueError, match="m_k = 0"):
        zero_set_lower_bound(make_rep(make_group(2, 1), [1]), 5)


def test_sphere_map_necessary_examples():
    rep = rep_from_profile(make_group(2, 1), [0, 6])
    assert delta(rep) == 11
    assert sphere_map_necessary(rep, 11)
    assert not sphere_map_necessary(rep, 12)
    assert sphere_map_necessary(rep_from_profile(make_group(2, 0), [1]), 1)


def test_coincidence_bound_examples():
    assert coincidence_bound(3, 1, 2, 15).value == 8
    assert coincidence_bound(3, 0, 2, 5).value == 4
    with pytest.raises(ValueError, match="even r"):
        coincidence_bound(2, 1, 3, 10)
    res = coincidence_bound(2, 1, 2, 10)
    assert res.extra_hypothesis is not None
    assert coincidence_bound(3, 1, 2, 15).extra_hypothesis is None


def test_coincidence_wreath_profile_cross_check():
    # profile (6, 2) at (p, k, r) = (3, 1, 2): delta = 10
    group = make_group(3, 1)
    profile = [2 * (3 - 1) * 3 ** (1 - l) // 2 for l in range(2)]
    assert profile == [6, 2]
    assert delta(rep_from_profile(group, profile)) == 10


@pytest.mark.parametrize("p", [3, 5])
@pytest.mark.parametrize("k", [0, 1, 2])
def test_coincidence_closed_form_matches_generic(p, k):
    # closed form == generic delta bound; the check is built into the op,
    # so this just sweeps it over the grid
    for r in range(1, 7):
        for n in range(1, 61):
            coincidence_bound(p, k, r, n)


def test_compare_examples():
    rep = make_rep(make_group(2, 1), [2])
    assert compare_prior_bounds(rep, 5) == {"ours": 6, "bms": 2, "crabb2019": 4}

    rep = rep_from_profile(make_group(2, 0), [2])
    table = compare_prior_bounds(rep, 5)
    assert table["ours"] == 4 and table["bms"] == 4
    assert table["crabb2019"] == 4  # at k = 0 the two bounds coincide

    rep = rep_from_profile(make_group(3, 1), [2, 1])
    assert compare_prior_bounds(rep, 6)["crabb2019"] is None


def test_compare_uses_effective_level():
    # profile (2, 0) at k = 1 restricts to k' = 0
    rep = make_rep(make_group(2, 1), [1, 1])
    table = compare_prior_bounds(rep, 5)
    assert table["ours"] == 2 * (5 - 1 - 2)
    assert table["bms"] == 2 * (5 - 1 - 2)
    assert table["crabb2019"] is None  # m_k != m


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_p2_comparison_gap(k):
    for m in range(1, 7):
        rep = rep_from_profile(make_group(2, k), [0] * k + [m])
        d = delta(rep)
        for n in range(d + 1, 61):
            table = compare_prior_bounds(rep, n)
            assert table["ours"] - table["crabb2019"] == 2 * (2**k - 1)


_GRID = st.sampled_from([(2, 0), (2, 1), (2, 2), (3, 0), (3, 1), (5, 0)])


@st.composite
def top_level_reps(draw):
    p, k = draw(_GRID)
    group = make_group(p, k)
    exps = draw(st.lists(st.integers(1, group.N - 1), min_size=1, max_size=6))
    rep = make_rep(group, exps)
    if rep.profile[-1] == 0:
        rep = make_rep(group, list(exps) + [group.p**group.k])
    return rep


@settings(max_examples=80, deadline=None)
@given(top_level_reps(), st.integers(1, 40))
def test_ours_dominates_bms_and_parity(rep, n):
    table = compare_prior_bounds(rep, n)
    if table["ours"] is not None:
        assert table["ours"] >= table["bms"]
        assert table["ours"] % 2 == 0 and table["ours"] >= 0
    lb = zero_set_lower_bound(rep, n)
    if lb is not None:
        assert lb % 2 == 0 and lb >= 0


def test_module_zero_set_bound_examples():
    g2 = make_group(2, 0)
    assert module_zero_set_bound(
        rep_from_profile(g2, [5]), rep_from_profile(g2, [2])
    ) == (4, 1)

    # dim U = delta(V): not applicable
    bound, gamma = module_zero_set_bound(
        rep_from_profile(g2, [2]), rep_from_profile(g2, [2])
    )
    assert bound is None

    g4 = make_group(2, 1)
    u = make_rep(g4, [1, 1, 1, 1, 1])
    v = make_rep(g4, [2])
    assert module_zero_set_bound(u, v) == (6, 1)

    u = make_rep(g4, [2, 3])
    assert module_zero_set_bound(u, v)[1] == 6  # deck group of order 2*3

    with pytest.raises(ValueError, match="group mismatch"):
        module_zero_set_bound(rep_from_profile(g2, [5]), v)


def test_bounds_report_shape():
    rep = rep_from_profile(make_group(2, 1), [0, 6])
    report = bounds_report(rep, 13)
    payload = report_to_json(report)
    assert payload["delta"] == 11
    assert payload["lower_bound_dim"] == 2 * (13 - 1 - 11)
    assert payload["necessary"] is False
    assert payload["construction"] == {"n_0": 8, "c_achieved": 4, "zero_set_dim": 9}
    assert set(payload["comparisons"]) == {"ours", "bms", "crabb2019"}

    # below the planner threshold there is no construction block
    rep = rep_from_profile(make_group(2, 1), [0, 2])
    assert report_to_json(bounds_report(rep, 9))["construction"] is None
