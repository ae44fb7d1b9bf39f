import pytest
from hypothesis import given, settings, strategies as st
from sympy import Poly, symbols

from bucalc import (
    INTEGRAL,
    P_LOCAL,
    EulerQuery,
    cyclic_mul,
    delta,
    euler_class,
    is_nonvanishing,
    make_group,
    make_rep,
    phi_correction_poly,
    phi_poly,
    rep_from_profile,
    sharpness_scan,
)
from bucalc.cyclic_ring import binomial_one_minus_z, from_coeffs, monomial, one, zero

x = symbols("x")


def test_euler_class_examples():
    g4 = make_group(2, 1)
    assert euler_class(make_rep(g4, [1])) == from_coeffs(g4, [1, -1, 0, 0])
    assert euler_class(make_rep(g4, [2])) == from_coeffs(g4, [1, 0, -1, 0])
    g2 = make_group(2, 0)
    assert euler_class(make_rep(g2, [1, 1])) == from_coeffs(g2, [2, -2])


_GROUPS = st.sampled_from([(2, 0), (2, 1), (3, 0), (3, 1), (2, 2)])


@st.composite
def reps(draw, top_level=False):
    p, k = draw(_GROUPS)
    group = make_group(p, k)
    exps = draw(st.lists(st.integers(1, group.N - 1), min_size=1, max_size=6))
    rep = make_rep(group, exps)
    if top_level and rep.profile[-1] == 0:
        rep = make_rep(group, exps + [group.p**group.k])
    return rep


@given(reps(), reps())
def test_euler_class_multiplicative(a, b):
    if a.group != b.group:
        return
    combined = make_rep(a.group, a.exponents + b.exponents)
    assert euler_class(combined) == cyclic_mul(euler_class(a), euler_class(b))


def test_nonvanishing_examples():
    g2 = make_group(2, 0)
    v1 = make_rep(g2, [1])
    assert not is_nonvanishing(EulerQuery(v1, n=1, j=0, locality=INTEGRAL))
    assert not is_nonvanishing(EulerQuery(v1, n=1, j=0, locality=P_LOCAL))
    assert is_nonvanishing(EulerQuery(v1, n=2, j=0, locality=INTEGRAL))
    assert is_nonvanishing(EulerQuery(v1, n=2, j=0, locality=P_LOCAL))

    v2 = make_rep(g2, [1, 1])
    assert is_nonvanishing(EulerQuery(v2, n=4, j=1, locality=P_LOCAL))
    assert not is_nonvanishing(EulerQuery(v2, n=3, j=1, locality=P_LOCAL))


def test_nonvanishing_requires_top_level():
    rep = make_rep(make_group(2, 1), [1])
    with pytest.raises(ValueError, match="m_k = 0"):
        is_nonvanishing(EulerQuery(rep, n=3))


def test_query_validation():
    rep = make_rep(make_group(2, 0), [1])
    with pytest.raises(ValueError, match="n ="):
        EulerQuery(rep, n=0)
    with pytest.raises(ValueError, match="j ="):
        EulerQuery(rep, n=1, j=-1)
    with pytest.raises(ValueError, match="locality"):
        EulerQuery(rep, n=1, locality="rational")


def test_sharpness_scan_examples():
    g2 = make_group(2, 0)
    v2 = make_rep(g2, [1, 1])
    j_max, table = sharpness_scan(v2, 4, P_LOCAL)
    assert j_max == 1 == 4 - 1 - delta(v2)
    assert table == {0: True, 1: True, 2: False, 3: False, 4: False}

    j_max, _ = sharpness_scan(v2, 2, P_LOCAL)
    assert j_max is None  # n = delta

    v = make_rep(make_group(2, 1), [2])
    j_max, _ = sharpness_scan(v, 3, P_LOCAL)
    assert j_max == 1 and delta(v) == 1


@settings(max_examples=60, deadline=None)
@given(reps(top_level=True), st.integers(1, 12))
def test_sharpness_contract_p_local(rep, n):
    d = delta(rep)
    j_max, table = sharpness_scan(rep, n, P_LOCAL)
    if n > d:
        assert j_max == n - 1 - d
    else:
        assert j_max is None
    # verdicts are monotone in j: True then False
    verdicts = [table[j] for j in range(n + 1)]
    assert verdicts == sorted(verdicts, reverse=True)


@settings(max_examples=60, deadline=None)
@given(reps(top_level=True), st.integers(1, 12))
def test_integral_scan_monotone_and_at_least_p_local(rep, n):
    j_int, table_int = sharpness_scan(rep, n, INTEGRAL)
    j_loc, table_loc = sharpness_scan(rep, n, P_LOCAL)
    for j in table_loc:
        if table_loc[j]:
            assert table_int[j]  # p-locally non-zero implies non-zero
    if j_loc is not None:
        assert j_int is not None and j_int >= j_loc


def test_phi_examples():
    g = make_group(2, 0)
    assert phi_poly(g) == from_coeffs(g, [1, 1])
    g = make_group(2, 1)
    assert phi_poly(g) == from_coeffs(g, [1, 0, 1, 0])
    g = make_group(3, 0)
    assert phi_poly(g) == from_coeffs(g, [1, 1, 1])


@given(_GROUPS)
def test_phi_kills_top_factor(pk):
    group = make_group(*pk)
    top = one(group) - monomial(group, group.p**group.k)
    assert cyclic_mul(top, phi_poly(group)) == zero(group)


def test_phi_correction_spot_values():
    assert phi_correction_poly(make_group(2, 0), 0) == [-1]
    assert phi_correction_poly(make_group(3, 0), 0) == [-1]
    assert phi_correction_poly(make_group(2, 1), 1) == [-1, -1]
    with pytest.raises(ValueError, match="0 <= l <= k"):
        phi_correction_poly(make_group(2, 1), 2)


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("k", [0, 1, 2])
def test_phi_correction_remultiplies(p, k):
    group = make_group(p, k)
    phi = Poly(sum(x ** (i * p**k) for i in range(p)), x)
    for l in range(k + 1):
        a = Poly(list(reversed(phi_correction_poly(group, l))), x)
        lhs = Poly((1 - x ** (p**l)) ** ((p - 1) * p ** (k - l)), x)
        rhs = -p * (1 + (1 - Poly(x)) * a) + phi
        assert lhs == rhs


@settings(max_examples=50, deadline=None)
@given(reps(top_level=True), st.integers(1, 10), st.integers(0, 4), st.integers(1, 60))
def test_unit_factor_invariance_p_local(rep, n, j, u):
    group = rep.group
    if u % group.p == 0:
        u += 1
    scaled = make_rep(group, [t * u for t in rep.exponents])
    lhs = is_nonvanishing(EulerQuery(rep, n, j, P_LOCAL))
    rhs = is_nonvanishing(EulerQuery(scaled, n, j, P_LOCAL))
    assert lhs == rhs


@given(reps(), st.integers(0, 5))
def test_augmentation_vanishes(rep, j):
    value = cyclic_mul(euler_class(rep), binomial_one_minus_z(rep.group, j))
    assert sum(value.coeffs) == 0  # m + j >= 1 always here
