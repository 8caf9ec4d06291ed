import pytest
from hypothesis import given, strategies as st

from relend import registry as R
from relend.ends import (ConstraintViolation, NotNested, NotSurjective, ValidationFailed, check_family,
                         end_at_generator, end_to_json, factor_through, induce_pi, induce_pi_generic,
                         relative_end, restriction_mono, validation_depth)
from relend import ends as ends_mod
from relend.exactla import Mat, op_to_vec, subspace_equal, vec_to_op
from relend.hopf import HopfMap, coinvariants, counit_map, identity_map
from relend.rep import (LEFT, RIGHT, dual, hom_basis, is_invariant_subspace, pullback, regular_module, tensor,
                        trivial_module)

HOPFS = ["k", "c2", "c3", "s3", "sweedler", "c2-c2", "fn-s3"]


def element_of(e, i):
    # e_i acts on P as left multiplication by e_i(1)
    h = e.algebra
    return h.from_vec(vec_to_op(e.pi_at_P.col(i), h.dim, h.dim) @ h.to_vec(h.one()))


def modules(h):
    p, one = regular_module(h), trivial_module(h)
    return [one, p, dual(p, RIGHT), dual(p, LEFT), tensor(p, p) if h.dim <= 4 else p]


@pytest.mark.parametrize("hn", HOPFS)
def test_ordinary_end_is_left_multiplications(hn):
    h = R.hopf(hn)
    e = end_at_generator(h)
    assert e.dim == h.dim
    lefts = [op_to_vec(h.left_mult_matrix(h.basis(i))) for i in range(h.dim)]
    assert subspace_equal(list(e.basis), lefts)
    assert is_invariant_subspace(e.ambient, list(e.basis))


@pytest.mark.parametrize("hn", ["c2", "s3", "sweedler", "fn-s3"])
def test_induced_components_are_actions(hn):
    h = R.hopf(hn)
    e = end_at_generator(h)
    for m in modules(h):
        pis = induce_pi(e, m)
        for i in range(e.dim):
            assert pis.col(i) == op_to_vec(m.rho(element_of(e, i)))


def test_component_at_P_is_pi_P(s3):
    e = end_at_generator(s3)
    assert induce_pi(e, e.P) == e.pi_at_P


def test_component_at_trivial_c2(c2):
    e = end_at_generator(c2)
    pis = induce_pi(e, trivial_module(c2))
    assert pis.rows == 1 and not pis.is_zero()


@pytest.mark.parametrize("hn", ["c2", "sweedler"])
def test_generic_matches_fast(hn):
    h = R.hopf(hn)
    e = end_at_generator(h)
    for m in modules(h):
        assert induce_pi_generic(e, m) == induce_pi(e, m)


@given(st.sampled_from(["c2", "sweedler", "s3"]), st.integers(0, 4), st.integers(0, 4),
       st.lists(st.integers(-3, 3), min_size=40, max_size=40))
def test_dinaturality(hn, i, j, coeffs):
    h = R.hopf(hn)
    ms = modules(h)
    m, n = ms[i], ms[j]
    fs = hom_basis(m, n)
    if not fs:
        return
    f = Mat.zeros(n.dim, m.dim)
    for g, c in zip(fs, coeffs):
        f = f + g.matrix.scale(c)
    e = end_at_generator(h)
    pm, pn = induce_pi(e, m), induce_pi(e, n)
    for k in range(e.dim):
        a = vec_to_op(pm.col(k), m.dim, m.dim)
        b = vec_to_op(pn.col(k), n.dim, n.dim)
        assert b @ f == f @ a


@pytest.mark.parametrize("pair", list(R.PAIRS))
def test_relative_end_dimension_formula(pair):
    p = R.pair(pair)
    e = relative_end(p.source, p)
    assert e.dim * p.target.dim == p.source.dim
    assert is_invariant_subspace(e.ambient, list(e.basis))


@pytest.mark.parametrize("pair", ["s3/A3", "sweedler/c2", "fn-s3/fn-c2", "c4/C2"])
def test_relative_end_is_coinvariant_multiplications(pair):
    p = R.pair(pair)
    h = p.source
    e = relative_end(h, p)
    ells = [op_to_vec(h.left_mult_matrix(h.from_vec(c))) for c in coinvariants(p)]
    assert subspace_equal(list(e.basis), ells)


def test_relative_end_examples(s3, sw):
    e = relative_end(s3, R.pair("s3/A3"))
    # coinvariants of kS3 -> kC2 are the class sums of A3 and of its odd coset
    assert e.dim == 3
    e = relative_end(sw, R.pair("sweedler/c2"))
    assert e.dim == 2


@pytest.mark.parametrize("hn", ["c2", "s3", "sweedler"])
def test_degenerate_quotients(hn):
    h = R.hopf(hn)
    assert relative_end(h, identity_map(h)).dim == 1
    assert relative_end(h, counit_map(h)).dim == h.dim


def test_validation_depth_env(monkeypatch, s3):
    monkeypatch.delenv("RELEND_VALIDATION_DEPTH", raising=False)
    assert validation_depth() == 3
    monkeypatch.setenv("RELEND_VALIDATION_DEPTH", "1")
    assert validation_depth() == 1
    e = relative_end(s3, R.pair("s3/A3"))
    assert [v["X"] for v in e.validations] == ["trivial"]
    monkeypatch.setenv("RELEND_VALIDATION_DEPTH", "0")
    assert relative_end(s3, R.pair("s3/A3")).validations == ()
    monkeypatch.setenv("RELEND_VALIDATION_DEPTH", "-1")
    with pytest.raises(ValueError):
        validation_depth()


def test_validation_failure_is_reported(monkeypatch, s3):
    # the regular module of kS3 is not pulled back from kC2, so the condition must fail there
    monkeypatch.setattr(ends_mod, "validation_objects", lambda p, depth: [("regular", regular_module(s3))])
    with pytest.raises(ValidationFailed):
        relative_end(s3, R.pair("s3/A3"))


def test_not_surjective(c2):
    k = R.hopf("k")
    unit = HopfMap(k, c2, Mat.from_rows([[1], [0]]))
    with pytest.raises(NotSurjective):
        relative_end(k, unit)


def test_factor_through(s3):
    e = end_at_generator(s3)
    coeffs = Mat.from_rows([[i - j for j in range(2)] for i in range(6)])
    lam = e.pi_at_P @ coeffs
    assert factor_through(e, lam) == coeffs
    bad = Mat.column(op_to_vec(s3.right_mult_matrix(s3.basis(1))))
    with pytest.raises(ConstraintViolation):
        factor_through(e, bad)


def test_factor_through_relative_rejects_ordinary(s3):
    p = R.pair("s3/A3")
    e_c = end_at_generator(s3)
    e_d = relative_end(s3, p, ordinary=e_c)
    outside = next(v for v in e_c.basis if not e_d.contains(v))
    assert check_family(e_d, Mat.column(outside)) == ["relative condition"]
    with pytest.raises(ConstraintViolation):
        factor_through(e_d, Mat.column(outside))
    inside = Mat.column(e_d.basis[0])
    assert factor_through(e_d, inside).col(0) == (1,) + (0,) * (e_d.dim - 1)


def test_restriction_tower():
    h = R.hopf("c4")
    e_c = end_at_generator(h)
    e_mid = relative_end(h, R.pair("c4/C2"), ordinary=e_c)
    e_id = relative_end(h, identity_map(h), ordinary=e_c)
    sample = [trivial_module(h), regular_module(h)]
    a = restriction_mono(e_mid, e_c, sample)
    b = restriction_mono(e_id, e_mid, sample)
    assert restriction_mono(e_id, e_c, sample) == a @ b
    with pytest.raises(NotNested):
        restriction_mono(e_c, e_mid)
    with pytest.raises(NotNested):
        restriction_mono(e_c, end_at_generator(R.hopf("c2")))


def test_end_to_json(sw):
    e = relative_end(sw, R.pair("sweedler/c2"))
    js = end_to_json(e)
    assert js["schema"] == "end-v1" and js["dim_end"] == 2 and js["dim_ambient"] == 16
    assert js["relative_to"] == "sweedler->kC2"
    assert all(v["pass"] for v in js["validations"])
