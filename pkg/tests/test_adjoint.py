import pytest
import sympy
from hypothesis import given, strategies as st

from relend import registry as R
from relend.adjoint import (ModelMismatch, NotClosed, algebra_map_holds, algebra_to_json, build_algebra,
                            check_simple_over_self, checks_pass, comparison_maps, connectedness, hexagon_holds,
                            is_irreducible, product_algebra, run_checks, verify_coinvariant_model, verify_deligne)
from relend.ends import EndObject, end_at_generator, relative_end
from relend.exactla import Mat, Q, op_to_vec, vec_to_op
from relend.hopf import counit_map, identity_map
from relend.rep import dual, regular_module, tensor, trivial_module, RIGHT


def element_of(e, i):
    h = e.algebra
    return h.from_vec(vec_to_op(e.pi_at_P.col(i), h.dim, h.dim) @ h.to_vec(h.one()))


def sym_coords(e, elem):
    # coordinates of an element of H in the basis {e_i(1)}, solved with sympy as an independent route
    h = e.algebra
    cols = [list(h.to_vec(element_of(e, i))) for i in range(e.dim)]
    a = sympy.Matrix(h.dim, e.dim, lambda r, c: sympy.Rational(str(cols[c][r])))
    b = sympy.Matrix(h.dim, 1, lambda r, c: sympy.Rational(str(h.to_vec(elem)[r])))
    sol, params = a.gauss_jordan_solve(b)
    assert not params.free_symbols
    return [sympy.Rational(x) for x in sol]


def qs(v):
    return [sympy.Rational(str(x)) for x in v]


@pytest.mark.parametrize("key", ["c2", "sweedler", "s3/A3", "sweedler/c2"])
def test_structure_constants_match_multiplication(key):
    if "/" in key:
        p = R.pair(key)
        e = relative_end(p.source, p)
    else:
        e = end_at_generator(R.hopf(key))
    a = build_algebra(e)
    h = e.algebra
    d = e.dim
    for i in range(d):
        for j in range(d):
            prod = h.mul(element_of(e, i), element_of(e, j))
            assert qs(a.mult.col(i * d + j)) == sym_coords(e, prod)
    assert qs(a.unit) == sym_coords(e, h.one())


def test_sweedler_relative_has_square_zero(sw):
    p = R.pair("sweedler/c2")
    e = relative_end(sw, p)
    a = build_algebra(e)
    assert e.dim == 2
    x = tuple(Q(str(c)) for c in sym_coords(e, sw.basis(2)))
    assert any(x) and not any(a.product(x, x))


def test_unit_is_identity_operator(s3):
    e = end_at_generator(s3)
    a = build_algebra(e)
    assert e.pi_at_P @ a.unit == op_to_vec(Mat.identity(6))


def braiding_oracle(e, x):
    # sigma(h (x) v) = h_(1) v (x) h_(2)
    h = e.algebra
    d, dx = e.dim, x.dim
    rows = [dict() for _ in range(dx * d)]
    for i in range(d):
        delta = h.delta(element_of(e, i))
        for a in range(dx):
            v = tuple(int(k == a) for k in range(dx))
            for (p, q), c in delta.items():
                w = x.rho(h.basis(p)) @ v
                coords = sym_coords(e, h.basis(q))
                for b, wb in enumerate(w):
                    for j, cj in enumerate(coords):
                        val = sympy.Rational(str(c)) * sympy.Rational(str(wb)) * cj
                        if val:
                            key = i * dx + a
                            rows[b * d + j][key] = rows[b * d + j].get(key, 0) + val
    return [[rows[r].get(col, 0) for col in range(d * dx)] for r in range(dx * d)]


@pytest.mark.parametrize("hn", ["c2", "sweedler", "s3"])
def test_half_braiding_matches_coproduct_formula(hn):
    h = R.hopf(hn)
    e = end_at_generator(h)
    a = build_algebra(e)
    for x in (trivial_module(h), regular_module(h), dual(regular_module(h), RIGHT)):
        s = a.sigma(x)
        got = [qs(s.row_vec(r)) for r in range(s.rows)]
        assert got == braiding_oracle(e, x)


def test_hexagon_and_trivial(c2):
    a = build_algebra(end_at_generator(c2))
    p = regular_module(c2)
    assert hexagon_holds(a, p, p)
    assert hexagon_holds(a, tensor(p, p), p)
    assert a.sigma(trivial_module(c2)) == Mat.identity(2)


@pytest.mark.parametrize("key", ["k", "c2", "sweedler", "s3", "s3/A3", "sweedler/c2", "fn-s3/fn-c2"])
def test_all_checks_pass(key):
    if "/" in key:
        p = R.pair(key)
        e = relative_end(p.source, p)
    else:
        e = end_at_generator(R.hopf(key))
    a = build_algebra(e)
    c = run_checks(a)
    assert checks_pass(c), c


def test_connectedness(s3):
    a = build_algebra(end_at_generator(s3))
    # invariants of the adjoint action are the class sums; only the unit is central in the centre
    assert connectedness(a) == {"hom_C": 3, "hom_center": 1}
    assert connectedness(product_algebra(a, a))["hom_center"] == 2


def test_product_algebra_is_an_algebra(c2):
    a = build_algebra(end_at_generator(c2))
    b = product_algebra(a, a)
    c = run_checks(b)
    assert c["associative"] and c["unital"] and c["commutative"] and c["hexagon_sampled"]
    assert not c["connected"]


@pytest.mark.parametrize("key", ["k", "s3/A3", "c2", "sweedler/c2"])
def test_simple_over_self(key):
    if "/" in key:
        p = R.pair(key)
        e = relative_end(p.source, p)
    else:
        e = end_at_generator(R.hopf(key))
    ok, info = check_simple_over_self(build_algebra(e))
    assert ok and info["end_dim"] >= 1


def test_irreducibility_negative_and_positive():
    nil = Mat.from_rows([[0, 0], [1, 0]])
    assert is_irreducible([nil], 2)[0] is False
    assert is_irreducible([nil, nil.T], 2)[0] is True
    # rotation by 90 degrees: irreducible over Q with a 2-dimensional commutant
    rot = Mat.from_rows([[0, -1], [1, 0]])
    ok, info = is_irreducible([rot], 2)
    assert ok and info["end_dim"] == 2
    diag = Mat.from_rows([[1, 0], [0, 2]])
    assert is_irreducible([diag], 2)[0] is False


@given(st.lists(st.integers(-2, 2), min_size=9, max_size=9))
def test_irreducibility_agrees_with_invariant_lines(entries):
    # a 3x3 matrix over Q leaves a proper subspace invariant iff its charpoly is reducible over Q
    m = Mat.from_rows([entries[0:3], entries[3:6], entries[6:9]])
    sm = sympy.Matrix(3, 3, entries)
    t = sympy.Symbol("t")
    _, facs = sympy.factor_list(sm.charpoly(t).as_expr(), t)
    expected = len(facs) == 1 and facs[0][1] == 1 and sympy.degree(facs[0][0], t) == 3
    assert is_irreducible([m], 3)[0] is expected


def test_not_closed(c2):
    e = end_at_generator(c2)
    g_only = op_to_vec(c2.left_mult_matrix(c2.basis(1)))
    bad = EndObject(c2, e.ambient, (g_only,))
    with pytest.raises(NotClosed):
        build_algebra(bad)


@pytest.mark.parametrize("key", ["s3/A3", "sweedler/c2", "c4/C2"])
def test_comparison_identity(key):
    p = R.pair(key)
    cmp = comparison_maps(p.source, p)
    assert cmp.identity_holds and cmp.iota_algebra_map and cmp.q_algebra_map
    assert cmp.dims["A_C"] == p.source.dim


@pytest.mark.parametrize("hn", ["c2", "sweedler"])
def test_comparison_degenerate(hn):
    h = R.hopf(hn)
    for p in (identity_map(h), counit_map(h)):
        assert comparison_maps(h, p).identity_holds


def test_coinvariant_model(s3):
    p = R.pair("s3/A3")
    rep = verify_coinvariant_model(s3, p)
    assert rep.dim == 3 and rep.multiplicative and rep.unital
    with pytest.raises(ModelMismatch):
        verify_coinvariant_model(s3, p, end_at_generator(s3))


@pytest.mark.parametrize("h1,h2", [("c2", "k"), ("s3", "k"), ("c2", "c2"), ("sweedler", "c2")])
def test_deligne(h1, h2):
    rep = verify_deligne(R.hopf(h1), R.hopf(h2))
    assert rep.dim_relative == rep.dim_second == R.hopf(h2).dim
    assert rep.invertible and rep.structure_preserved


def test_algebra_map_identity(sw):
    a = build_algebra(end_at_generator(sw))
    assert algebra_map_holds(Mat.identity(4), a, a)
    assert not algebra_map_holds(Mat.identity(4).scale(2), a, a)


def test_algebra_to_json(c2):
    a = build_algebra(end_at_generator(c2))
    run_checks(a, with_simple=True)
    js = algebra_to_json(a)
    assert js["schema"] == "algebra-v1" and js["dim"] == 2
    assert js["checks"]["simple"] is True and js["checks"]["hom_center_dim"] == 1
    assert len(js["mult_constants"]) == 2
