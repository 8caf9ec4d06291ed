"""Algebra structure, half-braiding and structural checks on computed ends."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .exactla import (ONE, ZERO, Echelon, Mat, NoSolution, NotUnique, Q, direct_sum, kernel_of_rows,
                      kron, op_to_vec, qstr, rank, solve_unique, subspace_equal, vec_to_op, vectors_rank)
from .ends import (EndObject, end_at_generator, induce_pi, relative_end, restriction_mono)
from .hopf import HopfAlgebra, HopfMap, coinvariants, projection_first_factor, projection_second_factor, tensor_hopf
from .rep import (HModMap, HModule, hom_basis, pullback, regular_module, tensor, trivial_module)


class NotClosed(ArithmeticError):
    pass


class NotInvertible(ArithmeticError):
    pass


class ModelMismatch(AssertionError):
    pass


Braiding = Callable[[HModule], Mat]


@dataclass(eq=False)
class CentralAlgebra:
    """A commutative algebra in the centre: carrier module, structure constants and half-braiding.

    ``mult`` is dim x dim^2 with column i * dim + j holding e_i e_j.
    ``braiding(X)`` is the matrix of sigma_X: E (x) X -> X (x) E.
    """

    module: HModule
    mult: Mat
    unit: tuple
    braiding: Braiding
    carrier: EndObject | None = None
    checks: dict = field(default_factory=dict)
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return self.module.dim

    @property
    def algebra(self) -> HopfAlgebra:
        return self.module.algebra

    def product(self, a, b) -> tuple:
        return self.mult @ kron(Mat.column(a), Mat.column(b)).col(0)

    def sigma(self, x: HModule) -> Mat:
        key = id(x)
        if key not in self._cache:
            self._cache[key] = (x, self.braiding(x))
        return self._cache[key][1]

    def right_mult(self, b: int) -> Mat:
        d = self.dim
        return Mat.from_columns([self.mult.col(i * d + b) for i in range(d)], d)

    def left_mult(self, a: int) -> Mat:
        d = self.dim
        return Mat.from_columns([self.mult.col(a * d + j) for j in range(d)], d)

    def constants(self) -> list:
        d = self.dim
        return [[[self.mult[k, i * d + j] for k in range(d)] for j in range(d)] for i in range(d)]


# --------------------------------------------------------------------------
# construction


def end_half_braiding(e: EndObject, x: HModule) -> Mat:
    """sigma_X: E (x) X -> X (x) E read off the component of the end at X (x) P.

    For each input x_a the operator pi_{X (x) P}(e_i) restricted to x_a (x) P
    splits into blocks X-coordinate b by P; each block is pi_P of a unique
    element c_{b,a,i} of E, and sigma(e_i (x) x_a) = sum_b x_b (x) c_{b,a,i}.
    """
    h = e.algebra
    n, d, dx = h.dim, e.dim, x.dim
    xp = tensor(x, e.P)
    pis = induce_pi(e, xp)
    blocks = []
    for i in range(d):
        t = vec_to_op(pis.col(i), dx * n, dx * n)
        for a in range(dx):
            for b in range(dx):
                blk = t.submatrix([b * n + r for r in range(n)], [a * n + c for c in range(n)])
                blocks.append(op_to_vec(blk))
    try:
        coords = solve_unique(e.pi_at_P, Mat.from_columns(blocks, n * n))
    except NoSolution as exc:
        raise NoSolution("a block of the component at X (x) P leaves the end") from exc
    ct = coords.T
    rows = [dict() for _ in range(dx * d)]
    col = 0
    for i in range(d):
        for a in range(dx):
            for b in range(dx):
                for j, c in ct.sparse_row(col).items():
                    rows[b * d + j][i * dx + a] = c
                col += 1
    return Mat(dx * d, d * dx, rows)


def build_algebra(e: EndObject, sample: list[HModule] | None = None) -> CentralAlgebra:
    n, d = e.algebra.dim, e.dim
    ops = e.operators()
    prods = [op_to_vec(ops[i] @ ops[j]) for i in range(d) for j in range(d)]
    try:
        mult = solve_unique(e.pi_at_P, Mat.from_columns(prods, n * n)) if d else Mat.zeros(0, 0)
        unit = solve_unique(e.pi_at_P, Mat.column(op_to_vec(Mat.identity(n)))).col(0) if d else ()
    except NoSolution as exc:
        raise NotClosed("composition leaves the end") from exc
    alg = CentralAlgebra(e.module, mult, unit, lambda x: end_half_braiding(e, x), carrier=e)
    alg.checks["dinatural_structure"] = dinatural_structure_holds(alg, sample)
    return alg


def dinatural_structure_holds(a: CentralAlgebra, sample: list[HModule] | None = None) -> bool:
    """pi_M(e_i e_j) = pi_M(e_i) pi_M(e_j) and pi_M(1) = id at sampled M."""
    e = a.carrier
    h = e.algebra
    mods = sample if sample is not None else [trivial_module(h), e.P]
    d = a.dim
    for m in mods:
        pis = induce_pi(e, m)
        ops = [vec_to_op(pis.col(i), m.dim, m.dim) for i in range(d)]
        for i in range(d):
            for j in range(d):
                lhs = vec_to_op(pis @ a.mult.col(i * d + j), m.dim, m.dim)
                if lhs != ops[i] @ ops[j]:
                    return False
        if vec_to_op(pis @ a.unit, m.dim, m.dim) != Mat.identity(m.dim):
            return False
    return True


def product_algebra(a: CentralAlgebra, b: CentralAlgebra) -> CentralAlgebra:
    """A x B with componentwise structure; used as a disconnected control."""
    da, db = a.dim, b.dim
    d = da + db
    acts = tuple(direct_sum(x, y) for x, y in zip(a.module.action, b.module.action))
    mod = HModule(a.algebra, d, acts, f"{a.module.name}+{b.module.name}")
    rows = [dict() for _ in range(d)]
    for i in range(da):
        for j in range(da):
            for k, c in enumerate(a.mult.col(i * da + j)):
                if c:
                    rows[k][i * d + j] = c
    for i in range(db):
        for j in range(db):
            for k, c in enumerate(b.mult.col(i * db + j)):
                if c:
                    rows[da + k][(da + i) * d + da + j] = c
    mult = Mat(d, d * d, rows)
    unit = tuple(a.unit) + tuple(b.unit)

    def braid(x: HModule) -> Mat:
        sa, sb = a.sigma(x), b.sigma(x)
        dx = x.dim
        out = [dict() for _ in range(dx * d)]
        for part, s, off, dp in ((0, sa, 0, da), (1, sb, da, db)):
            for r in range(s.rows):
                bx, j = divmod(r, dp)
                for cidx, v in s.sparse_row(r).items():
                    i, ax = divmod(cidx, dx)
                    out[bx * d + off + j][(off + i) * dx + ax] = v
        return Mat(dx * d, d * dx, out)

    return CentralAlgebra(mod, mult, unit, braid)


# --------------------------------------------------------------------------
# checks


def is_associative(a: CentralAlgebra) -> bool:
    d = a.dim
    eye = Mat.identity(d)
    return a.mult @ kron(a.mult, eye) == a.mult @ kron(eye, a.mult)


def is_unital(a: CentralAlgebra) -> bool:
    d = a.dim
    u = Mat.column(a.unit)
    eye = Mat.identity(d)
    return a.mult @ kron(u, eye) == eye == a.mult @ kron(eye, u)


def is_commutative(a: CentralAlgebra) -> bool:
    """m o sigma_{A} = m."""
    return a.mult @ a.sigma(a.module) == a.mult


def braiding_is_equivariant(a: CentralAlgebra, x: HModule) -> bool:
    try:
        HModMap(tensor(a.module, x), tensor(x, a.module), a.sigma(x))
    except ValueError:
        return False
    return True


def braiding_is_invertible(a: CentralAlgebra, x: HModule) -> bool:
    s = a.sigma(x)
    return s.rows == s.cols and rank(s) == s.rows


def hexagon_holds(a: CentralAlgebra, x: HModule, y: HModule) -> bool:
    """sigma_{X (x) Y} = (id_X (x) sigma_Y)(sigma_X (x) id_Y)."""
    xy = tensor(x, y)
    lhs = a.sigma(xy)
    rhs = kron(Mat.identity(x.dim), a.sigma(y)) @ kron(a.sigma(x), Mat.identity(y.dim))
    return lhs == rhs


def naturality_holds(a: CentralAlgebra, x: HModule, y: HModule) -> bool:
    """(f (x) id_A) sigma_X = sigma_Y (id_A (x) f) for every f in a basis of Hom(X, Y)."""
    ea = Mat.identity(a.dim)
    sx, sy = a.sigma(x), a.sigma(y)
    return all(kron(f.matrix, ea) @ sx == sy @ kron(ea, f.matrix) for f in hom_basis(x, y))


def unit_braiding_is_identity(a: CentralAlgebra) -> bool:
    return a.sigma(trivial_module(a.algebra)) == Mat.identity(a.dim)


def connectedness(a: CentralAlgebra) -> dict:
    """Dimensions of Hom_C(1, A) and of the morphisms 1 -> A in the centre.

    A morphism 1 -> A lies in the centre when sigma_X(v (x) x) = x (x) v for
    all X; it is enough to test X = P.
    """
    h = a.algebra
    inv = hom_basis(trivial_module(h), a.module)
    vs = [f.matrix.col(0) for f in inv]
    p = regular_module(h)
    s = a.sigma(p)
    eye = Mat.identity(p.dim)
    cols = []
    for v in vs:
        diff = s @ kron(Mat.column(v), eye) - kron(eye, Mat.column(v))
        cols.append(diff.entries)
    if cols:
        m = Mat.from_columns(cols, len(cols[0]))
        central = len(kernel_of_rows((m.sparse_row(i) for i in range(m.rows)), len(vs)))
    else:
        central = 0
    return {"hom_C": len(vs), "hom_center": central}


def check_connected(a: CentralAlgebra) -> bool:
    return connectedness(a)["hom_center"] == 1


def hexagon_sample(h: HopfAlgebra, cap: int = 216) -> list[tuple[HModule, HModule]]:
    """Pairs from {trivial, regular, regular (x) regular} whose braiding stays below ``cap`` in size."""
    one, p = trivial_module(h), regular_module(h)
    objs = [one, p]
    if h.dim ** 3 <= cap:
        objs.append(tensor(p, p))
    pairs = []
    for x in objs:
        for y in objs:
            if x.dim * y.dim * h.dim <= cap:
                pairs.append((x, y))
    return pairs


def run_checks(a: CentralAlgebra, pairs=None, naturality=None, with_simple: bool = False) -> dict:
    h = a.algebra
    c = a.checks
    c["associative"] = is_associative(a)
    c["unital"] = is_unital(a)
    c["commutative"] = is_commutative(a)
    conn = connectedness(a)
    c["connected"] = conn["hom_center"] == 1
    c["hom_C_dim"] = conn["hom_C"]
    c["hom_center_dim"] = conn["hom_center"]
    pairs = hexagon_sample(h) if pairs is None else pairs
    c["hexagon_sampled"] = all(hexagon_holds(a, x, y) for x, y in pairs)
    objs = naturality if naturality is not None else [trivial_module(h), regular_module(h)]
    c["natural"] = all(naturality_holds(a, x, y) for x in objs for y in objs)
    c["braiding_equivariant"] = all(braiding_is_equivariant(a, x) for x in objs + [a.module])
    c["braiding_invertible"] = all(braiding_is_invertible(a, x) for x in objs + [a.module])
    c["unit_braiding_trivial"] = unit_braiding_is_identity(a)
    e = a.carrier
    if e is not None:
        if e.relative_to is None:
            c["dim_formula"] = a.dim == h.dim
        else:
            c["dim_formula"] = a.dim * e.relative_to.target.dim == h.dim
    if with_simple:
        simple, info = check_simple_over_self(a)
        c["simple"] = simple
        c["simple_end_dim"] = info["end_dim"]
        c["simple_field_caveat"] = info["end_dim"] > 1
    return c


def checks_pass(c: dict) -> bool:
    keys = ("associative", "unital", "commutative", "connected", "hexagon_sampled", "natural",
            "braiding_equivariant", "braiding_invertible", "unit_braiding_trivial", "dinatural_structure",
            "dim_formula")
    return all(c.get(k, True) for k in keys)


# --------------------------------------------------------------------------
# irreducibility


def _independent(mats: list[Mat]) -> list[Mat]:
    if not mats:
        return []
    ech = Echelon(mats[0].rows * mats[0].cols)
    out = []
    for m in mats:
        v = {k: x for k, x in enumerate(m.entries) if x}
        if ech.add(v):
            out.append(m)
    return out


def spin(v: tuple, gens: list[Mat]) -> list[tuple]:
    """Basis of the smallest subspace containing v and invariant under ``gens``."""
    dim = len(v)
    ech = Echelon(dim)
    todo = [v]
    out = []
    while todo:
        w = todo.pop()
        if ech.add({j: c for j, c in enumerate(w) if c}):
            out.append(w)
            todo.extend(g @ w for g in gens)
    return out


def enveloping_algebra(gens: list[Mat], dim: int) -> list[Mat]:
    basis = [Mat.identity(dim)]
    ech = Echelon(dim * dim)
    ech.add({k: x for k, x in enumerate(basis[0].entries) if x})
    frontier = list(basis)
    while frontier:
        new = []
        for m in frontier:
            for g in gens:
                p = g @ m
                if ech.add({k: x for k, x in enumerate(p.entries) if x}):
                    basis.append(p)
                    new.append(p)
        frontier = new
    return basis


def commutant_dim(gens: list[Mat], dim: int) -> int:
    eye = Mat.identity(dim)
    rows = []
    for g in gens:
        c = kron(g, eye) - kron(eye, g.T)
        rows.extend(c.sparse_row(i) for i in range(c.rows) if c.sparse_row(i))
    return len(kernel_of_rows(rows, dim * dim))


def _poly_at(coeffs: list, m: Mat) -> Mat:
    out = Mat.zeros(m.rows, m.cols)
    eye = Mat.identity(m.rows)
    for c in coeffs:
        out = out @ m + eye.scale(c)
    return out


def _factors(m: Mat) -> list[tuple[int, list]]:
    import sympy

    sm = sympy.Matrix(m.rows, m.cols, lambda i, j: sympy.Rational(int(m[i, j].numerator), int(m[i, j].denominator)))
    lam = sympy.Symbol("t")
    cp = sm.charpoly(lam).as_expr()
    _, facs = sympy.factor_list(cp, lam, domain=sympy.QQ)
    out = []
    for f, _mult in facs:
        poly = sympy.Poly(f, lam, domain=sympy.QQ)
        cs = [Q(f"{sympy.Rational(c).p}/{sympy.Rational(c).q}") for c in poly.all_coeffs()]
        out.append((poly.degree(), cs))
    out.sort(key=lambda t: t[0])
    return out


def is_irreducible(gens: list[Mat], dim: int, seed: int = 0, tries: int = 60) -> tuple[bool, dict]:
    """Exact irreducibility of k^dim under the matrices ``gens`` (Norton's criterion)."""
    if dim == 0:
        return False, {"end_dim": 0, "method": "zero"}
    gens = _independent([g for g in gens if not g.is_zero()])
    end_dim = commutant_dim(gens, dim)
    if dim == 1:
        return True, {"end_dim": end_dim, "method": "dimension one"}
    alg = enveloping_algebra(gens, dim)
    if len(alg) == dim * dim:
        return True, {"end_dim": end_dim, "method": "full matrix algebra"}
    gens_t = [g.T for g in gens]
    rng = random.Random(seed)
    for _ in range(tries):
        theta = Mat.zeros(dim, dim)
        for b in alg:
            theta = theta + b.scale(rng.randint(-3, 3))
        for deg, cs in _factors(theta):
            pt = _poly_at(cs, theta)
            null = kernel_of_rows((pt.sparse_row(i) for i in range(dim)), dim)
            if not null:
                continue
            if len(spin(null[0], gens)) < dim:
                return False, {"end_dim": end_dim, "method": "proper submodule found"}
            ptt = pt.T
            null_t = kernel_of_rows((ptt.sparse_row(i) for i in range(dim)), dim)
            if len(spin(null_t[0], gens_t)) < dim:
                return False, {"end_dim": end_dim, "method": "proper submodule of the dual found"}
            if len(null) == deg:
                return True, {"end_dim": end_dim, "method": "Norton criterion"}
    raise RuntimeError("irreducibility test inconclusive")


def simplicity_operators(a: CentralAlgebra) -> list[Mat]:
    """H-action, right multiplications and the coaction slices of sigma_P on the carrier."""
    d = a.dim
    ops = list(a.module.generator_action)
    ops += [a.right_mult(b) for b in range(d)]
    p = regular_module(a.algebra)
    s = a.sigma(p)
    n = p.dim
    for xa in range(n):
        for xb in range(n):
            rows = [dict() for _ in range(d)]
            for j in range(d):
                for col, v in s.sparse_row(xa * d + j).items():
                    i, b = divmod(col, n)
                    if b == xb:
                        rows[j][i] = v
            ops.append(Mat(d, d, rows))
    return ops


def check_simple_over_self(a: CentralAlgebra) -> tuple[bool, dict]:
    return is_irreducible(simplicity_operators(a), a.dim)


# --------------------------------------------------------------------------
# comparisons


def algebra_map_holds(f: Mat, a: CentralAlgebra, b: CentralAlgebra) -> bool:
    """f: A -> B preserves products of basis elements and the unit."""
    da = a.dim
    for i in range(da):
        for j in range(da):
            lhs = f @ a.mult.col(i * da + j)
            rhs = b.product(f.col(i), f.col(j))
            if lhs != rhs:
                return False
    return f @ a.unit == tuple(b.unit)


@dataclass
class Comparison:
    iota: Mat
    q: Mat
    alpha1: Mat
    identity_holds: bool
    iota_algebra_map: bool
    q_algebra_map: bool
    dims: dict


def comparison_maps(h: HopfAlgebra, p: HopfMap, ordinary: EndObject | None = None,
                    relative: EndObject | None = None) -> Comparison:
    e_c = ordinary or end_at_generator(h)
    e_d = relative or relative_end(h, p, ordinary=e_c)
    e_q = end_at_generator(p.target)
    a_c, a_d, a_q = build_algebra(e_c), build_algebra(e_d), build_algebra(e_q)
    iota = restriction_mono(e_d, e_c)
    pq = pullback(p, regular_module(p.target))
    q = solve_unique(e_q.pi_at_P, induce_pi(e_c, pq))
    alpha1 = induce_pi(e_d, trivial_module(h))
    lhs = q @ iota
    rhs = Mat.column(a_q.unit) @ alpha1
    return Comparison(iota, q, alpha1, lhs == rhs, algebra_map_holds(iota, a_d, a_c),
                      algebra_map_holds(q, a_c, a_q),
                      {"A_C": e_c.dim, "A(D)": e_d.dim, "A_D": e_q.dim})


@dataclass
class ModelReport:
    dim: int
    change_of_basis: Mat
    subspace_equal: bool
    multiplicative: bool
    unital: bool


def verify_coinvariant_model(h: HopfAlgebra, p: HopfMap, relative: EndObject | None = None) -> ModelReport:
    """Compare the relative end with the left-multiplication tensors of the coinvariants."""
    e = relative or relative_end(h, p)
    co = coinvariants(p)
    ells = [h.left_mult_matrix(h.from_vec(c)) for c in co]
    vecs = [op_to_vec(m) for m in ells]
    if not subspace_equal(vecs, list(e.basis)):
        raise ModelMismatch(f"coinvariants (dim {len(co)}) and relative end (dim {e.dim}) differ")
    ech = Echelon(h.dim)
    for c in co:
        ech.add({j: x for j, x in enumerate(c) if x})
    mult_ok = True
    for a, la in zip(co, ells):
        for b, lb in zip(co, ells):
            ab = h.mul(h.from_vec(a), h.from_vec(b))
            if not ech.contains(ab) or la @ lb != h.left_mult_matrix(ab):
                mult_ok = False
    unit_ok = ech.contains(h.one()) and h.left_mult_matrix(h.one()) == Mat.identity(h.dim)
    if not (mult_ok and unit_ok):
        raise ModelMismatch("coinvariant model does not intertwine the algebra structure")
    cob = solve_unique(e.pi_at_P, Mat.from_columns(vecs, e.ambient.dim))
    return ModelReport(e.dim, cob, True, mult_ok, unit_ok)


@dataclass
class DeligneReport:
    dim_relative: int
    dim_second: int
    iso: Mat
    invertible: bool
    structure_preserved: bool


def verify_deligne(h1: HopfAlgebra, h2: HopfAlgebra) -> DeligneReport:
    """Relative end of H1 (x) H2 along the first projection versus the ordinary end of H2."""
    t = tensor_hopf(h1, h2)
    p1 = projection_first_factor(h1, h2, t)
    p2 = projection_second_factor(h1, h2, t)
    e_rel = relative_end(t, p1)
    e_2 = end_at_generator(h2)
    a_rel, a_2 = build_algebra(e_rel), build_algebra(e_2)
    comp = induce_pi(e_rel, pullback(p2, regular_module(h2)))
    try:
        iso = solve_unique(e_2.pi_at_P, comp)
    except NoSolution as exc:
        raise ModelMismatch("component at the second factor leaves its adjoint algebra") from exc
    inv = iso.rows == iso.cols and rank(iso) == iso.rows
    struct = algebra_map_holds(iso, a_rel, a_2)
    if not (inv and struct):
        raise ModelMismatch("relative end of the tensor product is not isomorphic to the second factor's")
    return DeligneReport(e_rel.dim, e_2.dim, iso, inv, struct)


# --------------------------------------------------------------------------
# JSON


def algebra_to_json(a: CentralAlgebra, model_iso: Mat | None = None) -> dict:
    keys = ("associative", "unital", "commutative", "connected", "hexagon_sampled", "natural",
            "braiding_equivariant", "braiding_invertible", "dinatural_structure", "dim_formula")
    checks = {k: bool(a.checks[k]) for k in keys if k in a.checks}
    for k in ("hom_C_dim", "hom_center_dim", "simple", "simple_end_dim", "simple_field_caveat"):
        if k in a.checks:
            checks[k] = a.checks[k]
    out = {"schema": "algebra-v1", "dim": a.dim,
           "mult_constants": [[[qstr(x) for x in row] for row in mat] for mat in a.constants()],
           "unit": [qstr(x) for x in a.unit], "checks": checks}
    if model_iso is not None:
        out["model_iso"] = [[qstr(x) for x in model_iso.row_vec(i)] for i in range(model_iso.rows)]
    return out
