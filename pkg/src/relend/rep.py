"""Representations of a Hopf algebra and the internal-Hom calculus of Rep(H) acting on itself.

Conventions (fixed once, used everywhere):

* the right dual X* has action h.f = f(S(h) -), with ev: X* (x) X -> 1 and
  coev: 1 -> X (x) X*;
* the left dual *X has action h.f = f(S^-1(h) -), with ev: X (x) *X -> 1 and
  coev: 1 -> *X (x) X;
* hom(X, Y) = Y (x) X*; a coordinate vector of hom(X, Y) is the row-major
  flattening of the operator X -> Y it represents;
* comp(T (x) S) = T o S, i.e. S is applied first.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .exactla import (ONE, ZERO, Echelon, Mat, kernel_of_rows, kron, op_to_vec, rank, vec_to_op)
from .hopf import HopfAlgebra, HopfMap


class AlgebraMismatch(ValueError):
    pass


class NotAModule(ValueError):
    pass


class NotEquivariant(ValueError):
    pass


class DualSide(enum.Enum):
    RIGHT = "right"
    LEFT = "left"


RIGHT = DualSide.RIGHT
LEFT = DualSide.LEFT


def _same_algebra(a: HopfAlgebra, b: HopfAlgebra) -> bool:
    return a is b or a.structure_equal(b)


@dataclass(frozen=True, eq=False)
class HModule:
    algebra: HopfAlgebra
    dim: int
    action: tuple
    name: str = "M"

    def __post_init__(self):
        h = self.algebra
        if len(self.action) != h.dim:
            raise NotAModule("need one action matrix per basis element")
        if any(a.shape != (self.dim, self.dim) for a in self.action):
            raise NotAModule("action matrices have the wrong shape")
        if self.rho(h.one()) != Mat.identity(self.dim):
            raise NotAModule("unit does not act as the identity")
        # rho(g b_j) = rho(g) rho(b_j) for algebra generators g and every j implies
        # multiplicativity on all of H
        for g in h.generators:
            for j in range(h.dim):
                lhs = self.rho(h.mul(h.basis(g), h.basis(j)))
                if lhs != self.action[g] @ self.action[j]:
                    raise NotAModule(f"action not multiplicative at ({h.labels[g]}, {h.labels[j]})")

    def rho(self, x: dict) -> Mat:
        out = Mat.zeros(self.dim, self.dim)
        for i, c in x.items():
            out = out + self.action[i].scale(c)
        return out

    @property
    def generator_action(self) -> list[Mat]:
        return [self.action[g] for g in self.algebra.generators]

    def __repr__(self) -> str:
        return f"HModule({self.name}, dim={self.dim}, over {self.algebra.name})"


@dataclass(frozen=True, eq=False)
class HModMap:
    source: HModule
    target: HModule
    matrix: Mat

    def __post_init__(self):
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise ValueError(f"map shape {self.matrix.shape} does not fit {self.source.dim} -> {self.target.dim}")
        if not _same_algebra(self.source.algebra, self.target.algebra):
            raise AlgebraMismatch("source and target live over different algebras")
        for g in self.source.algebra.generators:
            if self.matrix @ self.source.action[g] != self.target.action[g] @ self.matrix:
                raise NotEquivariant(f"not equivariant for {self.source.algebra.labels[g]}")

    def __matmul__(self, other: "HModMap") -> "HModMap":
        return HModMap(other.source, self.target, self.matrix @ other.matrix)


def make_module(h: HopfAlgebra, action, name: str = "M") -> HModule:
    mats = tuple(a if isinstance(a, Mat) else Mat.from_rows(a) for a in action)
    dim = mats[0].rows if mats else 0
    return HModule(h, dim, mats, name)


# --------------------------------------------------------------------------
# basic modules


def regular_module(h: HopfAlgebra) -> HModule:
    return HModule(h, h.dim, tuple(h.left_mult_matrix(h.basis(i)) for i in range(h.dim)), "P")


def trivial_module(h: HopfAlgebra) -> HModule:
    return HModule(h, 1, tuple(Mat.from_rows([[c]]) for c in h.counit), "1")


def tensor(m: HModule, n: HModule) -> HModule:
    h = m.algebra
    if not _same_algebra(h, n.algebra):
        raise AlgebraMismatch(f"cannot tensor modules over {h.name} and {n.algebra.name}")
    acts = []
    for i in range(h.dim):
        acc = Mat.zeros(m.dim * n.dim, m.dim * n.dim)
        for j, k, c in h.comult[i]:
            acc = acc + kron(m.action[j], n.action[k]).scale(c)
        acts.append(acc)
    return HModule(h, m.dim * n.dim, tuple(acts), f"({m.name}(x){n.name})")


def dual(m: HModule, side: DualSide = RIGHT) -> HModule:
    h = m.algebra
    s = h.antipode if side is RIGHT else h.antipode_inverse
    acts = []
    for i in range(h.dim):
        x = {k: s[k, i] for k in range(h.dim) if s[k, i]}
        acts.append(m.rho(x).T)
    mark = f"{m.name}*" if side is RIGHT else f"*{m.name}"
    return HModule(h, m.dim, tuple(acts), mark)


def _pairing_row(n: int) -> Mat:
    return Mat(1, n * n, [{i * n + i: ONE for i in range(n)}])


def ev(m: HModule, side: DualSide = RIGHT) -> HModMap:
    """RIGHT: M* (x) M -> 1;  LEFT: M (x) *M -> 1.  Both are f (x) x -> f(x)."""
    d = dual(m, side)
    src = tensor(d, m) if side is RIGHT else tensor(m, d)
    return HModMap(src, trivial_module(m.algebra), _pairing_row(m.dim))


def coev(m: HModule, side: DualSide = RIGHT) -> HModMap:
    """RIGHT: 1 -> M (x) M*;  LEFT: 1 -> *M (x) M.  Both send 1 to sum e_i (x) e^i."""
    d = dual(m, side)
    tgt = tensor(m, d) if side is RIGHT else tensor(d, m)
    return HModMap(trivial_module(m.algebra), tgt, _pairing_row(m.dim).T)


def unit_left(m: HModule) -> HModMap:
    """1 (x) M -> M."""
    return HModMap(tensor(trivial_module(m.algebra), m), m, Mat.identity(m.dim))


def unit_right(m: HModule) -> HModMap:
    """M (x) 1 -> M."""
    return HModMap(tensor(m, trivial_module(m.algebra)), m, Mat.identity(m.dim))


def identity(m: HModule) -> HModMap:
    return HModMap(m, m, Mat.identity(m.dim))


def pullback(p: HopfMap, m: HModule) -> HModule:
    if not _same_algebra(p.target, m.algebra):
        raise AlgebraMismatch("module is not over the target of the map")
    acts = tuple(m.rho(p.target.from_vec(p.matrix.col(i))) for i in range(p.source.dim))
    return HModule(p.source, m.dim, acts, f"{p.name}^*{m.name}")


def submodule(m: HModule, basis: list, name: str = "N") -> HModule:
    """Restriction of ``m`` to the invariant subspace spanned by ``basis``."""
    from .exactla import solve_unique

    b = Mat.from_columns(basis, m.dim)
    acts = tuple(solve_unique(b, a @ b) for a in m.action)
    return HModule(m.algebra, len(basis), acts, name)


# --------------------------------------------------------------------------
# morphism spaces


def _commutation_rows(m: HModule, n: HModule):
    # unknown f (n.dim x m.dim), entry (a, b) at index a * m.dim + b;
    # rows encode (f rho_m(g) - rho_n(g) f)[a, c] = 0 for generators g
    dm = m.dim
    for g in m.algebra.generators:
        am_t = m.action[g].T
        an = n.action[g]
        for a in range(n.dim):
            ra = an.sparse_row(a)
            for c in range(dm):
                row: dict = {}
                for b, x in am_t.sparse_row(c).items():
                    row[a * dm + b] = x
                for d, x in ra.items():
                    k = d * dm + c
                    v = row.get(k, ZERO) - x
                    if v:
                        row[k] = v
                    else:
                        row.pop(k, None)
                if row:
                    yield row


def hom_basis(m: HModule, n: HModule) -> list[HModMap]:
    """Basis of Hom_H(m, n) from the commutation constraints at the algebra generators."""
    if not _same_algebra(m.algebra, n.algebra):
        raise AlgebraMismatch("modules over different algebras")
    ker = kernel_of_rows(_commutation_rows(m, n), m.dim * n.dim)
    return [HModMap(m, n, vec_to_op(v, n.dim, m.dim)) for v in ker]


def hom_from_regular(m: HModule) -> list[HModMap]:
    """Basis of Hom_H(P, m) for the regular module P: f_j(h) = h . e_j."""
    p = regular_module(m.algebra)
    out = []
    for j in range(m.dim):
        cols = [m.action[i].col(j) for i in range(m.algebra.dim)]
        out.append(HModMap(p, m, Mat.from_columns(cols, m.dim)))
    return out


def internal_hom(x: HModule, y: HModule) -> HModule:
    """hom(X, Y) = Y (x) X*."""
    return tensor(y, dual(x, RIGHT))


def hom_map(g: HModMap, f: HModMap) -> HModMap:
    """hom(g, f): hom(X, Y) -> hom(X', Y') for g: X' -> X and f: Y -> Y'; T -> f T g."""
    return HModMap(internal_hom(g.target, f.source), internal_hom(g.source, f.target),
                   kron(f.matrix, g.matrix.T))


def phi(z: HModule, x: HModule, y: HModule, f: HModMap) -> HModMap:
    """Hom(Z, hom(X, Y)) -> Hom(Z (x) X, Y): f -> (id_Y (x) ev_X)(f (x) id_X)."""
    if f.matrix.shape != (y.dim * x.dim, z.dim):
        raise ValueError("f must map Z to Y (x) X*")
    m = kron(Mat.identity(y.dim), _pairing_row(x.dim)) @ kron(f.matrix, Mat.identity(x.dim))
    return HModMap(tensor(z, x), y, m)


def psi(z: HModule, x: HModule, y: HModule, g: HModMap) -> HModMap:
    """Hom(Z (x) X, Y) -> Hom(Z, hom(X, Y)): g -> (g (x) id_X*)(id_Z (x) coev_X)."""
    if g.matrix.shape != (y.dim, z.dim * x.dim):
        raise ValueError("g must map Z (x) X to Y")
    m = kron(g.matrix, Mat.identity(x.dim)) @ kron(Mat.identity(z.dim), _pairing_row(x.dim).T)
    return HModMap(z, internal_hom(x, y), m)


def comp_map(m: HModule) -> HModMap:
    """comp: hom(M, M) (x) hom(M, M) -> hom(M, M), obtained as psi of the double evaluation.

    The source has dimension dim(M)^4, so this is meant for small modules.
    """
    n = m.dim
    hmm = internal_hom(m, m)
    z = tensor(hmm, hmm)
    # T (x) S (x) x -> T(S(x)): evaluate S on x, then T on the result
    inner = kron(Mat.identity(n * n * n), _pairing_row(n))
    outer = kron(Mat.identity(n), _pairing_row(n))
    f = HModMap(tensor(z, m), m, outer @ inner)
    return psi(z, m, m, f)


def compose_tensors(t: tuple, s: tuple, n: int) -> tuple:
    """Coordinates of T o S for two coordinate vectors of hom(M, M), dim M = n."""
    return op_to_vec(vec_to_op(t, n, n) @ vec_to_op(s, n, n))


def frak_a(x: HModule, m: HModule, n: HModule) -> HModMap:
    """hom(M, X (x) N) -> X (x) hom(M, N): the rebracketing (X (x) N) (x) M* = X (x) (N (x) M*)."""
    src = internal_hom(m, tensor(x, n))
    tgt = tensor(x, internal_hom(m, n))
    return HModMap(src, tgt, Mat.identity(src.dim))


def dual_of_tensor(x: HModule, m: HModule) -> HModMap:
    """Canonical (X (x) M)* -> M* (x) X*, with (g (x) f)(x (x) m) = g(m) f(x)."""
    dx, dm = x.dim, m.dim
    src = dual(tensor(x, m), RIGHT)
    tgt = tensor(dual(m, RIGHT), dual(x, RIGHT))
    rows = [dict() for _ in range(dm * dx)]
    for i in range(dx):
        for j in range(dm):
            rows[j * dx + i][i * dm + j] = ONE
    return HModMap(src, tgt, Mat(dm * dx, dx * dm, rows))


def frak_b1(x: HModule, m: HModule, n: HModule) -> HModMap:
    """hom(X (x) M, N) -> hom(M, N) (x) X*."""
    iso = dual_of_tensor(x, m)
    src = internal_hom(tensor(x, m), n)
    tgt = tensor(internal_hom(m, n), dual(x, RIGHT))
    return HModMap(src, tgt, kron(Mat.identity(n.dim), iso.matrix))


def frak_b(x: HModule, m: HModule, n: HModule) -> HModMap:
    """hom(X (x) M, N) (x) X -> hom(M, N): (id (x) ev_X)(b1 (x) id_X), i.e. U (x) x -> U(x (x) -)."""
    b1 = frak_b1(x, m, n)
    e = kron(Mat.identity(n.dim * m.dim), _pairing_row(x.dim))
    src = tensor(b1.source, x)
    return HModMap(src, internal_hom(m, n), e @ kron(b1.matrix, Mat.identity(x.dim)))


def prebalancing(d: HModule, m: HModule, n: HModule) -> HModMap:
    """beta^D_{M,N}: hom(M, N (x) D) = (N (x) D) (x) M*  ->  N (x) (M (x) *D)* = hom(M (x) *D, N).

    Uses (M (x) *D)* = (*D)* (x) M* and (*D)* = D on coordinates:
    basis ((n, a), b) goes to (n, (b, a)).
    """
    dn, dd, dm = n.dim, d.dim, m.dim
    src = internal_hom(m, tensor(n, d))
    tgt = internal_hom(tensor(m, dual(d, LEFT)), n)
    rows = [dict() for _ in range(dn * dm * dd)]
    for i in range(dn):
        for a in range(dd):
            for b in range(dm):
                rows[i * dm * dd + b * dd + a][(i * dd + a) * dm + b] = ONE
    return HModMap(src, tgt, Mat(dn * dm * dd, dn * dd * dm, rows))


def prebalancing_transport(d: HModule, m: HModule, n: HModule, g: HModMap) -> HModMap:
    """For g: X (x) M -> N (x) D, the map (id_N (x) ev^L_D)(g (x) id_*D): X (x) M (x) *D -> N."""
    ld = dual(d, LEFT)
    x_dim = g.source.dim // m.dim
    e = kron(Mat.identity(n.dim), _pairing_row(d.dim))
    src = tensor(g.source, ld)
    return HModMap(src, n, e @ kron(g.matrix, Mat.identity(ld.dim)))


def appendix_identity_holds(x: HModule, d: HModule, m: HModule, n: HModule) -> tuple[bool, int]:
    """Check phi(beta o f) == transport(phi(f)) for every f in a basis of Hom(X, hom(M, N (x) D)).

    Returns (all equal, number of maps checked).
    """
    nd = tensor(n, d)
    beta = prebalancing(d, m, n)
    mld = tensor(m, dual(d, LEFT))
    fs = hom_basis(x, internal_hom(m, nd))
    for f in fs:
        lhs = phi(x, mld, n, beta @ f)
        rhs = prebalancing_transport(d, m, n, phi(x, m, nd, f))
        if lhs.matrix != rhs.matrix:
            return False, len(fs)
    return True, len(fs)


# --------------------------------------------------------------------------
# helpers used by the end computations


def is_invariant_subspace(m: HModule, basis: list) -> bool:
    ech = Echelon(m.dim)
    for v in basis:
        ech.add({j: c for j, c in enumerate(v) if c})
    for a in m.action:
        for v in basis:
            w = a @ v
            if not ech.contains({j: c for j, c in enumerate(w) if c}):
                return False
    return True


def augmentation_submodule(m: HModule) -> HModule:
    """Kernel of the counit on the regular module."""
    h = m.algebra
    basis = kernel_of_rows([{i: c for i, c in enumerate(h.counit) if c}], h.dim)
    return submodule(m, basis, f"ker eps")


def is_isomorphism(f: HModMap) -> bool:
    return f.matrix.rows == f.matrix.cols and rank(f.matrix) == f.matrix.rows


# --------------------------------------------------------------------------
# JSON


def module_to_json(m: HModule, algebra_ref=None) -> dict:
    from .exactla import qstr

    return {"schema": "hmod-v1", "algebra": algebra_ref or m.algebra.name, "dim": m.dim,
            "action": [[[qstr(x) for x in a.row_vec(i)] for i in range(a.rows)] for a in m.action]}


def module_from_json(data: dict, h: HopfAlgebra) -> HModule:
    acts = tuple(Mat.from_rows(a, data["dim"]) if a else Mat.zeros(data["dim"], data["dim"])
                 for a in data["action"])
    return HModule(h, int(data["dim"]), acts, data.get("name", "M"))
