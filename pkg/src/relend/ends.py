"""Ordinary and relative ends of S(X, Y) = Y (x) X* over Rep(H).

Everything is computed at the regular module P, which is a projective
generator: an end is a subspace E of hom(P, P) = P (x) P*, and its component at
any other module M is recovered from the dinaturality squares against
Hom_H(P, M).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property

from .exactla import (Echelon, Mat, NoSolution, NotUnique, ZERO, hstack, kron, op_to_vec,
                      rank, solve_unique, span_basis, vec_to_op)
from .hopf import HopfAlgebra, HopfMap
from .rep import (HModule, augmentation_submodule, dual, hom_basis, hom_from_regular, internal_hom,
                  is_invariant_subspace, pullback, regular_module, submodule, tensor, trivial_module, RIGHT)


class ValidationFailed(RuntimeError):
    pass


class ConstraintViolation(ValueError):
    pass


class NotNested(ValueError):
    pass


class NotSurjective(ValueError):
    pass


DEFAULT_VALIDATION_DEPTH = 3


def validation_depth() -> int:
    raw = os.environ.get("RELEND_VALIDATION_DEPTH")
    if raw is None or raw == "":
        return DEFAULT_VALIDATION_DEPTH
    n = int(raw)
    if n < 0:
        raise ValueError("RELEND_VALIDATION_DEPTH must be >= 0")
    return n


@dataclass(frozen=True, eq=False)
class EndObject:
    algebra: HopfAlgebra
    ambient: HModule
    basis: tuple
    relative_to: HopfMap | None = None
    validations: tuple = ()

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def pi_at_P(self) -> Mat:
        """Inclusion E -> P (x) P*, one column per basis vector."""
        return Mat.from_columns(self.basis, self.ambient.dim)

    @cached_property
    def P(self) -> HModule:
        return regular_module(self.algebra)

    @cached_property
    def module(self) -> HModule:
        """E with the H-action restricted from the ambient."""
        return submodule(self.ambient, list(self.basis), "E")

    def operators(self) -> list[Mat]:
        n = self.algebra.dim
        return [vec_to_op(v, n, n) for v in self.basis]

    def coordinates(self, vectors) -> Mat:
        """Coordinates of ambient vectors in the basis of E (NoSolution if outside)."""
        return solve_unique(self.pi_at_P, Mat.from_columns(list(vectors), self.ambient.dim))

    def contains(self, v) -> bool:
        ech = Echelon(self.ambient.dim)
        for b in self.basis:
            ech.add({j: c for j, c in enumerate(b) if c})
        return ech.contains({j: c for j, c in enumerate(v) if c})


# --------------------------------------------------------------------------
# ordinary end


def _end_constraint_rows(n: int, maps: list[Mat]):
    # T a = a T, with vec(T a) = kron(I, a^T) vec(T) and vec(a T) = kron(a, I) vec(T)
    eye = Mat.identity(n)
    for a in maps:
        c = kron(eye, a.T) - kron(a, eye)
        for i in range(c.rows):
            r = c.sparse_row(i)
            if r:
                yield r


def end_at_generator(h: HopfAlgebra) -> EndObject:
    p = regular_module(h)
    amb = internal_hom(p, p)
    endo = [f.matrix for f in hom_basis(p, p)]
    ech = Echelon(h.dim * h.dim)
    for r in _end_constraint_rows(h.dim, endo):
        ech.add(r)
    basis = tuple(span_basis(ech.kernel(), amb.dim))
    if not is_invariant_subspace(amb, list(basis)):
        raise ValidationFailed("end is not an H-submodule of hom(P, P)")
    return EndObject(h, amb, basis)


# --------------------------------------------------------------------------
# induced components


def _select_columns(mats: list[Mat], dim: int) -> list[tuple[int, int]]:
    """Greedy (map, column) choice whose columns form a basis of the target."""
    ech = Echelon(dim)
    picked = []
    for k, f in enumerate(mats):
        t = f.T
        for j in range(t.rows):
            if ech.add(t.sparse_row(j)):
                picked.append((k, j))
                if ech.rank == dim:
                    return picked
    return picked


def induce_pi_from(pi_P: Mat, h: HopfAlgebra, m: HModule, homs: list[Mat] | None = None) -> Mat:
    """Solve pi_M(e) f = f pi_P(e) for every f: P -> M; returns pi_M as a (dim M)^2 x dim E matrix.

    The system is solved on a set of columns of the stacked f's that forms a
    basis of M (so the solution is unique) and then checked against every f.
    """
    n, dm = h.dim, m.dim
    d = pi_P.cols
    if dm == 0:
        return Mat.zeros(0, d)
    fs = homs if homs is not None else [f.matrix for f in hom_from_regular(m)]
    picked = _select_columns(fs, dm)
    if len(picked) < dm:
        raise NotUnique("the maps P -> M do not jointly span M")
    us = [vec_to_op(pi_P.col(i), n, n) for i in range(d)]
    # T F_sel = G_sel, i.e. F_sel^T T^T = G_sel^T
    f_sel = Mat.from_columns([fs[k].col(j) for k, j in picked], dm)
    g_blocks = []
    for u in us:
        cols = [(fs[k] @ u).col(j) for k, j in picked]
        g_blocks.append(Mat.from_columns(cols, dm).T)
    sol = solve_unique(f_sel.T, hstack(g_blocks))
    out_cols = []
    for i, u in enumerate(us):
        tt = sol.submatrix(range(dm), range(i * dm, (i + 1) * dm))
        t = tt.T
        for f in fs:
            if t @ f != f @ u:
                raise NoSolution("no dinatural component at this module")
        out_cols.append(op_to_vec(t))
    return Mat.from_columns(out_cols, dm * dm)


def induce_pi(e: EndObject, m: HModule, homs: list[Mat] | None = None) -> Mat:
    return induce_pi_from(e.pi_at_P, e.algebra, m, homs)


def induce_pi_generic(e: EndObject, m: HModule) -> Mat:
    """Same as induce_pi but with Hom(P, M) computed as a kernel; slower, used as a cross-check."""
    return induce_pi_from(e.pi_at_P, e.algebra, m, [f.matrix for f in hom_basis(e.P, m)])


# --------------------------------------------------------------------------
# relative end


def relative_constraint_defect(pi_P: Mat, h: HopfAlgebra, x: HModule, at: HModule | None = None) -> Mat:
    """pi_{M (x) X} - pi_M (x) id_X at M = ``at`` (default P), as a matrix on the coordinates of E."""
    if at is None:
        at = regular_module(h)
        base = pi_P
    else:
        base = induce_pi_from(pi_P, h, at)
    mx = tensor(at, x)
    lhs = induce_pi_from(pi_P, h, mx)
    eye = Mat.identity(x.dim)
    cols = []
    for i in range(pi_P.cols):
        t = vec_to_op(base.col(i), at.dim, at.dim)
        cols.append(op_to_vec(kron(t, eye)))
    return lhs - Mat.from_columns(cols, mx.dim * mx.dim)


def validation_objects(p: HopfMap, depth: int) -> list[tuple[str, HModule]]:
    """Further objects of the subcategory on which the relative condition is re-checked."""
    q = p.target
    pq = regular_module(q)
    cands = [("trivial", lambda: trivial_module(q)),
             ("augmentation ideal", lambda: augmentation_submodule(pq)),
             ("dual of regular", lambda: dual(pq, RIGHT))]
    if q.dim * q.dim * p.source.dim <= 64:
        cands.append(("regular (x) regular", lambda: tensor(pq, pq)))
    out = []
    for name, make in cands[:depth]:
        y = make()
        if y.dim:
            out.append((name, pullback(p, y)))
    return out


def relative_end(h: HopfAlgebra, p: HopfMap, depth: int | None = None,
                 ordinary: EndObject | None = None) -> EndObject:
    if not p.source is h and not p.source.structure_equal(h):
        raise ValueError("map does not start at this Hopf algebra")
    if not p.is_surjective():
        raise NotSurjective("the quotient map is not surjective")
    base = ordinary or end_at_generator(h)
    x = pullback(p, regular_module(p.target))
    defect = relative_constraint_defect(base.pi_at_P, h, x)
    ech = Echelon(base.dim)
    for i in range(defect.rows):
        r = defect.sparse_row(i)
        if r:
            ech.add(r)
    coeffs = ech.kernel()
    vecs = [base.pi_at_P @ c for c in coeffs]
    basis = tuple(span_basis(vecs, base.ambient.dim))
    pi = Mat.from_columns(basis, base.ambient.dim) if basis else Mat.zeros(base.ambient.dim, 0)

    results = []
    depth = validation_depth() if depth is None else depth
    for name, y in validation_objects(p, depth):
        ok = True
        for at in (None, trivial_module(h)):
            if not relative_constraint_defect(pi, h, y, at).is_zero():
                ok = False
        results.append({"X": name, "pass": ok})
        if not ok:
            raise ValidationFailed(f"relative condition fails at X = {name}")
    if basis and not is_invariant_subspace(base.ambient, list(basis)):
        raise ValidationFailed("relative end is not an H-submodule")
    return EndObject(h, base.ambient, basis, p, tuple(results))


# --------------------------------------------------------------------------
# universal property and comparison


def check_family(e: EndObject, lam: Mat) -> list[str]:
    """Names of the defining constraints violated by a candidate family given at P."""
    h = e.algebra
    n = h.dim
    bad = []
    endo = [f.matrix for f in hom_basis(e.P, e.P)]
    for k in range(lam.cols):
        t = vec_to_op(lam.col(k), n, n)
        if any(t @ a != a @ t for a in endo):
            bad.append("dinaturality at P")
            break
    if e.relative_to is not None and not bad:
        x = pullback(e.relative_to, regular_module(e.relative_to.target))
        try:
            defect = relative_constraint_defect(lam, h, x)
        except (NoSolution, NotUnique):
            bad.append("dinaturality at P (x) X")
        else:
            if not defect.is_zero():
                bad.append("relative condition")
    return bad


def factor_through(e: EndObject, lam: Mat) -> Mat:
    """The unique h: E' -> E with pi_P h = lam, for a candidate family lam given at P."""
    if lam.rows != e.ambient.dim:
        raise ValueError("candidate must take values in hom(P, P)")
    bad = check_family(e, lam)
    if bad:
        raise ConstraintViolation("candidate family violates: " + ", ".join(bad))
    try:
        return solve_unique(e.pi_at_P, lam)
    except NoSolution as exc:
        raise ConstraintViolation("candidate does not land in the end") from exc


def restriction_mono(fine: EndObject, coarse: EndObject, sample: list[HModule] | None = None) -> Mat:
    """Coordinates of fine's basis in coarse's basis, i.e. the monomorphism E_fine -> E_coarse."""
    if not fine.algebra.structure_equal(coarse.algebra):
        raise NotNested("ends over different Hopf algebras")
    try:
        iota = solve_unique(coarse.pi_at_P, fine.pi_at_P)
    except NoSolution as exc:
        raise NotNested("the first end is not contained in the second") from exc
    for m in sample or [trivial_module(fine.algebra)]:
        if induce_pi(coarse, m) @ iota != induce_pi(fine, m):
            raise NotNested("components do not restrict")
    return iota


# --------------------------------------------------------------------------
# JSON


def end_to_json(e: EndObject) -> dict:
    from .exactla import qstr

    return {"schema": "end-v1", "dim_ambient": e.ambient.dim, "dim_end": e.dim,
            "basis": [[qstr(x) for x in v] for v in e.basis],
            "relative_to": None if e.relative_to is None else e.relative_to.name,
            "validations": list(e.validations)}
