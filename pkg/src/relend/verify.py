"""The verification suite: numbered criteria evaluated over the builtin registry."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from . import registry as R
from .adjoint import (CentralAlgebra, ModelMismatch, algebra_map_holds, build_algebra, comparison_maps,
                      run_checks, verify_coinvariant_model, verify_deligne)
from .ends import (ConstraintViolation, EndObject, end_at_generator, factor_through, relative_end,
                   restriction_mono)
from .exactla import Mat, rank, subspace_equal
from .hopf import quotient_by_normal_subgroup
from .rep import appendix_identity_holds, pullback, regular_module, trivial_module, tensor


@dataclass
class Result:
    number: int
    name: str
    passed: bool
    detail: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"criterion": self.number, "name": self.name, "pass": self.passed, "detail": self.detail}


class Session:
    """Caches ends and algebras so that criteria sharing inputs do not recompute them."""

    def __init__(self, hopf_names, pair_names):
        self.hopf_names = list(hopf_names)
        self.pair_names = list(pair_names)
        self._ord: dict = {}
        self._rel: dict = {}
        self._alg: dict = {}

    def ordinary(self, name: str) -> EndObject:
        if name not in self._ord:
            self._ord[name] = end_at_generator(R.hopf(name))
        return self._ord[name]

    def relative(self, pair_name: str) -> EndObject:
        if pair_name not in self._rel:
            p = R.pair(pair_name)
            base = self.ordinary(R.pair_source(pair_name))
            self._rel[pair_name] = relative_end(p.source, p, ordinary=base)
        return self._rel[pair_name]

    def algebra(self, key: tuple) -> CentralAlgebra:
        if key not in self._alg:
            kind, name = key
            e = self.ordinary(name) if kind == "ordinary" else self.relative(name)
            a = build_algebra(e)
            run_checks(a)
            self._alg[key] = a
        return self._alg[key]

    def algebra_keys(self) -> list[tuple]:
        return [("ordinary", n) for n in self.hopf_names] + [("relative", n) for n in self.pair_names]


FAST_HOPF = ("k", "c2", "c3", "s3", "sweedler", "c2-c2")
FAST_PAIRS = ("s3/A3", "c4/C2", "sweedler/c2", "c2-c2/first", "fn-s3/fn-c2",
              "c2/counit", "s3/counit", "sweedler/counit", "s3/id")


def session_for(suite: str) -> Session:
    if suite == "fast":
        return Session(FAST_HOPF, FAST_PAIRS)
    if suite == "all":
        return Session(R.HOPF_NAMES, R.all_pairs())
    raise ValueError(f"unknown suite {suite!r}")


# --------------------------------------------------------------------------
# criteria


def coinvariant_theorem(s: Session) -> Result:
    detail, ok = [], True
    for name in ("s3/A3", "c4/C2", "sweedler/c2"):
        p = R.pair(name)
        try:
            rep = verify_coinvariant_model(p.source, p, s.relative(name))
            detail.append({"pair": name, "dim": rep.dim, "pass": True})
        except ModelMismatch as exc:
            ok = False
            detail.append({"pair": name, "pass": False, "error": str(exc)})
    return Result(1, "coinvariant theorem", ok, detail)


def dimension_formula(s: Session) -> Result:
    detail = []
    for name in s.pair_names:
        p = R.pair(name)
        e = s.relative(name)
        good = e.dim * p.target.dim == p.source.dim
        detail.append({"pair": name, "dim_end": e.dim, "dim_Q": p.target.dim, "dim_H": p.source.dim, "pass": good})
    return Result(2, "dimension formula", all(d["pass"] for d in detail), detail)


def ordinary_dimension(s: Session) -> Result:
    detail = []
    for name in s.hopf_names:
        h = R.hopf(name)
        if h.dim > 12:
            continue
        e = s.ordinary(name)
        detail.append({"hopf": name, "dim_end": e.dim, "dim_H": h.dim, "pass": e.dim == h.dim})
    return Result(3, "ordinary adjoint dimension", all(d["pass"] for d in detail), detail)


STRUCTURE_KEYS = ("associative", "unital", "commutative", "hexagon_sampled", "natural",
                  "braiding_equivariant", "braiding_invertible", "dinatural_structure")


def algebra_structure(s: Session) -> Result:
    detail = []
    for key in s.algebra_keys():
        c = s.algebra(key).checks
        good = all(c[k] for k in STRUCTURE_KEYS)
        detail.append({"algebra": f"{key[0]}:{key[1]}", "pass": good,
                       "failed": [k for k in STRUCTURE_KEYS if not c[k]]})
    return Result(4, "commutative algebra structure", all(d["pass"] for d in detail), detail)


def comparison_identity(s: Session) -> Result:
    detail = []
    for name in ("s3/A3", "sweedler/c2"):
        p = R.pair(name)
        hn = R.pair_source(name)
        cm = comparison_maps(p.source, p, s.ordinary(hn), s.relative(name))
        good = cm.identity_holds and cm.iota_algebra_map and cm.q_algebra_map
        detail.append({"pair": name, "q_iota_eq_u_alpha": cm.identity_holds, "iota_algebra_map": cm.iota_algebra_map,
                       "q_algebra_map": cm.q_algebra_map, "dims": cm.dims, "pass": good})
    return Result(5, "comparison identity", all(d["pass"] for d in detail), detail)


def deligne(s: Session) -> Result:
    detail = []
    for a, b in (("c2", "c2"), ("s3", "c2")):
        try:
            rep = verify_deligne(R.hopf(a), R.hopf(b))
            detail.append({"h1": a, "h2": b, "dim": rep.dim_relative, "pass": True})
        except ModelMismatch as exc:
            detail.append({"h1": a, "h2": b, "pass": False, "error": str(exc)})
    return Result(6, "Deligne factorization", all(d["pass"] for d in detail), detail)


def tower(group_name: str, subgroup_specs: list[str]) -> dict:
    """Relative ends for the quotients by each listed normal subgroup (and G itself), nested."""
    g = R.group(group_name)
    specs = list(dict.fromkeys(list(subgroup_specs) + ["G"]))
    maps = []
    for sp in specs:
        sub = g.parse_subset(sp)
        maps.append((len(sub), sp, quotient_by_normal_subgroup(g, sp)))
    maps.sort(key=lambda t: t[0])
    h = maps[0][2].source
    ends = [(sp, relative_end(h, p)) for _, sp, p in maps]
    algs = [build_algebra(e) for _, e in ends]
    steps = []
    for (sp1, e1), (sp2, e2), a1, a2 in zip(ends, ends[1:], algs, algs[1:]):
        iota = restriction_mono(e1, e2)
        steps.append({"from": sp1, "to": sp2, "injective": rank(iota) == e1.dim,
                      "algebra_map": algebra_map_holds(iota, a1, a2)})
    return {"group": group_name, "carriers": [{"N": sp, "dim": e.dim} for sp, e in ends], "inclusions": steps,
            "pass": all(st["injective"] and st["algebra_map"] for st in steps)}


def nesting(s: Session) -> Result:
    rep = tower("s3", ["{e}", "A3"])
    dims = [c["dim"] for c in rep["carriers"]]
    ok = rep["pass"] and dims == [1, 3, 6]
    return Result(7, "nesting", ok, [rep])


def _random_matrix(rng: random.Random, rows: int, cols: int) -> Mat:
    return Mat.from_rows([[rng.randint(-4, 4) for _ in range(cols)] for _ in range(rows)], cols)


def universal_property(s: Session, n_valid: int = 20, n_bad: int = 5, seed: int = 8) -> Result:
    rng = random.Random(seed)
    targets = [("relative", "s3/A3"), ("relative", "sweedler/c2"), ("ordinary", "s3"), ("ordinary", "sweedler")]
    targets = [t for t in targets if (t[0] == "ordinary" and t[1] in s.hopf_names)
               or (t[0] == "relative" and t[1] in s.pair_names)]
    valid_ok, bad_ok = 0, 0
    detail = []
    for k in range(n_valid):
        kind, name = targets[k % len(targets)]
        e = s.ordinary(name) if kind == "ordinary" else s.relative(name)
        r = _random_matrix(rng, e.dim, rng.randint(1, 3))
        lam = e.pi_at_P @ r
        try:
            hmap = factor_through(e, lam)
            good = e.pi_at_P @ hmap == lam and hmap == r and (rank(hmap) == hmap.cols) == (rank(lam) == lam.cols)
        except ConstraintViolation:
            good = False
        valid_ok += good
    for k in range(n_bad):
        kind, name = targets[k % len(targets)]
        e = s.ordinary(name) if kind == "ordinary" else s.relative(name)
        r = _random_matrix(rng, e.dim, 2)
        lam = e.pi_at_P @ r
        if kind == "relative":
            # a vector of the ordinary end outside the relative one: dinatural, but not relatively so
            outside = next(v for v in s.ordinary(R.pair_source(name)).basis if not e.contains(v))
        else:
            outside = next(v for v in _standard_basis(e.ambient.dim) if not e.contains(v))
        cols = [tuple(a + b for a, b in zip(lam.col(0), outside)), lam.col(1)]
        bad = Mat.from_columns(cols, e.ambient.dim)
        try:
            factor_through(e, bad)
        except ConstraintViolation:
            bad_ok += 1
    detail.append({"valid_factored": valid_ok, "valid_total": n_valid, "perturbed_rejected": bad_ok,
                   "perturbed_total": n_bad})
    return Result(8, "universal property", valid_ok == n_valid and bad_ok == n_bad, detail)


def _standard_basis(n: int):
    for i in range(n):
        yield tuple(1 if j == i else 0 for j in range(n))


def degeneration(s: Session) -> Result:
    detail = []
    for name in s.hopf_names:
        pn = f"{name}/counit"
        e = s.relative(pn) if pn in s.pair_names else relative_end(R.hopf(name), R.pair(pn), ordinary=s.ordinary(name))
        o = s.ordinary(name)
        good = e.basis == o.basis and subspace_equal(list(e.basis), list(o.basis))
        detail.append({"hopf": name, "pass": good})
    return Result(9, "degeneration at the counit", all(d["pass"] for d in detail), detail)


def appendix_sample():
    """(label, X, D, M, N) over sweedler and kS3."""
    out = []
    for pname, hname in (("sweedler/c2", "sweedler"), ("s3/A3", "s3")):
        p = R.pair(pname)
        h = p.source
        P, one = regular_module(h), trivial_module(h)
        dreg = pullback(p, regular_module(p.target))
        dsign = pullback(p, _sign_module(p.target))
        for dname, d in (("pullback regular", dreg), ("pullback sign", dsign)):
            for label, x, m, n in (("X=P M=P N=1", P, P, one), ("X=1 M=P N=P", one, P, P),
                                   ("X=P M=1 N=P", P, one, P)):
                out.append((f"{hname}: D={dname} {label}", x, d, m, n))
        out.append((f"{hname}: D=pullback regular X=P M=P N=P", P, dreg, P, P))
    return out


def _sign_module(q):
    """The one-dimensional module of kC2 where the generator acts by -1."""
    from .rep import make_module

    return make_module(q, [[[1]], [[-1]]], "sign")


def appendix_compatibility(s: Session) -> Result:
    detail = []
    for label, x, d, m, n in appendix_sample():
        ok, count = appendix_identity_holds(x, d, m, n)
        detail.append({"sample": label, "maps_checked": count, "pass": ok})
    return Result(10, "appendix compatibility", all(d["pass"] for d in detail), detail)


def connectedness(s: Session) -> Result:
    detail = []
    for key in s.algebra_keys():
        c = s.algebra(key).checks
        detail.append({"algebra": f"{key[0]}:{key[1]}", "hom_C": c["hom_C_dim"], "hom_center": c["hom_center_dim"],
                       "pass": c["connected"]})
    return Result(11, "connectedness", all(d["pass"] for d in detail), detail)


CRITERIA: list[Callable[[Session], Result]] = [
    coinvariant_theorem, dimension_formula, ordinary_dimension, algebra_structure, comparison_identity,
    deligne, nesting, universal_property, degeneration, appendix_compatibility, connectedness,
]


def run_suite(suite: str = "fast") -> dict:
    s = session_for(suite)
    results = [c(s).as_dict() for c in CRITERIA]
    failing = [r["criterion"] for r in results if not r["pass"]]
    return {"suite": suite, "pass": not failing, "failing": failing, "criteria": results}
