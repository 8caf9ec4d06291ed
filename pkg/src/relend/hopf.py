"""Finite-dimensional Hopf algebras by structure constants.

A Hopf algebra lives on a fixed basis b_0..b_{n-1}:

* ``mult[i][j]`` lists the ``(k, c)`` with b_i b_j = sum c b_k,
* ``comult[i]`` lists the ``(j, k, c)`` with Delta(b_i) = sum c b_j (x) b_k,
* ``unit`` and ``counit`` are coordinate vectors,
* ``antipode`` is the matrix whose column i is S(b_i).

Elements are handled as sparse dicts ``{basis index: coefficient}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from .exactla import ONE, ZERO, Mat, qstr, NoSolution, NotUnique, Q, inverse, kernel_basis, kron, rank
from .groups import Group, NotAGroup, NotNormal, NotSubgroup  # noqa: F401  (re-exported)


class InvalidHopfAlgebra(ValueError):
    def __init__(self, report: "AxiomReport"):
        super().__init__("Hopf axioms fail: " + ", ".join(report.failures))
        self.report = report


class NotAHopfMap(ValueError):
    pass


def _add(acc: dict, k, c) -> None:
    v = acc.get(k, ZERO) + c
    if v:
        acc[k] = v
    else:
        acc.pop(k, None)


@dataclass(frozen=True, eq=False)
class HopfAlgebra:
    dim: int
    mult: tuple
    unit: tuple
    comult: tuple
    counit: tuple
    antipode: Mat
    name: str = "H"
    labels: tuple = ()
    # the group when this is a group algebra; lets quotients be named by subgroups
    group: Group | None = field(default=None, repr=False)

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"b{i}" for i in range(self.dim)))

    # elements -------------------------------------------------------------
    def basis(self, i: int) -> dict:
        return {i: ONE}

    def one(self) -> dict:
        return {i: c for i, c in enumerate(self.unit) if c}

    def mul(self, x: dict, y: dict) -> dict:
        acc: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.mult[i][j]:
                    _add(acc, k, a * b * c)
        return acc

    def delta(self, x: dict) -> dict:
        acc: dict = {}
        for i, a in x.items():
            for j, k, c in self.comult[i]:
                _add(acc, (j, k), a * c)
        return acc

    def eps(self, x: dict):
        return sum((a * self.counit[i] for i, a in x.items()), ZERO)

    def S(self, x: dict) -> dict:
        acc: dict = {}
        for i, a in x.items():
            for k, c in self._S_cols[i]:
                _add(acc, k, a * c)
        return acc

    @cached_property
    def _S_cols(self) -> tuple:
        t = self.antipode.T
        return tuple(tuple(t.sparse_row(i).items()) for i in range(self.dim))

    @cached_property
    def antipode_inverse(self) -> Mat:
        return inverse(self.antipode)

    def S_inv(self, x: dict) -> dict:
        m = self.antipode_inverse
        acc: dict = {}
        for i, a in x.items():
            for k in range(self.dim):
                c = m[k, i]
                if c:
                    _add(acc, k, a * c)
        return acc

    def to_vec(self, x: dict) -> tuple:
        return tuple(x.get(i, ZERO) for i in range(self.dim))

    def from_vec(self, v) -> dict:
        return {i: Q(c) for i, c in enumerate(v) if c}

    def left_mult_matrix(self, x: dict) -> Mat:
        """Matrix of y -> x y on the basis."""
        cols = [self.to_vec(self.mul(x, self.basis(j))) for j in range(self.dim)]
        return Mat.from_columns(cols, self.dim)

    def right_mult_matrix(self, x: dict) -> Mat:
        cols = [self.to_vec(self.mul(self.basis(j), x)) for j in range(self.dim)]
        return Mat.from_columns(cols, self.dim)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """Basis indices generating H as a unital algebra (greedy, deterministic)."""
        from .exactla import Echelon

        gens: list[int] = []
        ech = Echelon(self.dim)
        span: list[dict] = []

        def absorb(x):
            if ech.add(dict(x)):
                span.append(x)
                return True
            return False

        absorb(self.one())
        for i in range(self.dim):
            if ech.contains(self.basis(i)):
                continue
            gens.append(i)
            # close the span under multiplication by the chosen generators
            frontier = list(span)
            absorb(self.basis(i))
            frontier = list(span)
            while frontier:
                new = []
                for x in frontier:
                    for g in gens:
                        y = self.mul(x, self.basis(g))
                        if absorb(y):
                            new.append(y)
                frontier = new
            if ech.rank == self.dim:
                break
        return tuple(gens)

    def structure_equal(self, other: "HopfAlgebra") -> bool:
        if self is other:
            return True
        return (self.dim == other.dim and self.unit == other.unit and self.counit == other.counit
                and self.antipode == other.antipode
                and all(dict(self.mult[i][j]) == dict(other.mult[i][j])
                        for i in range(self.dim) for j in range(self.dim))
                and all(self.delta(self.basis(i)) == other.delta(other.basis(i)) for i in range(self.dim)))

    def __repr__(self) -> str:
        return f"HopfAlgebra({self.name}, dim={self.dim})"


def make_hopf(dim, mult, unit, comult, counit, antipode, name="H", labels=(), group=None,
              validate=True) -> HopfAlgebra:
    """Normalize raw structure data; ``mult``/``comult`` are iterables of index tuples with a coefficient."""
    m = [[[] for _ in range(dim)] for _ in range(dim)]
    acc: dict = {}
    for i, j, k, c in mult:
        _add(acc, (int(i), int(j), int(k)), Q(c))
    for (i, j, k), c in sorted(acc.items()):
        m[i][j].append((k, c))
    d = [[] for _ in range(dim)]
    acc = {}
    for i, j, k, c in comult:
        _add(acc, (int(i), int(j), int(k)), Q(c))
    for (i, j, k), c in sorted(acc.items()):
        d[i].append((j, k, c))
    if not isinstance(antipode, Mat):
        antipode = Mat.from_rows(antipode, dim)
    h = HopfAlgebra(dim, tuple(tuple(tuple(x) for x in row) for row in m), tuple(Q(x) for x in unit),
                    tuple(tuple(x) for x in d), tuple(Q(x) for x in counit), antipode, name,
                    tuple(labels), group)
    if validate:
        rep = check_axioms(h)
        if not rep.ok:
            raise InvalidHopfAlgebra(rep)
    return h


# --------------------------------------------------------------------------
# axioms


@dataclass
class AxiomReport:
    results: dict

    @property
    def ok(self) -> bool:
        return all(self.results.values())

    @property
    def failures(self) -> list[str]:
        return [k for k, v in self.results.items() if not v]

    def as_dict(self) -> dict:
        return dict(self.results)


def _tensor_mul(h: HopfAlgebra, x: dict, y: dict) -> dict:
    acc: dict = {}
    for (a, b), s in x.items():
        for (c, d), t in y.items():
            for k, u in h.mult[a][c]:
                for l, v in h.mult[b][d]:
                    _add(acc, (k, l), s * t * u * v)
    return acc


def check_axioms(h: HopfAlgebra) -> AxiomReport:
    n = h.dim
    B = [h.basis(i) for i in range(n)]
    one = h.one()
    res: dict[str, bool] = {}
    res["associativity"] = all(h.mul(h.mul(B[i], B[j]), B[k]) == h.mul(B[i], h.mul(B[j], B[k]))
                               for i, j, k in itertools.product(range(n), repeat=3))
    res["unit"] = all(h.mul(one, B[i]) == B[i] == h.mul(B[i], one) for i in range(n))

    def d_left(i):  # (Delta (x) id) Delta
        acc: dict = {}
        for j, k, c in h.comult[i]:
            for a, b, e in h.comult[j]:
                _add(acc, (a, b, k), c * e)
        return acc

    def d_right(i):  # (id (x) Delta) Delta
        acc: dict = {}
        for j, k, c in h.comult[i]:
            for a, b, e in h.comult[k]:
                _add(acc, (j, a, b), c * e)
        return acc

    res["coassociativity"] = all(d_left(i) == d_right(i) for i in range(n))

    def counit_ok(i):
        left: dict = {}
        right: dict = {}
        for j, k, c in h.comult[i]:
            _add(left, k, c * h.counit[j])
            _add(right, j, c * h.counit[k])
        return left == B[i] == right

    res["counit"] = all(counit_ok(i) for i in range(n))
    res["comult_multiplicative"] = (
        h.delta(one) == {(a, b): s * t for a, s in one.items() for b, t in one.items() if s * t}
        and all(h.delta(h.mul(B[i], B[j])) == _tensor_mul(h, h.delta(B[i]), h.delta(B[j]))
                for i, j in itertools.product(range(n), repeat=2)))
    res["counit_multiplicative"] = (
        h.eps(one) == ONE
        and all(h.eps(h.mul(B[i], B[j])) == h.counit[i] * h.counit[j]
                for i, j in itertools.product(range(n), repeat=2)))

    def antipode_ok(i):
        left: dict = {}
        right: dict = {}
        for j, k, c in h.comult[i]:
            for t, v in h.mul(h.S(B[j]), B[k]).items():
                _add(left, t, c * v)
            for t, v in h.mul(B[j], h.S(B[k])).items():
                _add(right, t, c * v)
        target = {t: h.counit[i] * v for t, v in one.items() if h.counit[i] * v}
        return left == target == right

    res["antipode"] = all(antipode_ok(i) for i in range(n))
    res["antipode_invertible"] = h.antipode.shape == (n, n) and rank(h.antipode) == n
    return AxiomReport(res)


# --------------------------------------------------------------------------
# constructors


def group_algebra(g: Group) -> HopfAlgebra:
    n = g.order
    mult = [(a, b, g.table[a][b], 1) for a in range(n) for b in range(n)]
    comult = [(a, a, a, 1) for a in range(n)]
    unit = [1 if a == g.identity else 0 for a in range(n)]
    S = Mat.from_columns([[1 if k == g.inverse[a] else 0 for k in range(n)] for a in range(n)], n)
    return make_hopf(n, mult, unit, comult, [1] * n, S, name=f"k{g.name}", labels=g.names, group=g)


def function_algebra(g: Group) -> HopfAlgebra:
    """k^G on the delta functions."""
    n = g.order
    mult = [(a, a, a, 1) for a in range(n)]
    comult = [(g.table[a][b], a, b, 1) for a in range(n) for b in range(n)]
    counit = [1 if a == g.identity else 0 for a in range(n)]
    S = Mat.from_columns([[1 if k == g.inverse[a] else 0 for k in range(n)] for a in range(n)], n)
    return make_hopf(n, mult, [1] * n, comult, counit, S, name=f"k^{g.name}",
                     labels=tuple(f"d_{x}" for x in g.names))


def sweedler() -> HopfAlgebra:
    """Basis 1, g, x, gx (index a + 2b for g^a x^b); g^2 = 1, x^2 = 0, xg = -gx."""
    mult = []
    for a, b, c, d in itertools.product(range(2), repeat=4):
        if b + d < 2:
            sign = -1 if (b and c) else 1
            mult.append((a + 2 * b, c + 2 * d, (a + c) % 2 + 2 * (b + d), sign))
    comult = [(0, 0, 0, 1), (1, 1, 1, 1),
              (2, 2, 0, 1), (2, 1, 2, 1),       # x  -> x(x)1 + g(x)x
              (3, 3, 1, 1), (3, 0, 3, 1)]       # gx -> gx(x)g + 1(x)gx
    S = Mat.from_columns([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]], 4)
    return make_hopf(4, mult, [1, 0, 0, 0], comult, [1, 1, 0, 0], S, name="Sweedler",
                     labels=("1", "g", "x", "gx"))


def trivial_hopf() -> HopfAlgebra:
    return make_hopf(1, [(0, 0, 0, 1)], [1], [(0, 0, 0, 1)], [1], [[1]], name="k", labels=("1",))


def tensor_hopf(h1: HopfAlgebra, h2: HopfAlgebra) -> HopfAlgebra:
    n1, n2 = h1.dim, h2.dim
    mult = []
    for i, j, k, l in itertools.product(range(n1), range(n2), range(n1), range(n2)):
        for a, c in h1.mult[i][k]:
            for b, e in h2.mult[j][l]:
                mult.append((i * n2 + j, k * n2 + l, a * n2 + b, c * e))
    comult = []
    for i in range(n1):
        for j in range(n2):
            for a, b, c in h1.comult[i]:
                for x, y, e in h2.comult[j]:
                    comult.append((i * n2 + j, a * n2 + x, b * n2 + y, c * e))
    unit = [h1.unit[i] * h2.unit[j] for i in range(n1) for j in range(n2)]
    counit = [h1.counit[i] * h2.counit[j] for i in range(n1) for j in range(n2)]
    labels = tuple(f"{a}(x){b}" for a in h1.labels for b in h2.labels)
    return make_hopf(n1 * n2, mult, unit, comult, counit, kron(h1.antipode, h2.antipode),
                     name=f"{h1.name}(x){h2.name}", labels=labels)


# --------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True, eq=False)
class HopfMap:
    """A verified Hopf algebra morphism; ``matrix`` is target.dim x source.dim."""

    source: HopfAlgebra
    target: HopfAlgebra
    matrix: Mat
    name: str = "p"

    def __post_init__(self):
        bad = hopf_map_failures(self.source, self.target, self.matrix)
        if bad:
            raise NotAHopfMap("not a Hopf map: " + ", ".join(bad))

    def apply(self, x: dict) -> dict:
        v = self.matrix @ self.source.to_vec(x)
        return self.target.from_vec(v)

    def is_surjective(self) -> bool:
        return rank(self.matrix) == self.target.dim

    def __repr__(self) -> str:
        return f"HopfMap({self.name}: {self.source.name} -> {self.target.name})"


def hopf_map_failures(src: HopfAlgebra, tgt: HopfAlgebra, m: Mat) -> list[str]:
    if m.shape != (tgt.dim, src.dim):
        return ["shape"]
    n = src.dim
    f = [tgt.from_vec(m.col(i)) for i in range(n)]

    def fmap(x):
        acc: dict = {}
        for i, a in x.items():
            for k, c in f[i].items():
                _add(acc, k, a * c)
        return acc

    def ff(t):
        acc: dict = {}
        for (i, j), a in t.items():
            for k, c in f[i].items():
                for l, e in f[j].items():
                    _add(acc, (k, l), a * c * e)
        return acc

    out = []
    B = [src.basis(i) for i in range(n)]
    if not all(fmap(src.mul(B[i], B[j])) == tgt.mul(f[i], f[j]) for i in range(n) for j in range(n)):
        out.append("multiplication")
    if fmap(src.one()) != tgt.one():
        out.append("unit")
    if not all(ff(src.delta(B[i])) == tgt.delta(f[i]) for i in range(n)):
        out.append("comultiplication")
    if not all(tgt.eps(f[i]) == src.counit[i] for i in range(n)):
        out.append("counit")
    if not all(fmap(src.S(B[i])) == tgt.S(f[i]) for i in range(n)):
        out.append("antipode")
    return out


def identity_map(h: HopfAlgebra) -> HopfMap:
    return HopfMap(h, h, Mat.identity(h.dim), name="id")


def counit_map(h: HopfAlgebra) -> HopfMap:
    return HopfMap(h, trivial_hopf(), Mat.row(h.counit), name="counit")


def _subset(g: Group, s) -> frozenset:
    if isinstance(s, str):
        return g.parse_subset(s)
    return g.indices(s)


def quotient_by_normal_subgroup(g: Group, n, label: str | None = None) -> HopfMap:
    """kG -> k(G/N), g -> gN. ``n`` is a subgroup spec string or an iterable of indices or names."""
    if label is None and isinstance(n, str):
        label = n.strip()
    sub = _subset(g, n)
    quo, where = g.quotient(sub)
    src = group_algebra(g)
    tgt = group_algebra(quo)
    m = Mat.from_columns([[1 if k == where[a] else 0 for k in range(quo.order)] for a in range(g.order)],
                         quo.order)
    if label is None:
        label = "{" + ",".join(g.names[x] for x in sorted(sub)) + "}"
    return HopfMap(src, tgt, m, name=f"k{g.name}/{label}")


def restriction_map(g: Group, k) -> HopfMap:
    """k^G -> k^K, restriction of functions to a subgroup K."""
    sub = g.check_subgroup(_subset(g, k))
    elems = sorted(sub)
    table = [[elems.index(g.table[a][b]) for b in elems] for a in elems]
    kg = Group.from_table([g.names[a] for a in elems], table, name="K")
    src = function_algebra(g)
    tgt = function_algebra(kg)
    m = Mat.from_columns([[1 if (a in sub and elems[j] == a) else 0 for j in range(len(elems))]
                          for a in range(g.order)], len(elems))
    return HopfMap(src, tgt, m, name=f"res k^{g.name} -> k^K")


def projection_first_factor(h1: HopfAlgebra, h2: HopfAlgebra, tensor: HopfAlgebra | None = None) -> HopfMap:
    """id (x) eps : H1 (x) H2 -> H1."""
    t = tensor or tensor_hopf(h1, h2)
    n2 = h2.dim
    cols = [[h2.counit[c % n2] if r == c // n2 else 0 for r in range(h1.dim)] for c in range(t.dim)]
    return HopfMap(t, h1, Mat.from_columns(cols, h1.dim), name="id(x)eps")


def projection_second_factor(h1: HopfAlgebra, h2: HopfAlgebra, tensor: HopfAlgebra | None = None) -> HopfMap:
    """eps (x) id : H1 (x) H2 -> H2."""
    t = tensor or tensor_hopf(h1, h2)
    n2 = h2.dim
    cols = [[h1.counit[c // n2] if r == c % n2 else 0 for r in range(n2)] for c in range(t.dim)]
    return HopfMap(t, h2, Mat.from_columns(cols, n2), name="eps(x)id")


def hopf_map_from_matrix(src: HopfAlgebra, tgt: HopfAlgebra, rows, name="p") -> HopfMap:
    return HopfMap(src, tgt, Mat.from_rows(rows, src.dim), name=name)


def coinvariants(p: HopfMap) -> list[tuple]:
    """Basis of {h : h_1 (x) p(h_2) = h (x) 1} inside the source."""
    h, q = p.source, p.target
    nq = q.dim
    cols = []
    for i in range(h.dim):
        acc: dict = {}
        for j, k, c in h.comult[i]:
            for t, e in enumerate(p.matrix.col(k)):
                if e:
                    _add(acc, j * nq + t, c * e)
        for t, u in enumerate(q.unit):
            if u:
                _add(acc, i * nq + t, -u)
        cols.append([acc.get(r, ZERO) for r in range(h.dim * nq)])
    m = Mat.from_columns(cols, h.dim * nq)
    return kernel_basis(m)


# --------------------------------------------------------------------------
# JSON


class FormatError(ValueError):
    pass


def _rows(m: Mat) -> list:
    return [[qstr(x) for x in m.row_vec(i)] for i in range(m.rows)]


def hopf_to_json(h: HopfAlgebra) -> dict:
    mult = [[i, j, k, qstr(c)] for i in range(h.dim) for j in range(h.dim) for k, c in h.mult[i][j]]
    comult = [[i, j, k, qstr(c)] for i in range(h.dim) for j, k, c in h.comult[i]]
    return {"schema": "hopf-v1", "name": h.name, "labels": list(h.labels), "dim": h.dim, "mult": mult,
            "unit": [qstr(x) for x in h.unit], "comult": comult,
            "counit": [qstr(x) for x in h.counit], "antipode": _rows(h.antipode)}


def hopf_from_json(data: dict, validate: bool = True) -> HopfAlgebra:
    try:
        n = int(data["dim"])
        mult = [tuple(t) for t in data["mult"]]
        comult = [tuple(t) for t in data["comult"]]
        if any(len(t) != 4 for t in mult + comult):
            raise FormatError("mult/comult entries must be [i, j, k, coefficient]")
        if any(not 0 <= int(x) < n for t in mult + comult for x in t[:3]):
            raise FormatError("basis index out of range")
        if len(data["unit"]) != n or len(data["counit"]) != n or len(data["antipode"]) != n:
            raise FormatError("unit, counit and antipode must have length dim")
        return make_hopf(n, mult, data["unit"], comult, data["counit"], data["antipode"],
                         name=data.get("name", "H"), labels=tuple(data.get("labels", ())), validate=validate)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, (FormatError, InvalidHopfAlgebra)):
            raise
        raise FormatError(f"malformed hopf-v1 data: {exc}") from exc


def group_to_json(g: Group) -> dict:
    return {"schema": "group-v1", "name": g.name, "elements": list(g.names),
            "table": [list(r) for r in g.table], "subgroups": {k: list(v) for k, v in g.subgroups.items()}}


def group_from_json(data: dict) -> Group:
    try:
        return Group.from_table(data["elements"], data["table"], name=data.get("name", "G"),
                                subgroups=data.get("subgroups"))
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed group-v1 data: {exc}") from exc


def hopfmap_to_json(p: HopfMap, source_ref=None, target_ref=None) -> dict:
    return {"schema": "hopfmap-v1", "name": p.name,
            "source": source_ref if source_ref is not None else hopf_to_json(p.source),
            "target": target_ref if target_ref is not None else hopf_to_json(p.target),
            "matrix": _rows(p.matrix)}


def hopfmap_from_json(data: dict, resolve) -> HopfMap:
    """``resolve`` turns a source/target entry (inline hopf-v1 or a reference) into a HopfAlgebra."""
    try:
        src = resolve(data["source"])
        tgt = resolve(data["target"])
        m = Mat.from_rows(data["matrix"], src.dim)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, (FormatError, InvalidHopfAlgebra)):
            raise
        raise FormatError(f"malformed hopfmap-v1 data: {exc}") from exc
    if m.rows != tgt.dim:
        raise FormatError("matrix must have dim(target) rows")
    return HopfMap(src, tgt, m, name=data.get("name", "p"))


__all__ = [
    "HopfAlgebra", "HopfMap", "AxiomReport", "InvalidHopfAlgebra", "NotAHopfMap", "NotAGroup",
    "NotNormal", "NotSubgroup", "check_axioms", "group_algebra", "function_algebra", "sweedler",
    "trivial_hopf", "tensor_hopf", "identity_map", "counit_map", "quotient_by_normal_subgroup",
    "restriction_map", "projection_first_factor", "projection_second_factor", "coinvariants",
    "make_hopf", "hopf_map_from_matrix", "NoSolution", "NotUnique", "FormatError", "hopf_to_json",
    "hopf_from_json", "group_to_json", "group_from_json", "hopfmap_to_json", "hopfmap_from_json",
]
