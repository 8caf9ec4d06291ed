"""Finite groups given by Cayley tables, plus the small groups shipped as builtins."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field


class NotAGroup(ValueError):
    pass


class NotSubgroup(ValueError):
    pass


class NotNormal(ValueError):
    pass


@dataclass(frozen=True)
class Group:
    name: str
    names: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    identity: int = field(compare=False, default=0)
    inverse: tuple[int, ...] = field(compare=False, default=())
    subgroups: dict = field(compare=False, default_factory=dict, hash=False)

    @classmethod
    def from_table(cls, names, table, name: str = "G", subgroups=None) -> "Group":
        names = tuple(str(x) for x in names)
        n = len(names)
        if len(set(names)) != n:
            raise NotAGroup("element names are not distinct")
        table = tuple(tuple(int(x) for x in row) for row in table)
        if len(table) != n or any(len(r) != n for r in table):
            raise NotAGroup("table is not n x n")
        if any(not 0 <= x < n for r in table for x in r):
            raise NotAGroup("table entry out of range")
        for a, b, c in itertools.product(range(n), repeat=3):
            if table[table[a][b]][c] != table[a][table[b][c]]:
                raise NotAGroup(f"not associative at ({names[a]}, {names[b]}, {names[c]})")
        ids = [e for e in range(n) if all(table[e][x] == x == table[x][e] for x in range(n))]
        if not ids:
            raise NotAGroup("no identity element")
        e = ids[0]
        inv = []
        for a in range(n):
            cands = [b for b in range(n) if table[a][b] == e == table[b][a]]
            if not cands:
                raise NotAGroup(f"{names[a]} has no inverse")
            inv.append(cands[0])
        g = cls(name, names, table, e, tuple(inv), dict(subgroups or {}))
        for key, elems in g.subgroups.items():
            g.check_subgroup(g.indices(elems))
        return g

    @property
    def order(self) -> int:
        return len(self.names)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"{name!r} is not an element of {self.name}") from None

    def indices(self, elems) -> frozenset[int]:
        return frozenset(self.index(x) if isinstance(x, str) else int(x) for x in elems)

    def check_subgroup(self, sub) -> frozenset[int]:
        sub = frozenset(sub)
        if self.identity not in sub:
            raise NotSubgroup("subset does not contain the identity")
        for a in sub:
            if self.inverse[a] not in sub:
                raise NotSubgroup(f"{self.names[a]}^-1 missing")
            for b in sub:
                if self.table[a][b] not in sub:
                    raise NotSubgroup(f"not closed: {self.names[a]}*{self.names[b]}")
        return sub

    def check_normal(self, sub) -> frozenset[int]:
        sub = self.check_subgroup(sub)
        for g in range(self.order):
            gi = self.inverse[g]
            for n in sub:
                if self.table[self.table[g][n]][gi] not in sub:
                    raise NotNormal(f"{self.names[g]} {self.names[n]} {self.names[g]}^-1 leaves the subgroup")
        return sub

    def parse_subset(self, spec: str) -> frozenset[int]:
        """``"A3"`` (a named subgroup), ``"G"``, or a literal like ``"{e,(12)}"``."""
        s = spec.strip()
        if s in self.subgroups:
            return self.indices(self.subgroups[s])
        if s in ("G", self.name):
            return frozenset(range(self.order))
        if s.startswith("{") and s.endswith("}"):
            body = s[1:-1].strip()
            parts = [p.strip() for p in body.split(",")] if body else []
            return self.indices(parts)
        if s in self.names:
            return self.indices([s])
        raise KeyError(f"cannot parse subgroup {spec!r} of {self.name}")

    def cosets(self, sub) -> list[tuple[int, ...]]:
        """Left cosets gN, ordered by their smallest element."""
        sub = frozenset(sub)
        seen, out = set(), []
        for g in range(self.order):
            if g in seen:
                continue
            c = tuple(sorted(self.table[g][n] for n in sub))
            seen.update(c)
            out.append(c)
        return out

    def quotient(self, normal) -> tuple["Group", list[int]]:
        """G/N together with the coset index of every element of G."""
        normal = self.check_normal(normal)
        cos = self.cosets(normal)
        where = [0] * self.order
        for k, c in enumerate(cos):
            for g in c:
                where[g] = k
        table = [[where[self.table[c[0]][d[0]]] for d in cos] for c in cos]
        names = [self.names[c[0]] + "N" if len(normal) > 1 else self.names[c[0]] for c in cos]
        if len(normal) > 1:
            names[where[self.identity]] = "N"
        return Group.from_table(names, table, name=f"{self.name}/N"), where


def _from_mul(name, elems, mul, names, subgroups=None) -> Group:
    idx = {x: i for i, x in enumerate(elems)}
    table = [[idx[mul(a, b)] for b in elems] for a in elems]
    return Group.from_table(names, table, name=name, subgroups=subgroups)


def cyclic(n: int) -> Group:
    names = ["e", "r"] + [f"r^{k}" for k in range(2, n)]
    names = names[:n]
    subs = {}
    for d in range(2, n):
        if n % d == 0:
            subs[f"C{d}"] = [names[k] for k in range(0, n, n // d)]
    return _from_mul(f"C{n}", list(range(n)), lambda a, b: (a + b) % n, names, subs)


def klein() -> Group:
    elems = [(0, 0), (1, 0), (0, 1), (1, 1)]
    return _from_mul("V4", elems, lambda a, b: ((a[0] + b[0]) % 2, (a[1] + b[1]) % 2),
                     ["e", "a", "b", "ab"], {"<a>": ["e", "a"], "<b>": ["e", "b"], "<ab>": ["e", "ab"]})


def _cycle_name(p) -> str:
    n = len(p)
    seen, parts = set(), []
    for i in range(n):
        if i in seen or p[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(str(j + 1))
            j = p[j]
        parts.append("(" + "".join(cyc) + ")")
    return "".join(parts) or "e"


def _compose(p, q):
    # (p*q)(i) = p(q(i)): apply q first
    return tuple(p[q[i]] for i in range(len(p)))


def _sign(p) -> int:
    s, seen = 1, set()
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        s *= (-1) ** (length - 1)
    return s


def symmetric(n: int) -> Group:
    perms = sorted(itertools.permutations(range(n)), key=lambda p: (_cycle_len_key(p), p))
    names = [_cycle_name(p) for p in perms]
    subs = {}
    if n == 3:
        subs = {"A3": ["e", "(123)", "(132)"]}
    if n == 4:
        subs = {"A4": [_cycle_name(p) for p in perms if _sign(p) == 1],
                "V4": ["e", "(12)(34)", "(13)(24)", "(14)(23)"]}
    return _from_mul(f"S{n}", perms, _compose, names, subs)


def _cycle_len_key(p):
    # identity, then transpositions, then longer cycles
    return sum(1 for i in range(len(p)) if p[i] != i)


def alternating4() -> Group:
    perms = sorted((p for p in itertools.permutations(range(4)) if _sign(p) == 1),
                   key=lambda p: (_cycle_len_key(p), p))
    names = [_cycle_name(p) for p in perms]
    return _from_mul("A4", perms, _compose, names, {"V4": ["e", "(12)(34)", "(13)(24)", "(14)(23)"]})


def dihedral(n: int) -> Group:
    """Order 2n, elements r^a s^b with s r s = r^-1."""
    elems = [(a, b) for b in range(2) for a in range(n)]

    def mul(x, y):
        a, b = x
        c, d = y
        return ((a + (c if b == 0 else -c)) % n, (b + d) % 2)

    def nm(x):
        a, b = x
        r = "" if a == 0 else ("r" if a == 1 else f"r^{a}")
        s = "s" if b else ""
        return (r + s) or "e"

    names = [nm(x) for x in elems]
    subs = {f"C{n}": [nm((a, 0)) for a in range(n)]}
    if n % 2 == 0:
        subs["Z"] = ["e", nm((n // 2, 0))]
        subs["V"] = ["e", nm((n // 2, 0)), "s", nm((n // 2, 1))]
    return _from_mul(f"D{n}", elems, mul, names, subs)


def quaternion() -> Group:
    # units +-1, +-i, +-j, +-k as (sign, axis)
    axes = "1ijk"
    prod = {("1", x): (1, x) for x in axes}
    prod.update({(x, "1"): (1, x) for x in axes})
    prod.update({("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
                 ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
                 ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")})
    elems = [(s, a) for a in axes for s in (1, -1)]

    def mul(x, y):
        s, a = prod[(x[1], y[1])]
        return (x[0] * y[0] * s, a)

    names = [("" if s == 1 else "-") + a for s, a in elems]
    subs = {"Z": ["1", "-1"], "<i>": ["1", "-1", "i", "-i"], "<j>": ["1", "-1", "j", "-j"]}
    return _from_mul("Q8", elems, mul, names, subs)


def direct_product(g: Group, h: Group) -> Group:
    n, m = g.order, h.order
    names = [f"({a}|{b})" for a in g.names for b in h.names]
    table = [[g.table[i // m][j // m] * m + h.table[i % m][j % m] for j in range(n * m)]
             for i in range(n * m)]
    return Group.from_table(names, table, name=f"{g.name}x{h.name}")
