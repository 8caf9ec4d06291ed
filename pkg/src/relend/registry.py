"""Builtin Hopf algebras, groups and quotient maps, addressed by short names."""

from __future__ import annotations

from functools import lru_cache

from . import groups as G
from .exactla import Mat
from .hopf import (HopfAlgebra, HopfMap, counit_map, function_algebra, group_algebra, identity_map,
                   projection_first_factor, quotient_by_normal_subgroup, restriction_map, sweedler,
                   tensor_hopf, trivial_hopf)

GROUPS = {
    "c2": lambda: G.cyclic(2),
    "c3": lambda: G.cyclic(3),
    "c4": lambda: G.cyclic(4),
    "v4": G.klein,
    "s3": lambda: G.symmetric(3),
    "d4": lambda: G.dihedral(4),
    "q8": G.quaternion,
    "a4": G.alternating4,
    "s4": lambda: G.symmetric(4),
}

# s4 is a group only: its adjoint algebra is 24-dimensional, beyond desk scale here
HOPF_NAMES = ("k", "c2", "c3", "c4", "v4", "s3", "d4", "q8", "a4", "fn-s3", "sweedler",
              "c2-c2", "sweedler-c2", "s3-c2")


@lru_cache(maxsize=None)
def group(name: str) -> G.Group:
    try:
        return GROUPS[name]()
    except KeyError:
        raise KeyError(f"unknown builtin group {name!r}; known: {', '.join(GROUPS)}") from None


@lru_cache(maxsize=None)
def hopf(name: str) -> HopfAlgebra:
    if name == "k":
        return trivial_hopf()
    if name in GROUPS and name in HOPF_NAMES:
        return group_algebra(group(name))
    if name == "fn-s3":
        return function_algebra(group("s3"))
    if name == "sweedler":
        return sweedler()
    if name == "c2-c2":
        return tensor_hopf(hopf("c2"), hopf("c2"))
    if name == "sweedler-c2":
        return tensor_hopf(hopf("sweedler"), hopf("c2"))
    if name == "s3-c2":
        return tensor_hopf(hopf("s3"), hopf("c2"))
    raise KeyError(f"unknown builtin Hopf algebra {name!r}; known: {', '.join(HOPF_NAMES)}")


def sweedler_to_c2() -> HopfMap:
    """g -> g, x -> 0."""
    return HopfMap(hopf("sweedler"), hopf("c2"), Mat.from_rows([[1, 0, 0, 0], [0, 1, 0, 0]]), name="sweedler->kC2")


def _first(h1: str, h2: str, name: str) -> HopfMap:
    return projection_first_factor(hopf(h1), hopf(h2), hopf(name))


PAIRS = {
    "s3/A3": lambda: quotient_by_normal_subgroup(group("s3"), "A3"),
    "c4/C2": lambda: quotient_by_normal_subgroup(group("c4"), "C2"),
    "d4/Z": lambda: quotient_by_normal_subgroup(group("d4"), "Z"),
    "q8/Z": lambda: quotient_by_normal_subgroup(group("q8"), "Z"),
    "a4/V4": lambda: quotient_by_normal_subgroup(group("a4"), "V4"),
    "sweedler/c2": sweedler_to_c2,
    "fn-s3/fn-c2": lambda: restriction_map(group("s3"), "{e,(12)}"),
    "c2-c2/first": lambda: _first("c2", "c2", "c2-c2"),
    "sweedler-c2/first": lambda: _first("sweedler", "c2", "sweedler-c2"),
    "s3-c2/first": lambda: _first("s3", "c2", "s3-c2"),
}


def pair_source(name: str) -> str:
    """Registry name of the Hopf algebra a builtin pair starts at."""
    return name.split("/", 1)[0]


@lru_cache(maxsize=None)
def pair(name: str) -> HopfMap:
    if name.endswith("/counit"):
        return counit_map(hopf(pair_source(name)))
    if name.endswith("/id"):
        return identity_map(hopf(pair_source(name)))
    try:
        p = PAIRS[name]()
    except KeyError:
        raise KeyError(f"unknown builtin pair {name!r}; known: {', '.join(PAIRS)}") from None
    src = hopf(pair_source(name))
    if p.source is src:
        return p
    if not p.source.structure_equal(src):
        raise AssertionError(f"pair {name} does not start at {pair_source(name)}")
    # share the cached source instance so identity checks stay cheap
    return HopfMap(src, p.target, p.matrix, p.name)


def all_pairs(include_degenerate: bool = True) -> list[str]:
    names = list(PAIRS)
    if include_degenerate:
        names += [f"{h}/counit" for h in HOPF_NAMES] + [f"{h}/id" for h in ("c2", "s3", "sweedler")]
    return names
