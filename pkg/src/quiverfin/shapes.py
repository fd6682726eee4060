"""Concrete Euclidean quivers and other named settings used by the corpus and tests."""

from __future__ import annotations

import random

from .core import DimVector, Quiver, QuiverSetting
from .euclid import E_TABLE, EuclideanType, radical_vector


def euclidean_quiver(t: EuclideanType) -> Quiver:
    """Standard orientation of type ``t``; vertex names are the pattern positions."""
    if t.family == "A":
        if t.n == 0:
            return Quiver(("c0",), (("c0", "c0"),))
        if t.n == 1:
            return Quiver(("c0", "c1"), (("c0", "c1"), ("c0", "c1")))
        names = tuple(f"c{k}" for k in range(t.n + 1))
        return Quiver(names, tuple((names[k], names[(k + 1) % len(names)])
                                   for k in range(len(names))))
    if t.family == "D":
        spine = [f"s{k + 1}" for k in range(t.n - 3)]
        if t.n == 4:
            leaves = [("l1", "s1"), ("l2", "s1"), ("l3", "s1"), ("l4", "s1")]
        else:
            leaves = [("l1", spine[0]), ("l2", spine[0]), ("l3", spine[-1]), ("l4", spine[-1])]
        names = ("l1", "l2") + tuple(spine) + ("l3", "l4")
        arrows = tuple(leaves) + tuple(zip(spine, spine[1:]))
        return Quiver(names, arrows)
    _, arms = E_TABLE[t.n]
    names, arrows = ["c"], []
    for k, arm in enumerate(arms):
        prev = "c"
        for j in range(len(arm)):
            v = f"a{k + 1}_{j + 1}"
            names.append(v)
            arrows.append((v, prev))
            prev = v
    return Quiver(tuple(names), tuple(arrows))


def euclidean_types(max_vertices: int = 9) -> list[EuclideanType]:
    types = [EuclideanType("A", n) for n in range(max_vertices)]
    types += [EuclideanType("D", n) for n in range(4, max_vertices)]
    types += [EuclideanType("E", n) for n in (6, 7, 8) if n + 1 <= max_vertices]
    return types


def radical_setting(t: EuclideanType) -> QuiverSetting:
    quiver = euclidean_quiver(t)
    return QuiverSetting(quiver, radical_vector(t, quiver))


def reorient(quiver: Quiver, rng: random.Random) -> Quiver:
    """Flip each arrow independently with probability one half."""
    return Quiver(quiver.vertices,
                  tuple((t, s) if rng.random() < 0.5 else (s, t) for s, t in quiver.arrows))


def counterexample() -> QuiverSetting:
    """Weights 2, 1, 1 on the sources and 1, 2 on the targets; representation finite,
    yet it violates the arrow-degree condition c3."""
    quiver = Quiver(("t1", "t2", "t3", "b1", "b2"),
                    (("t1", "b1"), ("t1", "b2"), ("t2", "b2"), ("t3", "b2")))
    return QuiverSetting(quiver, DimVector({"t1": 2, "t2": 1, "t3": 1, "b1": 1, "b2": 2}))


def setting(vertices, arrows, dims) -> QuiverSetting:
    """Shorthand: ``setting("ab", ["ab", "ab"], (1, 1))``."""
    vertices = tuple(vertices)
    return QuiverSetting(Quiver(vertices, tuple((a[0], a[1]) for a in arrows)),
                         DimVector(zip(vertices, dims)))
