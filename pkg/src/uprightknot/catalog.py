"""Bundled example diagrams.

Fixtures come from two sources: planar-diagram codes converted by hand to
upright form (the ``*-a`` entries and their relabelled ``*-b`` twins), and
closures of braid words via :func:`braid_closure`.  Each entry records the
knot it represents, so diagrams of the same knot can be grouped for
invariance checks.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .diagram import Chirality, UprightDiagram, kink_insert, parse


class UnknownName(KeyError):
    pass


@dataclass(frozen=True)
class Fixture:
    name: str
    knot: str
    text: str
    source: str

    @property
    def diagram(self) -> UprightDiagram:
        return parse(self.text)


def braid_closure(word, strands: int) -> UprightDiagram:
    """Upright long-knot diagram of the closure of a braid word.

    ``word`` lists generators as signed integers, ``k`` for sigma_k and
    ``-k`` for its inverse.  Strands run upward; the closing arcs pass on
    the right and the long knot starts at the bottom of position 1.  In
    sigma_k the strand moving from position k to k+1 passes over and the
    crossing is positive.  Each closing arc turns through a cap and a cup
    on the right, contributing rotation -1 to the edge that traverses it.
    The closure must be a knot (a single component).
    """
    if strands < 1:
        raise ValueError("need at least one strand")
    for g in word:
        if not 1 <= abs(g) < strands:
            raise ValueError(f"generator {g} outside 1..{strands - 1}")
    if _cycle_length(word, strands) != strands:
        raise ValueError("braid closure is a link, not a knot")
    over: dict[int, int] = {}
    under: dict[int, int] = {}
    rot: dict[int, int] = {}
    edge, pos = 1, 1
    while True:
        for t, g in enumerate(word):
            k = abs(g)
            if pos not in (k, k + 1):
                continue
            left = pos == k
            (over if left == (g > 0) else under)[t] = edge
            edge += 1
            pos = k + 1 if left else k
        if pos == 1:
            break
        rot[edge] = rot.get(edge, 0) - 1
    crossings = [(1 if g > 0 else -1, over[t], under[t]) for t, g in enumerate(word)]
    return UprightDiagram.make(crossings, rot).check()


def _cycle_length(word, strands: int) -> int:
    perm = list(range(strands))
    for g in word:
        k = abs(g)
        perm[k - 1], perm[k] = perm[k], perm[k - 1]
    where = {strand: p for p, strand in enumerate(perm)}
    x, length = 0, 0
    while True:
        x = where[x]
        length += 1
        if x == 0:
            return length


def random_braid_knot(crossings: int, strands: int, seed: int = 0) -> UprightDiagram:
    """Closure of a random braid word that closes to a knot.

    The closure permutation must be a full cycle, which is an odd
    permutation exactly when ``strands`` is even; ``crossings`` and
    ``strands - 1`` must therefore have the same parity.
    """
    if (crossings - strands + 1) % 2:
        raise ValueError("crossings and strands - 1 must have equal parity")
    rng = random.Random(seed)
    while True:
        word = [rng.choice((1, -1)) * rng.randint(1, strands - 1) for _ in range(crossings)]
        if _cycle_length(word, strands) == strands:
            return braid_closure(word, strands)


_PD = {
    "trefoil-a": ("trefoil", "n 3\nc - 4 1\nc - 6 3\nc - 2 5\nphi 4 -1\n"),
    "figure-eight-a": ("figure-eight", "n 4\nc + 1 4\nc + 5 8\nc - 3 6\nc - 7 2\nphi 4 -1\nphi 7 -1\n"),
    "figure-eight-b": ("figure-eight", "n 4\nc + 3 6\nc + 7 2\nc - 5 8\nc - 1 4\nphi 4 1\nphi 7 1\n"),
    "cinquefoil": (
        "cinquefoil",
        "n 5\nc - 6 1\nc - 8 3\nc - 10 5\nc - 2 7\nc - 4 9\nphi 6 -1\n",
    ),
    "three-twist-a": (
        "three-twist",
        "n 5\nc - 4 1\nc - 8 3\nc - 10 5\nc - 6 9\nc - 2 7\nphi 4 -1\nphi 9 1\nphi 10 -1\n",
    ),
    "three-twist-b": (
        "three-twist",
        "n 5\nc - 6 3\nc - 10 5\nc - 2 7\nc - 8 1\nc - 4 9\nphi 6 -1\nphi 7 1\nphi 8 -1\n",
    ),
    "stevedore-a": (
        "stevedore",
        "n 6\nc - 4 1\nc - 10 7\nc + 8 3\nc + 2 9\nc - 12 5\nc - 6 11\n"
        "phi 4 -1\nphi 9 -1\nphi 11 1\nphi 12 -1\n",
    ),
    "stevedore-b": (
        "stevedore",
        "n 6\nc - 6 3\nc - 12 9\nc + 10 5\nc + 4 11\nc - 2 7\nc - 8 1\n"
        "phi 6 -1\nphi 7 1\nphi 8 -1\nphi 11 -1\n",
    ),
}

_BRAIDS = {
    "trefoil-b": ("trefoil", (-1, -1, -1, -2), 3),
    "figure-eight-c": ("figure-eight", (1, -2, 1, -2), 3),
}

_KINKS = {
    "kink": (1, Chirality.OVER_FIRST),
    "kink-neg": (-1, Chirality.OVER_FIRST),
    "kink-pos-under": (1, Chirality.UNDER_FIRST),
    "kink-neg-under": (-1, Chirality.UNDER_FIRST),
}


def _build() -> dict[str, Fixture]:
    out = {"unknot": Fixture("unknot", "unknot", "n 0\n", "empty diagram")}
    unknot = parse("n 0\n")
    for name, (sign, chi) in _KINKS.items():
        D = kink_insert(unknot, 1, sign, chi)
        out[name] = Fixture(name, "unknot", str(D), f"curl ({sign:+d}, {chi.value}) on the unknot")
    for name, (knot, text) in _PD.items():
        out[name] = Fixture(name, knot, str(parse(text)), "planar diagram code")
    for name, (knot, word, strands) in _BRAIDS.items():
        D = braid_closure(word, strands)
        out[name] = Fixture(name, knot, str(D), f"closure of braid {list(word)} on {strands} strands")
    return dict(sorted(out.items()))


CATALOG: dict[str, Fixture] = _build()


def names() -> list[str]:
    return list(CATALOG)


def get(name: str) -> Fixture:
    try:
        return CATALOG[name]
    except KeyError:
        raise UnknownName(name) from None


def groups() -> dict[str, list[Fixture]]:
    """Fixtures grouped by the knot they represent."""
    out: dict[str, list[Fixture]] = {}
    for f in CATALOG.values():
        out.setdefault(f.knot, []).append(f)
    return out
