"""Upright long-knot diagrams: data model, UDF text format, validation, kinks.

An upright diagram with ``n`` crossings has edges ``1 .. 2n+1`` numbered
along the orientation.  Each crossing is recorded as ``(s, i, j)``: its sign,
the incoming over-strand edge and the incoming under-strand edge.  Each edge
``k`` carries an integer rotation number ``phi_k``.

UDF ("upright diagram file") example, a one-crossing kink::

    n 1
    c + 2 1
    phi 2 1
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping

__all__ = [
    "Crossing",
    "UprightDiagram",
    "Chirality",
    "DiagramSyntaxError",
    "DiagramValidationError",
    "EdgeOutOfRange",
    "Violation",
    "BadSign",
    "EdgeOutOfBounds",
    "SameEdgeTwice",
    "DuplicateEdgeUse",
    "MissingEdgeUse",
    "RotationOutOfBounds",
    "ParityViolation",
    "parse",
    "serialize",
    "validate",
    "kink_insert",
    "kink_variants",
    "KINK_ROTATIONS",
]


@dataclass(frozen=True)
class Crossing:
    sign: int
    over: int
    under: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.sign, self.over, self.under)


@dataclass(frozen=True)
class UprightDiagram:
    """Immutable diagram; build with :meth:`make` or :func:`parse`.

    ``rotations`` holds only the nonzero rotation numbers as sorted
    ``(edge, phi)`` pairs so that equal diagrams compare and hash equal.
    """

    crossings: tuple[Crossing, ...] = ()
    rotations: tuple[tuple[int, int], ...] = field(default=())

    @classmethod
    def make(cls, crossings: Iterable = (), rotations: Mapping[int, int] | None = None):
        cs = tuple(c if isinstance(c, Crossing) else Crossing(*c) for c in crossings)
        rot = tuple(sorted((int(k), int(v)) for k, v in (rotations or {}).items() if v))
        return cls(cs, rot)

    @property
    def n(self) -> int:
        return len(self.crossings)

    @property
    def edge_count(self) -> int:
        return 2 * self.n + 1

    @property
    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)

    @property
    def total_rotation(self) -> int:
        return sum(v for _, v in self.rotations)

    def rotation(self, k: int) -> int:
        return dict(self.rotations).get(k, 0)

    def rotation_map(self) -> dict[int, int]:
        return dict(self.rotations)

    def crossing_tuples(self) -> list[tuple[int, int, int]]:
        return [c.as_tuple() for c in self.crossings]

    def is_valid(self) -> bool:
        return not validate(self)

    def check(self) -> "UprightDiagram":
        problems = validate(self)
        if problems:
            raise DiagramValidationError(problems)
        return self

    def __str__(self):
        return serialize(self)


# ---------------------------------------------------------------- violations


class Violation:
    """Base class of the findings returned by :func:`validate`."""

    def __str__(self):
        return self.describe()


@dataclass(frozen=True)
class BadSign(Violation):
    crossing: int
    sign: int

    def describe(self):
        return f"crossing {self.crossing}: sign {self.sign} is not +1 or -1"


@dataclass(frozen=True)
class EdgeOutOfBounds(Violation):
    crossing: int
    edge: int
    limit: int

    def describe(self):
        return f"crossing {self.crossing}: edge {self.edge} outside 1..{self.limit}"


@dataclass(frozen=True)
class SameEdgeTwice(Violation):
    crossing: int
    edge: int

    def describe(self):
        return f"crossing {self.crossing}: over and under edge are both {self.edge}"


@dataclass(frozen=True)
class DuplicateEdgeUse(Violation):
    edge: int

    def describe(self):
        return f"edge {self.edge} enters more than one crossing"


@dataclass(frozen=True)
class MissingEdgeUse(Violation):
    edge: int

    def describe(self):
        return f"edge {self.edge} enters no crossing"


@dataclass(frozen=True)
class RotationOutOfBounds(Violation):
    edge: int
    limit: int

    def describe(self):
        return f"rotation given for edge {self.edge} outside 1..{self.limit}"


@dataclass(frozen=True)
class ParityViolation(Violation):
    total_rotation: int
    writhe: int

    def describe(self):
        return (
            f"total rotation {self.total_rotation} plus writhe {self.writhe} is odd"
        )


class DiagramSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.message = message


class DiagramValidationError(ValueError):
    """``violations`` lists what is wrong; ``lines`` maps some of them to source lines."""

    def __init__(self, violations, lines=None):
        self.violations = list(violations)
        self.lines = dict(lines or {})
        parts = []
        for v in self.violations:
            line = self.lines.get(v)
            parts.append(f"line {line}: {v.describe()}" if line else v.describe())
        super().__init__("; ".join(parts))


class EdgeOutOfRange(ValueError):
    pass


def validate(D: UprightDiagram) -> list[Violation]:
    """All violated diagram invariants; empty iff ``D`` is well formed.

    Planar realizability is not checked: any combinatorially consistent
    data is accepted, and for non-realizable data the invariants computed
    from it carry no topological meaning.
    """
    out: list[Violation] = []
    n = D.n
    last_in = 2 * n  # edge 2n+1 leaves the diagram and enters nothing
    uses: Counter = Counter()
    for idx, c in enumerate(D.crossings, 1):
        if c.sign not in (1, -1):
            out.append(BadSign(idx, c.sign))
        for e in (c.over, c.under):
            if not 1 <= e <= last_in:
                out.append(EdgeOutOfBounds(idx, e, last_in))
        if c.over == c.under:
            out.append(SameEdgeTwice(idx, c.over))
        uses[c.over] += 1
        if c.under != c.over:
            uses[c.under] += 1
    for e in sorted(uses):
        if uses[e] > 1 and 1 <= e <= last_in:
            out.append(DuplicateEdgeUse(e))
    for e in range(1, last_in + 1):
        if not uses[e]:
            out.append(MissingEdgeUse(e))
    for k, _ in D.rotations:
        if not 1 <= k <= D.edge_count:
            out.append(RotationOutOfBounds(k, D.edge_count))
    if (D.total_rotation + D.writhe) % 2:
        out.append(ParityViolation(D.total_rotation, D.writhe))
    return out


# --------------------------------------------------------------------- UDF


def _tokens(line: str):
    """Split on whitespace, keeping 1-based start columns."""
    col = 0
    out = []
    for tok in line.split():
        col = line.index(tok, col)
        out.append((tok, col + 1))
        col += len(tok)
    return out


def _int(tok, col, lineno, what):
    try:
        return int(tok)
    except ValueError:
        raise DiagramSyntaxError(f"expected integer {what}, got {tok!r}", lineno, col) from None


def parse(text: str) -> UprightDiagram:
    """Parse and validate UDF text.

    Raises :class:`DiagramSyntaxError` (with line and column) for malformed
    text and :class:`DiagramValidationError` for a well-formed file whose
    data violates the diagram invariants.
    """
    n = None
    crossings: list[Crossing] = []
    rotations: dict[int, int] = {}
    crossing_lines: list[int] = []
    rotation_lines: dict[int, int] = {}
    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = _tokens(raw.split("#", 1)[0])
        if not toks:
            continue
        kw, kcol = toks[0]
        if n is None:
            if kw != "n":
                raise DiagramSyntaxError("file must start with 'n <count>'", lineno, kcol)
            if len(toks) != 2:
                raise DiagramSyntaxError("'n' takes exactly one argument", lineno, kcol)
            n = _int(toks[1][0], toks[1][1], lineno, "crossing count")
            if n < 0:
                raise DiagramSyntaxError("crossing count must be >= 0", lineno, toks[1][1])
            continue
        if kw == "c":
            if rotations:
                raise DiagramSyntaxError("'c' line after 'phi' lines", lineno, kcol)
            if len(crossings) == n:
                raise DiagramSyntaxError(f"more than {n} crossing lines", lineno, kcol)
            if len(toks) != 4:
                raise DiagramSyntaxError("expected 'c <+|-> <i> <j>'", lineno, kcol)
            stok, scol = toks[1]
            if stok not in ("+", "-"):
                raise DiagramSyntaxError(f"sign must be '+' or '-', got {stok!r}", lineno, scol)
            i = _int(toks[2][0], toks[2][1], lineno, "over edge")
            j = _int(toks[3][0], toks[3][1], lineno, "under edge")
            crossings.append(Crossing(1 if stok == "+" else -1, i, j))
            crossing_lines.append(lineno)
        elif kw == "phi":
            if len(crossings) != n:
                raise DiagramSyntaxError(
                    f"expected {n} crossing lines before 'phi', got {len(crossings)}", lineno, kcol
                )
            if len(toks) != 3:
                raise DiagramSyntaxError("expected 'phi <k> <int>'", lineno, kcol)
            k = _int(toks[1][0], toks[1][1], lineno, "edge")
            v = _int(toks[2][0], toks[2][1], lineno, "rotation")
            if k in rotations:
                raise DiagramSyntaxError(f"duplicate rotation for edge {k}", lineno, toks[1][1])
            rotations[k] = v
            rotation_lines[k] = lineno
        elif kw == "n":
            raise DiagramSyntaxError("duplicate 'n' line", lineno, kcol)
        else:
            raise DiagramSyntaxError(f"unknown record {kw!r}", lineno, kcol)
    if n is None:
        raise DiagramSyntaxError("missing 'n <count>' line", max(lineno, 1))
    if len(crossings) != n:
        raise DiagramSyntaxError(
            f"expected {n} crossing lines, got {len(crossings)}", max(lineno, 1)
        )
    D = UprightDiagram.make(crossings, rotations)
    problems = validate(D)
    if problems:
        raise DiagramValidationError(problems, _source_lines(problems, D, crossing_lines, rotation_lines))
    return D


def _source_lines(problems, D, crossing_lines, rotation_lines):
    """Best-effort line numbers for violations that belong to a single record."""
    out = {}
    for v in problems:
        if hasattr(v, "crossing"):
            out[v] = crossing_lines[v.crossing - 1]
        elif isinstance(v, DuplicateEdgeUse):
            users = [k for k, c in enumerate(D.crossings) if v.edge in (c.over, c.under)]
            out[v] = crossing_lines[users[1]]
        elif isinstance(v, RotationOutOfBounds):
            out[v] = rotation_lines[v.edge]
    return out


def serialize(D: UprightDiagram) -> str:
    lines = [f"n {D.n}"]
    lines += [f"c {'+' if c.sign > 0 else '-'} {c.over} {c.under}" for c in D.crossings]
    lines += [f"phi {k} {v}" for k, v in D.rotations]
    return "\n".join(lines) + "\n"


# -------------------------------------------------------------------- kinks


class Chirality(enum.Enum):
    """Which pass through the new crossing comes first along the strand.

    ``OVER_FIRST`` creates ``(s, k+1, k)``; ``UNDER_FIRST`` creates
    ``(s, k, k+1)``, ``k`` being the edge that receives the kink.
    """

    OVER_FIRST = "over_first"
    UNDER_FIRST = "under_first"


# Rotation increments for the loop edge k+1 and the exit edge k+2.  Found by
# exhaustive search over {-1,0,1}^2 (increments summing to +-1), keeping
# those that leave Delta and rho1 of the unknot unchanged, and confirmed
# by invariance at every edge of the catalog knots (see tests/test_kink_table.py).
KINK_ROTATIONS: dict[tuple[int, Chirality], tuple[int, int]] = {
    (1, Chirality.OVER_FIRST): (1, 0),
    (-1, Chirality.OVER_FIRST): (-1, 0),
    (1, Chirality.UNDER_FIRST): (-1, 0),
    (-1, Chirality.UNDER_FIRST): (1, 0),
}


def kink_insert(
    D: UprightDiagram,
    k: int,
    sign: int,
    chirality: Chirality | str = Chirality.OVER_FIRST,
    rotations: tuple[int, int] | None = None,
) -> UprightDiagram:
    """Insert a one-crossing curl into edge ``k``.

    Edge ``k`` becomes three edges ``k`` (before the curl), ``k+1`` (the
    loop) and ``k+2`` (after it).  Old edges ``>= k`` move up by two, since
    the crossing old edge ``k`` used to enter is now entered by ``k+2``.
    The old rotation of ``k`` stays on the first piece.  ``rotations``
    overrides the increments of :data:`KINK_ROTATIONS`; it exists for the
    search that produced that table.
    """
    chirality = Chirality(chirality)
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if not 1 <= k <= D.edge_count:
        raise EdgeOutOfRange(f"edge {k} outside 1..{D.edge_count}")

    def moved(e: int) -> int:
        return e + 2 if e >= k else e

    crossings = [Crossing(c.sign, moved(c.over), moved(c.under)) for c in D.crossings]
    if chirality is Chirality.OVER_FIRST:
        crossings.append(Crossing(sign, k + 1, k))
    else:
        crossings.append(Crossing(sign, k, k + 1))
    rot: dict[int, int] = {}
    for e, v in D.rotations:
        tgt = e if e <= k else e + 2
        rot[tgt] = rot.get(tgt, 0) + v
    a, b = rotations if rotations is not None else KINK_ROTATIONS[(sign, chirality)]
    rot[k + 1] = rot.get(k + 1, 0) + a
    rot[k + 2] = rot.get(k + 2, 0) + b
    return UprightDiagram.make(crossings, rot)


def kink_variants(D: UprightDiagram):
    """Every single-kink diagram obtainable from ``D``: all edges, signs, chiralities."""
    for k in range(1, D.edge_count + 1):
        for sign in (1, -1):
            for chi in Chirality:
                yield (k, sign, chi), kink_insert(D, k, sign, chi)
