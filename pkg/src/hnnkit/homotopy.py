"""Row-structured cellular homotopies built from conjugation cells.

A push homotopy starts from an edge path ``s`` of base letters at a
vertex v.  Row k is the path labelled phi^k(s) starting at v t^k, and the
strip between rows k and k+1 holds one conjugation cell per letter of
row k.  Since every cell of that strip spans levels [P(v)+k, P(v)+k+1],
any bounded set of levels meets only finitely many rows; verify_levels
checks exactly this for the finite truncation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .hnn import HnnPresentation, level
from .words import Word, reduce

__all__ = [
    "HCell",
    "CellularHomotopy",
    "LevelCertificate",
    "LevelViolation",
    "ContractViolation",
    "build_push",
    "build_string",
    "build_corner",
    "verify_levels",
]


class LevelViolation(AssertionError):
    def __init__(self, where: str, detail: str):
        super().__init__(f"{where}: {detail}")
        self.where = where


class ContractViolation(ValueError):
    pass


@dataclass(frozen=True)
class HCell:
    """A conjugation cell read from ``base``: x t phi(x)^-1 t^-1 for a signed letter x."""

    base: str
    letter: str

    def boundary(self, P: HnnPresentation) -> str:
        t = P.stable
        return self.letter + t + str(P.phi(self.letter).inverse()) + t.upper()

    def to_json(self) -> dict:
        return {"base": self.base, "letter": self.letter}


@dataclass
class CellularHomotopy:
    kind: str
    start: Word                  # left end of the top path
    labels: list[str]            # row k label; row 0 is the top path
    cells: list[list[HCell]]     # cells[k] sits between rows k and k+1
    stage1: list[HCell] = field(default_factory=list)   # corner slides
    stage1_path: str = ""        # the original corner path
    interval: Optional[tuple[int, int]] = None
    top_start: Optional[Word] = None   # where the string part starts (corner)

    @property
    def rows(self) -> int:
        return len(self.cells)

    def row_base(self, k: int, P: HnnPresentation) -> Word:
        s = self.top_start if self.top_start is not None else self.start
        return s * Word(P.stable * k)

    def cell_counts(self) -> list[int]:
        return [len(r) for r in self.cells]

    def rails(self, P: HnnPresentation) -> tuple[str, str]:
        return P.stable * self.rows, P.stable * self.rows

    def to_json(self, P: HnnPresentation) -> dict:
        return {
            "kind": self.kind,
            "start": str(self.start),
            "top_start": str(self.top_start) if self.top_start is not None else None,
            "labels": list(self.labels),
            "cells": [[c.to_json() for c in row] for row in self.cells],
            "stage1": [c.to_json() for c in self.stage1],
            "stage1_path": self.stage1_path,
            "interval": list(self.interval) if self.interval else None,
            "boundaries": [[c.boundary(P) for c in row] for row in self.cells],
        }

    @classmethod
    def from_json(cls, d: dict) -> "CellularHomotopy":
        return cls(d["kind"], Word(d["start"]), list(d["labels"]),
                   [[HCell(c["base"], c["letter"]) for c in row] for row in d["cells"]],
                   [HCell(c["base"], c["letter"]) for c in d.get("stage1", [])],
                   d.get("stage1_path", ""), tuple(d["interval"]) if d.get("interval") else None,
                   Word(d["top_start"]) if d.get("top_start") is not None else None)


def _strip(base: Word, label: str, P: HnnPresentation) -> list[HCell]:
    cells = []
    at = str(base)
    for c in label:
        cells.append(HCell(at, c))
        at = str(Word(at + c))
    return cells


def build_string(s: Union[Word, str], K: int, P: HnnPresentation, v: Union[Word, str] = "") -> CellularHomotopy:
    """Concatenate push homotopies along the base-letter path s (read from v)."""
    s = str(s)
    if not s:
        raise ContractViolation("the path must be nonempty")
    if K < 1:
        raise ContractViolation("need at least one row")
    gens = set(P.alphabet.letters())
    for c in s:
        if c not in gens:
            raise ContractViolation(f"edge {c!r} is not a base edge")
    v = reduce(v)
    labels = [s]
    cells = []
    for k in range(K):
        cells.append(_strip(v * Word(P.stable * k), labels[-1], P))
        labels.append(str(P.phi(Word(labels[-1]))))
    return CellularHomotopy("string", v, labels[:K + 1], cells)


def build_push(v: Union[Word, str], a: str, K: int, P: HnnPresentation) -> CellularHomotopy:
    if a not in P.alphabet.letters():
        raise ContractViolation(f"{a!r} is not a base letter")
    h = build_string(a, K, P, v)
    h.kind = "push"
    return h


def build_corner(s: str, K: int, P: HnnPresentation, interval: Optional[tuple[int, int]] = None,
                 v: Union[Word, str] = "") -> CellularHomotopy:
    """Slide every base edge of s up to the top of the interval, then push the result.

    ``interval`` is in absolute levels; by default it is the level range
    of s itself.
    """
    v = reduce(v)
    t, T = P.stable, P.stable.upper()
    allowed = set(P.alphabet.letters(with_stable=True))
    for c in s:
        if c not in allowed:
            raise ContractViolation(f"bad edge label {c!r}")
    lv = level(v, t)
    levels = [lv]
    for c in s:
        levels.append(levels[-1] + (1 if c == t else -1 if c == T else 0))
    lo, hi = interval if interval is not None else (min(levels), max(levels))
    if min(levels) < lo or max(levels) > hi:
        raise ContractViolation(f"path levels {min(levels)}..{max(levels)} leave the interval [{lo}, {hi}]")

    # stage 1: lift each base letter one level at a time
    stage1: list[HCell] = []
    path = s
    start = str(v)
    while True:
        pos, cur = None, lv
        for i, c in enumerate(path):
            if c not in (t, T) and cur < hi:
                pos = i
                break
            cur += 1 if c == t else -1 if c == T else 0
        if pos is None:
            break
        x = path[pos]
        stage1.append(HCell(str(Word(start + path[:pos])), x))
        path = str(Word(path[:pos] + t + str(P.phi(x)) + T + path[pos + 1:]))
    # now every base letter sits at level hi
    head = len(path) - len(path.lstrip(t))
    tail = len(path) - len(path.rstrip(T))
    body = path[head:len(path) - tail]
    if any(c in (t, T) for c in body):
        raise AssertionError("slid path is not of the form t^i W t^-j")
    top_start = v * Word(t * head)
    if not body:
        h = CellularHomotopy("corner", v, [""] * (K + 1), [[] for _ in range(K)])
    else:
        h = build_string(body, K, P, top_start)
    h.kind = "corner"
    h.start = v
    h.top_start = top_start
    h.stage1 = stage1
    h.stage1_path = s
    h.interval = (lo, hi)
    return h


@dataclass(frozen=True)
class LevelCertificate:
    base_level: int
    intervals: list[tuple[int, int]]       # relative to base_level, one per row strip
    stage1_interval: Optional[tuple[int, int]]
    properness: list[int]                  # properness[j]: last row meeting level base+j

    def statement(self) -> str:
        return ("cells meeting levels <= base+L lie in rows 0..L for every L <= "
                f"{len(self.intervals)}")

    def to_json(self) -> dict:
        return {"base_level": self.base_level, "intervals": [list(x) for x in self.intervals],
                "stage1_interval": list(self.stage1_interval) if self.stage1_interval else None,
                "properness": self.properness, "statement": self.statement()}


def _cell_levels(c: HCell, P: HnnPresentation) -> list[int]:
    lv = level(c.base, P.stable)
    out = [lv]
    for ch in c.boundary(P):
        lv += 1 if ch == P.stable else -1 if ch == P.stable.upper() else 0
        out.append(lv)
    return out


def verify_levels(H: CellularHomotopy, P: HnnPresentation) -> LevelCertificate:
    """Check rows, cells and the phi-recurrence; raise LevelViolation naming the culprit."""
    t = P.stable
    base_level = level(H.row_base(0, P), t)
    for k in range(len(H.labels) - 1):
        want = str(P.phi(Word(H.labels[k])))
        if H.labels[k + 1] != want:
            raise LevelViolation(f"row {k + 1}", f"label {H.labels[k + 1]!r} is not phi(row {k}) = {want!r}")
    for k in range(len(H.labels)):
        rb = H.row_base(k, P)
        if level(rb, t) != base_level + k:
            raise LevelViolation(f"row {k}", "row base at the wrong level")
    intervals = []
    last_row_at = {}
    for k, row in enumerate(H.cells):
        expect = _strip(H.row_base(k, P), H.labels[k], P)
        for i, c in enumerate(row):
            lv = _cell_levels(c, P)
            if min(lv) < base_level + k or max(lv) > base_level + k + 1:
                raise LevelViolation(f"cell {i} of row {k}",
                                     f"levels {min(lv)}..{max(lv)} outside [{base_level + k}, {base_level + k + 1}]")
            if i >= len(expect) or c != expect[i]:
                raise LevelViolation(f"cell {i} of row {k}", "cell does not sit on the row path")
            for x in set(lv):
                last_row_at[x - base_level] = max(last_row_at.get(x - base_level, -1), k)
        if len(row) != len(expect):
            raise LevelViolation(f"row {k}", f"{len(row)} cells for a row of length {len(expect)}")
        intervals.append((k, k + 1))
    properness = []
    for j in range(len(H.cells) + 1):
        rows = [r for x, r in last_row_at.items() if x <= j]
        latest = max(rows) if rows else -1
        if latest > j:
            raise LevelViolation(f"level {base_level + j}", f"met by row {latest}")
        properness.append(latest)
    s_int = None
    if H.stage1 or H.kind == "corner":
        lo, hi = H.interval
        for i, c in enumerate(H.stage1):
            lv = _cell_levels(c, P)
            if min(lv) < lo or max(lv) > hi:
                raise LevelViolation(f"stage-1 cell {i}", f"levels {min(lv)}..{max(lv)} outside [{lo}, {hi}]")
        s_int = (lo, hi)
    return LevelCertificate(base_level, intervals, s_int, properness)
