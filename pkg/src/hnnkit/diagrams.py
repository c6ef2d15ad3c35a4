"""Null-homotopies of loops as replayable move lists.

A move inserts a "lollipop" into the current loop: a tether path from a
loop vertex, the boundary of one 2-cell, and the tether back, followed by
free reduction.  A diagram is a move list taking the loop to the empty
path.  :func:`replay` re-runs it knowing only which boundaries are legal
2-cells, and checks the level cap and, optionally, that no visited
vertex lies in D(N, M).

The builders work in three steps: slide every base letter up to one
level with conjugation cells, find a product-of-conjugates certificate
for the resulting base word, and realize each factor phi^j(r) as a
relator cell hung j levels lower and lifted back up.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Union

from .consequences import Certificate, SearchBudget, SearchStats, find_consequence, relator_entries
from .hnn import HnnPresentation, Undecided, level
from .regions import RegionLabel, classify, in_D
from .words import Word, free_reduce

__all__ = [
    "DIAGRAM_SCHEMA_VERSION",
    "CellRef",
    "Move",
    "Diagram",
    "Unresolved",
    "ReplayReport",
    "DiagramContractError",
    "trivialize_bounded",
    "fp_complement_trivialize",
    "replay",
]

DIAGRAM_SCHEMA_VERSION = "hnn-diagram/1"


class DiagramContractError(ValueError):
    pass


@dataclass(frozen=True)
class CellRef:
    kind: str        # "relator" or "conj"
    index: str       # relator index (as text) or generator letter
    rotation: int
    sign: int

    def boundary(self, P: HnnPresentation) -> str:
        if self.kind == "relator":
            s = str(P.relators[int(self.index)])
        elif self.kind == "conj":
            if self.index not in P.alphabet:
                raise DiagramContractError(f"no conjugation cell for {self.index!r}")
            s = self.index + P.stable + str(P.phi[self.index].inverse()) + P.stable.upper()
        else:
            raise DiagramContractError(f"unknown cell kind {self.kind!r}")
        if self.sign == -1:
            s = s[::-1].swapcase()
        elif self.sign != 1:
            raise DiagramContractError("cell sign must be +1 or -1")
        if not 0 <= self.rotation < max(len(s), 1):
            raise DiagramContractError("rotation out of range")
        return s[self.rotation:] + s[:self.rotation]

    def to_json(self) -> dict:
        return {"kind": self.kind, "index": self.index, "rotation": self.rotation, "sign": self.sign}


@dataclass(frozen=True)
class Move:
    at: int
    tether: str
    cell: CellRef

    def to_json(self) -> dict:
        return {"at": self.at, "tether": self.tether, "cell": self.cell.to_json()}

    @classmethod
    def from_json(cls, d: dict) -> "Move":
        c = d["cell"]
        return cls(int(d["at"]), d["tether"], CellRef(c["kind"], str(c["index"]), int(c["rotation"]), int(c["sign"])))


@dataclass
class Diagram:
    start: Word
    loop: str
    level_cap: Optional[int]
    forbidden: Optional[tuple[int, int]]
    moves: list[Move] = field(default_factory=list)
    info: dict = field(default_factory=dict)

    kind = "diagram"

    def cell_counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for mv in self.moves:
            out[mv.cell.kind] = out.get(mv.cell.kind, 0) + 1
        return out

    def to_json(self, P: HnnPresentation) -> dict:
        return {
            "schema": DIAGRAM_SCHEMA_VERSION,
            "kind": self.kind,
            "presentation": P.to_json(),
            "start": str(self.start),
            "loop": self.loop,
            "level_cap": self.level_cap,
            "forbidden": list(self.forbidden) if self.forbidden is not None else None,
            "moves": [m.to_json() for m in self.moves],
            "info": self.info,
        }

    def dumps(self, P: HnnPresentation) -> str:
        return json.dumps(self.to_json(P), indent=1, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, d: Union[str, dict]) -> tuple["Diagram", HnnPresentation]:
        if isinstance(d, str):
            d = json.loads(d)
        if d.get("schema") != DIAGRAM_SCHEMA_VERSION:
            raise DiagramContractError(f"unsupported diagram schema {d.get('schema')!r}")
        P = HnnPresentation.from_json(d["presentation"])
        forb = tuple(d["forbidden"]) if d.get("forbidden") is not None else None
        return cls(Word(d["start"]), d["loop"], d.get("level_cap"), forb,
                   [Move.from_json(m) for m in d["moves"]], d.get("info", {})), P


@dataclass(frozen=True)
class Unresolved:
    """Budget ran out before a diagram was found."""

    reason: str
    stats: dict

    value = "Unknown"

    def __bool__(self) -> bool:
        return False


# --- replay -------------------------------------------------------------------------

@dataclass
class ReplayReport:
    ok: bool
    message: str
    moves: int = 0
    max_level: Optional[int] = None
    min_level: Optional[int] = None
    vertices_checked: int = 0

    def to_json(self) -> dict:
        return {"ok": self.ok, "message": self.message, "moves": self.moves, "max_level": self.max_level,
                "min_level": self.min_level, "vertices_checked": self.vertices_checked}


def replay(D: Diagram, P: HnnPresentation) -> ReplayReport:
    """Independently re-run a diagram's moves and check every constraint."""
    t, T = P.stable, P.stable.upper()
    allowed = set(P.alphabet.letters(with_stable=True))
    start = str(D.start)
    base_level = level(start, t)
    d_cache: dict[str, Optional[bool]] = {}

    def bad(msg, i):
        return ReplayReport(False, msg, i)

    def visit(prefix_word: str, lv: int, where: str) -> Optional[str]:
        if D.level_cap is not None and lv > D.level_cap:
            return f"{where}: vertex at level {lv} above cap {D.level_cap}"
        if D.forbidden is not None:
            N, M = D.forbidden
            if N - M <= lv <= N:
                key = free_reduce(prefix_word)
                if key not in d_cache:
                    d_cache[key] = in_D(Word._trusted(key), N, M, P)
                r = d_cache[key]
                if r is None:
                    return f"{where}: could not decide whether {key} lies in D"
                if r:
                    return f"{where}: vertex {key} lies in D({N},{M})"
        return None

    def walk(prefix: str, lv: int, path: str, where: str, counter: list) -> tuple[Optional[str], int]:
        for c in path:
            if c not in allowed:
                return f"{where}: bad letter {c!r}", lv
            lv += 1 if c == t else -1 if c == T else 0
            prefix += c
            counter[0] += 1
            err = visit(prefix, lv, where)
            if err:
                return err, lv
        return None, lv

    cur = D.loop
    for c in cur:
        if c not in allowed:
            return bad(f"loop has bad letter {c!r}", 0)
    if level(cur, t) != 0:
        return bad("loop is not closed (nonzero stable exponent)", 0)
    counter = [0]
    err = visit(start, base_level, "loop")
    if err is None:
        err, _ = walk(start, base_level, cur, "loop", counter)
    if err:
        return bad(err, 0)
    levels = [base_level]
    cur = free_reduce(cur)
    for i, mv in enumerate(D.moves):
        try:
            bd = mv.cell.boundary(P)
        except (DiagramContractError, IndexError) as exc:
            return bad(f"move {i}: {exc}", i)
        if not 0 <= mv.at <= len(cur):
            return bad(f"move {i}: position {mv.at} outside loop of length {len(cur)}", i)
        pre = cur[:mv.at]
        lv = base_level + level(pre, t)
        inserted = mv.tether + bd + mv.tether[::-1].swapcase()
        err, _ = walk(start + pre, lv, inserted, f"move {i}", counter)
        if err:
            return bad(err, i)
        levels.extend([lv + level(inserted[:k], t) for k in range(len(inserted) + 1)])
        cur = free_reduce(pre + inserted + cur[mv.at:])
    if cur:
        return ReplayReport(False, f"loop not killed; {len(cur)} letters remain", len(D.moves))
    return ReplayReport(True, "ok", len(D.moves), max(levels), min(levels), counter[0])


# --- construction --------------------------------------------------------------------

class _Builder:
    def __init__(self, P: HnnPresentation, start: Word, loop: str, cap: Optional[int],
                 forbidden: Optional[tuple[int, int]], max_moves: int):
        self.P = P
        self.t, self.T = P.stable, P.stable.upper()
        self.start = start
        self.base_level = level(start, P.stable)
        self.cur = free_reduce(loop)
        self.moves: list[Move] = []
        self.cap = cap
        self.max_moves = max_moves

    def insert(self, at: int, tether: str, cell: CellRef):
        if len(self.moves) >= self.max_moves:
            raise _OutOfMoves()
        bd = cell.boundary(self.P)
        self.moves.append(Move(at, tether, cell))
        self.cur = free_reduce(self.cur[:at] + tether + bd + tether[::-1].swapcase() + self.cur[at:])

    def lift(self, at: int):
        x = self.cur[at]
        g = x.lower()
        if x == g:
            self.insert(at, "", CellRef("conj", g, 0, -1))       # t phi(g) T G
        else:
            self.insert(at, "", CellRef("conj", g, 1, 1))        # t phi(g)^-1 T g

    def letter_below(self, target: int) -> Optional[int]:
        lv = self.base_level
        best = None
        for i, c in enumerate(self.cur):
            if c == self.t:
                lv += 1
            elif c == self.T:
                lv -= 1
            elif lv < target:
                best = i
        return best

    def slide_to(self, target: int):
        while True:
            i = self.letter_below(target)
            if i is None:
                return
            self.lift(i)

    def middle(self, target: int) -> tuple[int, str]:
        """With all base letters at ``target``: the loop is t^h X t^-h; return (h, X)."""
        h = target - self.base_level
        cur = self.cur
        if not cur:
            return h, ""
        if not (cur.startswith(self.t * h) and cur.endswith(self.T * h)):
            raise AssertionError(f"slid loop {cur} does not have the expected shape")
        body = cur[h:len(cur) - h]
        if self.t in body or self.T in body:
            raise AssertionError(f"slid loop {cur} still crosses levels")
        return h, body

    def realize(self, cert: Certificate, h: int, target: int):
        for f in cert.factors:
            tether = str(f.conjugator) + self.T * f.power
            self.insert(h, tether, CellRef("relator", str(f.root), 0, -f.sign))
            self.slide_to(target)


class _OutOfMoves(Exception):
    pass


def _entries(P: HnnPresentation, i_max: int):
    return relator_entries(list(P.relators), P.phi, i_max)


def _level_profile(start: Word, loop: str, P: HnnPresentation) -> list[int]:
    lv = level(start, P.stable)
    out = [lv]
    for c in loop:
        lv += 1 if c == P.stable else -1 if c == P.stable.upper() else 0
        out.append(lv)
    return out


def _run(P, start, loop, target, extra_levels, budget, cap, forbidden, max_moves, i_max):
    b = _Builder(P, start, loop, cap, forbidden, max_moves)
    info = {"target_level": target}
    try:
        b.slide_to(target)
        h, body = b.middle(target)
        stats_all = []
        cert = None
        for i in range(extra_levels + 1):
            word = P.phi(Word(body), i)
            stats = SearchStats()
            cert = find_consequence(word, _entries(P, i_max), budget, stats)
            stats_all.append(str(stats))
            if cert is not None:
                if i:
                    b.slide_to(target + i)
                    h, _ = b.middle(target + i)
                b.realize(cert, h, target + i)
                info.update({"extra_levels": i, "factors": len(cert.factors)})
                break
        if cert is None:
            return Unresolved("no certificate within budget", {"search": stats_all, "moves": len(b.moves)})
    except _OutOfMoves:
        return Unresolved("move budget exhausted", {"moves": len(b.moves)})
    if b.cur:
        raise AssertionError(f"realized certificate left {b.cur}")
    info["moves"] = len(b.moves)
    info["search"] = stats_all
    return Diagram(start, loop, cap, forbidden, b.moves, info)


def trivialize_bounded(loop: str, level_cap: int, P: HnnPresentation, budget: SearchBudget = SearchBudget(),
                       start: Union[Word, str] = "", max_moves: int = 5000) -> Union[Diagram, Unresolved]:
    """Kill a loop with every intermediate vertex at level <= level_cap.

    Base letters are slid up to the loop's top level, then up to
    ``level_cap`` one level at a time until a certificate for the
    resulting base word is found.  Relator cells may hang below.
    """
    start = Word(start)
    if level(loop, P.stable) != 0:
        raise DiagramContractError("loop has nonzero stable exponent")
    prof = _level_profile(start, loop, P)
    top = max(prof)
    if top > level_cap:
        raise DiagramContractError(f"loop reaches level {top} above the cap {level_cap}")
    D = _run(P, start, loop, top, level_cap - top, budget, level_cap, None, max_moves, budget.i_max)
    if isinstance(D, Diagram):
        rep = replay(D, P)
        if not rep.ok:
            raise AssertionError(f"internal consistency failure: {rep.message}")
    return D


def fp_complement_trivialize(loop: str, N: int, M: int, P: HnnPresentation, budget: SearchBudget = SearchBudget(),
                             start: Union[Word, str] = "", max_moves: int = 5000) -> Union[Diagram, Unresolved]:
    """Kill a loop that avoids D(N, M) without ever touching D(N, M).

    Loops in a lower component slide up to level N-M-1 and hang relator
    cells below it.  Loops in the special component slide up to a level
    high enough that hanging cells stay above N.
    """
    start = Word(start)
    if level(loop, P.stable) != 0:
        raise DiagramContractError("loop has nonzero stable exponent")
    labels = set()
    vertex = str(start)
    for c in [""] + list(loop):
        vertex += c
        cl = classify(Word(vertex), N, M, P)
        if cl.label is RegionLabel.Unknown:
            raise Undecided(f"cannot classify loop vertex {Word(vertex)}")
        if cl.label is RegionLabel.InD:
            raise DiagramContractError(f"loop vertex {Word(vertex)} lies in D({N},{M})")
        labels.add(cl.label)
    if len(labels) != 1:
        raise AssertionError(f"loop meets several regions {sorted(map(str, labels))}")
    label = labels.pop()
    prof = _level_profile(start, loop, P)
    if label is RegionLabel.OtherComponent:
        target, cap = N - M - 1, N - M - 1
    else:
        target, cap = max(max(prof), N + 1 + budget.i_max), None
    D = _run(P, start, loop, target, 0, budget, cap, (N, M), max_moves, budget.i_max)
    if isinstance(D, Diagram):
        D.info["branch"] = str(label)
        rep = replay(D, P)
        if not rep.ok:
            raise AssertionError(f"internal consistency failure: {rep.message}")
        D.info["max_level"] = rep.max_level
        D.info["min_level"] = rep.min_level
    return D
