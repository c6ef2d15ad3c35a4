"""Products of conjugates of relators, and a bounded search for them.

A :class:`Certificate` states ``target = prod_i u_i rho_i^(e_i) u_i^-1``
where each ``rho_i`` is ``phi^j(r)`` for a root relator ``r``.  Checking
one needs nothing but free reduction, so certificates can be handed to
anyone and re-verified.
"""
from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .words import Endomorphism, Word, cyclic_core, free_reduce

__all__ = ["Factor", "Certificate", "SearchBudget", "SearchStats", "RelatorEntry", "relator_entries",
           "find_consequence"]


@dataclass(frozen=True)
class Factor:
    conjugator: Word
    root: int
    power: int
    sign: int

    def to_json(self) -> dict:
        return {"conjugator": str(self.conjugator), "root": self.root, "power": self.power, "sign": self.sign}

    @classmethod
    def from_json(cls, d: dict) -> "Factor":
        return cls(Word(d["conjugator"]), int(d["root"]), int(d["power"]), int(d["sign"]))


@dataclass(frozen=True)
class Certificate:
    target: Word
    factors: tuple[Factor, ...]

    def product(self, roots: Sequence[Word], phi: Optional[Endomorphism]) -> Word:
        parts = []
        for f in self.factors:
            rho = Word(roots[f.root]) if f.power == 0 else phi(roots[f.root], f.power)
            u = str(f.conjugator)
            parts.append(u + str(rho ** f.sign) + u[::-1].swapcase())
        return Word(free_reduce("".join(parts)))

    def check(self, roots: Sequence[Word], phi: Optional[Endomorphism] = None) -> bool:
        return self.product(roots, phi) == self.target

    def conjugated(self, u: Word) -> "Certificate":
        return Certificate(self.target.conjugate(u),
                           tuple(Factor(u * f.conjugator, f.root, f.power, f.sign) for f in self.factors))

    def to_json(self) -> dict:
        return {"target": str(self.target), "factors": [f.to_json() for f in self.factors]}

    @classmethod
    def from_json(cls, d: dict) -> "Certificate":
        return cls(Word(d["target"]), tuple(Factor.from_json(f) for f in d["factors"]))


@dataclass(frozen=True)
class SearchBudget:
    max_factors: int = 12
    max_conj_len: int = 40
    max_nodes: int = 3000
    i_max: int = 2


@dataclass
class SearchStats:
    nodes: int = 0
    pushed: int = 0
    best_length: Optional[int] = None
    exhausted: bool = False

    def __str__(self) -> str:
        return (f"nodes={self.nodes} pushed={self.pushed} best_length={self.best_length} "
                f"exhausted={self.exhausted}")


@dataclass(frozen=True)
class RelatorEntry:
    root: int
    power: int
    word: Word  # freely reduced phi^power(root)


def relator_entries(roots: Sequence[Word], phi: Optional[Endomorphism], i_max: int) -> list[RelatorEntry]:
    out = []
    for i, r in enumerate(roots):
        w = Word(r)
        for j in range(i_max + 1 if phi is not None else 1):
            if cyclic_core(w)[0]:
                out.append(RelatorEntry(i, j, w))
            if phi is None:
                break
            w = phi(w)
    return out


@dataclass(frozen=True)
class _Rotation:
    text: str        # a cyclic rotation of core^sign
    shift: Word      # rotation = shift^-1 * entry.word^sign * shift
    entry: RelatorEntry
    sign: int
    min_match: int


def _rotations(entries: Iterable[RelatorEntry]) -> dict[str, list[_Rotation]]:
    by_first: dict[str, list[_Rotation]] = {}
    seen = set()
    for e in entries:
        core, c = cyclic_core(e.word)
        for sign in (1, -1):
            s = str(core ** sign)
            for k in range(len(s)):
                text = s[k:] + s[:k]
                if (text, e.root) in seen:
                    continue
                seen.add((text, e.root))
                shift = c * Word(s[:k])
                rot = _Rotation(text, shift, e, sign, max(1, (len(text) - 1) // 2))
                by_first.setdefault(text[0], []).append(rot)
    for lst in by_first.values():
        lst.sort(key=lambda r: (-len(r.text), r.entry.root, r.entry.power, r.text))
    return by_first


def find_consequence(w: Word, entries: Sequence[RelatorEntry], budget: SearchBudget = SearchBudget(),
                     stats: Optional[SearchStats] = None) -> Optional[Certificate]:
    """Best-first rewriting search for w as a product of relator conjugates.

    A move replaces a subword P of the current word by S^-1 whenever some
    rotation of a relator (or its inverse) reads P S; the discarded
    conjugate is recorded as a factor.  States are explored shortest
    first with deterministic tie-breaking, so the certificate returned for
    a given budget is reproducible.
    """
    stats = stats if stats is not None else SearchStats()
    target = Word(w)
    if not target:
        return Certificate(target, ())
    rots = _rotations(entries)
    counter = itertools.count()
    heap = [(len(target), 0, next(counter), str(target), ())]
    seen = {str(target)}
    stats.best_length = len(target)
    while heap:
        if stats.nodes >= budget.max_nodes:
            stats.exhausted = True
            return None
        _, depth, _, x, factors = heapq.heappop(heap)
        stats.nodes += 1
        if depth >= budget.max_factors:
            continue
        for p in range(len(x)):
            for rot in rots.get(x[p], ()):
                t = rot.text
                m = 1
                limit = min(len(t), len(x) - p)
                while m < limit and x[p + m] == t[m]:
                    m += 1
                if m < rot.min_match:
                    continue
                y = x[:p]
                rest = t[m:]
                nxt = free_reduce(y + rest[::-1].swapcase() + x[p + m:])
                if nxt in seen:
                    continue
                u = Word(y) * rot.shift.inverse()
                if len(u) > budget.max_conj_len:
                    continue
                f = Factor(u, rot.entry.root, rot.entry.power, rot.sign)
                fs = factors + (f,)
                if not nxt:
                    return Certificate(target, fs)
                seen.add(nxt)
                stats.pushed += 1
                stats.best_length = min(stats.best_length, len(nxt))
                heapq.heappush(heap, (len(nxt), depth + 1, next(counter), nxt, fs))
    return None
