"""Ascending HNN extensions G = <t, A | R, t^-1 a t = phi(a)>.

Elements are put in the form ``t^n w t^-m`` by pushing base letters
downward through ``t^-1`` (always legal) and then pinching
``t w t^-1 -> phi^-1(w)`` whenever ``w`` lies in ``phi(A)``.  The pinch
question is where the base group enters; every answer it cannot settle
turns the resulting form best-effort.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Optional, Union

import jsonschema

from .oracles import (BaseOracle, BoundedDepthOracle, BSOracle, FreeOracle, GrigorchukOracle, OracleVerdict,
                      Verdict)
from .stallings import image_graph, image_rank_sequence, member
from .words import Alphabet, Endomorphism, IllFormedInput, RelatorSet, Word, join_reduced, reduce

__all__ = [
    "PRESENTATION_SCHEMA",
    "HnnPresentation",
    "CanonicalForm",
    "Envelope",
    "UnknownEnvelope",
    "Undecided",
    "level",
    "canonical_form",
    "equal_in_G",
    "in_coset_tNA",
    "envelope",
]

PRESENTATION_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "ascending HNN presentation",
    "type": "object",
    "required": ["generators", "phi"],
    "properties": {
        "name": {"type": "string"},
        "generators": {"type": "array", "items": {"type": "string", "pattern": "^[a-z]$"}, "minItems": 1},
        "stable": {"type": "string", "pattern": "^[a-z]$"},
        "relators": {"type": "array", "items": {"type": "string", "pattern": "^[A-Za-z]+$"}},
        "phi": {"type": "object", "additionalProperties": {"type": "string", "pattern": "^[A-Za-z]*$"}},
        "base_oracle": {"type": "string", "pattern": r"^(free|grigorchuk|bs:\d+,\d+|bounded:\d+)$"},
        "depth_bound": {"type": ["integer", "null"], "minimum": 0},
        "section": {"type": "object", "additionalProperties": {"type": "string", "pattern": "^[A-Za-z]*$"}},
        "notes": {"type": "string"},
    },
    "additionalProperties": False,
}


def level(w: Union[Word, str], stable: str = "t") -> int:
    """Exponent sum of the stable letter."""
    s = str(w)
    return s.count(stable) - s.count(stable.upper())


class HnnPresentation:
    """Presentation data plus the base-group machinery hung off it.

    ``depth_bound`` B means: w is trivial in A iff phi^B(w) is trivial for
    the base oracle.  With B unknown, identity in A is only semi-decided
    by trying phi^i(w) for i up to ``identity_search``.
    """

    def __init__(self, generators: Iterable[str], phi: Mapping[str, Union[Word, str]] | Endomorphism,
                 relators: Iterable[Union[Word, str]] = (), stable: str = "t",
                 base_oracle: Union[str, BaseOracle] = "free", depth_bound: Optional[int] = None,
                 section: Optional[Mapping[str, Union[Word, str]]] = None, name: str = "",
                 notes: str = "", identity_search: int = 8):
        self.alphabet = Alphabet(generators, stable)
        self.stable = stable
        self.phi = phi if isinstance(phi, Endomorphism) else Endomorphism(phi)
        if set(self.phi.alphabet) != set(self.alphabet.generators):
            raise IllFormedInput("phi must have exactly one entry per base generator")
        gens = set(self.alphabet.generators)
        for img in self.phi.table.values():
            if not img.generators() <= gens:
                raise IllFormedInput(f"phi image {img} leaves the base alphabet")
        self.relators = RelatorSet(relators)
        for r in self.relators:
            if not r.generators() <= gens:
                raise IllFormedInput(f"relator {r} uses letters outside the base alphabet")
        self.name = name
        self.notes = notes
        self.identity_search = identity_search
        if depth_bound is not None and depth_bound < 0:
            raise IllFormedInput("depth_bound must be nonnegative")
        self.depth_bound = depth_bound
        self.oracle_name = base_oracle if isinstance(base_oracle, str) else base_oracle.name
        self.oracle = base_oracle if isinstance(base_oracle, BaseOracle) else self._bind_oracle(base_oracle)
        self.section = Endomorphism(section) if section else None
        if self.section is not None:
            self._check_section()
        self._pinch_cache: dict[str, tuple[Optional[bool], Optional[Word]]] = {}

    # --- construction -----------------------------------------------------------------

    def _bind_oracle(self, binding: str) -> BaseOracle:
        gens = self.alphabet.generators
        if binding == "free":
            if len(self.relators):
                raise IllFormedInput("the free base oracle needs an empty relator set")
            return FreeOracle(gens)
        if binding == "grigorchuk":
            if set(gens) != {"a", "c", "d"}:
                raise IllFormedInput("the grigorchuk oracle needs generators a, c, d")
            return GrigorchukOracle()
        if binding.startswith("bs:"):
            m, n = (int(x) for x in binding[3:].split(","))
            if set(gens) != {"a", "b"}:
                raise IllFormedInput("the bs oracle needs generators a, b")
            return BSOracle(m, n)
        if binding.startswith("bounded:"):
            return BoundedDepthOracle(self.relators, self.phi, int(binding.split(":")[1]), alphabet=gens)
        raise IllFormedInput(f"unknown base oracle {binding!r}")

    def _check_section(self):
        for g in self.alphabet:
            if g not in self.section.table:
                raise IllFormedInput(f"section has no entry for {g}")
            v = self.base_identity(self.phi(self.section[g]) * Word(g).inverse())
            if not v.trivial:
                raise IllFormedInput(f"section entry {g} -> {self.section[g]} is not a right inverse of phi "
                                     f"({v.value})")

    @classmethod
    def from_json(cls, data: Union[str, bytes, Mapping]) -> "HnnPresentation":
        if isinstance(data, (str, bytes)):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise IllFormedInput(f"presentation is not valid JSON: {exc}") from None
        try:
            jsonschema.validate(data, PRESENTATION_SCHEMA)
        except jsonschema.ValidationError as exc:
            raise IllFormedInput(f"presentation schema violation: {exc.message}") from None
        return cls(data["generators"], data["phi"], data.get("relators", ()), data.get("stable", "t"),
                   data.get("base_oracle", "free"), data.get("depth_bound"), data.get("section"),
                   data.get("name", ""), data.get("notes", ""))

    @classmethod
    def load(cls, path) -> "HnnPresentation":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(fh.read())

    def to_json(self) -> dict:
        out = {
            "generators": list(self.alphabet.generators),
            "stable": self.stable,
            "relators": [str(r) for r in self.relators],
            "phi": {g: str(w) for g, w in self.phi.table.items()},
            "base_oracle": self.oracle_name,
            "depth_bound": self.depth_bound,
        }
        if self.name:
            out = {"name": self.name, **out}
        if self.section is not None:
            out["section"] = {g: str(w) for g, w in self.section.table.items()}
        if self.notes:
            out["notes"] = self.notes
        return out

    def __repr__(self) -> str:
        table = ", ".join(f"{g}->{w or '1'}" for g, w in self.phi.table.items())
        rels = ", ".join(str(r) for r in self.relators)
        return f"<HNN {self.name or ''} <{self.stable}, {''.join(self.alphabet)} | {rels}; {table}> {self.oracle_name}>"

    # --- base group ---------------------------------------------------------------------

    @cached_property
    def effective_depth(self) -> Optional[int]:
        """The depth B used for identity in A (declared, or computed for free bases)."""
        if self.depth_bound is not None:
            return self.depth_bound
        if isinstance(self.oracle, FreeOracle):
            _, m = image_rank_sequence(self.phi, 12)
            return m
        return None

    @property
    def identity_exact(self) -> bool:
        return self.oracle.exact and self.effective_depth is not None

    @property
    def free_base(self) -> bool:
        return isinstance(self.oracle, FreeOracle)

    def base_identity(self, w: Union[Word, str]) -> OracleVerdict:
        """Is the base word w trivial in A?"""
        w = Word(w)
        if not w:
            return OracleVerdict(Verdict.TRIVIAL, "empty word")
        B = self.effective_depth
        if B is not None:
            v = self.oracle.is_identity(self.phi(w, B))
            if v.nontrivial and not self.oracle.exact:
                return OracleVerdict(Verdict.UNKNOWN, v.evidence)
            return v
        last = None
        for i in range(self.identity_search + 1):
            v = self.oracle.is_identity(self.phi(w, i))
            if v.trivial:
                return OracleVerdict(Verdict.TRIVIAL, f"phi^{i}(w): {v.evidence}", v.certificate)
            last = v
        return OracleVerdict(Verdict.UNKNOWN, f"phi^i(w) not shown trivial for i <= {self.identity_search}"
                             + (f"; last: {last.evidence}" if last is not None and last.evidence else ""))

    @cached_property
    def _pinch_graph(self):
        B = self.effective_depth if self.effective_depth is not None else 0
        return image_graph(self.phi, B + 1)

    def pinch(self, w: Union[Word, str]) -> tuple[Optional[bool], Optional[Word]]:
        """Decide w in phi(A); returns (answer, u) with phi(u) = w in A when the answer is True."""
        key = str(w)
        hit = self._pinch_cache.get(key)
        if hit is not None:
            return hit
        res = self._pinch(Word(w))
        if len(self._pinch_cache) < 200_000:
            self._pinch_cache[key] = res
        return res

    def _pinch(self, w: Word) -> tuple[Optional[bool], Optional[Word]]:
        B = self.effective_depth if self.effective_depth is not None else 0
        ok, pre = member(self._pinch_graph, self.phi(w, B))
        if ok:
            return True, pre
        if self.free_base and self.effective_depth is not None:
            return False, None
        if self.section is not None:
            u = self.section(w)
            if self.base_identity(self.phi(u) * w.inverse()).trivial:
                return True, u
        if self.oracle.exact and self.base_identity(w).trivial:
            return True, Word()
        return None, None

    @cached_property
    def commuting_square(self) -> Optional[bool]:
        """phi maps every relator to a base-trivial word (None if undecided)."""
        verdicts = [self.oracle.is_identity(self.phi(r)) for r in self.relators]
        if all(v.trivial for v in verdicts):
            return True
        if any(v.nontrivial for v in verdicts):
            return False
        return None

    def conjugation_boundary(self, g: str) -> Word:
        """a t phi(a)^-1 t^-1."""
        t = self.stable
        return Word(g + t + str(self.phi[g].inverse()) + t.upper())

    def relation_words(self) -> list[Word]:
        return list(self.relators) + [self.conjugation_boundary(g) for g in self.alphabet]


@dataclass(frozen=True)
class CanonicalForm:
    """t^n w t^-m with w a base word."""

    n: int
    w: Word
    m: int
    exact: bool = True
    stable: str = field(default="t", compare=False)

    @property
    def level(self) -> int:
        return self.n - self.m

    def word(self) -> Word:
        t = self.stable
        return Word(t * self.n + str(self.w) + t.upper() * self.m)

    def __str__(self) -> str:
        return f'({self.n}, "{self.w}", {self.m}) {"exact" if self.exact else "best-effort"} level={self.level}'

    def to_json(self) -> dict:
        return {"n": self.n, "w": str(self.w), "m": self.m, "exact": self.exact, "level": self.level}


def _check_letters(w: str, P: HnnPresentation):
    allowed = set(P.alphabet.letters(with_stable=True))
    for c in w:
        if c not in allowed:
            raise IllFormedInput(f"unknown generator {c!r}")


def canonical_form(w: Union[Word, str], P: HnnPresentation) -> CanonicalForm:
    s = str(reduce(w)) if isinstance(w, str) else str(w)
    _check_letters(s, P)
    t, T = P.stable, P.stable.upper()
    phi = P.phi
    n, m = 0, 0
    mid = ""
    exact = True

    def squeeze():
        nonlocal n, m, mid, exact
        while n > 0 and m > 0:
            ok, u = P.pinch(Word._trusted(mid))
            if ok is None:
                exact = False
                return
            if not ok:
                return
            mid = str(u)
            n -= 1
            m -= 1

    for c in s:
        if c == t:
            if m > 0:
                m -= 1
            else:
                n += 1
                mid = str(phi(Word._trusted(mid)))
        elif c == T:
            m += 1
        else:
            if n > 0 and m > 0:
                squeeze()
            img = phi._img[c] if m == 1 else str(phi(c, m)) if m else c
            mid = join_reduced(mid, img)
    squeeze()
    return CanonicalForm(n, Word._trusted(mid), m, exact, P.stable)


def equal_in_G(u: Union[Word, str], v: Union[Word, str], P: HnnPresentation) -> Optional[bool]:
    x = reduce(u) * reduce(v).inverse()
    if level(x, P.stable) != 0:
        return False
    cf = canonical_form(x, P)
    if cf.n > 0:
        return False if cf.exact else None
    verdict = P.base_identity(cf.w)
    return {Verdict.TRIVIAL: True, Verdict.NONTRIVIAL: False, Verdict.UNKNOWN: None}[verdict.value]


def in_coset_tNA(v: Union[Word, str], N: int, P: HnnPresentation) -> Optional[bool]:
    """t^-N v t^(N - level(v)) in A?"""
    v = reduce(v)
    t = P.stable
    x = Word(t.upper() * max(N, 0) + t * max(-N, 0)) * v * Word(
        t * max(N - level(v, t), 0) + t.upper() * max(level(v, t) - N, 0))
    cf = canonical_form(x, P)
    if cf.n == 0:
        return True
    return False if cf.exact else None


class Undecided(RuntimeError):
    """A question that the available oracles could not settle."""


class UnknownEnvelope(Undecided):
    pass


@dataclass(frozen=True)
class Envelope:
    N: int
    M: int
    table: dict[Word, int]


def envelope(C: Iterable[Union[Word, str]], P: HnnPresentation) -> Envelope:
    forms = {}
    for v in C:
        v = reduce(v)
        cf = canonical_form(v, P)
        if not cf.exact:
            raise UnknownEnvelope(f"canonical form of {v} is best-effort")
        forms[v] = cf
    if not forms:
        raise ValueError("envelope of an empty set")
    N = max(cf.n for cf in forms.values())
    table = {v: N - cf.n + cf.m for v, cf in forms.items()}
    return Envelope(N, max(table.values()), table)
