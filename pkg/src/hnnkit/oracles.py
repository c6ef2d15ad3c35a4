"""Word-problem deciders for base groups.

Every oracle answers ``is_identity(w)`` with Trivial, Nontrivial or
Unknown.  Exact oracles never say Unknown; semi oracles never say
Nontrivial.  Trivial answers carry a certificate whenever the method
produces one.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .consequences import (Certificate, Factor, SearchBudget, SearchStats, find_consequence,
                           relator_entries)
from .words import Endomorphism, IllFormedInput, RelatorSet, Word

__all__ = [
    "Verdict",
    "OracleVerdict",
    "BaseOracle",
    "FreeOracle",
    "BSOracle",
    "GrigorchukOracle",
    "BoundedDepthOracle",
    "free_oracle",
    "bs_oracle",
    "grigorchuk_oracle",
    "bounded_depth_oracle",
    "GRIGORCHUK_SIGMA",
    "GRIGORCHUK_ROOTS",
]


class Verdict(enum.Enum):
    TRIVIAL = "Trivial"
    NONTRIVIAL = "Nontrivial"
    UNKNOWN = "Unknown"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class OracleVerdict:
    value: Verdict
    evidence: Optional[str] = None
    certificate: Optional[Certificate] = None

    @property
    def trivial(self) -> bool:
        return self.value is Verdict.TRIVIAL

    @property
    def nontrivial(self) -> bool:
        return self.value is Verdict.NONTRIVIAL

    @property
    def unknown(self) -> bool:
        return self.value is Verdict.UNKNOWN


class BaseOracle:
    """Interface: subclasses set ``alphabet``, ``exact``, ``semi`` and implement ``_decide``."""

    name = "base"
    exact = False
    semi = False

    def __init__(self, alphabet: Iterable[str]):
        self.alphabet = tuple(alphabet)
        self._letters = set(self.alphabet) | {g.upper() for g in self.alphabet}

    # roots/phi used to re-check certificates; None when the oracle has none
    roots: Sequence[Word] = ()
    phi: Optional[Endomorphism] = None

    def is_identity(self, w: Union[Word, str]) -> OracleVerdict:
        w = Word(w)
        for c in str(w):
            if c not in self._letters:
                raise IllFormedInput(f"letter {c!r} outside oracle alphabet {''.join(self.alphabet)}")
        return self._decide(w)

    def _decide(self, w: Word) -> OracleVerdict:  # pragma: no cover - interface
        raise NotImplementedError

    def check_certificate(self, cert: Certificate) -> bool:
        return cert.check(self.roots, self.phi)

    def __repr__(self) -> str:
        return f"<{self.name} oracle on {''.join(self.alphabet)}>"


class FreeOracle(BaseOracle):
    name = "free"
    exact = True

    def _decide(self, w: Word) -> OracleVerdict:
        if not w:
            return OracleVerdict(Verdict.TRIVIAL, "freely trivial", Certificate(w, ()))
        return OracleVerdict(Verdict.NONTRIVIAL, f"free reduction is {w}")


def free_oracle(alphabet: Iterable[str]) -> FreeOracle:
    return FreeOracle(alphabet)


# --- Baumslag-Solitar --------------------------------------------------------

def _bs_pinch_factors(m: int, n: int, q: int) -> list[Factor]:
    """Factors with product b^-1 a^(mq) b a^(-nq), relator r = b^-1 a^m b a^-n."""
    if q > 0:
        return [Factor(Word("a" * (n * i)), 0, 0, 1) for i in range(q)]
    return [Factor(Word("A" * (n * i)), 0, 0, -1) for i in range(1, -q + 1)]


class BSOracle(BaseOracle):
    """BS(m, n) = <a, b | b^-1 a^m b = a^n> via Britton reduction over b."""

    exact = True

    def __init__(self, m: int, n: int):
        if m < 1 or n < 1:
            raise IllFormedInput("BS parameters must be positive")
        super().__init__("ab")
        self.m, self.n = m, n
        self.name = f"bs:{m},{n}"
        self.roots = (Word("B" + "a" * m + "b" + "A" * n),)

    def britton(self, w: Word) -> tuple[list[tuple[str, int]], list[Factor]]:
        """Britton-reduce w; returns syllables and factors with w = prod(factors) * syllables."""
        m, n = self.m, self.n
        stack: list[tuple[str, int]] = []
        factors: list[Factor] = []

        def push_a(k):
            if stack and stack[-1][0] == "a":
                k += stack.pop()[1]
            if k:
                stack.append(("a", k))

        def prefix() -> Word:
            return Word("".join(("a" if e > 0 else "A") * abs(e) if g == "a" else ("b" if e > 0 else "B")
                                for g, e in stack))

        for c in str(w):
            if c in "aA":
                push_a(1 if c == "a" else -1)
                continue
            d = 1 if c == "b" else -1
            if stack and stack[-1] == ("b", -d):
                stack.pop()
                continue
            if len(stack) >= 2 and stack[-1][0] == "a" and stack[-2] == ("b", -d):
                k = stack[-1][1]
                div = m if d == 1 else n
                if k % div == 0:
                    q = k // div
                    stack.pop()
                    stack.pop()
                    y = prefix()
                    base = _bs_pinch_factors(m, n, q)
                    if d == 1:
                        local = base
                        push_a(n * q)
                    else:
                        # b a^(nq) b^-1 a^(-mq) = b (b^-1 a^(mq) b a^(-nq))^-1 b^-1
                        local = [Factor(Word("b") * f.conjugator, 0, 0, -f.sign) for f in reversed(base)]
                        push_a(m * q)
                    factors.extend(Factor(y * f.conjugator, f.root, f.power, f.sign) for f in local)
                    continue
            stack.append(("b", d))
        return stack, factors

    def normal_form(self, w: Union[Word, str]) -> Word:
        stack, _ = self.britton(Word(w))
        return Word("".join(("a" if e > 0 else "A") * abs(e) if g == "a" else ("b" if e > 0 else "B")
                            for g, e in stack))

    def _decide(self, w: Word) -> OracleVerdict:
        stack, factors = self.britton(w)
        if stack:
            nf = "".join(f"{g}^{e}" if g == "a" else ("b" if e > 0 else "B") for g, e in stack)
            return OracleVerdict(Verdict.NONTRIVIAL, f"Britton-reduced form {nf}")
        cert = Certificate(w, tuple(factors))
        return OracleVerdict(Verdict.TRIVIAL, f"{len(factors)} relator conjugates", cert)


def bs_oracle(m: int, n: int) -> BSOracle:
    return BSOracle(m, n)


# --- Grigorchuk ----------------------------------------------------------------

# b = (a, c), c = (a, d), d = (1, b); b is spelled cd over {a, c, d}
_SECTIONS = {"b": ("a", "c"), "c": ("a", "d"), "d": ("", "b")}
_BCD_PRODUCT = {("b", "c"): "d", ("c", "b"): "d", ("b", "d"): "c", ("d", "b"): "c",
                ("c", "d"): "b", ("d", "c"): "b"}

GRIGORCHUK_SIGMA = Endomorphism({"a": "aca", "c": "cd", "d": "c"})
GRIGORCHUK_ROOTS = ("aa", "cc", "dd", "adadadad", "adacacadacacadacacadacac")


def _grig_reduce(s: str) -> str:
    # the stack never holds two adjacent letters from {b, c, d}
    out: list[str] = []
    for c in s:
        top = out[-1] if out else None
        if top == c:
            out.pop()
        elif top is not None and top != "a" and c != "a":
            out[-1] = _BCD_PRODUCT[(top, c)]
        else:
            out.append(c)
    return "".join(out)


def _grig_trivial(s: str) -> bool:
    s = _grig_reduce(s)
    if not s:
        return True
    if s.count("a") % 2:
        return False
    if len(s) <= 1:
        return False
    left, right = [], []
    swapped = False
    for c in s:
        if c == "a":
            swapped = not swapped
            continue
        l0, r0 = _SECTIONS[c]
        # the section at vertex i of a product is read along the current permutation
        if swapped:
            left.append(r0)
            right.append(l0)
        else:
            left.append(l0)
            right.append(r0)
    return _grig_trivial("".join(left)) and _grig_trivial("".join(right))


class GrigorchukOracle(BaseOracle):
    """Word problem of the first Grigorchuk group over {a, c, d}."""

    name = "grigorchuk"
    exact = True

    def __init__(self):
        super().__init__("acd")
        self.roots = tuple(Word(r) for r in GRIGORCHUK_ROOTS)
        self.phi = GRIGORCHUK_SIGMA

    def _decide(self, w: Word) -> OracleVerdict:
        s = str(w).lower()  # every generator is an involution
        if _grig_trivial(s):
            return OracleVerdict(Verdict.TRIVIAL, "acts trivially on the rooted binary tree")
        return OracleVerdict(Verdict.NONTRIVIAL, f"moves a vertex of the tree (reduced {_grig_reduce(s)})")


def grigorchuk_oracle() -> GrigorchukOracle:
    return GrigorchukOracle()


# --- semi-decision by consequence search -----------------------------------------

class BoundedDepthOracle(BaseOracle):
    """Trivial iff phi^k(w) is found in N(phi^i(R), i <= i_max) within budget."""

    semi = True

    def __init__(self, relators: Union[RelatorSet, Iterable], phi: Endomorphism, k: int,
                 budget: SearchBudget = SearchBudget(), alphabet: Optional[Iterable[str]] = None):
        if k < 0:
            raise ValueError("k must be nonnegative")
        super().__init__(alphabet if alphabet is not None else phi.alphabet)
        self.roots = tuple(RelatorSet(relators) if not isinstance(relators, RelatorSet) else relators)
        self.phi = phi
        self.k = k
        self.budget = budget
        self.name = f"bounded:{k}"
        self._entries = relator_entries(self.roots, phi, budget.i_max)

    def certify(self, w: Word, budget: Optional[SearchBudget] = None) -> tuple[Optional[Certificate], SearchStats]:
        stats = SearchStats()
        budget = budget or self.budget
        entries = self._entries if budget.i_max == self.budget.i_max else relator_entries(
            self.roots, self.phi, budget.i_max)
        cert = find_consequence(Word(w), entries, budget, stats)
        return cert, stats

    def _decide(self, w: Word) -> OracleVerdict:
        target = self.phi(w, self.k)
        cert, stats = self.certify(target)
        if cert is None:
            return OracleVerdict(Verdict.UNKNOWN, f"no certificate for phi^{self.k}(w) = {target}: {stats}")
        return OracleVerdict(Verdict.TRIVIAL, f"phi^{self.k}(w) is a product of {len(cert.factors)} conjugates",
                             cert)


def bounded_depth_oracle(R, phi: Endomorphism, k: int, budget: SearchBudget = SearchBudget()) -> BoundedDepthOracle:
    return BoundedDepthOracle(R, phi, k, budget)
