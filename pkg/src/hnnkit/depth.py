"""The kernel chain N_i = phi^-i(N_0) and witnesses of depth.

A word w has depth exactly n when phi^(n-1)(w) is nontrivial in the base
group A_0 = <generators | R> while phi^n(w) is trivial there.  The
nontrivial half needs an exact oracle; the trivial half is accepted with
a re-checkable certificate from either kind.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .consequences import Certificate, Factor, SearchBudget
from .hnn import HnnPresentation
from .oracles import BaseOracle, BoundedDepthOracle, OracleVerdict, Verdict
from .words import IllFormedInput, Word

__all__ = [
    "DepthWitness",
    "PresentationIncompatible",
    "DepthContradiction",
    "depth_witness_check",
    "ProbeReport",
    "chain_inclusion_probe",
    "depth_scan",
    "reduced_words",
]


class PresentationIncompatible(ValueError):
    """phi does not send relators to trivial elements of the base group."""


class DepthContradiction(AssertionError):
    """An accepted witness deeper than the declared depth bound (an oracle bug)."""


@dataclass(frozen=True)
class DepthWitness:
    word: Word
    n: int
    lower: OracleVerdict   # verdict on phi^(n-1)(w)
    upper: OracleVerdict   # verdict on phi^n(w)
    certificate_ok: Optional[bool] = None

    @property
    def status(self) -> str:
        if self.lower.nontrivial and self.upper.trivial and self.certificate_ok is not False:
            return "accepted"
        if self.lower.unknown or self.upper.unknown:
            return "indeterminate"
        return "rejected"

    @property
    def accepted(self) -> bool:
        return self.status == "accepted"

    @property
    def reason(self) -> str:
        if self.accepted:
            return f"w lies in N_{self.n} but not in N_{self.n - 1}"
        if self.lower.trivial:
            return f"phi^{self.n - 1}(w) is already trivial"
        if self.upper.nontrivial:
            return f"phi^{self.n}(w) is nontrivial"
        if self.certificate_ok is False:
            return "certificate failed to re-check"
        return "an oracle answered Unknown"

    def to_json(self) -> dict:
        cert = self.upper.certificate
        return {
            "word": str(self.word),
            "n": self.n,
            "status": self.status,
            "reason": self.reason,
            "lower": {"value": self.lower.value.value, "evidence": self.lower.evidence},
            "upper": {"value": self.upper.value.value, "evidence": self.upper.evidence,
                      "certificate": cert.to_json() if cert is not None else None},
            "certificate_ok": self.certificate_ok,
        }


def _check_square(P: HnnPresentation):
    ok = P.commuting_square
    if ok is False:
        raise PresentationIncompatible("phi maps some relator to a nontrivial element")
    if ok is None:
        raise PresentationIncompatible("could not confirm that phi maps relators to trivial elements")


def depth_witness_check(w, n: int, P: HnnPresentation, semi: Optional[BaseOracle] = None) -> DepthWitness:
    """Check w in N_n minus N_(n-1) using P's base oracle.

    ``semi`` optionally supplies the trivial half (for example a
    :class:`BoundedDepthOracle` with k = 0); the nontrivial half always
    comes from ``P.oracle`` and must be exact to count.
    """
    if n < 1:
        raise ValueError("n must be positive")
    _check_square(P)
    w = Word(w)
    oracle = P.oracle
    lower = oracle.is_identity(P.phi(w, n - 1))
    if lower.nontrivial and not oracle.exact:
        lower = OracleVerdict(Verdict.UNKNOWN, lower.evidence)
    top = P.phi(w, n)
    upper = (semi or oracle).is_identity(top)
    cert_ok = None
    if upper.trivial and upper.certificate is not None:
        checker = semi or oracle
        cert_ok = upper.certificate.target == top and checker.check_certificate(upper.certificate)
    wit = DepthWitness(w, n, lower, upper, cert_ok)
    if wit.accepted and P.depth_bound is not None and n > P.depth_bound:
        raise DepthContradiction(f"{w} accepted at depth {n} > declared bound {P.depth_bound}")
    return wit


@dataclass
class ProbeReport:
    samples: int = 0
    confirmed: int = 0
    unknown: int = 0
    refuted: int = 0
    records: list = field(default_factory=list)

    @property
    def unknown_rate(self) -> float:
        return self.unknown / self.samples if self.samples else 0.0

    def to_json(self) -> dict:
        return {"samples": self.samples, "confirmed": self.confirmed, "unknown": self.unknown,
                "refuted": self.refuted, "records": self.records}


def _random_word(rng: random.Random, letters: str, length: int) -> Word:
    out = ""
    while len(out) < length:
        c = rng.choice(letters)
        if out and out[-1] == c.swapcase():
            continue
        out += c
    return Word(out)


def chain_inclusion_probe(P: HnnPresentation, samples: int = 50, budget: SearchBudget = SearchBudget(),
                          max_factors: int = 3, conj_len: int = 3, max_power: int = 1,
                          seed: int = 0) -> ProbeReport:
    """Sample explicit members of N_0 and look for certificates that phi keeps them there.

    Each sample is a product of at most ``max_factors`` conjugates
    u phi^j(r)^(+-1) u^-1 with |u| <= conj_len and j <= max_power, so it
    lies in N_0 by construction.  A refutation would need an exact oracle
    to call phi(w) nontrivial; the theory says that never happens.
    """
    report = ProbeReport()
    roots = list(P.relators)
    if not roots:
        return report
    rng = random.Random(seed)
    letters = P.alphabet.letters()
    searcher = BoundedDepthOracle(roots, P.phi, 1, budget, alphabet=P.alphabet.generators)
    for _ in range(samples):
        factors = []
        for _ in range(rng.randint(1, max_factors)):
            factors.append(Factor(_random_word(rng, letters, rng.randint(0, conj_len)),
                                  rng.randrange(len(roots)), rng.randint(0, max_power), rng.choice((1, -1))))
        w = Certificate(Word(), tuple(factors)).product(roots, P.phi)
        built = Certificate(w, tuple(factors))
        assert built.check(roots, P.phi)
        verdict = searcher.is_identity(w)
        report.samples += 1
        rec = {"w": str(w), "factors": len(factors), "verdict": verdict.value.value}
        if verdict.trivial:
            if not searcher.check_certificate(verdict.certificate):
                raise AssertionError(f"certificate for phi({w}) failed to re-check")
            report.confirmed += 1
            rec["certificate_factors"] = len(verdict.certificate.factors)
        else:
            if P.oracle.exact and P.oracle.is_identity(P.phi(w)).nontrivial:
                report.refuted += 1
                rec["verdict"] = "Refuted"
            else:
                report.unknown += 1
        report.records.append(rec)
    return report


def reduced_words(letters: str, max_len: int) -> Iterator[Word]:
    """All freely reduced words of length 1..max_len in (length, lexicographic) order."""
    for n in range(1, max_len + 1):
        for tup in itertools.product(letters, repeat=n):
            if any(tup[i] == tup[i + 1].swapcase() for i in range(n - 1)):
                continue
            yield Word._trusted("".join(tup))


def depth_scan(P: HnnPresentation, len_max: int, n_max: int, semi: Optional[BaseOracle] = None,
               limit: Optional[int] = None) -> list[DepthWitness]:
    """Enumerate words up to len_max and keep those with depth in 1..n_max."""
    if not P.oracle.exact:
        raise IllFormedInput("depth_scan needs an exact base oracle for the nontrivial half")
    _check_square(P)
    found = []
    letters = P.alphabet.letters()
    for w in reduced_words(letters, len_max):
        prev = P.oracle.is_identity(w)
        if prev.trivial:
            continue
        img = w
        for n in range(1, n_max + 1):
            img = P.phi(img)
            cur = (semi or P.oracle).is_identity(img)
            if cur.trivial:
                found.append(depth_witness_check(w, n, P, semi))
                break
            if not cur.nontrivial:
                break
        if limit is not None and len(found) >= limit:
            break
    return [w for w in found if w.accepted]
