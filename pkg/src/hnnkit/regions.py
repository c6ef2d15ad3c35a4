"""Where a vertex sits relative to D(N, M) = t^N A {1, t^-1, ..., t^-M}.

Classification uses only the level of v and one coset question, namely
whether t^-N v t^(N - P(v)) lies in A.  No ball is consulted; the ball
module serves as an independent check in the tests.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Union

from .depth import reduced_words
from .hnn import HnnPresentation, Undecided, canonical_form, in_coset_tNA, level
from .words import Word, reduce

__all__ = [
    "RegionLabel",
    "Classification",
    "ContractError",
    "in_D",
    "classify",
    "ancestor",
    "same_coset",
    "check_up_lemma",
    "coset_geometry",
]


class RegionLabel(enum.Enum):
    InD = "InD"
    SpecialK0 = "SpecialK0"
    OtherComponent = "OtherComponent"
    Unknown = "Unknown"

    def __str__(self) -> str:
        return self.value


class ContractError(ValueError):
    """A documented precondition does not hold."""


def _show(x) -> str:
    return {True: "True", False: "False", None: "Unknown"}.get(x, str(x))


@dataclass(frozen=True)
class Classification:
    label: RegionLabel
    level: int
    window: tuple[int, int]
    coset: Optional[bool] | str  # "n/a" when the level decides on its own

    def __str__(self) -> str:
        lo, hi = self.window
        coset = self.coset if isinstance(self.coset, str) else _show(self.coset)
        return f"{self.label} (level={self.level}, window=[{lo},{hi}], coset={coset})"

    def to_json(self) -> dict:
        return {"label": self.label.value, "level": self.level, "window": list(self.window),
                "coset": self.coset if isinstance(self.coset, str) else _show(self.coset)}


def in_D(v: Union[Word, str], N: int, M: int, P: HnnPresentation) -> Optional[bool]:
    v = reduce(v)
    lv = level(v, P.stable)
    if not N - M <= lv <= N:
        return False
    return in_coset_tNA(v, N, P)


def classify(v: Union[Word, str], N: int, M: int, P: HnnPresentation) -> Classification:
    v = reduce(v)
    lv = level(v, P.stable)
    window = (N - M, N)
    if lv > N:
        return Classification(RegionLabel.SpecialK0, lv, window, "n/a")
    coset = in_coset_tNA(v, N, P)
    if coset is None:
        label = RegionLabel.Unknown
    elif lv >= N - M:
        label = RegionLabel.InD if coset else RegionLabel.SpecialK0
    else:
        label = RegionLabel.OtherComponent if coset else RegionLabel.SpecialK0
    return Classification(label, lv, window, coset)


def ancestor(v: Union[Word, str], N: int, M: int, P: HnnPresentation) -> Word:
    """v t^(N-M-1-P(v)): the vertex whose coset labels v's component below D."""
    v = reduce(v)
    k = N - M - 1 - level(v, P.stable)
    if k < 0:
        raise ContractError(f"{v} lies above level {N - M - 1}")
    return v * Word(P.stable * k)


def same_coset(x: Union[Word, str], y: Union[Word, str], P: HnnPresentation) -> Optional[bool]:
    """xA = yA ?"""
    d = reduce(x).inverse() * reduce(y)
    if level(d, P.stable) != 0:
        return False
    cf = canonical_form(d, P)
    if cf.n == 0:
        return True
    return False if cf.exact else None


def check_up_lemma(v: Union[Word, str], N: int, M: int, n_max: int, P: HnnPresentation,
                   suffix_len: int = 3) -> bool:
    """No vertex v t^n u (0 <= n <= n_max, |u| <= suffix_len) lies in D."""
    c = classify(v, N, M, P)
    if c.label is not RegionLabel.SpecialK0:
        raise ContractError(f"{v} is {c.label}, not SpecialK0")
    v = reduce(v)
    suffixes = [Word()] + list(reduced_words(P.alphabet.letters(), suffix_len))
    for n in range(n_max + 1):
        x = v * Word(P.stable * n)
        for u in suffixes:
            r = in_D(x * u, N, M, P)
            if r is None:
                raise Undecided(f"in_D undecided for {x * u}")
            if r:
                return False
    return True


def coset_geometry(v: Union[Word, str], w: Union[Word, str], P: HnnPresentation, cap: int = 64) -> Optional[int]:
    """n >= 0 with w t^n in vA (wA is n levels directly below vA), else None."""
    v, w = reduce(v), reduce(w)
    n = level(v, P.stable) - level(w, P.stable)
    if n < 0 or n > cap:
        return None
    cf = canonical_form(v.inverse() * w * Word(P.stable * n), P)
    if cf.n == 0:
        return n
    if not cf.exact:
        raise Undecided(f"coset comparison of {v} and {w} is undecided")
    return None
