"""Ready-made presentations used by the tests, demos and the CLI."""
from __future__ import annotations

import copy

from .hnn import HnnPresentation
from .oracles import GRIGORCHUK_ROOTS

__all__ = ["PRESETS", "preset", "preset_json"]

PRESETS: dict[str, dict] = {
    "bs12": {
        "name": "bs12",
        "generators": ["a"],
        "stable": "t",
        "relators": [],
        "phi": {"a": "aa"},
        "base_oracle": "free",
        "depth_bound": 0,
        "notes": "<t, a | t^-1 a t = a^2>, the solvable Baumslag-Solitar group BS(1,2)",
    },
    "bs23": {
        "name": "bs23",
        "generators": ["a", "b"],
        "stable": "t",
        "relators": ["BaabAAA"],
        "phi": {"a": "aa", "b": "b"},
        "base_oracle": "bs:2,3",
        "depth_bound": None,
        # phi(b^-1 a b a^-1) = b^-1 a^2 b a^-2 = a in BS(2,3), so phi is onto
        "section": {"a": "BabA", "b": "b"},
        "notes": "BS(2,3) base with a -> a^2, b -> b; unbounded depth, [b^-n a b^n, a] has depth n",
    },
    "bs23-split": {
        "name": "bs23-split",
        "generators": ["a", "b"],
        "stable": "t",
        "relators": ["BaabAAA"],
        "phi": {"a": "a", "b": "b"},
        "base_oracle": "bs:2,3",
        "depth_bound": 0,
        "notes": "BS(2,3) x Z; identity endomorphism, exact equality",
    },
    "grigorchuk": {
        "name": "grigorchuk",
        "generators": ["a", "c", "d"],
        "stable": "t",
        "relators": list(GRIGORCHUK_ROOTS),
        "phi": {"a": "aca", "c": "cd", "d": "c"},
        "base_oracle": "grigorchuk",
        "depth_bound": 0,
        "notes": "first Grigorchuk group with the Lysenok substitution; the oracle decides A directly",
    },
    "collapse": {
        "name": "collapse",
        "generators": ["a", "b"],
        "stable": "t",
        "relators": [],
        "phi": {"a": "a", "b": "a"},
        "base_oracle": "free",
        "depth_bound": None,
        "notes": "non-injective phi on a free base; the image ranks stabilize at m = 1",
    },
}


def preset_json(name: str) -> dict:
    try:
        return copy.deepcopy(PRESETS[name])
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None


def preset(name: str) -> HnnPresentation:
    return HnnPresentation.from_json(preset_json(name))
