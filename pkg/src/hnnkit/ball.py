"""Finite balls in the Cayley 2-complex of an ascending HNN presentation.

Vertices are group elements identified through exact canonical forms, so
the ball is only built for presentations whose equality is decidable.
Edges carry positive labels; 2-cells are attached for every relator and
every conjugation relation whose whole boundary fits in the ball.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Callable, Mapping, Optional, Union

from .hnn import CanonicalForm, HnnPresentation, canonical_form
from .words import Word

__all__ = [
    "BALL_SCHEMA_VERSION",
    "UnsupportedPresentation",
    "Vertex",
    "Cell",
    "Ball",
    "build_ball",
    "components_minus",
    "export",
    "parse_ball_json",
]

BALL_SCHEMA_VERSION = "hnn-ball/1"


class UnsupportedPresentation(ValueError):
    pass


@dataclass(frozen=True)
class Vertex:
    id: int
    n: int
    w: Word
    m: int
    dist: int
    word: Word   # the BFS path label from the identity

    @property
    def level(self) -> int:
        return self.n - self.m


@dataclass(frozen=True)
class Cell:
    base: int
    tag: str           # "relator:<i>" or "conj:<g>"
    boundary: str
    vertices: tuple[int, ...]


class _Keyer:
    """Exact vertex identification for a presentation."""

    def __init__(self, P: HnnPresentation):
        if not P.identity_exact:
            raise UnsupportedPresentation("the presentation does not have exact equality")
        self.P = P
        self.direct = P.free_base
        self.buckets: dict[tuple[int, int], list[tuple[Word, int]]] = {}
        self.keys: dict[object, int] = {}

    def lookup(self, cf: CanonicalForm) -> tuple[object, Optional[int]]:
        if not cf.exact:
            raise UnsupportedPresentation(f"canonical form {cf} is not exact")
        if self.direct:
            key = (cf.n, cf.m, str(self.P.phi(cf.w, self.P.effective_depth)))
            return key, self.keys.get(key)
        for w, vid in self.buckets.get((cf.n, cf.m), ()):
            if self.P.base_identity(w * cf.w.inverse()).trivial:
                return (cf.n, cf.m, str(w)), vid
        return (cf.n, cf.m, str(cf.w)), None

    def add(self, cf: CanonicalForm, key, vid: int):
        if self.direct:
            self.keys[key] = vid
        else:
            self.buckets.setdefault((cf.n, cf.m), []).append((cf.w, vid))


@dataclass
class Ball:
    presentation: HnnPresentation
    radius: int
    vertices: list[Vertex]
    edges: list[tuple[int, str, int]]
    cells: list[Cell]

    def __post_init__(self):
        self._out: dict[int, dict[str, int]] = {v.id: {} for v in self.vertices}
        for s, g, d in self.edges:
            self._out[s][g] = d
            self._out[d][g.upper()] = s

    def neighbor(self, v: int, letter: str) -> Optional[int]:
        return self._out[v].get(letter)

    def neighbors(self, v: int) -> list[int]:
        return sorted(set(self._out[v].values()))

    def follow(self, v: int, word: str) -> Optional[list[int]]:
        """Vertices visited reading word from v, or None if it leaves the ball."""
        path = [v]
        for c in word:
            v = self._out[v].get(c)
            if v is None:
                return None
            path.append(v)
        return path

    def level(self, v: int) -> int:
        return self.vertices[v].level

    def __len__(self) -> int:
        return len(self.vertices)


def build_ball(P: HnnPresentation, radius: int) -> Ball:
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    keyer = _Keyer(P)
    letters = P.alphabet.letters(with_stable=True)
    root_cf = canonical_form(Word(), P)
    key, _ = keyer.lookup(root_cf)
    keyer.add(root_cf, key, 0)
    vertices = [Vertex(0, root_cf.n, root_cf.w, root_cf.m, 0, Word())]
    arrows: dict[tuple[int, str], int] = {}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        vu = vertices[u]
        base = str(CanonicalForm(vu.n, vu.w, vu.m, stable=P.stable).word())
        for c in letters:
            cf = canonical_form(Word(base + c), P)
            key, vid = keyer.lookup(cf)
            if vid is None:
                if vu.dist == radius:
                    continue
                vid = len(vertices)
                keyer.add(cf, key, vid)
                vertices.append(Vertex(vid, cf.n, cf.w, cf.m, vu.dist + 1, vu.word * c))
                queue.append(vid)
            arrows[(u, c)] = vid
    edges = sorted({(u, c, v) if c.islower() else (v, c.lower(), u) for (u, c), v in arrows.items()})
    ball = Ball(P, radius, vertices, edges, [])
    cells = []
    relations = [(f"relator:{i}", str(r)) for i, r in enumerate(P.relators)]
    relations += [(f"conj:{g}", str(P.conjugation_boundary(g))) for g in P.alphabet]
    for v in vertices:
        for tag, word in relations:
            path = ball.follow(v.id, word)
            if path is not None and path[-1] == v.id:
                cells.append(Cell(v.id, tag, word, tuple(path[:-1])))
    ball.cells = cells
    return ball


def components_minus(ball: Ball, removed: Callable[[Vertex], bool]) -> list[list[int]]:
    """Connected components of the 1-skeleton after deleting ``removed`` vertices.

    Components are listed by their least vertex id (BFS order) and each is
    sorted by id.
    """
    keep = [not removed(v) for v in ball.vertices]
    comp = [-1] * len(ball.vertices)
    out: list[list[int]] = []
    for v in ball.vertices:
        if not keep[v.id] or comp[v.id] >= 0:
            continue
        cid = len(out)
        members = [v.id]
        comp[v.id] = cid
        queue = deque([v.id])
        while queue:
            u = queue.popleft()
            for x in ball.neighbors(u):
                if keep[x] and comp[x] < 0:
                    comp[x] = cid
                    members.append(x)
                    queue.append(x)
        out.append(sorted(members))
    return out


def _ball_json(ball: Ball, labels: Optional[Mapping[int, str]] = None) -> dict:
    return {
        "schema": BALL_SCHEMA_VERSION,
        "presentation": ball.presentation.to_json(),
        "radius": ball.radius,
        "vertices": [
            {"id": v.id, "n": v.n, "w": str(v.w), "m": v.m, "level": v.level, "dist": v.dist,
             "word": str(v.word), **({"region": labels[v.id]} if labels and v.id in labels else {})}
            for v in ball.vertices
        ],
        "edges": [[s, g, d] for s, g, d in ball.edges],
        "cells": [{"base": c.base, "tag": c.tag, "boundary": c.boundary, "vertices": list(c.vertices)}
                  for c in ball.cells],
    }


def export(ball: Ball, fmt: str = "json", labels: Optional[Mapping[int, str]] = None) -> bytes:
    """Serialize a ball as DOT or versioned JSON; ``labels`` adds region names."""
    if fmt == "json":
        return (json.dumps(_ball_json(ball, labels), indent=1, sort_keys=True) + "\n").encode()
    if fmt == "dot":
        lines = ["digraph ball {", "  node [shape=circle];"]
        for v in ball.vertices:
            text = f"{v.word or '1'}\\nP={v.level}"
            if labels and v.id in labels:
                text += f"\\n{labels[v.id]}"
            attrs = f'label="{text}"'
            if v.id == 0:
                attrs += " shape=doublecircle"
            lines.append(f"  v{v.id} [{attrs}];")
        for s, g, d in ball.edges:
            lines.append(f'  v{s} -> v{d} [label="{g}"];')
        lines.append("}")
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}")


def parse_ball_json(data: Union[str, bytes]) -> Ball:
    d = json.loads(data)
    if d.get("schema") != BALL_SCHEMA_VERSION:
        raise ValueError(f"unsupported ball schema {d.get('schema')!r}")
    P = HnnPresentation.from_json(d["presentation"])
    vertices = [Vertex(v["id"], v["n"], Word(v["w"]), v["m"], v["dist"], Word(v["word"])) for v in d["vertices"]]
    edges = [(s, g, t) for s, g, t in d["edges"]]
    cells = [Cell(c["base"], c["tag"], c["boundary"], tuple(c["vertices"])) for c in d["cells"]]
    return Ball(P, d["radius"], vertices, edges, cells)
