"""Stallings foldings for finitely generated subgroups of free groups.

Each edge of the folded graph carries a *provenance* word over the names
of the input generators.  Reading a closed path at the base vertex and
multiplying provenance words gives an expression of the path label in
terms of the generators, which is how :func:`member` returns preimages.
Folding preserves this by re-gauging a vertex (left-multiplying its
outgoing provenances and right-dividing its incoming ones) before two
same-label edges are identified.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Union

from .words import Alphabet, Endomorphism, IllFormedInput, Word

__all__ = [
    "SubgroupGraph",
    "StabilizationNotFound",
    "Monomorphization",
    "build_subgroup_graph",
    "image_graph",
    "member",
    "image_rank_sequence",
    "monomorphize",
]

_FRESH = "xyzuvwpqrsnmkjhgfedcba"


class StabilizationNotFound(RuntimeError):
    def __init__(self, bound: int):
        super().__init__(f"rank sequence did not stabilize within {bound} iterations")
        self.bound = bound


class _Edge:
    __slots__ = ("src", "label", "dst", "lam")

    def __init__(self, src, label, dst, lam):
        self.src, self.label, self.dst, self.lam = src, label, dst, lam


class _Folder:
    """Mutable graph used while folding; edges are positive-label objects."""

    def __init__(self, track: bool):
        self.track = track
        self.adj: dict[int, dict[str, list[_Edge]]] = {0: {}}
        self.next_id = 1

    def new_vertex(self) -> int:
        v = self.next_id
        self.next_id += 1
        self.adj[v] = {}
        return v

    def _attach(self, e: _Edge):
        self.adj[e.src].setdefault(e.label, []).append(e)
        self.adj[e.dst].setdefault(e.label.upper(), []).append(e)

    def _detach(self, e: _Edge):
        self.adj[e.src][e.label].remove(e)
        self.adj[e.dst][e.label.upper()].remove(e)

    def add_petal(self, word: str, name: Optional[str]):
        if not word:
            return
        prev = 0
        for i, c in enumerate(word):
            nxt = 0 if i == len(word) - 1 else self.new_vertex()
            lam = None
            if self.track:
                lam = Word(name) if i == 0 else Word()
            if c.islower():
                self._attach(_Edge(prev, c, nxt, lam))
            else:
                self._attach(_Edge(nxt, c.lower(), prev, lam.inverse() if lam is not None else None))
            prev = nxt

    @staticmethod
    def _traverse(e: _Edge, v: int, letter: str):
        """(far end, provenance) of e traversed from v reading `letter`."""
        if letter.islower():
            return e.dst, e.lam
        return e.src, (e.lam.inverse() if e.lam is not None else None)

    def _gauge(self, y: int, g: Word):
        seen = set()
        for edges in self.adj[y].values():
            for e in edges:
                if id(e) in seen:
                    continue
                seen.add(id(e))
                lam = e.lam
                if e.src == y:
                    lam = g * lam
                if e.dst == y:
                    lam = lam * g.inverse()
                e.lam = lam

    def _merge(self, keep: int, gone: int):
        moved = []
        for edges in list(self.adj[gone].values()):
            for e in list(edges):
                if e not in moved:
                    moved.append(e)
        for e in moved:
            self._detach(e)
        for e in moved:
            if e.src == gone:
                e.src = keep
            if e.dst == gone:
                e.dst = keep
            self._attach(e)
        del self.adj[gone]

    def fold(self):
        work = deque(self.adj)
        while work:
            v = work.popleft()
            if v not in self.adj:
                continue
            for letter in list(self.adj[v]):
                if v not in self.adj:
                    break
                edges = self.adj[v].get(letter, [])
                if len(edges) < 2:
                    continue
                e1, e2 = edges[0], edges[1]
                f1, l1 = self._traverse(e1, v, letter)
                f2, l2 = self._traverse(e2, v, letter)
                if f1 != f2 and self.track:
                    self._equalize(v, f1, l1, f2, l2)
                if f1 != f2:
                    keep, gone = (f2, f1) if f1 != 0 and f2 == 0 else (f1, f2)
                    self._merge(keep, gone)
                    v = keep if v == gone else v
                    work.append(keep)
                # e2 now duplicates e1 (same ends); provenance mismatch is a kernel element.
                self._detach(e2)
                work.append(v)
                break

    def _equalize(self, v, f1, l1, f2, l2):
        if f2 not in (0, v):
            self._gauge(f2, l1.inverse() * l2)
        elif f1 not in (0, v):
            self._gauge(f1, l2.inverse() * l1)
        elif f2 == v:
            self._gauge(v, l1.inverse() * l2)
        else:
            self._gauge(v, l2.inverse() * l1)

    def trim(self):
        changed = True
        while changed:
            changed = False
            for v in list(self.adj):
                if v == 0:
                    continue
                deg = sum(len(es) for es in self.adj[v].values())
                if deg <= 1:
                    for es in list(self.adj[v].values()):
                        for e in list(es):
                            self._detach(e)
                    del self.adj[v]
                    changed = True


@dataclass(frozen=True)
class SubgroupGraph:
    """Folded core graph with base vertex 0 and BFS-canonical numbering."""

    out: tuple[dict[str, int], ...]
    provenance: Optional[dict[tuple[int, str], Word]] = field(default=None, compare=False)
    generator_names: tuple[str, ...] = field(default=(), compare=False)

    @property
    def num_vertices(self) -> int:
        return len(self.out)

    @property
    def edges(self) -> list[tuple[int, str, int]]:
        return [(u, c, v) for u, d in enumerate(self.out) for c, v in sorted(d.items()) if c.islower()]

    @property
    def rank(self) -> int:
        if not self.edges:
            return 0
        return len(self.edges) - self.num_vertices + 1

    def read(self, w: Union[Word, str]) -> tuple[Optional[int], Optional[Word]]:
        """Follow w from the base vertex; (end vertex or None, provenance product)."""
        v = 0
        parts = []
        for c in str(w):
            nxt = self.out[v].get(c)
            if nxt is None:
                return None, None
            if self.provenance is not None:
                parts.append(str(self.provenance[(v, c)]))
            v = nxt
        return v, (Word("".join(parts)) if self.provenance is not None else None)

    def contains(self, w: Union[Word, str]) -> bool:
        return self.read(w)[0] == 0

    def spanning_tree_paths(self) -> list[Word]:
        paths: list[Optional[Word]] = [None] * self.num_vertices
        paths[0] = Word()
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for c, v in sorted(self.out[u].items()):
                if paths[v] is None:
                    paths[v] = paths[u] * c
                    queue.append(v)
        return paths  # type: ignore[return-value]

    def free_basis(self) -> list[Word]:
        """Free basis from the BFS spanning tree: one word per non-tree edge."""
        paths = self.spanning_tree_paths()
        tree = set()
        for v in range(1, self.num_vertices):
            p = str(paths[v])
            u = self.read(p[:-1])[0]
            tree.add((u, p[-1], v) if p[-1].islower() else (v, p[-1].lower(), u))
        basis = []
        for u, c, v in self.edges:
            if (u, c, v) not in tree:
                basis.append(paths[u] * c * paths[v].inverse())
        return basis

    def to_dot(self, name: str = "subgroup") -> str:
        lines = [f"digraph {name} {{"]
        for v in range(self.num_vertices):
            shape = "doublecircle" if v == 0 else "circle"
            lines.append(f'  {v} [shape={shape}];')
        for u, c, v in self.edges:
            lines.append(f'  {u} -> {v} [label="{c}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_subgroup_graph(gens: Union[Mapping[str, Union[Word, str]], Iterable[Union[Word, str]]]) -> SubgroupGraph:
    """Fold the bouquet of the given generators into a core graph.

    Passing a mapping ``{name: word}`` turns on provenance tracking, so that
    :func:`member` can express accepted words in the names.
    """
    if isinstance(gens, Mapping):
        items = [(n, Word(w)) for n, w in gens.items()]
        for n, _ in items:
            if len(n) != 1 or not n.isalpha() or not n.islower():
                raise IllFormedInput(f"provenance names must be single lowercase letters, got {n!r}")
        track = True
    else:
        items = [(None, Word(w)) for w in gens]
        track = False
    f = _Folder(track)
    for name, w in items:
        f.add_petal(str(w), name)
    f.fold()
    f.trim()

    # renumber in BFS order from the base with letters in sorted order
    order = {0: 0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for letter in sorted(f.adj[u]):
            for e in f.adj[u][letter]:
                v = e.dst if letter.islower() else e.src
                if v not in order:
                    order[v] = len(order)
                    queue.append(v)
    out: list[dict[str, int]] = [dict() for _ in order]
    prov: Optional[dict[tuple[int, str], Word]] = {} if track else None
    for u, idx in order.items():
        for letter, edges in f.adj[u].items():
            for e in edges:
                v = e.dst if letter.islower() else e.src
                out[idx][letter] = order[v]
                if prov is not None:
                    prov[(idx, letter)] = e.lam if letter.islower() else e.lam.inverse()
    names = tuple(n for n, _ in items) if track else ()
    return SubgroupGraph(tuple(out), prov, names)


def image_graph(phi: Endomorphism, k: int = 1) -> SubgroupGraph:
    """Graph of phi^k(F) with provenance in the original generators."""
    pk = phi.power(k)
    return build_subgroup_graph({g: pk[g] for g in phi.alphabet})


def member(g: SubgroupGraph, w: Union[Word, str]) -> tuple[bool, Optional[Word]]:
    end, pre = g.read(Word(w))
    if end != 0:
        return False, None
    return True, pre


def image_rank_sequence(phi: Endomorphism, i_max: int) -> tuple[list[int], Optional[int]]:
    """Ranks of phi^i(F) for 0 <= i <= i_max and the first stabilization index."""
    if i_max < 1:
        raise ValueError("i_max must be at least 1")
    ranks = [len(phi.alphabet)]
    basis = [Word(g) for g in phi.alphabet]
    for _ in range(i_max):
        graph = build_subgroup_graph([phi(b) for b in basis])
        basis = graph.free_basis()
        ranks.append(graph.rank)
    m = next((i for i in range(i_max) if ranks[i] == ranks[i + 1]), None)
    return ranks, m


@dataclass(frozen=True)
class Monomorphization:
    m: int
    basis: dict[str, Word]
    alphabet: Alphabet
    phi_prime: Endomorphism
    rho_prime: dict[str, Word]
    relators_prime: tuple[Word, ...] = ()


def monomorphize(phi: Endomorphism, relators: Iterable[Union[Word, str]] = (), bound: int = 12,
                 stable: str = "t") -> Monomorphization:
    """Replace phi by an injective endomorphism of a free basis of phi^m(F)."""
    ranks, m = image_rank_sequence(phi, bound)
    if m is None:
        raise StabilizationNotFound(bound)
    gens = phi.alphabet
    if m == 0:
        basis = {g: Word(g) for g in gens}
    else:
        words = build_subgroup_graph([phi(g, m) for g in gens]).free_basis()
        fresh = [c for c in _FRESH if c not in gens and c != stable]
        basis = dict(zip(fresh, words))
    graph = build_subgroup_graph(basis)

    def express(w: Word) -> Word:
        ok, pre = member(graph, w)
        if not ok:
            raise AssertionError(f"{w} not in phi^{m}(F)")
        return pre

    phi_prime = Endomorphism({x: express(phi(b)) for x, b in basis.items()})
    rho = {g: express(phi(g, m)) for g in gens}
    rho[stable] = Word(stable)
    rels = tuple(express(phi(Word(r), m)) for r in relators)
    return Monomorphization(m, basis, Alphabet(tuple(basis), stable), phi_prime, rho, rels)
