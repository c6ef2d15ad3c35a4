"""Free-group words and substitution endomorphisms.

Words are written one character per letter: a lowercase letter is a
generator, the matching uppercase letter is its inverse.  ``"BabaBAbA"``
is b^-1 a b a b^-1 a^-1 b a^-1.  Every :class:`Word` is freely reduced.
"""
from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Union

__all__ = [
    "IllFormedInput",
    "Alphabet",
    "Word",
    "Endomorphism",
    "RelatorSet",
    "reduce",
    "free_reduce",
    "join_reduced",
    "cyclic_reduce",
    "cyclic_core",
    "apply_endo",
    "iterate_relators",
    "commutator",
    "parse_expression",
]


class IllFormedInput(ValueError):
    """Raised for words, tables or presentations that cannot be parsed."""


def free_reduce(s: str) -> str:
    """Cancel adjacent inverse pairs in a raw letter string."""
    out: list[str] = []
    for c in s:
        if out and out[-1] == c.swapcase():
            out.pop()
        else:
            out.append(c)
    return "".join(out)


def join_reduced(x: str, y: str) -> str:
    """Concatenate two freely reduced strings, cancelling only at the seam."""
    i, lx = 0, len(x)
    n = min(lx, len(y))
    while i < n and x[lx - 1 - i] == y[i].swapcase():
        i += 1
    return x[:lx - i] + y[i:]


def _invert(s: str) -> str:
    return s[::-1].swapcase()


class Alphabet:
    """An ordered set of single-letter generator names."""

    __slots__ = ("generators", "stable")

    def __init__(self, generators: Iterable[str], stable: str = "t"):
        gens = tuple(generators)
        if not gens:
            raise IllFormedInput("alphabet must be nonempty")
        if len(set(gens)) != len(gens):
            raise IllFormedInput(f"duplicate generators in {gens}")
        for g in gens:
            if len(g) != 1 or not g.isalpha() or not g.islower():
                raise IllFormedInput(f"generator names are single lowercase letters, got {g!r}")
        if len(stable) != 1 or not stable.islower():
            raise IllFormedInput(f"bad stable letter {stable!r}")
        if stable in gens:
            raise IllFormedInput(f"stable letter {stable!r} used as a base generator")
        self.generators = gens
        self.stable = stable

    def __iter__(self) -> Iterator[str]:
        return iter(self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def __contains__(self, g: object) -> bool:
        return g in self.generators

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Alphabet) and self.generators == other.generators
                and self.stable == other.stable)

    def __hash__(self) -> int:
        return hash((self.generators, self.stable))

    def __repr__(self) -> str:
        return f"Alphabet({''.join(self.generators)!r}, stable={self.stable!r})"

    def letters(self, with_stable: bool = False) -> str:
        """All signed letters in canonical order: a A b B ... [t T]."""
        gens = self.generators + ((self.stable,) if with_stable else ())
        return "".join(g + g.upper() for g in gens)


class Word:
    """A freely reduced word.  Immutable and hashable."""

    __slots__ = ("_s",)

    def __init__(self, letters: Union[str, "Word", Iterable[tuple[str, int]]] = ""):
        if isinstance(letters, Word):
            self._s = letters._s
            return
        if not isinstance(letters, str):
            letters = "".join(g if e > 0 else g.upper() for g, e in letters)
        for c in letters:
            if not c.isalpha():
                raise IllFormedInput(f"bad letter {c!r} in word {letters!r}")
        self._s = free_reduce(letters)

    @classmethod
    def _trusted(cls, s: str) -> "Word":
        w = object.__new__(cls)
        w._s = s
        return w

    def __str__(self) -> str:
        return self._s

    def __repr__(self) -> str:
        return f"Word({self._s!r})"

    def __len__(self) -> int:
        return len(self._s)

    def __bool__(self) -> bool:
        return bool(self._s)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Word):
            return self._s == other._s
        if isinstance(other, str):
            return self._s == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._s)

    def __lt__(self, other: "Word") -> bool:
        return (len(self._s), self._s) < (len(other._s), other._s)

    def __mul__(self, other: Union["Word", str]) -> "Word":
        o = other._s if isinstance(other, Word) else Word(other)._s
        return Word._trusted(join_reduced(self._s, o))

    def __rmul__(self, other: str) -> "Word":
        return Word(other) * self

    def __pow__(self, k: int) -> "Word":
        if k < 0:
            return self.inverse() ** (-k)
        return Word._trusted(free_reduce(self._s * k))

    def __getitem__(self, i) -> str:
        return self._s[i]

    def __iter__(self) -> Iterator[str]:
        return iter(self._s)

    @property
    def letters(self) -> tuple[tuple[str, int], ...]:
        """The word as (generator, sign) pairs."""
        return tuple((c.lower(), 1 if c.islower() else -1) for c in self._s)

    def inverse(self) -> "Word":
        return Word._trusted(_invert(self._s))

    def exponent_sum(self, g: str) -> int:
        return self._s.count(g) - self._s.count(g.upper())

    def generators(self) -> set[str]:
        return {c.lower() for c in self._s}

    def conjugate(self, u: Union["Word", str]) -> "Word":
        """u * self * u^-1."""
        u = Word(u)
        return Word._trusted(join_reduced(join_reduced(u._s, self._s), _invert(u._s)))


def reduce(raw: Union[str, Iterable[tuple[str, int]]], alphabet: Alphabet | Iterable[str] | None = None) -> Word:
    """Free reduction, with optional alphabet validation."""
    w = Word(raw)
    if alphabet is not None:
        allowed = set(alphabet)
        if isinstance(alphabet, Alphabet):
            allowed.add(alphabet.stable)
        for c in (raw if isinstance(raw, str) else str(w)):
            if c.lower() not in allowed:
                raise IllFormedInput(f"unknown generator {c!r}")
    return w


def cyclic_core(w: Word) -> tuple[Word, Word]:
    """Split w = c * core * c^-1 with core cyclically reduced."""
    s = str(w)
    i, j = 0, len(s)
    while j - i >= 2 and s[i] == s[j - 1].swapcase():
        i += 1
        j -= 1
    return Word._trusted(s[i:j]), Word._trusted(s[:i])


def cyclic_reduce(w: Word) -> Word:
    return cyclic_core(w)[0]


def commutator(x: Union[Word, str], y: Union[Word, str]) -> Word:
    """[x, y] = x y x^-1 y^-1."""
    x, y = Word(x), Word(y)
    return x * y * x.inverse() * y.inverse()


class Endomorphism:
    """A substitution table generator -> word, extended to a homomorphism."""

    __slots__ = ("table", "_img", "_powers")

    def __init__(self, table: Mapping[str, Union[Word, str]]):
        tab = {}
        for g, img in table.items():
            if len(g) != 1 or not g.islower():
                raise IllFormedInput(f"bad generator {g!r} in endomorphism table")
            tab[g] = Word(img)
        self.table: dict[str, Word] = tab
        self._img = {}
        for g, img in tab.items():
            self._img[g] = str(img)
            self._img[g.upper()] = _invert(str(img))
        self._powers: dict[int, Endomorphism] = {1: self}

    @classmethod
    def identity(cls, alphabet: Iterable[str]) -> "Endomorphism":
        return cls({g: g for g in alphabet})

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Endomorphism) and self.table == other.table

    def __hash__(self) -> int:
        return hash(tuple(sorted((g, str(w)) for g, w in self.table.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{g}->{w or '1'}" for g, w in self.table.items())
        return f"Endomorphism({body})"

    def __getitem__(self, g: str) -> Word:
        return self.table[g]

    @property
    def alphabet(self) -> tuple[str, ...]:
        return tuple(self.table)

    def _apply_raw(self, s: str) -> str:
        img = self._img
        try:
            return free_reduce("".join([img[c] for c in s]))
        except KeyError as exc:
            raise IllFormedInput(f"letter {exc.args[0]!r} not in endomorphism domain") from None

    def power(self, k: int) -> "Endomorphism":
        """The composite phi^k as a single substitution table."""
        if k < 0:
            raise ValueError("k must be nonnegative")
        if k == 0:
            return Endomorphism.identity(self.table)
        if k not in self._powers:
            half = self.power(k // 2)
            p = Endomorphism({g: half._apply_raw(str(w)) for g, w in half.table.items()})
            if k % 2:
                p = Endomorphism({g: self._apply_raw(str(w)) for g, w in p.table.items()})
            self._powers[k] = p
        return self._powers[k]

    def __call__(self, w: Union[Word, str], k: int = 1) -> Word:
        if k == 0:
            return Word(w)
        return Word._trusted(self.power(k)._apply_raw(str(Word(w))))

    def compose(self, other: "Endomorphism") -> "Endomorphism":
        """self after other: g -> self(other(g))."""
        return Endomorphism({g: self(w) for g, w in other.table.items()})

    def is_identity_on(self, alphabet: Iterable[str]) -> bool:
        return all(self.table.get(g) == g for g in alphabet)


def apply_endo(phi: Endomorphism, w: Union[Word, str], k: int = 1) -> Word:
    if k < 0:
        raise ValueError("k must be nonnegative")
    return phi(w, k)


class RelatorSet:
    """Finite set of nonempty cyclically reduced relators, in a fixed order."""

    __slots__ = ("relators",)

    def __init__(self, relators: Iterable[Union[Word, str]] = ()):
        seen: dict[Word, None] = {}
        for r in relators:
            c = cyclic_reduce(Word(r))
            if not c:
                raise IllFormedInput(f"relator {r!r} is trivial in the free group")
            seen[c] = None
        self.relators: tuple[Word, ...] = tuple(seen)

    def __iter__(self) -> Iterator[Word]:
        return iter(self.relators)

    def __len__(self) -> int:
        return len(self.relators)

    def __getitem__(self, i: int) -> Word:
        return self.relators[i]

    def __repr__(self) -> str:
        return f"RelatorSet({[str(r) for r in self.relators]})"


def iterate_relators(R: Iterable[Union[Word, str]], phi: Endomorphism, k: int) -> frozenset[Word]:
    """{phi^i(r) : r in R, 0 <= i <= k}, cyclically reduced, trivial images dropped."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = set()
    for r in R:
        w = Word(r)
        for _ in range(k + 1):
            c = cyclic_reduce(w)
            if c:
                out.add(c)
            w = phi(w)
    return frozenset(out)


_TOKEN = re.compile(r"\s*(\[|\]|\(|\)|,|\^-?\d+|[A-Za-z]|-?1(?![\d^]))")


@lru_cache(maxsize=256)
def parse_expression(text: str) -> Word:
    """Parse the extended syntax: letters, ``x^n``, ``(...)``, ``[u, v]``.

    >>> str(parse_expression("[b^-1 a b, a]"))
    'BabaBAbA'
    """
    tokens = [m for m in _TOKEN.findall(text) if m]
    if "".join(tokens).replace(" ", "") != re.sub(r"\s+", "", text):
        raise IllFormedInput(f"cannot parse {text!r}")
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise IllFormedInput(f"expected {expected or 'token'} in {text!r}")
        pos += 1
        return tok

    def product(stop):
        w = Word()
        while peek() is not None and peek() not in stop:
            w = w * atom()
        return w

    def atom():
        tok = take()
        if tok == "(":
            w = product({")"})
            take(")")
        elif tok == "[":
            x = product({","})
            take(",")
            y = product({"]"})
            take("]")
            w = commutator(x, y)
        elif tok in ("1", "-1"):
            w = Word()
        elif tok.isalpha():
            w = Word(tok)
        else:
            raise IllFormedInput(f"unexpected {tok!r} in {text!r}")
        while peek() is not None and peek().startswith("^"):
            w = w ** int(take()[1:])
        return w

    result = product(set())
    if pos != len(tokens):
        raise IllFormedInput(f"trailing input in {text!r}")
    return result
