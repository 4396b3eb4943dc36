"""Tokens, the atomic vocabulary that webs are made of.

Base systems use named atoms; constructed systems use pair, tag, finite-set
and unit tokens.  Every token carries a structural sort key (variant rank,
then components), which gives a total order on all tokens.  All collections
of tokens in this package are deduplicated and, wherever they are printed or
compared as sequences, sorted by that key, so output is deterministic across
runs regardless of hash randomization.
"""

from __future__ import annotations

from typing import Iterable


class Token:
    """Common behaviour: value equality, cached hash, total structural order."""

    __slots__ = ("_key", "_hash")

    def key(self) -> tuple:
        return self._key

    def __eq__(self, other):
        return isinstance(other, Token) and self._key == other._key

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self._key < other._key

    def __le__(self, other):
        return self._key <= other._key

    def text(self) -> str:
        raise NotImplementedError

    def __repr__(self):
        return self.text()


class Atom(Token):
    """A named base token."""

    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name
        self._key = (0, name)
        self._hash = hash(self._key)

    def text(self):
        return self.name


class StarT(Token):
    """The unit token, written ``*``."""

    __slots__ = ()

    def __init__(self):
        self._key = (1,)
        self._hash = hash(self._key)

    def text(self):
        return "*"


STAR = StarT()


class PairT(Token):
    """A pair token, element of a product-shaped web."""

    __slots__ = ("left", "right")

    def __init__(self, left: Token, right: Token):
        self.left = left
        self.right = right
        self._key = (2, left._key, right._key)
        self._hash = hash(self._key)

    def text(self):
        return f"({self.left.text()},{self.right.text()})"


class LeftT(Token):
    """A token tagged as coming from the left component of a sum-shaped web."""

    __slots__ = ("inner",)

    def __init__(self, inner: Token):
        self.inner = inner
        self._key = (3, inner._key)
        self._hash = hash(self._key)

    def text(self):
        return f"L {self.inner.text()}"


class RightT(Token):
    """A token tagged as coming from the right component of a sum-shaped web."""

    __slots__ = ("inner",)

    def __init__(self, inner: Token):
        self.inner = inner
        self._key = (4, inner._key)
        self._hash = hash(self._key)

    def text(self):
        return f"R {self.inner.text()}"


class FinsetT(Token):
    """A finite-set token; elements are stored sorted and deduplicated."""

    __slots__ = ("elems",)

    def __init__(self, elems: Iterable[Token] = ()):
        uniq = {}
        for e in elems:
            uniq[e._key] = e
        self.elems = tuple(uniq[k] for k in sorted(uniq))
        self._key = (5, tuple(e._key for e in self.elems))
        self._hash = hash(self._key)

    def as_set(self) -> frozenset:
        return frozenset(self.elems)

    def text(self):
        if not self.elems:
            return "∅"
        return "{" + ",".join(e.text() for e in self.elems) + "}"


def atoms(names: Iterable[str]) -> frozenset:
    return frozenset(Atom(n) for n in names)


def sort_tokens(tokens: Iterable[Token]) -> list:
    return sorted(tokens, key=lambda t: t._key)


def set_text(tokens: Iterable[Token]) -> str:
    """Canonical text for a set of tokens; also the text of the matching FinsetT."""
    toks = sort_tokens(tokens)
    if not toks:
        return "∅"
    return "{" + ",".join(t.text() for t in toks) + "}"
