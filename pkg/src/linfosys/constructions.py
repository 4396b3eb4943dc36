"""Connective constructions on systems and their structural morphisms.

The additive product and sum share one tagged-union construction, so their
coincidence is a checkable equality of systems rather than an isomorphism.
The multiplicative tensor and the linear arrow use pair tokens.  The unit
of the tensor and the dualizing candidate are one and the same one-token
system.  Structural isomorphisms are transports of token bijections, which
keeps their inverses analytic.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable

from .core import LIS
from .morph import LinRel, compose, transport
from .tokens import STAR, FinsetT, LeftT, PairT, RightT, Token


# ---------------------------------------------------------------- units


def top_obj() -> LIS:
    """The empty system: terminal and initial, unit of the additives."""
    return LIS(frozenset(), lambda s: True, lambda x, y: False, ((),), "top")


def one_obj() -> LIS:
    """The one-token system: unit of the tensor."""
    web = frozenset([STAR])
    return LIS(web, lambda s: True, lambda x, y: True, (web,), "1")


def bot_obj() -> LIS:
    """The multiplicative co-unit, equal to the tensor unit in this category."""
    return one_obj()


# ---------------------------------------------------------------- additives


def _untag(s: Iterable[Token]):
    lefts = set()
    rights = set()
    for t in s:
        if isinstance(t, LeftT):
            lefts.add(t.inner)
        elif isinstance(t, RightT):
            rights.add(t.inner)
        else:
            return None, None
    return frozenset(lefts), frozenset(rights)


def _additive(a: LIS, b: LIS, symbol: str) -> LIS:
    web = frozenset(LeftT(t) for t in a.web) | frozenset(RightT(t) for t in b.web)

    def con(s):
        lefts, rights = _untag(s)
        if lefts is None:
            return False
        return a.con(lefts) and b.con(rights)

    def ent(x, y):
        if isinstance(x, LeftT) and isinstance(y, LeftT):
            return a.entails(x.inner, y.inner)
        if isinstance(x, RightT) and isinstance(y, RightT):
            return b.entails(x.inner, y.inner)
        return False

    return LIS(web, con, ent, None, f"({a.name}{symbol}{b.name})")


def with_obj(a: LIS, b: LIS) -> LIS:
    """Tagged-union product: consistency componentwise, tags never entail across."""
    return _additive(a, b, "&")


def plus_obj(a: LIS, b: LIS) -> LIS:
    """Tagged-union coproduct; equal to with_obj as a system."""
    return _additive(a, b, "+")


def proj(i: int, a: LIS, b: LIS) -> LinRel:
    src = with_obj(a, b)
    comp, tag = (a, LeftT) if i == 1 else (b, RightT)
    return LinRel(src, comp, ((tag(x), y) for x, y in comp.entail_pairs()))


def inj(i: int, a: LIS, b: LIS) -> LinRel:
    tgt = plus_obj(a, b)
    comp, tag = (a, LeftT) if i == 1 else (b, RightT)
    return LinRel(comp, tgt, ((x, tag(y)) for x, y in comp.entail_pairs()))


def pairing(r: LinRel, s: LinRel) -> LinRel:
    """The unique mediating morphism into the product."""
    if r.source.web != s.source.web:
        raise ValueError("object mismatch: pairing needs a common source")
    tgt = with_obj(r.target, s.target)
    pairs = [(x, LeftT(y)) for x, y in r.pairs]
    pairs += [(x, RightT(y)) for x, y in s.pairs]
    return LinRel(r.source, tgt, pairs)


def copairing(r: LinRel, s: LinRel) -> LinRel:
    """The unique mediating morphism out of the coproduct."""
    if r.target.web != s.target.web:
        raise ValueError("object mismatch: copairing needs a common target")
    src = plus_obj(r.source, s.source)
    pairs = [(LeftT(x), y) for x, y in r.pairs]
    pairs += [(RightT(x), y) for x, y in s.pairs]
    return LinRel(src, r.target, pairs)


def with_mor(r: LinRel, s: LinRel) -> LinRel:
    """Componentwise action on the additive product."""
    src = with_obj(r.source, s.source)
    tgt = with_obj(r.target, s.target)
    pairs = [(LeftT(x), LeftT(y)) for x, y in r.pairs]
    pairs += [(RightT(x), RightT(y)) for x, y in s.pairs]
    return LinRel(src, tgt, pairs)


# ---------------------------------------------------------------- tensor


def tensor_obj(a: LIS, b: LIS) -> LIS:
    web = frozenset(PairT(x, y) for x in a.web for y in b.web)

    def con(s):
        return a.con(frozenset(t.left for t in s)) and b.con(
            frozenset(t.right for t in s)
        )

    def ent(x, y):
        return a.entails(x.left, y.left) and b.entails(x.right, y.right)

    return LIS(web, con, ent, None, f"({a.name}*{b.name})")


def tensor_mor(r: LinRel, s: LinRel) -> LinRel:
    src = tensor_obj(r.source, s.source)
    tgt = tensor_obj(r.target, s.target)
    pairs = [
        (PairT(x, u), PairT(y, v))
        for x, y in r.pairs
        for u, v in s.pairs
    ]
    return LinRel(src, tgt, pairs)


# ------------------------------------------------- structural isomorphisms


def tensor_assoc(a: LIS, b: LIS, c: LIS) -> LinRel:
    """a*(b*c) -> (a*b)*c."""
    src = tensor_obj(a, tensor_obj(b, c))
    tgt = tensor_obj(tensor_obj(a, b), c)
    f = {
        t: PairT(PairT(t.left, t.right.left), t.right.right)
        for t in src.web
    }
    return transport(src, tgt, f)


def tensor_assoc_inv(a: LIS, b: LIS, c: LIS) -> LinRel:
    """(a*b)*c -> a*(b*c)."""
    src = tensor_obj(tensor_obj(a, b), c)
    tgt = tensor_obj(a, tensor_obj(b, c))
    f = {
        t: PairT(t.left.left, PairT(t.left.right, t.right))
        for t in src.web
    }
    return transport(src, tgt, f)


def tensor_sym(a: LIS, b: LIS) -> LinRel:
    """a*b -> b*a."""
    src = tensor_obj(a, b)
    tgt = tensor_obj(b, a)
    return transport(src, tgt, {t: PairT(t.right, t.left) for t in src.web})


def tensor_runit(a: LIS) -> LinRel:
    """a*1 -> a."""
    src = tensor_obj(a, one_obj())
    return transport(src, a, {t: t.left for t in src.web})


def tensor_lunit(a: LIS) -> LinRel:
    """1*a -> a."""
    src = tensor_obj(one_obj(), a)
    return transport(src, a, {t: t.right for t in src.web})


def _retag_right_nested(t: Token) -> Token:
    if isinstance(t, LeftT):
        return LeftT(LeftT(t.inner))
    if isinstance(t.inner, LeftT):
        return LeftT(RightT(t.inner.inner))
    return RightT(t.inner.inner)


def _retag_left_nested(t: Token) -> Token:
    if isinstance(t, RightT):
        return RightT(RightT(t.inner))
    if isinstance(t.inner, RightT):
        return RightT(LeftT(t.inner.inner))
    return LeftT(t.inner.inner)


def with_assoc(a: LIS, b: LIS, c: LIS) -> LinRel:
    """a&(b&c) -> (a&b)&c."""
    src = with_obj(a, with_obj(b, c))
    tgt = with_obj(with_obj(a, b), c)
    return transport(src, tgt, {t: _retag_right_nested(t) for t in src.web})


def with_assoc_inv(a: LIS, b: LIS, c: LIS) -> LinRel:
    """(a&b)&c -> a&(b&c)."""
    src = with_obj(with_obj(a, b), c)
    tgt = with_obj(a, with_obj(b, c))
    return transport(src, tgt, {t: _retag_left_nested(t) for t in src.web})


def with_sym(a: LIS, b: LIS) -> LinRel:
    """a&b -> b&a."""
    src = with_obj(a, b)
    tgt = with_obj(b, a)
    f = {
        t: RightT(t.inner) if isinstance(t, LeftT) else LeftT(t.inner)
        for t in src.web
    }
    return transport(src, tgt, f)


def with_runit(a: LIS) -> LinRel:
    """a&top -> a."""
    src = with_obj(a, top_obj())
    return transport(src, a, {t: t.inner for t in src.web})


def with_lunit(a: LIS) -> LinRel:
    """top&a -> a."""
    src = with_obj(top_obj(), a)
    return transport(src, a, {t: t.inner for t in src.web})


STRUCTURAL_ISOS = {
    "assocT": tensor_assoc,
    "symT": tensor_sym,
    "runitT": tensor_runit,
    "lunitT": tensor_lunit,
    "assocW": with_assoc,
    "symW": with_sym,
    "runitW": with_runit,
    "lunitW": with_lunit,
}


def structural_iso(kind: str, *systems: LIS) -> LinRel:
    return STRUCTURAL_ISOS[kind](*systems)


# ---------------------------------------------------------------- arrow


def lollipop_obj(a: LIS, b: LIS) -> LIS:
    """The linear function-space system.

    A finite set of pairs is consistent when every sub-selection with
    consistent first coordinates has consistent second coordinates; the
    selections range over the queried set only, never over the web.
    Entailment is contravariant in the first coordinate.
    """
    web = frozenset(PairT(x, y) for x in a.web for y in b.web)

    def con(s):
        items = list(s)
        for n in range(len(items) + 1):
            for sel in combinations(items, n):
                if a.con(frozenset(t.left for t in sel)) and not b.con(
                    frozenset(t.right for t in sel)
                ):
                    return False
        return True

    def ent(x, y):
        return a.entails(y.left, x.left) and b.entails(x.right, y.right)

    return LIS(web, con, ent, None, f"({a.name}-o{b.name})")


def cur(r: LinRel, a: LIS, c: LIS) -> LinRel:
    """Currying: a morphism a*c -> b becomes c -> (a -o b)."""
    expected = frozenset(PairT(x, y) for x in a.web for y in c.web)
    if r.source.web != expected:
        raise ValueError("object mismatch: source of r is not the stated tensor")
    tgt = lollipop_obj(a, r.target)
    return LinRel(c, tgt, ((t.right, PairT(t.left, y)) for t, y in r.pairs))


def uncur(s: LinRel, a: LIS, c: LIS, b: LIS) -> LinRel:
    """Inverse of currying: c -> (a -o b) becomes a*c -> b."""
    expected = frozenset(PairT(x, y) for x in a.web for y in b.web)
    if s.target.web != expected:
        raise ValueError("object mismatch: target of s is not the stated arrow")
    src = tensor_obj(a, c)
    return LinRel(src, b, ((PairT(t.left, x), t.right) for x, t in s.pairs))


def ev(a: LIS, b: LIS) -> LinRel:
    """Evaluation a*(a -o b) -> b."""
    src = tensor_obj(a, lollipop_obj(a, b))
    pairs = [
        (PairT(x, PairT(x2, y)), y2)
        for x, x2 in a.entail_pairs()
        for y, y2 in b.entail_pairs()
    ]
    return LinRel(src, b, pairs)


# ---------------------------------------------------------------- duality


def dual_obj(a: LIS) -> LIS:
    """The linear negation a -o bot: full consistency, reversed entailment."""
    return lollipop_obj(a, bot_obj())


def delta(a: LIS) -> LinRel:
    """The canonical map into the double dual; an iso exactly on fully
    consistent systems."""
    dd = dual_obj(dual_obj(a))
    pairs = [
        (x, PairT(PairT(y, STAR), STAR)) for x, y in a.entail_pairs()
    ]
    return LinRel(a, dd, pairs)
