"""The set-based exponential.

The web of !a is the family of consistent finite subsets of a, as
finite-set tokens (the empty set included).  A family of such tokens is
consistent when its union is, and a family entails another when every
member of the second is entailed, tokenwise, by some member of the first.
This single functor carries a comonad (digging and dereliction) and a monad
(codigging and codereliction); digging at a equals codereliction at !a and
codigging at a equals dereliction at !a, as literal pair sets.
"""

from __future__ import annotations

from typing import Iterable

from .constructions import one_obj, pairing, proj, tensor_obj, top_obj, with_obj
from .core import LIS, enumerate_con
from .morph import LinRel, compose, transport
from .tokens import STAR, FinsetT, LeftT, PairT, RightT, Token


def bang_obj(a: LIS) -> LIS:
    """The system of consistent finite subsets of a.  Cached on the source."""
    if a._bang is not None:
        return a._bang
    family = enumerate_con(a)
    web = frozenset(FinsetT(s) for s in family)

    def con(s: Iterable[Token]) -> bool:
        union = set()
        for t in s:
            union.update(t.elems)
        return a.con(frozenset(union))

    def ent(x: Token, y: Token) -> bool:
        return all(
            any(a.entails(u, v) for u in x.elems) for v in y.elems
        )

    out = LIS(web, con, ent, None, f"!{a.name}")
    a._bang = out
    return out


def bang_mor(r: LinRel) -> LinRel:
    """Functorial action: a family maps to anything it covers through r."""
    src = bang_obj(r.source)
    tgt = bang_obj(r.target)
    pairs = []
    for x in src.sorted_web:
        for y in tgt.sorted_web:
            if all(
                any((u, v) in r.pairs for u in x.elems) for v in y.elems
            ):
                pairs.append((x, y))
    return LinRel(src, tgt, pairs)


def _union_token(t: FinsetT) -> FinsetT:
    out = set()
    for e in t.elems:
        out.update(e.elems)
    return FinsetT(out)


def dig(a: LIS) -> LinRel:
    """Comultiplication !a -> !!a: a set maps to the families it entails unionwise."""
    ba = bang_obj(a)
    bba = bang_obj(ba)
    pairs = [
        (x, y)
        for x in ba.sorted_web
        for y in bba.sorted_web
        if ba.entails(x, _union_token(y))
    ]
    return LinRel(ba, bba, pairs)


def der(a: LIS) -> LinRel:
    """Counit !a -> a: a set maps to the tokens whose singleton it entails."""
    ba = bang_obj(a)
    pairs = [
        (x, t)
        for x in ba.sorted_web
        for t in a.sorted_web
        if ba.entails(x, FinsetT([t]))
    ]
    return LinRel(ba, a, pairs)


def codig(a: LIS) -> LinRel:
    """Multiplication !!a -> !a: a family maps to the sets whose singleton
    family it entails.  Coincides with dereliction at !a; computed from its
    own formula so that coincidence stays a checkable equation."""
    ba = bang_obj(a)
    bba = bang_obj(ba)
    pairs = [
        (x, t)
        for x in bba.sorted_web
        for t in ba.sorted_web
        if bba.entails(x, FinsetT([t]))
    ]
    return LinRel(bba, ba, pairs)


def cod(a: LIS) -> LinRel:
    """Unit a -> !a: a token maps to the sets its singleton entails."""
    ba = bang_obj(a)
    pairs = [
        (t, x)
        for t in a.sorted_web
        for x in ba.sorted_web
        if ba.entails(FinsetT([t]), x)
    ]
    return LinRel(a, ba, pairs)


EXP_STRUCTURALS = {"dig": dig, "der": der, "codig": codig, "cod": cod}


def exp_structural(kind: str, a: LIS) -> LinRel:
    return EXP_STRUCTURALS[kind](a)


def _merge_tags(x: FinsetT, y: FinsetT) -> FinsetT:
    return FinsetT(
        [LeftT(t) for t in x.elems] + [RightT(t) for t in y.elems]
    )


def bang_m(a: LIS, b: LIS) -> LinRel:
    """The strong-monoidal map !a * !b -> !(a & b).

    Transport of the bijection sending a pair of sets to the tagged union;
    a tagged consistent set decomposes uniquely, so this is a bijection,
    and it matches consistency and entailment on both sides.
    """
    src = tensor_obj(bang_obj(a), bang_obj(b))
    tgt = bang_obj(with_obj(a, b))
    f = {t: _merge_tags(t.left, t.right) for t in src.web}
    return transport(src, tgt, f)


def bang_n() -> LinRel:
    """The strong-monoidal unit map 1 -> !top."""
    src = one_obj()
    tgt = bang_obj(top_obj())
    return transport(src, tgt, {STAR: FinsetT([])})


def seely_pair(a: LIS, b: LIS) -> LinRel:
    """The comparison !(a&b) -> !a & !b built from banged projections."""
    return pairing(bang_mor(proj(1, a, b)), bang_mor(proj(2, a, b)))


def cokleisli_id(a: LIS) -> LinRel:
    return der(a)


def cokleisli_compose(a: LIS, r: LinRel, s: LinRel) -> LinRel:
    """Composition of r : !a -> b and s : !b -> c in the co-Kleisli category."""
    if r.source.web != bang_obj(a).web:
        raise ValueError("object mismatch: r does not start at !a")
    return compose(compose(dig(a), bang_mor(r)), s)
