"""Linear approximable relations, the morphisms between systems.

A relation R between the webs of two systems is a morphism when

  AR1  the image of a consistent set is consistent (together with all its
       subsets, which follows because consistency is subset-closed)
  AR2  x' entails x, (x, y) in R and y entails y' imply (x', y') in R

Relations compose as usual; the identity on a system is its entailment
relation viewed as pairs, which is what makes projections and unit maps of
the constructions behave as stated.  Equality of morphisms is extensional
pair-set equality between equal endpoints, no quotienting.
"""

from __future__ import annotations

from typing import Callable, Dict, Iterable, Optional

from .core import (
    LIS,
    CapExceeded,
    ValidationReport,
    Violation,
    caps,
    entail_image,
    subsets_of,
    _guard,
)
from .tokens import Token, set_text, sort_tokens


class LinRel:
    """A relation between the webs of a source and a target system."""

    __slots__ = ("source", "target", "pairs", "_hash")

    def __init__(self, source: LIS, target: LIS, pairs: Iterable[tuple]):
        ps = frozenset((x, y) for x, y in pairs)
        for x, y in ps:
            if x not in source.web or y not in target.web:
                raise ValueError(
                    f"pair ({x.text()}, {y.text()}) lies outside the webs"
                )
        self.source = source
        self.target = target
        self.pairs = ps
        self._hash = hash((source.web, target.web, ps))

    def sorted_pairs(self) -> list:
        return sorted(self.pairs, key=lambda p: (p[0].key(), p[1].key()))

    def __eq__(self, other):
        return (
            isinstance(other, LinRel)
            and self.pairs == other.pairs
            and self.source.web == other.source.web
            and self.target.web == other.target.web
        )

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return self._hash

    def text(self) -> str:
        if not self.pairs:
            return "∅"
        return "{" + ",".join(
            f"({x.text()},{y.text()})" for x, y in self.sorted_pairs()
        ) + "}"

    def __repr__(self):
        src = self.source.name or "?"
        tgt = self.target.name or "?"
        return f"<rel {src}→{tgt} {self.text()}>"


def validate_rel(r: LinRel, subject: str = "relation") -> ValidationReport:
    """Check AR1 and AR2 exhaustively, one witness per violated axiom.

    Assumes valid endpoints; the AR1 sweep checks the full image of each
    consistent source set, which suffices because the target consistency is
    subset-closed.
    """
    violations = []
    for x, y in r.sorted_pairs():
        if x not in r.source.web or y not in r.target.web:
            violations.append(Violation("WEB-SCOPE", (x, y)))
            break

    _guard(len(r.source.web), caps.subset, "AR1 validation")
    index: Dict[Token, set] = {}
    for x, y in r.pairs:
        index.setdefault(x, set()).add(y)
    for s in subsets_of(r.source.sorted_web):
        if not r.source.con(s):
            continue
        img = frozenset().union(*(index.get(x, set()) for x in s)) if s else frozenset()
        if not r.target.con(img):
            violations.append(Violation("AR1", (s, img)))
            break

    found = None
    for x, y in r.sorted_pairs():
        for x2 in r.source.sorted_web:
            if not r.source.entails(x2, x):
                continue
            for y2 in r.target.sorted_web:
                if r.target.entails(y, y2) and (x2, y2) not in r.pairs:
                    found = (x2, x, y, y2)
                    break
            if found:
                break
        if found:
            break
    if found:
        violations.append(Violation("AR2", found))

    return ValidationReport(subject, tuple(violations))


def identity(a: LIS) -> LinRel:
    """The entailment relation of a system, which is neutral for composition."""
    return LinRel(a, a, a.entail_pairs())


def compose(r: LinRel, s: LinRel) -> LinRel:
    """Relational composition; source of s must be the target of r."""
    if r.target.web != s.source.web:
        raise ValueError("object mismatch: target of first != source of second")
    index: Dict[Token, list] = {}
    for y, z in s.pairs:
        index.setdefault(y, []).append(z)
    out = set()
    for x, y in r.pairs:
        for z in index.get(y, ()):
            out.add((x, z))
    return LinRel(r.source, s.target, out)


def compose_path(rels: Iterable[LinRel]) -> LinRel:
    rels = list(rels)
    if not rels:
        raise ValueError("empty path")
    acc = rels[0]
    for nxt in rels[1:]:
        acc = compose(acc, nxt)
    return acc


def converse(r: LinRel) -> LinRel:
    return LinRel(r.target, r.source, ((y, x) for x, y in r.pairs))


def ar2_close(source: LIS, target: LIS, seeds: Iterable[tuple]) -> LinRel:
    """Least AR2-closed superset of the seed pairs.

    One sweep suffices because entailment is transitive.  The result may
    still fail AR1; validate_rel decides acceptance.
    """
    seeds = list(seeds)
    for x, y in seeds:
        if x not in source.web or y not in target.web:
            raise ValueError(
                f"seed pair ({x.text()}, {y.text()}) lies outside the webs"
            )
    _guard(len(source.web), caps.pairwise, "AR2 closure source")
    _guard(len(target.web), caps.pairwise, "AR2 closure target")
    out = set()
    for x, y in seeds:
        for x2 in source.web:
            if not source.entails(x2, x):
                continue
            for y2 in target.web:
                if target.entails(y, y2):
                    out.add((x2, y2))
    return LinRel(source, target, out)


def enumerate_homset(a: LIS, b: LIS) -> list:
    """All morphisms from a to b, by brute force over subsets of the web product."""
    product = [(x, y) for x in a.sorted_web for y in b.sorted_web]
    _guard(len(product), caps.subset, "hom-set enumeration")
    out = []
    for ps in subsets_of_pairs(product):
        r = LinRel(a, b, ps)
        if validate_rel(r).ok:
            out.append(r)
    out.sort(key=lambda r: tuple((x.key(), y.key()) for x, y in r.sorted_pairs()))
    return out


def subsets_of_pairs(pairs: list):
    from itertools import combinations

    for n in range(len(pairs) + 1):
        for combo in combinations(pairs, n):
            yield combo


def transport(source: LIS, target: LIS, mapping: Dict[Token, Token]) -> LinRel:
    """The relation pairing x with everything entailed by mapping[x].

    When the mapping is a bijection preserving consistency and entailment
    both ways this is an isomorphism whose inverse is the transport of the
    inverse mapping.
    """
    _guard(len(source.web), caps.pairwise, "transport source")
    _guard(len(target.web), caps.pairwise, "transport target")
    out = []
    for x in source.sorted_web:
        fx = mapping[x]
        for y in target.sorted_web:
            if target.entails(fx, y):
                out.append((x, y))
    return LinRel(source, target, out)


def _recognize_transport(r: LinRel) -> Optional[Dict[Token, Token]]:
    """Recover a token bijection f with r = transport(f), if one exists.

    Requires f to preserve and reflect entailment; returns None otherwise.
    """
    src, tgt = r.source, r.target
    if len(src.web) != len(tgt.web):
        return None
    index: Dict[Token, list] = {}
    for x, y in r.pairs:
        index.setdefault(x, []).append(y)
    mapping = {}
    for x in src.sorted_web:
        ys = index.get(x)
        if not ys:
            return None
        tops = [y for y in ys if all(tgt.entails(y, y2) for y2 in ys)]
        if not tops:
            return None
        mapping[x] = sort_tokens(tops)[0]
    if len(set(mapping.values())) != len(tgt.web):
        return None
    for x in src.sorted_web:
        for x2 in src.sorted_web:
            if src.entails(x, x2) != tgt.entails(mapping[x], mapping[x2]):
                return None
    if transport(src, tgt, mapping) != r:
        return None
    return mapping


def _mutually_inverse(r: LinRel, s: LinRel) -> bool:
    return compose(r, s) == identity(r.source) and compose(s, r) == identity(
        s.source
    )


def is_iso(r: LinRel) -> Optional[LinRel]:
    """Return the inverse of r, or None when r is not an isomorphism.

    Fast path: when r is the transport of an entailment-preserving token
    bijection f, the transport of the inverse mapping is the only possible
    inverse, so its validity decides the question outright.  Otherwise the
    converse relation is tried, then the hom-set is searched exhaustively.
    """
    mapping = _recognize_transport(r)
    if mapping is not None:
        back = {y: x for x, y in mapping.items()}
        cand = transport(r.target, r.source, back)
        if validate_rel(cand).ok and _mutually_inverse(r, cand):
            return cand
        return None
    cand = converse(r)
    if validate_rel(cand).ok and _mutually_inverse(r, cand):
        return cand
    for cand in enumerate_homset(r.target, r.source):
        if _mutually_inverse(r, cand):
            return cand
    return None
