"""Classical information systems and the bridge to the linear ones.

Entailment is kept in trace form: a relation from finite consistent
token-sets to single tokens.  Approximable relations are likewise stored as
traces.  The bridge identifies the classical function-space construction
over two linear systems with the linear arrow out of the exponential, the
enumerated hom-set with the points of that object, and co-Kleisli
composition with classical composition, all as literal set equalities under
the fixed token identification (consistent set <-> finite-set token).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Optional

from .bang import bang_obj, cokleisli_compose
from .constructions import lollipop_obj
from .core import (
    LIS,
    CapExceeded,
    ValidationReport,
    Violation,
    caps,
    subsets_of,
    _guard,
)
from .morph import LinRel, enumerate_homset
from .tokens import FinsetT, PairT, Token, set_text, sort_tokens


class IS:
    """A classical information system with trace-form entailment.

    `trace` decides whether a finite consistent set entails a single token;
    it is False on inconsistent sets and out-of-web arguments.
    """

    __slots__ = ("web", "name", "_con_fn", "_trace_fn", "_con_memo", "_trace_memo", "_sorted", "_family")

    def __init__(
        self,
        web: Iterable[Token],
        con: Callable[[frozenset], bool],
        trace: Callable[[frozenset, Token], bool],
        name: str = "",
    ):
        self.web = frozenset(web)
        self._con_fn = con
        self._trace_fn = trace
        self.name = name
        self._con_memo = {}
        self._trace_memo = {}
        self._sorted = None
        self._family = None

    @property
    def sorted_web(self) -> list:
        if self._sorted is None:
            self._sorted = sort_tokens(self.web)
        return self._sorted

    def con(self, a: Iterable[Token]) -> bool:
        a = frozenset(a)
        hit = self._con_memo.get(a)
        if hit is None:
            hit = a <= self.web and bool(self._con_fn(a))
            self._con_memo[a] = hit
        return hit

    def trace(self, a: Iterable[Token], t: Token) -> bool:
        a = frozenset(a)
        k = (a, t)
        hit = self._trace_memo.get(k)
        if hit is None:
            hit = self.con(a) and t in self.web and bool(self._trace_fn(a, t))
            self._trace_memo[k] = hit
        return hit

    def entails_set(self, a: frozenset, b: Iterable[Token]) -> bool:
        return all(self.trace(a, t) for t in b)

    def con_family(self) -> list:
        """Consistent subsets, enumerated by pruned growth (valid systems only)."""
        if self._family is None:
            _guard(len(self.web), caps.pairwise, "classical consistent family")
            toks = self.sorted_web
            out = [frozenset()]

            def grow(base, start):
                for i in range(start, len(toks)):
                    cand = base | {toks[i]}
                    if self.con(cand):
                        out.append(cand)
                        if len(out) > caps.family:
                            raise CapExceeded(
                                f"classical family: more than {caps.family} sets"
                            )
                        grow(cand, i + 1)

            grow(frozenset(), 0)
            self._family = sorted(
                out, key=lambda s: (len(s), tuple(t.key() for t in sort_tokens(s)))
            )
        return self._family

    def __repr__(self):
        return f"<IS {self.name or '?'}: {len(self.web)} tokens>"


def validate_is(a: IS, subject: str = "") -> ValidationReport:
    """Trace-form axiom check over the enumerable consistent family."""
    _guard(len(a.web), caps.subset, "classical axiom validation")
    subject = subject or a.name or "classical system"
    violations = []
    if not a.con(frozenset()):
        violations.append(Violation("EMPTYSET", (frozenset(),)))
    for t in a.sorted_web:
        if not a.con(frozenset([t])):
            violations.append(Violation("SINGLETON", (t,)))
            break
    family = a.con_family()

    found = None
    for s in family:
        if any(not a.trace(s, t) for t in s):
            found = s
            break
    if found is not None:
        violations.append(Violation("IS2", (found,)))

    found = None
    for s in family:
        img = frozenset(t for t in a.web if a.trace(s, t))
        for b in subsets_of(sort_tokens(img)):
            if b and not a.con(b):
                found = (s, b)
                break
        if found:
            break
    if found:
        violations.append(Violation("IS1", found))

    found = None
    for s in family:
        for b in family:
            if not a.entails_set(s, b):
                continue
            for t in a.sorted_web:
                if a.trace(b, t) and not a.trace(s, t):
                    found = (s, b, t)
                    break
            if found:
                break
        if found:
            break
    if found:
        violations.append(Violation("IS3", found))

    return ValidationReport(subject, tuple(violations))


class TraceRel:
    """An approximable relation in trace form between two classical systems."""

    __slots__ = ("source", "target", "pairs", "_hash")

    def __init__(self, source: IS, target: IS, pairs: Iterable[tuple]):
        ps = frozenset((frozenset(a), t) for a, t in pairs)
        for a, t in ps:
            if not source.con(a) or t not in target.web:
                raise ValueError(
                    f"trace pair ({set_text(a)}, {t.text()}) out of scope"
                )
        self.source = source
        self.target = target
        self.pairs = ps
        self._hash = hash((source.web, target.web, ps))

    def sorted_pairs(self) -> list:
        return sorted(
            self.pairs,
            key=lambda p: (len(p[0]), tuple(t.key() for t in sort_tokens(p[0])), p[1].key()),
        )

    def __eq__(self, other):
        return (
            isinstance(other, TraceRel)
            and self.pairs == other.pairs
            and self.source.web == other.source.web
            and self.target.web == other.target.web
        )

    def __hash__(self):
        return self._hash

    def image(self, a: frozenset) -> frozenset:
        return frozenset(t for s, t in self.pairs if s == a)

    def text(self) -> str:
        if not self.pairs:
            return "∅"
        return "{" + ",".join(
            f"({set_text(a)},{t.text()})" for a, t in self.sorted_pairs()
        ) + "}"

    def __repr__(self):
        return f"<trace {self.text()}>"


def validate_trace_rel(r: TraceRel, subject: str = "trace relation") -> ValidationReport:
    """Approximability in trace form, against valid endpoints."""
    violations = []
    family = r.source.con_family()

    found = None
    for a in family:
        img = r.image(a)
        if not r.target.con(img):
            found = (a, img)
            break
    if found:
        violations.append(Violation("AR1", found))

    found = None
    for a, t in r.sorted_pairs():
        for a2 in family:
            if r.source.entails_set(a2, a) and (a2, t) not in r.pairs:
                found = (a2, a, t)
                break
        if found:
            break
    if not found:
        for a in family:
            img = r.image(a)
            for t in r.target.sorted_web:
                if r.target.trace(img, t) and (a, t) not in r.pairs:
                    found = (a, img, t)
                    break
            if found:
                break
    if found:
        violations.append(Violation("AR2", found))

    return ValidationReport(subject, tuple(violations))


def identity_is(a: IS) -> TraceRel:
    """The trace of entailment itself."""
    pairs = [
        (s, t) for s in a.con_family() for t in a.sorted_web if a.trace(s, t)
    ]
    return TraceRel(a, a, pairs)


def compose_is(r: TraceRel, s: TraceRel) -> TraceRel:
    """Pairs (a, c) mediated by a finite set b with a R b and (b, c) in s."""
    if r.target.web != s.source.web:
        raise ValueError("object mismatch: trace composition endpoints differ")
    out = []
    for a in r.source.con_family():
        img = sort_tokens(r.image(a))
        mids = []
        for n in range(len(img) + 1):
            mids += [frozenset(c) for c in combinations(img, n)]
        for t in s.target.sorted_web:
            if any((b, t) in s.pairs for b in mids):
                out.append((a, t))
    return TraceRel(r.source, s.target, out)


def lis_to_is(a: LIS) -> IS:
    """View a linear system classically: a set entails what some member entails."""
    return IS(
        a.web,
        a.con,
        lambda s, t: any(a.entails(x, t) for x in s),
        a.name,
    )


def arrow_is(a: IS, b: IS) -> IS:
    """The classical function-space system over consistent-set tokens."""
    family = a.con_family()
    web = frozenset(PairT(FinsetT(s), t) for s in family for t in b.web)

    def con(s):
        items = [(t.left.as_set(), t.right) for t in s]
        for n in range(len(items) + 1):
            for sel in combinations(items, n):
                union = frozenset().union(*(x for x, _ in sel)) if sel else frozenset()
                if a.con(union) and not b.con(frozenset(y for _, y in sel)):
                    return False
        return True

    def trace(s, t):
        a2 = t.left.as_set()
        chosen = frozenset(
            item.right for item in s if a.entails_set(a2, item.left.as_set())
        )
        return b.trace(chosen, t.right)

    return IS(web, con, trace, f"({a.name}=>{b.name})")


def phi_embed(r: LinRel) -> TraceRel:
    """Embed a linear morphism: a set relates to what some member relates to."""
    src = lis_to_is(r.source)
    tgt = lis_to_is(r.target)
    pairs = []
    for a in src.con_family():
        for t in tgt.sorted_web:
            if any((x, t) in r.pairs for x in a):
                pairs.append((a, t))
    return TraceRel(src, tgt, pairs)


def is_linear_trace(s: TraceRel) -> bool:
    """A trace is linear when membership is witnessed by a single token."""
    for a in s.source.con_family():
        for t in s.target.sorted_web:
            direct = (a, t) in s.pairs
            pointwise = any((frozenset([x]), t) in s.pairs for x in a)
            if direct != pointwise:
                return False
    return True


def points_is(a: IS) -> "Poset":
    """Subsets finitely consistent and closed under trace entailment.

    For valid systems the trace is monotone in its set argument, so closure
    under the whole candidate set decides closure under all its subsets.
    """
    from .domains import Poset

    _guard(len(a.web), caps.subset, "classical point enumeration")
    out = []
    for x in subsets_of(a.sorted_web):
        if not a.con(x):
            continue
        if all(t in x for t in a.web if a.trace(x, t)):
            out.append(x)
    return Poset(out)


def apply_bullet(r: TraceRel, x: Iterable[Token]) -> frozenset:
    """Image of a point: tokens reached from some finite subset of it."""
    x = frozenset(x)
    return frozenset(t for a, t in r.pairs if a <= x)


def linrel_to_trace(r: LinRel, a: LIS, b: LIS) -> TraceRel:
    """Identify a morphism !a -> b with a classical trace over a and b."""
    return TraceRel(
        lis_to_is(a),
        lis_to_is(b),
        ((x.as_set(), t) for x, t in r.pairs),
    )


@dataclass(frozen=True)
class BridgeResult:
    object_equal: bool
    homset_points_equal: bool
    composition_agrees: bool

    @property
    def ok(self) -> bool:
        return (
            self.object_equal
            and self.homset_points_equal
            and self.composition_agrees
        )


def bridge_check(a: LIS, b: LIS, seed: int = 11) -> BridgeResult:
    """Three exact comparisons between the classical and the linear route.

    (i)   the classical function space over a and b equals the linear arrow
          out of the exponential, token for token
    (ii)  the enumerated hom-set from !a to b equals the points of that
          object, as token sets
    (iii) co-Kleisli composition matches classical trace composition on
          sampled morphisms
    """
    ca, cb = lis_to_is(a), lis_to_is(b)
    arrow = arrow_is(ca, cb)
    lolli = lollipop_obj(bang_obj(a), b)

    object_equal = arrow.web == lolli.web
    if object_equal:
        _guard(len(arrow.web), caps.subset, "bridge object comparison")
        for s in subsets_of(sort_tokens(arrow.web)):
            if arrow.con(s) != lolli.con(s):
                object_equal = False
                break
    if object_equal:
        lolli_is = lis_to_is(lolli)
        for s in arrow.con_family():
            for t in sort_tokens(arrow.web):
                if arrow.trace(s, t) != lolli_is.trace(s, t):
                    object_equal = False
                    break
            if not object_equal:
                break

    homs = enumerate_homset(bang_obj(a), b)
    as_tokens = {frozenset(PairT(x, y) for x, y in r.pairs) for r in homs}
    pts = set(points_is(arrow).elements)
    homset_points_equal = as_tokens == pts

    composition_agrees = True
    from .laws import gen_rel

    for i in range(3):
        r = gen_rel(seed * 97 + i, bang_obj(a), b)
        s = gen_rel(seed * 131 + i, bang_obj(b), b)
        left = linrel_to_trace(cokleisli_compose(a, r, s), a, b)
        right = compose_is(linrel_to_trace(r, a, b), linrel_to_trace(s, b, b))
        if left != right:
            composition_agrees = False
            break

    return BridgeResult(object_equal, homset_points_equal, composition_agrees)
