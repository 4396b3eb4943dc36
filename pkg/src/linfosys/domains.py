"""Points, finite posets, primes and the equivalence with systems.

A point of a system is a token-set that is finitely consistent and closed
under entailment; the points ordered by inclusion form a finite poset.  The
plus direction sends a system to its point poset and a morphism to direct
image; the minus direction rebuilds a system from the primes of a poset.
Round trips are certified instance by instance, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Iterable, Optional

from .constructions import lollipop_obj, with_obj
from .core import LIS, caps, subsets_of, _guard
from .morph import LinRel, enumerate_homset, is_iso
from .tokens import FinsetT, LeftT, PairT, RightT, Token, set_text, sort_tokens

Point = frozenset


def point_key(x: Point):
    return (len(x), tuple(t.key() for t in sort_tokens(x)))


def closure(a: LIS, seed: Iterable[Token]) -> Point:
    """Entailment closure of a token-set; with a consistent seed, a point."""
    return frozenset(y for y in a.web if any(a.entails(x, y) for x in seed))


def is_point(a: LIS, x: Iterable[Token]) -> bool:
    x = frozenset(x)
    if not x <= a.web:
        return False
    if not a.con(x):
        return False
    return closure(a, x) == x


class Poset:
    """A finite poset of token-sets ordered by inclusion."""

    __slots__ = ("elements", "_primes", "_bc")

    def __init__(self, elements: Iterable[Point]):
        self.elements = tuple(sorted(frozenset(map(frozenset, elements)), key=point_key))
        self._primes = None
        self._bc = None

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return frozenset(x) in set(self.elements)

    def leq(self, x: Point, y: Point) -> bool:
        return x <= y

    @property
    def bottom(self) -> Optional[Point]:
        for e in self.elements:
            if all(e <= f for f in self.elements):
                return e
        return None

    def upper_bounds(self, xs: Iterable[Point]) -> list:
        xs = list(xs)
        return [e for e in self.elements if all(x <= e for x in xs)]

    def lub(self, xs: Iterable[Point]) -> Optional[Point]:
        ubs = self.upper_bounds(xs)
        for u in ubs:
            if all(u <= v for v in ubs):
                return u
        return None

    def is_bounded_complete(self) -> bool:
        """Every upper-bounded subset has a least upper bound."""
        if self._bc is None:
            _guard(len(self.elements), caps.subset, "bounded-completeness sweep")
            ok = True
            for xs in _tuple_subsets(self.elements):
                if self.upper_bounds(xs) and self.lub(xs) is None:
                    ok = False
                    break
            self._bc = ok
        return self._bc

    def primes(self) -> list:
        """Elements below a member of every bounded set they sit under.

        The empty set has the bottom as its least upper bound, so the bottom
        is never prime.
        """
        if self._primes is None:
            _guard(len(self.elements), caps.subset, "prime sweep")
            subsets = list(_tuple_subsets(self.elements))
            lubs = []
            for xs in subsets:
                if self.upper_bounds(xs):
                    v = self.lub(xs)
                    if v is not None:
                        lubs.append((xs, v))
            out = []
            for p in self.elements:
                prime = True
                for xs, v in lubs:
                    if p <= v and not any(p <= x for x in xs):
                        prime = False
                        break
                if prime:
                    out.append(p)
            self._primes = out
        return self._primes

    def is_prime_algebraic(self) -> bool:
        """Every element is the least upper bound of the primes below it."""
        ps = self.primes()
        for e in self.elements:
            below = [p for p in ps if p <= e]
            if self.lub(below) != e:
                return False
        return True

    def covers(self) -> list:
        """Covering pairs (x, y): x < y with nothing strictly between."""
        out = []
        for x in self.elements:
            for y in self.elements:
                if x < y and not any(
                    x < z < y for z in self.elements
                ):
                    out.append((x, y))
        return out

    def __repr__(self):
        return f"<poset of {len(self.elements)} points>"


def _tuple_subsets(elems):
    from itertools import combinations

    for r in range(len(elems) + 1):
        for combo in combinations(elems, r):
            yield combo


def points(a: LIS) -> Poset:
    """All points of a valid system; consistency being subset-closed, the
    finite-consistency side is one predicate call per candidate."""
    _guard(len(a.web), caps.subset, "point enumeration")
    out = []
    for x in subsets_of(a.sorted_web):
        if a.con(x) and closure(a, x) == x:
            out.append(x)
    return Poset(out)


def apply_plus(r: LinRel, x: Iterable[Token]) -> Point:
    """Direct image of a point; lands in the points of the target."""
    x = frozenset(x)
    if not is_point(r.source, x):
        raise ValueError(f"{set_text(x)} is not a point of the source")
    return frozenset(y for u, y in r.pairs if u in x)


def plus_map(r: LinRel) -> Dict[Point, Point]:
    """apply_plus tabulated over the whole source point poset."""
    return {x: apply_plus(r, x) for x in points(r.source).elements}


def is_linear_map(f: Dict[Point, Point], p: Poset, q: Poset) -> bool:
    """Commutes with every existing least upper bound, the empty one included."""
    _guard(len(p.elements), caps.subset, "linearity sweep")
    elems = set(p.elements)
    if set(f) != elems or not all(y in set(q.elements) for y in f.values()):
        return False
    for x in p.elements:
        for y in p.elements:
            if x <= y and not f[x] <= f[y]:
                return False
    for xs in _tuple_subsets(p.elements):
        v = p.lub(xs)
        if v is not None and q.lub([f[x] for x in xs]) != f[v]:
            return False
    return True


def minus_obj(p: Poset, name: str = "") -> LIS:
    """System of primes: a set is consistent when upper bounded, and a prime
    entails the primes below it."""
    if not p.is_bounded_complete():
        raise ValueError("poset is not bounded-complete")
    if not p.is_prime_algebraic():
        raise ValueError("poset is not prime algebraic")
    prime_list = p.primes()
    web = frozenset(FinsetT(x) for x in prime_list)

    def con(s):
        return bool(p.upper_bounds([t.as_set() for t in s]))

    def ent(x, y):
        return y.as_set() <= x.as_set()

    return LIS(web, con, ent, None, name or "minus")


def minus_mor(f: Dict[Point, Point], p: Poset, q: Poset) -> LinRel:
    """Relation pairing a prime with every prime below its image."""
    if not is_linear_map(f, p, q):
        raise ValueError("map is not linear")
    src = minus_obj(p)
    tgt = minus_obj(q)
    pairs = [
        (x, y)
        for x in src.sorted_web
        for y in tgt.sorted_web
        if y.as_set() <= f[x.as_set()]
    ]
    return LinRel(src, tgt, pairs)


@dataclass(frozen=True)
class RoundtripObjectResult:
    eta: LinRel
    inverse: Optional[LinRel]

    @property
    def ok(self) -> bool:
        return self.inverse is not None


def roundtrip_object(a: LIS) -> RoundtripObjectResult:
    """Candidate iso from a system to the rebuilt system of its point primes,
    certified by inverse search."""
    pts = points(a)
    m = minus_obj(pts, name=f"({a.name})^+-")
    prime_list = pts.primes()
    pairs = []
    for t in a.sorted_web:
        cl = closure(a, [t])
        for pr in prime_list:
            if pr <= cl:
                pairs.append((t, FinsetT(pr)))
    eta = LinRel(a, m, pairs)
    return RoundtripObjectResult(eta, is_iso(eta))


def order_iso(
    p: Poset, q: Poset, candidate: Optional[Dict[Point, Point]] = None
) -> Optional[Dict[Point, Point]]:
    """An order isomorphism between two finite posets, or None.

    A supplied candidate is verified first; otherwise a backtracking search
    matches elements with equal down-set and up-set profiles.
    """
    if len(p.elements) != len(q.elements):
        return None
    if candidate is not None and _check_order_iso(candidate, p, q):
        return candidate

    pd = {x: _profile(x, p) for x in p.elements}
    qd = {y: _profile(y, q) for y in q.elements}
    targets = {}
    for y in q.elements:
        targets.setdefault(qd[y], []).append(y)

    order = list(p.elements)
    assignment = {}
    used = set()

    def backtrack(i):
        if i == len(order):
            return True
        x = order[i]
        for y in targets.get(pd[x], []):
            if y in used:
                continue
            ok = all(
                (x2 <= x) == (y2 <= y) and (x <= x2) == (y <= y2)
                for x2, y2 in assignment.items()
            )
            if ok:
                assignment[x] = y
                used.add(y)
                if backtrack(i + 1):
                    return True
                del assignment[x]
                used.remove(y)
        return False

    if backtrack(0):
        return dict(assignment)
    return None


def _profile(x, p: Poset):
    down = sum(1 for z in p.elements if z <= x)
    up = sum(1 for z in p.elements if x <= z)
    return (down, up)


def _check_order_iso(f: Dict[Point, Point], p: Poset, q: Poset) -> bool:
    if set(f) != set(p.elements):
        return False
    if set(f.values()) != set(q.elements):
        return False
    if len(set(f.values())) != len(f):
        return False
    return all(
        (x <= y) == (f[x] <= f[y]) for x in p.elements for y in p.elements
    )


@dataclass(frozen=True)
class RoundtripDomainResult:
    iso: Optional[Dict[Point, Point]]

    @property
    def ok(self) -> bool:
        return self.iso is not None


def roundtrip_domain(p: Poset) -> RoundtripDomainResult:
    """Certify that the point poset of the rebuilt system mirrors the input."""
    q = points(minus_obj(p))
    prime_list = p.primes()
    candidate = {
        e: frozenset(FinsetT(pr) for pr in prime_list if pr <= e)
        for e in p.elements
    }
    return RoundtripDomainResult(order_iso(p, q, candidate))


@dataclass(frozen=True)
class PreservationResult:
    products_ok: bool
    homset_ok: bool

    @property
    def ok(self) -> bool:
        return self.products_ok and self.homset_ok


def preservation_checks(a: LIS, b: LIS) -> PreservationResult:
    """Products and function spaces survive the passage to point posets.

    (i)  the point poset of a&b is order-isomorphic to the product of the
         point posets, via untagging
    (ii) the morphisms from a to b, as pair sets, are exactly the points of
         the arrow system, as token sets
    """
    pw = points(with_obj(a, b))
    pa = points(a)
    pb = points(b)
    seen = set()
    products_ok = len(pw.elements) == len(pa.elements) * len(pb.elements)
    if products_ok:
        for z in pw.elements:
            lx = frozenset(t.inner for t in z if isinstance(t, LeftT))
            rx = frozenset(t.inner for t in z if isinstance(t, RightT))
            if lx not in set(pa.elements) or rx not in set(pb.elements):
                products_ok = False
                break
            seen.add((lx, rx))
        products_ok = products_ok and len(seen) == len(pw.elements)
        if products_ok:
            for z in pw.elements:
                for w in pw.elements:
                    zl = frozenset(t.inner for t in z if isinstance(t, LeftT))
                    zr = frozenset(t.inner for t in z if isinstance(t, RightT))
                    wl = frozenset(t.inner for t in w if isinstance(t, LeftT))
                    wr = frozenset(t.inner for t in w if isinstance(t, RightT))
                    if (z <= w) != (zl <= wl and zr <= wr):
                        products_ok = False
                        break
                if not products_ok:
                    break

    homs = enumerate_homset(a, b)
    as_points = {
        frozenset(PairT(x, y) for x, y in r.pairs) for r in homs
    }
    arrow_points = set(points(lollipop_obj(a, b)).elements)
    homset_ok = as_points == arrow_points
    return PreservationResult(products_ok, homset_ok)
