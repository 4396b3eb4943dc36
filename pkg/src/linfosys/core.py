"""Linear information systems: the data model, axiom validation, closures.

A system is a finite web of tokens, a consistency predicate on finite
subsets of the web and an entailment preorder on tokens.  The axioms:

  IS1  a consistent and every member of b entailed by some member of a
       implies b consistent
  IS2  entailment is reflexive
  IS3  entailment is transitive

plus, in this package, the conventions that the empty set and all
singletons are consistent.  Consistency is kept as a decision procedure
(constructed systems would need an exponential family otherwise); explicit
enumeration is available under a cap and refuses loudly beyond it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .tokens import Atom, Token, set_text, sort_tokens


@dataclass
class Caps:
    """Enumeration limits.  Operations refuse (raise CapExceeded) past them.

    subset    largest web for which all finite subsets are enumerated
    pairwise  largest web for which web x web sweeps are performed
    family    largest consistent-set family that will be materialized
    """

    subset: int = 16
    pairwise: int = 64
    family: int = 4096


caps = Caps()


class CapExceeded(RuntimeError):
    """An operation would enumerate past the configured cap."""


def _guard(size: int, limit: int, what: str) -> None:
    if size > limit:
        raise CapExceeded(f"{what}: size {size} exceeds cap {limit}")


def subsets_of(tokens: Sequence[Token]) -> Iterator[frozenset]:
    """All subsets of a token sequence, smallest first, deterministic order."""
    toks = sort_tokens(tokens)
    for r in range(len(toks) + 1):
        for combo in combinations(toks, r):
            yield frozenset(combo)


class LIS:
    """A finite linear information system.

    `con` and `entails` are total decision procedures; tokens outside the
    web make them False.  Results are memoised per instance.  Instances are
    immutable by convention; all operations on them are pure.
    """

    __slots__ = (
        "web",
        "name",
        "con_generators",
        "_con_fn",
        "_ent_fn",
        "_con_memo",
        "_ent_memo",
        "_sorted",
        "_ent_pairs",
        "_family",
        "_bang",
    )

    def __init__(
        self,
        web: Iterable[Token],
        con: Callable[[frozenset], bool],
        entails: Callable[[Token, Token], bool],
        con_generators: Optional[Iterable[frozenset]] = None,
        name: str = "",
    ):
        self.web = frozenset(web)
        self._con_fn = con
        self._ent_fn = entails
        self.con_generators = (
            None
            if con_generators is None
            else tuple(frozenset(g) for g in con_generators)
        )
        self.name = name
        self._con_memo = {}
        self._ent_memo = {}
        self._sorted = None
        self._ent_pairs = None
        self._family = None
        self._bang = None

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

    def entails(self, x: Token, y: Token) -> bool:
        k = (x, y)
        hit = self._ent_memo.get(k)
        if hit is None:
            hit = x in self.web and y in self.web and bool(self._ent_fn(x, y))
            self._ent_memo[k] = hit
        return hit

    def entail_pairs(self) -> list:
        """All entailment pairs, swept over web x web (pairwise cap)."""
        if self._ent_pairs is None:
            _guard(len(self.web), caps.pairwise, "entailment sweep")
            toks = self.sorted_web
            self._ent_pairs = [
                (x, y) for x in toks for y in toks if self.entails(x, y)
            ]
        return self._ent_pairs

    def __repr__(self):
        label = self.name or "LIS"
        return f"<{label}: {len(self.web)} tokens>"


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple

    def describe(self) -> str:
        return f"{self.axiom} violated, witness {_witness_text(self.witness)}"


def _witness_text(w) -> str:
    if isinstance(w, Token):
        return w.text()
    if isinstance(w, frozenset):
        return set_text(w)
    if isinstance(w, tuple):
        return "(" + ", ".join(_witness_text(x) for x in w) + ")"
    return repr(w)


@dataclass(frozen=True)
class ValidationReport:
    subject: str
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations

    def describe(self) -> str:
        if self.ok:
            return f"{self.subject}: ok"
        lines = [f"{self.subject}:"]
        lines += ["  " + v.describe() for v in self.violations]
        return "\n".join(lines)


def entail_image(a: LIS, s: Iterable[Token]) -> frozenset:
    """Tokens entailed by some member of s."""
    return frozenset(y for y in a.web if any(a.entails(x, y) for x in s))


def validate_lis(a: LIS, subject: str = "") -> ValidationReport:
    """Exhaustively check the axioms, reporting one witness per violated axiom.

    The IS1 sweep ranges over nonempty conclusion sets; membership of the
    empty set in the consistency family is owned by the EMPTYSET check.
    """
    _guard(len(a.web), caps.subset, "axiom validation")
    subject = subject or a.name or "system"
    violations = []
    toks = a.sorted_web

    if not a.con(frozenset()):
        violations.append(Violation("EMPTYSET", (frozenset(),)))
    for t in toks:
        if not a.con(frozenset([t])):
            violations.append(Violation("SINGLETON", (t,)))
            break
    for t in toks:
        if not a.entails(t, t):
            violations.append(Violation("IS2", (t,)))
            break
    done = False
    for x in toks:
        if done:
            break
        for y in toks:
            if done:
                break
            if not a.entails(x, y):
                continue
            for z in toks:
                if a.entails(y, z) and not a.entails(x, z):
                    violations.append(Violation("IS3", (x, y, z)))
                    done = True
                    break

    consistent = []
    inconsistent = []
    for s in subsets_of(toks):
        (consistent if a.con(s) else inconsistent).append(s)
    inconsistent = [s for s in inconsistent if s]
    found = None
    for s in consistent:
        img = entail_image(a, s)
        for b in inconsistent:
            if b <= img:
                found = (s, b)
                break
        if found:
            break
    if found:
        violations.append(Violation("IS1", found))

    return ValidationReport(subject, tuple(violations))


def close_entailment(web: Iterable[Token], pairs: Iterable[tuple]) -> frozenset:
    """Reflexive-transitive closure of the given pairs over the web."""
    web = frozenset(web)
    closed = set()
    succ = {t: {t} for t in web}
    for x, y in pairs:
        if x not in web or y not in web:
            raise ValueError(
                f"entailment pair ({_witness_text(x)}, {_witness_text(y)}) "
                "mentions a token outside the web"
            )
        succ[x].add(y)
    changed = True
    while changed:
        changed = False
        for x in web:
            new = set()
            for y in succ[x]:
                new |= succ[y]
            if not new <= succ[x]:
                succ[x] |= new
                changed = True
    for x in web:
        for y in succ[x]:
            closed.add((x, y))
    return frozenset(closed)


def close_consistency(
    web: Iterable[Token],
    generators: Iterable[Iterable[Token]],
    entails: Callable[[Token, Token], bool],
) -> Callable[[frozenset], bool]:
    """Least consistency predicate over the given generators.

    The result contains the empty set, all singletons and the generators and
    is closed under IS1 for the given (already reflexive-transitive)
    entailment.  Since entailment images are idempotent, membership reduces
    to inclusion in the image of one base set.
    """
    web = frozenset(web)
    base = [frozenset(g) for g in generators]
    for g in base:
        if not g <= web:
            stray = sort_tokens(g - web)[0]
            raise ValueError(
                f"consistency generator {set_text(g)} mentions token "
                f"{stray.text()} outside the web"
            )
    base += [frozenset([t]) for t in web]
    images = []
    seen = set()
    for g in base:
        img = frozenset(y for y in web if any(entails(x, y) for x in g))
        if img not in seen:
            seen.add(img)
            images.append(img)

    def con(s: frozenset) -> bool:
        if not s:
            return True
        return any(s <= img for img in images)

    return con


def build_lis(
    web: Iterable[Token],
    con_generators: Iterable[Iterable[Token]] = (),
    entail_seeds: Iterable[tuple] = (),
    name: str = "",
) -> LIS:
    """Build a valid system from generators: both closures applied."""
    web = frozenset(web)
    ent = close_entailment(web, entail_seeds)
    ent_set = set(ent)
    gens = tuple(frozenset(g) for g in con_generators)
    con = close_consistency(web, gens, lambda x, y: (x, y) in ent_set)
    return LIS(web, con, lambda x, y: (x, y) in ent_set, gens, name)


def discrete(names: Iterable[str], name: str = "") -> LIS:
    """Fully consistent system over named atoms with equality entailment."""
    web = frozenset(Atom(n) for n in names)
    return LIS(web, lambda s: True, lambda x, y: x == y, (web,), name)


def has_full_consistency(a: LIS) -> bool:
    """True when every finite subset of the web is consistent."""
    _guard(len(a.web), caps.subset, "full-consistency check")
    return all(a.con(s) for s in subsets_of(a.sorted_web))


def lis_equal(a: LIS, b: LIS) -> bool:
    """Same web, same consistency on every subset, same entailment on every pair."""
    if a.web != b.web:
        return False
    _guard(len(a.web), caps.subset, "system equality")
    for s in subsets_of(a.sorted_web):
        if a.con(s) != b.con(s):
            return False
    for x in a.sorted_web:
        for y in a.sorted_web:
            if a.entails(x, y) != b.entails(x, y):
                return False
    return True


def enumerate_con(a: LIS, limit: Optional[int] = None) -> list:
    """The family of consistent subsets of the web, canonically ordered.

    Enumerated by depth-first growth with pruning, which is exact because
    consistency of a valid system is subset-closed.  Output size is capped;
    a completed enumeration is cached on the system.
    """
    limit = caps.family if limit is None else limit
    if a._family is not None:
        if len(a._family) > limit:
            raise CapExceeded(
                f"consistent-family enumeration: {len(a._family)} sets exceed {limit}"
            )
        return a._family
    _guard(len(a.web), caps.pairwise, "consistent-family web")
    toks = a.sorted_web
    out = [frozenset()]

    def grow(base: frozenset, start: int):
        for i in range(start, len(toks)):
            cand = base | {toks[i]}
            if a.con(cand):
                out.append(cand)
                if len(out) > limit:
                    raise CapExceeded(
                        f"consistent-family enumeration: more than {limit} sets"
                    )
                grow(cand, i + 1)

    grow(frozenset(), 0)
    a._family = sorted(
        out, key=lambda s: (len(s), tuple(t.key() for t in sort_tokens(s)))
    )
    return a._family
