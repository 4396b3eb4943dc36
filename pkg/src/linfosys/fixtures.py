"""Small systems shared by tests, docs and the command-line examples.

ONE   the one-token unit system
TOP   the empty system
D2    two atoms, fully consistent, equality entailment
V     two atoms that are never jointly consistent
C2    two atoms, fully consistent, with one nontrivial entailment
"""

from .constructions import one_obj, top_obj
from .core import LIS, build_lis, discrete
from .tokens import Atom


def v() -> LIS:
    p, q = Atom("p"), Atom("q")
    return build_lis({p, q}, [{p}, {q}], (), "V")


def c2() -> LIS:
    a, b = Atom("a"), Atom("b")
    return build_lis({a, b}, [{a, b}], [(a, b)], "C2")


def d2() -> LIS:
    return discrete(["0", "1"], "D2")


def catalog() -> dict:
    return {"ONE": one_obj(), "TOP": top_obj(), "D2": d2(), "V": v(), "C2": c2()}
