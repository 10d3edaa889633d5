"""Boolean criteria over trees and the satisfaction relation."""

from __future__ import annotations

from dataclasses import dataclass

from .paths import Path, apply_path, as_path
from .tree import ALPHA, TAU, Tree


class Criterion:
    """Base class; combine with ``&``, ``|`` and ``~``."""

    __slots__ = ()

    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def __invert__(self):
        return Not(self)


@dataclass(frozen=True)
class TrueCrit(Criterion):
    def __repr__(self):
        return "TRUE"


TRUE = TrueCrit()


@dataclass(frozen=True)
class Exists(Criterion):
    path: Path

    def __post_init__(self):
        object.__setattr__(self, "path", as_path(self.path))


@dataclass(frozen=True)
class PathEqArray(Criterion):
    """``path = array``.

    ``array`` is a materialized tuple of trees, except when lookup compares
    against an absent source path, where it is ``ALPHA``.
    """

    path: Path
    array: tuple

    def __post_init__(self):
        object.__setattr__(self, "path", as_path(self.path))
        if self.array is not ALPHA:
            arr = tuple(self.array)
            if not all(isinstance(t, Tree) for t in arr):
                raise TypeError("PathEqArray needs an array of trees")
            object.__setattr__(self, "array", arr)


@dataclass(frozen=True)
class PathEqPath(Criterion):
    left: Path
    right: Path

    def __post_init__(self):
        object.__setattr__(self, "left", as_path(self.left))
        object.__setattr__(self, "right", as_path(self.right))


@dataclass(frozen=True)
class Not(Criterion):
    arg: Criterion


@dataclass(frozen=True)
class And(Criterion):
    left: Criterion
    right: Criterion


@dataclass(frozen=True)
class Or(Criterion):
    left: Criterion
    right: Criterion


def _same(a, b) -> bool:
    if a is ALPHA or b is ALPHA:
        return a is b
    return a == b


def satisfies(t, phi: Criterion) -> bool:
    """Whether tree ``t`` satisfies ``phi``."""
    if t is TAU:
        raise ValueError("the null tree cannot be tested against a criterion")
    match phi:
        case TrueCrit():
            return True
        case Exists(path=p):
            return apply_path(t, p) is not ALPHA
        case PathEqArray(path=p, array=a):
            return _same(apply_path(t, p), a)
        case PathEqPath(left=p1, right=p2):
            # both sides absent counts as equal
            return _same(apply_path(t, p1), apply_path(t, p2))
        case Not(arg=inner):
            return not satisfies(t, inner)
        case And(left=l, right=r):
            return satisfies(t, l) and satisfies(t, r)
        case Or(left=l, right=r):
            return satisfies(t, l) or satisfies(t, r)
    raise TypeError(f"not a criterion: {phi!r}")


def any_of(*criteria: Criterion) -> Criterion:
    """Left-nested disjunction of one or more criteria."""
    out = criteria[0]
    for c in criteria[1:]:
        out = Or(out, c)
    return out


def all_of(*criteria: Criterion) -> Criterion:
    out = criteria[0]
    for c in criteria[1:]:
        out = And(out, c)
    return out
