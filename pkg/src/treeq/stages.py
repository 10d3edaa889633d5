"""The five stage operators: match, unwind, project, group and lookup.

Every stage is a pure function from an array of trees to an array of trees.
The null array on input is read as ``[]``; no stage ever returns ``ALPHA``
and null trees are dropped wherever an array is materialized.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .criteria import And, Criterion, Exists, Not, Or, PathEqArray, TRUE, satisfies
from .paths import EPSILON, Path, apply_path, as_path
from .tree import ALPHA, NULL, TAU, Tree, concat_all, is_scalar, scalar_equal, scalar_key, set_cast


def _materialize(trees) -> tuple:
    return tuple(t for t in trees if t is not TAU)


def _input(a) -> tuple:
    return () if a is ALPHA else tuple(a)


# -- value definitions -----------------------------------------------------


class ValueDef:
    __slots__ = ()


@dataclass(frozen=True, eq=False)
class ScalarLit(ValueDef):
    value: object

    def __post_init__(self):
        if not is_scalar(self.value):
            raise TypeError(f"not a scalar: {self.value!r}")

    def __eq__(self, other):
        return isinstance(other, ScalarLit) and scalar_equal(self.value, other.value)

    def __hash__(self):
        return hash(scalar_key(self.value))


@dataclass(frozen=True)
class PathRef(ValueDef):
    path: Path

    def __post_init__(self):
        object.__setattr__(self, "path", as_path(self.path))


@dataclass(frozen=True)
class Seq(ValueDef):
    defs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "defs", tuple(self.defs))


@dataclass(frozen=True)
class Crit(ValueDef):
    criterion: Criterion


@dataclass(frozen=True)
class Ternary(ValueDef):
    cond: Criterion
    then: ValueDef
    orelse: ValueDef


@dataclass(frozen=True)
class TreeArrayLit(ValueDef):
    """A concrete array; used internally by group and lookup."""

    array: tuple

    def __post_init__(self):
        if self.array is not ALPHA:
            object.__setattr__(self, "array", tuple(self.array))


def eval_def(d: ValueDef, t):
    """Array obtained by evaluating ``d`` over ``t`` (``ALPHA`` on failure)."""
    match d:
        case ScalarLit(value=v):
            return (Tree(v),)
        case Crit(criterion=phi):
            return (Tree(satisfies(t, phi)),)
        case PathRef(path=p):
            return apply_path(t, p)
        case Seq(defs=defs):
            if not defs:
                return ALPHA
            return concat_all(eval_def(x, t) for x in defs)
        case Ternary(cond=phi, then=d1, orelse=d2):
            return eval_def(d1 if satisfies(t, phi) else d2, t)
        case TreeArrayLit(array=a):
            return a
    raise TypeError(f"not a value definition: {d!r}")


# -- projection ------------------------------------------------------------


@dataclass(frozen=True)
class KeepPath:
    path: Path

    def __post_init__(self):
        object.__setattr__(self, "path", as_path(self.path))


@dataclass(frozen=True)
class DefIntoPath:
    value: ValueDef
    path: Path

    def __post_init__(self):
        object.__setattr__(self, "path", as_path(self.path))


def project_path(t, p):
    """Keep only the branches of ``t`` along ``p``; roots are rebuilt as υ."""
    if not p:
        return t
    if t is TAU or apply_path(t, p) is ALPHA:
        return TAU
    k, rest = p[0], p[1:]
    kept = _materialize(project_path(u, rest) for u in apply_path(t, (k,)))
    return Tree(NULL, {k: kept})


def project_def(t, d: ValueDef, p):
    """Tree holding ``eval_def(d, t)`` under path ``p``, or ``TAU``."""
    if not p:
        return TAU
    value = eval_def(d, t)
    if value is ALPHA:
        return TAU
    if len(p) == 1:
        return Tree(NULL, {p[0]: _materialize(value)})
    return Tree(NULL, {p[0]: _materialize([project_def(t, d, p[1:])])})


def merge_arrays(a, b):
    if a is ALPHA or (b is not ALPHA and not a):
        return b
    if b is ALPHA or not b:
        return a
    n = min(len(a), len(b))
    zipped = [merge(x, y) for x, y in zip(a[:n], b[:n])]
    return _materialize(zipped) + tuple(a[n:]) + tuple(b[n:])


def merge(t, u):
    """Tree merge: equal roots union their branches, differing roots give τ."""
    if t is TAU:
        return u
    if u is TAU:
        return t
    if not scalar_equal(t.root, u.root):
        return TAU
    out = {}
    for k in itertools.chain(t.labels, u.labels):
        if k not in out:
            out[k] = merge_arrays(t.get(k), u.get(k))
    return Tree(t.root, out)


def _project_item(t, item):
    if isinstance(item, KeepPath):
        return project_path(t, item.path)
    if isinstance(item, DefIntoPath):
        return project_def(t, item.value, item.path)
    raise TypeError(f"not a projection item: {item!r}")


def project_tree(t, items: Sequence):
    """Merge the per-item projections of ``t`` (right-nested)."""
    items = list(items)
    if not items:
        raise ValueError("a projection needs at least one item")
    out = _project_item(t, items[-1])
    for item in reversed(items[:-1]):
        out = merge(_project_item(t, item), out)
    return out


# -- stages ----------------------------------------------------------------


def match_stage(a, phi: Criterion) -> tuple:
    return tuple(t for t in _input(a) if satisfies(t, phi))


def unwind_expand(t, a, k: str) -> tuple:
    """One copy of ``t`` per element of ``a``, each binding ``k`` to that element."""
    if a is ALPHA:
        return ()
    return tuple(t.with_branch(k, (x,)) for x in a)


def _unwind(a, p):
    if not p:
        return a
    if a is ALPHA:
        return ()
    k, rest = p[0], p[1:]
    out = []
    for t in a:
        out.extend(unwind_expand(t, _unwind(apply_path(t, (k,)), rest), k))
    return tuple(out)


def unwind_stage(a, p) -> tuple:
    return _input(_unwind(_input(a), as_path(p)))


def project_stage(a, items: Sequence) -> tuple:
    items = tuple(items)
    return _materialize(project_tree(t, items) for t in _input(a))


@dataclass(frozen=True)
class GroupSpec:
    """Aggregation pairs ``(q, p)`` and grouping pairs ``(s, r)``.

    A bare path in either list stands for ``(path, path)``.
    """

    aggregations: tuple
    groupings: tuple

    def __post_init__(self):
        agg = tuple(_pair(x) for x in self.aggregations)
        grp = tuple(_pair(x) for x in self.groupings)
        if not agg or not grp:
            raise ValueError("group needs at least one aggregation and one grouping path")
        object.__setattr__(self, "aggregations", agg)
        object.__setattr__(self, "groupings", grp)


def _pair(x):
    if isinstance(x, (str, Path)):
        p = as_path(x)
        pair = (p, p)
    else:
        src, dst = x
        pair = (as_path(src), as_path(dst))
    if not pair[0] or not pair[1]:
        raise ValueError("group paths must be non-empty")
    return pair


def unfold_combination(vals: dict, H: Sequence[int], dests: Sequence) -> list:
    """Projection items placing ``vals[h]`` under ``dests[h]`` for each h in H.

    Indices are 1-based.  The empty subset unfolds to ``[KeepPath(ε)]``.
    """
    if not H:
        return [KeepPath(EPSILON)]
    return [DefIntoPath(TreeArrayLit(vals[h]), dests[h - 1]) for h in sorted(H)]


def _distinct_arrays(arrays):
    seen = set()
    out = []
    for arr in arrays:
        if arr is ALPHA or arr in seen:
            continue
        seen.add(arr)
        out.append(arr)
    return out


def group_subset(a, g: GroupSpec, H, *, distinct: bool = False) -> tuple:
    """Groups whose trees carry exactly the grouping paths indexed by ``H``.

    With ``distinct=True`` equal trees inside a group contribute their
    aggregated values once; by default every occurrence contributes.
    """
    a = _input(a)
    H = sorted(H)
    m = len(g.groupings)
    sources = [s for s, _ in g.groupings]
    dests = [r for _, r in g.groupings]
    candidates = set_cast(a)
    domains = [_distinct_arrays(apply_path(t, sources[h - 1]) for t in candidates) for h in H]

    out = []
    for combo in itertools.product(*domains):
        vals = dict(zip(H, combo))
        chi = unfold_combination(vals, H, dests)
        merged = TAU
        complete = True
        for q, p in g.aggregations:
            psi = Exists(q)
            absent = [j for j in range(1, m + 1) if j not in vals]
            if absent:
                excluded = Exists(sources[absent[0] - 1])
                for j in absent[1:]:
                    excluded = Or(excluded, Exists(sources[j - 1]))
                psi = And(psi, Not(excluded))
            for h in H:
                psi = And(psi, And(PathEqArray(sources[h - 1], vals[h]), Exists(sources[h - 1])))
            members = match_stage(a, psi)
            if distinct:
                members = set_cast(members)
            if not members:
                complete = False
                break
            collected = concat_all(apply_path(t, q) for t in members)
            theta = DefIntoPath(TreeArrayLit(collected), p)
            merged = merge(merged, project_tree(TAU, chi + [theta]))
        if complete and merged is not TAU:
            out.append(merged)
    return tuple(out)


def subsets(m: int):
    """Subsets of ``1..m`` in increasing bitmask order."""
    for mask in range(1 << m):
        yield [h + 1 for h in range(m) if mask >> h & 1]


def group_stage(a, g: GroupSpec, *, distinct: bool = False) -> tuple:
    a = _input(a)
    out = []
    for H in subsets(len(g.groupings)):
        out.extend(group_subset(a, g, H, distinct=distinct))
    return tuple(out)


@dataclass(frozen=True)
class LookupSpec:
    """Join on ``source`` path == ``adjunct``'s ``target`` path, stored under ``dest``."""

    source: Path
    adjunct: str
    target: Path
    dest: Path

    def __post_init__(self):
        for name in ("source", "target", "dest"):
            p = as_path(getattr(self, name))
            if not p:
                raise ValueError(f"lookup {name} path must be non-empty")
            object.__setattr__(self, name, p)


def lookup_stage(a, spec: LookupSpec, adjunct) -> tuple:
    adjunct = _input(adjunct)
    out = []
    for t in _input(a):
        joined = match_stage(adjunct, PathEqArray(spec.target, apply_path(t, spec.source)))
        out.append(project_tree(t, [KeepPath(EPSILON), DefIntoPath(TreeArrayLit(joined), spec.dest)]))
    return _materialize(out)


__all__ = [
    "ValueDef", "ScalarLit", "PathRef", "Seq", "Crit", "Ternary", "TreeArrayLit",
    "KeepPath", "DefIntoPath", "GroupSpec", "LookupSpec",
    "eval_def", "project_path", "project_def", "merge", "merge_arrays", "project_tree",
    "match_stage", "unwind_expand", "unwind_stage", "project_stage",
    "unfold_combination", "group_subset", "group_stage", "subsets", "lookup_stage",
    "TRUE",
]
