"""Stage sequences with named datasets for lookup."""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

from .criteria import Criterion
from .paths import Path, as_path
from .stages import (
    GroupSpec,
    LookupSpec,
    group_stage,
    lookup_stage,
    match_stage,
    project_stage,
    unwind_stage,
)
from .tree import ALPHA


class EvaluationError(Exception):
    pass


class UnboundDataset(EvaluationError, KeyError):
    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def __str__(self):
        return f"lookup refers to unbound dataset {self.name!r}"


@dataclass(frozen=True)
class Match:
    criterion: Criterion

    def apply(self, a, env):
        return match_stage(a, self.criterion)


@dataclass(frozen=True)
class Unwind:
    path: Path

    def __post_init__(self):
        object.__setattr__(self, "path", as_path(self.path))

    def apply(self, a, env):
        return unwind_stage(a, self.path)


@dataclass(frozen=True)
class Project:
    items: tuple

    def __post_init__(self):
        items = tuple(self.items)
        if not items:
            raise ValueError("project needs at least one item")
        object.__setattr__(self, "items", items)

    def apply(self, a, env):
        return project_stage(a, self.items)


@dataclass(frozen=True)
class Group:
    spec: GroupSpec

    def apply(self, a, env):
        return group_stage(a, self.spec)


@dataclass(frozen=True)
class Lookup:
    spec: LookupSpec

    def apply(self, a, env):
        try:
            adjunct = env[self.spec.adjunct]
        except KeyError:
            raise UnboundDataset(self.spec.adjunct) from None
        return lookup_stage(a, self.spec, adjunct)


Stage = (Match, Unwind, Project, Group, Lookup)


@dataclass(frozen=True)
class Pipeline:
    """Ordered stages plus the datasets lookups may join against.

    >>> from treeq import parse_array
    >>> Pipeline().run(parse_array("[1{}]"))
    (1{},)
    """

    stages: tuple = ()
    bindings: Mapping = field(default_factory=dict)

    def __post_init__(self):
        stages = tuple(self.stages)
        for s in stages:
            if not isinstance(s, Stage):
                raise TypeError(f"not a stage: {s!r}")
        object.__setattr__(self, "stages", stages)
        snapshot = {}
        for name, arr in dict(self.bindings).items():
            if arr is ALPHA:
                raise ValueError(f"dataset {name!r} is the null array")
            snapshot[name] = tuple(arr)
        object.__setattr__(self, "bindings", MappingProxyType(snapshot))

    def __eq__(self, other):
        if not isinstance(other, Pipeline):
            return NotImplemented
        return self.stages == other.stages and dict(self.bindings) == dict(other.bindings)

    def __hash__(self):
        return hash(self.stages)

    def __add__(self, other: "Pipeline") -> "Pipeline":
        return Pipeline(self.stages + other.stages, {**self.bindings, **other.bindings})

    def then(self, *stages) -> "Pipeline":
        return Pipeline(self.stages + stages, self.bindings)

    def bind(self, **datasets) -> "Pipeline":
        return Pipeline(self.stages, {**self.bindings, **datasets})

    def run(self, a) -> tuple:
        if a is ALPHA:
            raise ValueError("a pipeline cannot run on the null array")
        out = tuple(a)
        for stage in self.stages:
            out = stage.apply(out, self.bindings)
        return out


def run(pl: Pipeline, a) -> tuple:
    return pl.run(a)
