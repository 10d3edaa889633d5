"""In-memory queries over tree-shaped data.

Trees, paths and criteria, the match / unwind / project / group / lookup
stages, pipelines, a small query language, and JSON/XML codecs.
"""

from .codec import (
    COMPACT_JSON,
    JSON,
    XML,
    DecodeError,
    EncodeError,
    FormatOptions,
    decode,
    encode,
    from_python,
    to_python,
)
from .criteria import TRUE, And, Criterion, Exists, Not, Or, PathEqArray, PathEqPath, satisfies
from .dsl import ParseError, format_pipeline, parse_criterion, parse_pipeline
from .paths import EPSILON, Path, apply_path, apply_path_array, parse_path
from .pipeline import EvaluationError, Group, Lookup, Match, Pipeline, Project, UnboundDataset, Unwind, run
from .stages import (
    Crit,
    DefIntoPath,
    GroupSpec,
    KeepPath,
    LookupSpec,
    PathRef,
    ScalarLit,
    Seq,
    Ternary,
    TreeArrayLit,
    eval_def,
    group_stage,
    group_subset,
    lookup_stage,
    match_stage,
    merge,
    merge_arrays,
    project_def,
    project_path,
    project_stage,
    project_tree,
    unfold_combination,
    unwind_expand,
    unwind_stage,
)
from .tree import (
    ALPHA,
    NULL,
    TAU,
    Tree,
    branch,
    concat,
    format_array,
    format_tree,
    index,
    leaf,
    parse_array,
    parse_tree,
    set_cast,
    size,
    tree_equal,
)

__version__ = "0.1.0"
