"""Tree values, arrays of trees, and the null sentinels.

A tree is a root scalar plus a set of labeled arrays of sub-trees.  Arrays
are plain tuples of :class:`Tree`.  Two sentinels stand for missing data:

* ``TAU``   the null tree, returned by out-of-range indexing;
* ``ALPHA`` the null array, returned when a label is absent.

``ALPHA`` is *not* the empty tuple; keeping them apart is what lets the
match and exists criteria tell "absent" from "empty".
"""

from __future__ import annotations

import json
import math
import re
from typing import Iterable, Mapping, Sequence, Union


class _Null:
    """The null scalar (written ``υ``); a value, not the absence of one."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "υ"

    def __reduce__(self):
        return (_Null, ())


NULL = _Null()

Scalar = Union[str, int, float, bool, _Null]


def scalar_key(value: Scalar) -> tuple:
    """Type-tagged comparison key; ``1``, ``1.0`` and ``True`` all differ."""
    if value is NULL:
        return ("null",)
    if isinstance(value, bool):
        return ("bool", value)
    if isinstance(value, int):
        return ("int", value)
    if isinstance(value, float):
        # NaN is made reflexive so tree equality stays an equivalence
        return ("float", "nan") if math.isnan(value) else ("float", value)
    if isinstance(value, str):
        return ("str", value)
    raise TypeError(f"not a scalar: {value!r}")


def scalar_equal(a: Scalar, b: Scalar) -> bool:
    return scalar_key(a) == scalar_key(b)


def is_scalar(value) -> bool:
    return value is NULL or isinstance(value, (str, int, float, bool))


class Tree:
    """Immutable tree ``root {label: array, ...}``.

    Branch order is kept for deterministic output but ignored by equality.
    """

    __slots__ = ("root", "_branches", "_key", "_hash")

    def __init__(self, root: Scalar = NULL, branches=None):
        if not is_scalar(root):
            raise TypeError(f"tree root must be a scalar, got {root!r}")
        items = branches.items() if isinstance(branches, Mapping) else (branches or ())
        table = {}
        for label, array in items:
            if not isinstance(label, str):
                raise TypeError(f"labels are strings, got {label!r}")
            if label in table:
                raise ValueError(f"duplicate label {label!r}")
            if array is ALPHA:
                raise ValueError(f"branch {label!r} cannot hold the null array")
            array = tuple(array)
            for t in array:
                if not isinstance(t, Tree):
                    raise TypeError(f"branch {label!r} holds a non-tree {t!r}")
            table[label] = array
        self.root = root
        self._branches = table
        self._key = None
        self._hash = None

    @property
    def branches(self) -> Mapping[str, tuple]:
        return dict(self._branches)

    @property
    def labels(self) -> tuple:
        return tuple(self._branches)

    def items(self):
        return self._branches.items()

    def get(self, label: str):
        """The array under ``label`` or ``ALPHA``."""
        return self._branches.get(label, ALPHA)

    def __contains__(self, label):
        return label in self._branches

    def is_leaf(self) -> bool:
        return not self._branches

    def with_branch(self, label: str, array: Sequence["Tree"]) -> "Tree":
        """Copy of this tree with ``label`` bound to ``array`` (added if absent)."""
        table = dict(self._branches)
        table[label] = tuple(array)
        return Tree(self.root, table)

    def key(self) -> tuple:
        if self._key is None:
            self._key = (
                scalar_key(self.root),
                tuple(sorted((k, tuple(t.key() for t in a)) for k, a in self._branches.items())),
            )
        return self._key

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Tree):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __repr__(self):
        return format_tree(self)


class _NullTree:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "τ"

    def __reduce__(self):
        return (_NullTree, ())

    def get(self, label):
        return ALPHA


class _NullArray:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "α"

    def __reduce__(self):
        return (_NullArray, ())

    def __len__(self):
        raise TypeError("the null array has no size")

    def __iter__(self):
        raise TypeError("the null array is not iterable")


TAU = _NullTree()
ALPHA = _NullArray()

TreeArray = tuple


def leaf(value: Scalar) -> Tree:
    return Tree(value)


def array(*trees: Tree) -> tuple:
    return tuple(trees)


def branch(t, label: str):
    """Array bound to ``label`` in ``t``; ``ALPHA`` if absent or ``t`` is ``TAU``."""
    if t is TAU:
        return ALPHA
    return t.get(label)


def index(a, i: int):
    """1-based element access; ``TAU`` when out of range or on ``ALPHA``."""
    if a is ALPHA or i < 1 or i > len(a):
        return TAU
    return a[i - 1]


def concat(a, b):
    """Array concatenation with ``ALPHA`` absorbed by any materialized array."""
    if a is ALPHA:
        return b if b is ALPHA else tuple(b)
    if b is ALPHA:
        return tuple(a)
    return tuple(a) + tuple(b)


def concat_all(arrays: Iterable) -> tuple:
    """Fold :func:`concat` over ``arrays``; the empty fold is ``()``."""
    out = None
    for a in arrays:
        out = a if out is None else concat(out, a)
    if out is None:
        return ()
    return out if out is ALPHA else tuple(out)


def tree_equal(t, u) -> bool:
    if t is TAU or u is TAU:
        return t is u
    return t == u


def set_cast(a) -> tuple:
    """Drop duplicate trees, keeping first occurrences in order."""
    if a is ALPHA:
        raise ValueError("cannot cast the null array to a set")
    seen = set()
    out = []
    for t in a:
        if t not in seen:
            seen.add(t)
            out.append(t)
    return tuple(out)


def size(a) -> int:
    if a is ALPHA:
        raise ValueError("the null array has no size")
    return len(a)


# -- textual notation ------------------------------------------------------
#
#   υ{date:[20181129{}], t:[37{}, 35{}]}
#
# ``null`` is accepted for ``υ``; labels that are not identifiers are quoted.

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def _format_scalar(v) -> str:
    if v is NULL:
        return "υ"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, str):
        return json.dumps(v, ensure_ascii=False)
    return repr(v)


def _format_label(label: str) -> str:
    if _IDENT.match(label) and label not in ("true", "false", "null"):
        return label
    return json.dumps(label, ensure_ascii=False)


def format_tree(t) -> str:
    if t is TAU:
        return "τ"
    inner = ", ".join(f"{_format_label(k)}:{format_array(a)}" for k, a in t.items())
    return f"{_format_scalar(t.root)}{{{inner}}}"


def format_array(a) -> str:
    if a is ALPHA:
        return "α"
    return "[" + ", ".join(format_tree(t) for t in a) + "]"


_NOTATION_TOKEN = re.compile(
    r"""\s*(?:
        (?P<str>"(?:[^"\\]|\\.)*")
      | (?P<num>-?\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)
      | (?P<word>υ|τ|α|[A-Za-z_][A-Za-z0-9_]*)
      | (?P<punct>[{}\[\]:,])
    )""",
    re.VERBOSE,
)


class _NotationReader:
    def __init__(self, text: str):
        self.tokens = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _NOTATION_TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"bad tree notation at offset {pos}: {text[pos:pos + 10]!r}")
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise ValueError(f"expected {value or 'token'}, got {tok[1]!r}")
        self.i += 1
        return tok

    def scalar(self):
        kind, text = self.take()
        if kind == "str":
            return json.loads(text)
        if kind == "num":
            return float(text) if any(c in text for c in ".eE") else int(text)
        if text in ("υ", "null"):
            return NULL
        if text in ("true", "false"):
            return text == "true"
        raise ValueError(f"not a scalar: {text!r}")

    def tree(self):
        if self.peek()[1] == "τ":
            self.take()
            return TAU
        root = self.scalar()
        self.take("{")
        branches = []
        if self.peek()[1] != "}":
            while True:
                kind, text = self.take()
                label = json.loads(text) if kind == "str" else text
                self.take(":")
                branches.append((label, self.array()))
                if self.peek()[1] != ",":
                    break
                self.take(",")
        self.take("}")
        return Tree(root, branches)

    def array(self):
        if self.peek()[1] == "α":
            self.take()
            return ALPHA
        self.take("[")
        out = []
        if self.peek()[1] != "]":
            while True:
                out.append(self.tree())
                if self.peek()[1] != ",":
                    break
                self.take(",")
        self.take("]")
        return tuple(out)

    def done(self):
        if self.i != len(self.tokens):
            raise ValueError(f"trailing input: {self.peek()[1]!r}")


def parse_tree(text: str):
    """Read a tree written as ``υ{x:[1{}, 2{}]}``."""
    r = _NotationReader(text)
    t = r.tree()
    r.done()
    return t


def parse_array(text: str):
    """Read an array written as ``[1{}, υ{a:[2{}]}]`` (or ``α``)."""
    r = _NotationReader(text)
    a = r.array()
    r.done()
    return a
