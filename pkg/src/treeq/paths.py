"""Paths and path application.

A path is a tuple of labels; the empty path is the terminator ``EPSILON``.
Applying a path collects every sub-tree reached by following the labels,
ignoring array positions along the way.
"""

from __future__ import annotations

import json
import re

from .tree import ALPHA, TAU, branch, concat_all

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class Path(tuple):
    """Sequence of non-empty labels; ``Path()`` is the terminator."""

    def __new__(cls, labels=()):
        if isinstance(labels, str):
            return parse_path(labels)
        labels = tuple(labels)
        for k in labels:
            if not isinstance(k, str) or not k:
                raise ValueError(f"path labels must be non-empty strings, got {k!r}")
        return super().__new__(cls, labels)

    @property
    def head(self) -> str:
        return self[0]

    @property
    def tail(self) -> "Path":
        return Path(self[1:])

    def __add__(self, other):
        return Path(tuple(self) + tuple(other))

    def __str__(self):
        if not self:
            return "ε"
        return ".".join(k if _IDENT.match(k) else json.dumps(k, ensure_ascii=False) for k in self)

    def __repr__(self):
        return f"Path({str(self)!r})"


EPSILON = Path()


def parse_path(text: str) -> Path:
    """Parse ``a.b.c`` or ``"my key".x``; ``""`` and ``"ε"`` give the terminator."""
    text = text.strip()
    if text in ("", "ε"):
        return EPSILON
    labels = []
    pos = 0
    while True:
        if pos < len(text) and text[pos] == '"':
            dec = json.JSONDecoder()
            try:
                label, end = dec.raw_decode(text, pos)
            except json.JSONDecodeError as exc:
                raise ValueError(f"bad quoted label in path {text!r}") from exc
            pos = end
        else:
            m = re.compile(r"[A-Za-z_][A-Za-z0-9_]*").match(text, pos)
            if not m:
                raise ValueError(f"bad path {text!r} at offset {pos}")
            label, pos = m.group(), m.end()
        labels.append(label)
        if pos == len(text):
            return Path(labels)
        if text[pos] != ".":
            raise ValueError(f"bad path {text!r} at offset {pos}")
        pos += 1


def as_path(p) -> Path:
    if isinstance(p, Path):
        return p
    if isinstance(p, str):
        return parse_path(p)
    return Path(p)


def apply_path(t, p):
    """Array of sub-trees of ``t`` reached by ``p``, or ``ALPHA``."""
    if t is TAU:
        return ALPHA
    if not p:
        return (t,)
    sub = branch(t, p[0])
    if sub is ALPHA:
        return ALPHA
    rest = p[1:]
    return concat_all(apply_path(u, rest) for u in sub)


def apply_path_array(a, p):
    """Concatenation of :func:`apply_path` over the elements of ``a``."""
    if a is ALPHA:
        raise ValueError("cannot apply a path to the null array")
    return concat_all(apply_path(t, p) for t in a)
