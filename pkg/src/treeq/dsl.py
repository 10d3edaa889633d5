"""Textual query syntax: parser and printer.

A query is a chain of stages joined by ``|>``::

    match { date == 20181128 || date == 20181129 }
    |> project { t in temperatures, "xxx" in patient_id }

    unwind { M.D.L }
    |> project { y in year, M.m in month, M.D.d in day, M.D.L.q in quality }
    |> group { quality by day, month, year }
    |> lookup { patient_id == temps.patient_id in temps }

Labels that are not identifiers are written in backticks (`` `my key`.x ``)
or, when the path has more than one segment or appears where only a path
may, in double quotes (``"my key".x``).  A lone double-quoted string in a
value position is a string literal.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass

from .criteria import TRUE, And, Criterion, Exists, Not, Or, PathEqArray, PathEqPath, TrueCrit
from .paths import Path
from .pipeline import Group, Lookup, Match, Pipeline, Project, Unwind
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
)
from .tree import ALPHA, NULL, Tree

KEYWORDS = frozenset({"true", "false", "null", "exists", "in", "by"})
STAGE_NAMES = ("match", "unwind", "project", "group", "lookup")


class ParseError(Exception):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Token:
    kind: str  # ident, string, tick, number, op, eof
    text: str
    value: object
    line: int
    column: int


_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+|//[^\n]*)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<tick>`(?:[^`\n]|``)+`)
  | (?P<number>-?\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>\|>|==|&&|\|\||[{}()\[\],.!?:])
    """,
    re.VERBOSE,
)


def tokenize(src: str) -> list:
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        col = pos - line_start + 1
        if not m:
            raise ParseError(f"unexpected character {src[pos]!r}", line, col)
        kind = m.lastgroup
        text = m.group()
        if kind != "ws":
            if kind == "string":
                try:
                    value = json.loads(text)
                except json.JSONDecodeError:
                    raise ParseError(f"bad string literal {text}", line, col) from None
            elif kind == "tick":
                value = text[1:-1].replace("``", "`")
            elif kind == "number":
                value = float(text) if any(c in text for c in ".eE") else int(text)
            else:
                value = text
            tokens.append(Token(kind, text, value, line, col))
        newlines = text.count("\n")
        if newlines:
            line += newlines
            line_start = pos + text.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", None, line, pos - line_start + 1))
    return tokens


# expression nodes produced before deciding between criterion and value
@dataclass
class _Node:
    kind: str
    tok: Token
    args: tuple = ()


class _Parser:
    def __init__(self, src: str):
        self.toks = tokenize(src)
        self.i = 0

    # -- token helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def at(self, text: str) -> bool:
        t = self.tok
        return t.kind in ("op", "ident") and t.text == text

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        return ParseError(f"{message}, found {found}", tok.line, tok.column)

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.error(f"expected {text!r}")
        t = self.tok
        self.i += 1
        return t

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    # -- paths
    def _segment(self, allow_string: bool = True) -> str:
        t = self.tok
        if t.kind == "ident" and t.text not in KEYWORDS:
            self.i += 1
            return t.text
        if t.kind == "tick" or (allow_string and t.kind == "string"):
            if not t.value:
                raise self.error("empty label")
            self.i += 1
            return t.value
        raise self.error("expected a path")

    def path(self) -> Path:
        labels = [self._segment()]
        while self.accept("."):
            labels.append(self._segment())
        return Path(labels)

    def _starts_path(self) -> bool:
        t = self.tok
        if t.kind == "tick":
            return True
        if t.kind == "ident" and t.text not in KEYWORDS:
            return True
        # "a b".x is a path, a lone "a b" is a string literal
        return t.kind == "string" and self.toks[self.i + 1].text == "."

    # -- expressions
    def expr(self) -> _Node:
        start = self.tok
        node = self.or_expr()
        if self.at("?"):
            self.i += 1
            then = self.expr()
            self.expect(":")
            orelse = self.expr()
            node = _Node("tern", start, (node, then, orelse))
        return node

    def or_expr(self) -> _Node:
        node = self.and_expr()
        while self.at("||"):
            tok = self.tok
            self.i += 1
            node = _Node("or", tok, (node, self.and_expr()))
        return node

    def and_expr(self) -> _Node:
        node = self.unary()
        while self.at("&&"):
            tok = self.tok
            self.i += 1
            node = _Node("and", tok, (node, self.unary()))
        return node

    def unary(self) -> _Node:
        if self.at("!"):
            tok = self.tok
            self.i += 1
            return _Node("not", tok, (self.unary(),))
        return self.comparison()

    def comparison(self) -> _Node:
        left = self.primary()
        if self.at("=="):
            tok = self.tok
            self.i += 1
            right = self.primary()
            return _Node("eq", tok, (left, right))
        return left

    def primary(self) -> _Node:
        t = self.tok
        if self.at("("):
            self.i += 1
            inner = self.expr()
            self.expect(")")
            return _Node("paren", t, (inner,))
        if self.at("["):
            self.i += 1
            items = []
            if not self.at("]"):
                items.append(self.expr())
                while self.accept(","):
                    items.append(self.expr())
            self.expect("]")
            return _Node("arr", t, tuple(items))
        if self.at("exists"):
            self.i += 1
            return _Node("exists", t, (self.path(),))
        if t.kind == "ident" and t.text in ("true", "false", "null"):
            self.i += 1
            value = {"true": True, "false": False, "null": NULL}[t.text]
            return _Node("lit", t, (value,))
        if t.kind == "number":
            self.i += 1
            return _Node("lit", t, (t.value,))
        if self._starts_path():
            return _Node("path", t, (self.path(),))
        if t.kind == "string":
            self.i += 1
            return _Node("lit", t, (t.value,))
        raise self.error("expected a value or criterion")

    # -- node conversion
    def to_crit(self, node: _Node) -> Criterion:
        k, a = node.kind, node.args
        if k == "lit" and a[0] is True:
            return TRUE
        if k == "exists":
            return Exists(a[0])
        if k == "not":
            return Not(self.to_crit(a[0]))
        if k == "and":
            return And(self.to_crit(a[0]), self.to_crit(a[1]))
        if k == "or":
            return Or(self.to_crit(a[0]), self.to_crit(a[1]))
        if k == "paren":
            return self.to_crit(a[0])
        if k == "eq":
            left, right = a
            if left.kind != "path":
                raise self.error("left side of '==' must be a path", left.tok)
            p = left.args[0]
            if right.kind == "lit":
                return PathEqArray(p, (Tree(right.args[0]),))
            if right.kind == "path":
                return PathEqPath(p, right.args[0])
            if right.kind == "arr":
                leaves = []
                for item in right.args:
                    if item.kind != "lit":
                        raise self.error("array literals in criteria hold scalars only", item.tok)
                    leaves.append(Tree(item.args[0]))
                return PathEqArray(p, tuple(leaves))
            raise self.error("right side of '==' must be a literal, array or path", right.tok)
        raise self.error("expected a criterion", node.tok)

    def to_value(self, node: _Node):
        k, a = node.kind, node.args
        if k == "lit":
            return ScalarLit(a[0])
        if k == "path":
            return PathRef(a[0])
        if k == "arr":
            return Seq(tuple(self.to_value(x) for x in a))
        if k == "tern":
            return Ternary(self.to_crit(a[0]), self.to_value(a[1]), self.to_value(a[2]))
        if k == "paren" and a[0].kind == "tern":
            return self.to_value(a[0])
        return Crit(self.to_crit(node))

    # -- stages
    def pipeline(self) -> Pipeline:
        stages = []
        if self.tok.kind != "eof":
            stages.append(self.stage())
            while self.accept("|>"):
                stages.append(self.stage())
        if self.tok.kind != "eof":
            raise self.error("expected '|>' or end of input")
        return Pipeline(tuple(stages))

    def stage(self):
        t = self.tok
        if t.kind != "ident" or t.text not in STAGE_NAMES:
            raise self.error("expected a stage (" + ", ".join(STAGE_NAMES) + ")")
        self.i += 1
        self.expect("{")
        stage = getattr(self, "_" + t.text)()
        self.expect("}")
        return stage

    def _match(self):
        node = self.or_expr()
        return Match(self.to_crit(node))

    def _unwind(self):
        return Unwind(self.path())

    def _project(self):
        items = [self._proj_item()]
        while self.accept(","):
            items.append(self._proj_item())
        return Project(tuple(items))

    def _proj_item(self):
        node = self.expr()
        if self.accept("in"):
            return DefIntoPath(self.to_value(node), self.path())
        if node.kind == "path":
            return KeepPath(node.args[0])
        if node.kind == "lit" and isinstance(node.args[0], str) and node.args[0]:
            return KeepPath(Path([node.args[0]]))
        raise self.error("expected 'in' after a value definition")

    def _grp_item(self):
        src = self.path()
        dst = self.path() if self.accept("in") else src
        return (src, dst)

    def _group(self):
        agg = [self._grp_item()]
        while self.accept(","):
            agg.append(self._grp_item())
        self.expect("by")
        grp = [self._grp_item()]
        while self.accept(","):
            grp.append(self._grp_item())
        return Group(GroupSpec(tuple(agg), tuple(grp)))

    def _lookup(self):
        source = self.path()
        self.expect("==")
        t = self.tok
        if t.kind != "ident" or t.text in KEYWORDS:
            raise self.error("expected a dataset name")
        self.i += 1
        self.expect(".")
        target = self.path()
        self.expect("in")
        dest = self.path()
        return Lookup(LookupSpec(source, t.text, target, dest))


def parse_pipeline(src: str) -> Pipeline:
    """Parse query text into a :class:`Pipeline` (with no bindings)."""
    return _Parser(src).pipeline()


def parse_criterion(src: str) -> Criterion:
    p = _Parser(src)
    crit = p.to_crit(p.or_expr())
    if p.tok.kind != "eof":
        raise p.error("expected end of criterion")
    return crit


# -- printer ---------------------------------------------------------------

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def format_label(label: str) -> str:
    if _IDENT.match(label) and label not in KEYWORDS and label not in STAGE_NAMES:
        return label
    return "`" + label.replace("`", "``") + "`"


def format_path(p) -> str:
    if not p:
        raise ValueError("the empty path has no textual form")
    return ".".join(format_label(k) for k in p)


def format_literal(v) -> str:
    if v is NULL:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, str):
        return json.dumps(v, ensure_ascii=False)
    if isinstance(v, float):
        if not math.isfinite(v):
            raise ValueError(f"{v!r} has no textual form")
        text = repr(v)
        return text if any(c in text for c in ".eE") else text + ".0"
    return str(v)


def _leaf_value(t):
    if not isinstance(t, Tree) or not t.is_leaf():
        raise ValueError("only arrays of scalar leaves can be written in a query")
    return t.root


def format_criterion(phi: Criterion, level: int = 0) -> str:
    """Print with minimal parentheses; levels are 0 ``||``, 1 ``&&``, 2 ``!``."""
    if isinstance(phi, Or):
        text = f"{format_criterion(phi.left, 0)} || {format_criterion(phi.right, 1)}"
        return f"({text})" if level > 0 else text
    if isinstance(phi, And):
        text = f"{format_criterion(phi.left, 1)} && {format_criterion(phi.right, 2)}"
        return f"({text})" if level > 1 else text
    if isinstance(phi, Not):
        arg = format_criterion(phi.arg, 2)
        # `!a == b` already parses as a negated comparison; brackets are for the reader
        if isinstance(phi.arg, (PathEqPath, PathEqArray)):
            arg = f"({arg})"
        return "!" + arg
    if isinstance(phi, TrueCrit):
        return "true"
    if isinstance(phi, Exists):
        return f"exists {format_path(phi.path)}"
    if isinstance(phi, PathEqPath):
        return f"{format_path(phi.left)} == {format_path(phi.right)}"
    if isinstance(phi, PathEqArray):
        if phi.array is ALPHA:
            raise ValueError("comparison against the null array has no textual form")
        values = [_leaf_value(t) for t in phi.array]
        if len(values) == 1:
            rhs = format_literal(values[0])
        else:
            rhs = "[" + ", ".join(format_literal(v) for v in values) + "]"
        return f"{format_path(phi.path)} == {rhs}"
    raise TypeError(f"not a criterion: {phi!r}")


def format_value(d) -> str:
    if isinstance(d, ScalarLit):
        return format_literal(d.value)
    if isinstance(d, PathRef):
        return format_path(d.path)
    if isinstance(d, Seq):
        return "[" + ", ".join(format_value(x) for x in d.defs) + "]"
    if isinstance(d, Crit):
        return f"({format_criterion(d.criterion)})"
    if isinstance(d, Ternary):
        return f"({format_criterion(d.cond)}) ? {format_value(d.then)} : {format_value(d.orelse)}"
    if isinstance(d, TreeArrayLit):
        raise ValueError("literal tree arrays have no textual form")
    raise TypeError(f"not a value definition: {d!r}")


def _format_pair(src, dst) -> str:
    if src == dst:
        return format_path(src)
    return f"{format_path(src)} in {format_path(dst)}"


def format_stage(stage) -> str:
    if isinstance(stage, Match):
        body = format_criterion(stage.criterion)
        return f"match {{ {body} }}"
    if isinstance(stage, Unwind):
        return f"unwind {{ {format_path(stage.path)} }}"
    if isinstance(stage, Project):
        parts = []
        for item in stage.items:
            if isinstance(item, KeepPath):
                parts.append(format_path(item.path))
            else:
                parts.append(f"{format_value(item.value)} in {format_path(item.path)}")
        return "project { " + ", ".join(parts) + " }"
    if isinstance(stage, Group):
        agg = ", ".join(_format_pair(q, p) for q, p in stage.spec.aggregations)
        grp = ", ".join(_format_pair(s, r) for s, r in stage.spec.groupings)
        return f"group {{ {agg} by {grp} }}"
    if isinstance(stage, Lookup):
        s = stage.spec
        if not _IDENT.match(s.adjunct) or s.adjunct in KEYWORDS:
            raise ValueError(f"dataset name {s.adjunct!r} is not an identifier")
        return (
            f"lookup {{ {format_path(s.source)} == {s.adjunct}."
            f"{format_path(s.target)} in {format_path(s.dest)} }}"
        )
    raise TypeError(f"not a stage: {stage!r}")


def format_pipeline(pl: Pipeline) -> str:
    return "\n|> ".join(format_stage(s) for s in pl.stages)
