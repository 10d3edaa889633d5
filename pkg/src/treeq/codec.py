"""JSON and XML to trees and back.

JSON objects become trees with a null root and one branch per field; a
field holding a list maps to that array, any other value to a singleton.
The reserved field ``"#"`` carries a non-null root next to named children.

Canonical JSON output writes every branch as a list, so decoding it gives
back the same trees.  Compact output collapses ``[leaf]`` to the bare
scalar, in the style of hand-written documents.

XML documents decode to a single tree; element text (sniffed as int, float
or string) is the root, child elements are grouped by tag into branches.
"""

from __future__ import annotations

import json
import math
import re
import warnings
import xml.etree.ElementTree as ET
from dataclasses import dataclass

from .tree import ALPHA, NULL, TAU, Tree

ROOT_FIELD = "#"


class DecodeError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f"{line}:{column}: " if line is not None else ""
        super().__init__(where + message)
        self.message = message
        self.line = line
        self.column = column


class EncodeError(ValueError):
    pass


@dataclass(frozen=True)
class FormatOptions:
    format: str = "json"
    emission_mode: str = "canonical"
    xml_root_label: str = "root"
    xml_item_label: str = "item"

    def __post_init__(self):
        if self.format not in ("json", "xml"):
            raise ValueError(f"unknown format {self.format!r}")
        if self.emission_mode not in ("canonical", "compact"):
            raise ValueError(f"unknown emission mode {self.emission_mode!r}")


JSON = FormatOptions()
COMPACT_JSON = FormatOptions(emission_mode="compact")
XML = FormatOptions(format="xml")


# -- python values ---------------------------------------------------------


def from_python(obj, _where: str = "$"):
    """Array of trees for a JSON-like Python value (list at top level or not)."""
    if isinstance(obj, list):
        return tuple(_tree_from_python(x, f"{_where}[{i}]") for i, x in enumerate(obj))
    return (_tree_from_python(obj, _where),)


def _tree_from_python(obj, where):
    if isinstance(obj, dict):
        root = NULL
        branches = {}
        for key, value in obj.items():
            if key == ROOT_FIELD and not isinstance(value, (list, dict)):
                root = NULL if value is None else value
                continue
            if isinstance(value, list):
                branches[key] = tuple(_tree_from_python(x, f"{where}.{key}[{i}]") for i, x in enumerate(value))
            else:
                branches[key] = (_tree_from_python(value, f"{where}.{key}"),)
        return Tree(root, branches)
    if isinstance(obj, list):
        raise DecodeError(f"array nested directly inside an array at {where}")
    if obj is None:
        return Tree(NULL)
    if isinstance(obj, (str, bool, int, float)):
        return Tree(obj)
    raise DecodeError(f"unsupported value {obj!r} at {where}")


def _scalar_out(v):
    return None if v is NULL else v


def to_python(a, compact: bool = False):
    """JSON-like Python list for an array of trees."""
    if a is ALPHA:
        raise EncodeError("cannot encode the null array")
    return [_tree_to_python(t, compact) for t in a]


def _tree_to_python(t, compact):
    if t is TAU:
        raise EncodeError("cannot encode the null tree")
    if t.is_leaf():
        return _scalar_out(t.root)
    if ROOT_FIELD in t and t.root is not NULL:
        raise EncodeError(f"label {ROOT_FIELD!r} clashes with the root field of a non-null root")
    obj = {}
    if t.root is not NULL:
        obj[ROOT_FIELD] = t.root
    for k, arr in t.items():
        if compact and k != ROOT_FIELD and len(arr) == 1 and arr[0].is_leaf():
            obj[k] = _scalar_out(arr[0].root)
        else:
            obj[k] = [_tree_to_python(u, compact) for u in arr]
    return obj


# -- JSON ------------------------------------------------------------------


class _NonFinite(Exception):
    pass


def _reject_constant(name):
    raise _NonFinite(name)


def decode_json(text: str):
    try:
        obj = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise DecodeError(exc.msg, exc.lineno, exc.colno) from None
    except _NonFinite as exc:
        raise DecodeError(f"{exc} is not a JSON number") from None
    return from_python(obj)


def encode_json(a, compact: bool = False) -> str:
    obj = to_python(a, compact)
    try:
        if compact:
            return json.dumps(obj, ensure_ascii=False, allow_nan=False, separators=(",", ":"))
        return json.dumps(obj, ensure_ascii=False, allow_nan=False, indent=2)
    except ValueError as exc:
        raise EncodeError(str(exc)) from None


# -- XML -------------------------------------------------------------------

_INT = re.compile(r"[+-]?\d+\Z")
_FLOAT = re.compile(r"[+-]?(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?\Z")


def sniff_scalar(text: str | None):
    """Type XML character data: int, then float, else string; blank is υ."""
    if text is None or not text.strip():
        return NULL
    s = text.strip()
    if _INT.match(s):
        return int(s)
    if _FLOAT.match(s):
        return float(s)
    return s


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1] if tag.startswith("{") else tag


def _tree_from_element(el):
    if el.attrib:
        warnings.warn(f"ignoring attributes on <{_local(el.tag)}>", stacklevel=3)
    if el.tag.startswith("{"):
        warnings.warn(f"ignoring namespace on <{_local(el.tag)}>", stacklevel=3)
    branches = {}
    for child in el:
        if not isinstance(child.tag, str):
            continue
        branches.setdefault(_local(child.tag), []).append(_tree_from_element(child))
    return Tree(sniff_scalar(el.text), branches)


def decode_xml(text: str):
    try:
        doc = ET.fromstring(text)
    except ET.ParseError as exc:
        line, col = exc.position
        raise DecodeError(str(exc), line, col + 1) from None
    return (_tree_from_element(doc),)


def _xml_text(v) -> str | None:
    if v is NULL:
        return None
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float) and not math.isfinite(v):
        raise EncodeError(f"{v!r} cannot be written as XML text")
    return str(v)


_XML_NAME = re.compile(r"[A-Za-z_][\w.-]*\Z")


def _element_from_tree(tag, t):
    if not _XML_NAME.match(tag) or tag.lower().startswith("xml"):
        raise EncodeError(f"label {tag!r} is not a valid XML element name")
    el = ET.Element(tag)
    el.text = _xml_text(t.root)
    for k, arr in t.items():
        for u in arr:
            el.append(_element_from_tree(k, u))
    return el


def encode_xml(a, root_label: str = "root", item_label: str = "item") -> str:
    """Wrap the array as ``<root><item>…</item>…</root>``."""
    if a is ALPHA:
        raise EncodeError("cannot encode the null array")
    if not _XML_NAME.match(root_label):
        raise EncodeError(f"{root_label!r} is not a valid XML element name")
    doc = ET.Element(root_label)
    for t in a:
        if t is TAU:
            raise EncodeError("cannot encode the null tree")
        doc.append(_element_from_tree(item_label, t))
    ET.indent(doc)
    return ET.tostring(doc, encoding="unicode")


# -- front door ------------------------------------------------------------


def decode(text: str, opts: FormatOptions = JSON):
    if opts.format == "xml":
        return decode_xml(text)
    return decode_json(text)


def encode(a, opts: FormatOptions = JSON) -> str:
    if opts.format == "xml":
        return encode_xml(a, opts.xml_root_label, opts.xml_item_label)
    return encode_json(a, compact=opts.emission_mode == "compact")
