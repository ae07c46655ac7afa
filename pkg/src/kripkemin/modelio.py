"""Serialization: model documents, the formula grammar, and DOT export.

Model documents are JSON with three fields::

    {
      "worlds": [{"id": "wd", "props": ["p"]}, ...],
      "relations": {"1": [["wd", "w1"], ...]},
      "designated": "wd"
    }

The order of the ``worlds`` list is significant: it becomes the model's
world order and hence the default total order used by the contractions.
``serialize_model`` emits a canonical form (sorted props, sorted edge
lists), so ``parse_model(serialize_model(m))`` reproduces ``m`` exactly.

The formula grammar is::

    phi ::= 'top' | 'bot' | ATOM | '~' phi | phi '&' phi | phi '|' phi
          | '[' INDEX ']' phi | '<' INDEX '>' phi | '(' phi ')'

with '&' binding tighter than '|' and the unary operators tightest.
"""

from __future__ import annotations

import json
import os
import tempfile
from typing import Iterable, Sequence

from .errors import ParseError, UnknownReferenceError
from .logic import And, Atom, Bot, Box, Diamond, Formula, Not, Or, Top
from .model import NEG_INF, UNREACHABLE, DepthBoundMap, PointedModel


# --- model documents ------------------------------------------------------

def parse_model(text: str) -> PointedModel:
    """Parse a JSON model document.

    Raises ``ParseError`` with a location (``line:column`` or a field path)
    for malformed documents and ``UnknownReferenceError`` when an edge or the
    designated field mentions an undeclared world.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, location=f"{e.lineno}:{e.colno}") from None
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")

    worlds_field = doc.get("worlds")
    if not isinstance(worlds_field, list) or not worlds_field:
        raise ParseError("must be a non-empty list", location="worlds")
    ids: list[str] = []
    valuation: dict[str, set[str]] = {}
    for n, entry in enumerate(worlds_field):
        loc = f"worlds[{n}]"
        if not isinstance(entry, dict) or not isinstance(entry.get("id"), str):
            raise ParseError("world entries need a string 'id'", location=loc)
        wid = entry["id"]
        if wid in ids:
            raise ParseError(f"duplicate world id {wid!r}", location=f"{loc}.id")
        ids.append(wid)
        props = entry.get("props", [])
        if not isinstance(props, list) or not all(isinstance(p, str) for p in props):
            raise ParseError("'props' must be a list of strings", location=f"{loc}.props")
        for p in props:
            valuation.setdefault(p, set()).add(wid)

    known = set(ids)
    relations_field = doc.get("relations", {})
    if not isinstance(relations_field, dict):
        raise ParseError("must be an object mapping indices to edge lists",
                         location="relations")
    relations: dict[str, set[tuple[str, str]]] = {}
    for index, pairs in relations_field.items():
        if not isinstance(pairs, list):
            raise ParseError("must be a list of [from, to] pairs",
                             location=f"relations.{index}")
        edges = set()
        for n, pair in enumerate(pairs):
            loc = f"relations.{index}[{n}]"
            if (not isinstance(pair, list) or len(pair) != 2
                    or not all(isinstance(w, str) for w in pair)):
                raise ParseError("edges are [from, to] pairs of world ids", location=loc)
            u, v = pair
            for w in (u, v):
                if w not in known:
                    raise UnknownReferenceError(f"edge mentions unknown world {w!r}",
                                                location=loc)
            edges.add((u, v))
        relations[str(index)] = edges

    designated = doc.get("designated")
    if not isinstance(designated, str):
        raise ParseError("must be a world id string", location="designated")
    if designated not in known:
        raise UnknownReferenceError(f"designated world {designated!r} is not declared",
                                    location="designated")
    return PointedModel(worlds=tuple(ids), relations=relations,
                        valuation=valuation, designated=designated)


def serialize_model(m: PointedModel) -> str:
    """Canonical JSON document for ``m`` (lossless; see ``parse_model``)."""
    doc = {
        "worlds": [{"id": w, "props": sorted(m.atoms_at(w))} for w in m.worlds],
        "relations": {
            i: [[u, v] for (u, v) in sorted(edges, key=lambda e: (m.position[e[0]], m.position[e[1]]))]
            for i, edges in sorted(m.relations.items())
        },
        "designated": m.designated,
    }
    return json.dumps(doc, indent=2) + "\n"


def write_text_atomic(path: str, text: str) -> None:
    """Write via a temp file in the same directory and rename into place."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# --- formulas -------------------------------------------------------------

_KEYWORDS = {"top", "bot"}


class _FormulaParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> ParseError:
        return ParseError(message, location=f"1:{self.pos + 1}")

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take_name(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum()
                                             or self.text[self.pos] == "_"):
            self.pos += 1
        if start == self.pos:
            raise self.error("expected a name")
        return self.text[start:self.pos]

    def expect(self, ch: str):
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def parse(self) -> Formula:
        phi = self.parse_or()
        self.skip_ws()
        if self.pos != len(self.text):
            raise self.error("trailing input after formula")
        return phi

    def parse_or(self) -> Formula:
        phi = self.parse_and()
        while self.peek() == "|":
            self.pos += 1
            phi = Or(phi, self.parse_and())
        return phi

    def parse_and(self) -> Formula:
        phi = self.parse_unary()
        while self.peek() == "&":
            self.pos += 1
            phi = And(phi, self.parse_unary())
        return phi

    def parse_unary(self) -> Formula:
        ch = self.peek()
        if ch == "~":
            self.pos += 1
            return Not(self.parse_unary())
        if ch == "[":
            self.pos += 1
            index = self.take_name()
            self.expect("]")
            return Box(index, self.parse_unary())
        if ch == "<":
            self.pos += 1
            index = self.take_name()
            self.expect(">")
            return Diamond(index, self.parse_unary())
        return self.parse_primary()

    def parse_primary(self) -> Formula:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            phi = self.parse_or()
            self.expect(")")
            return phi
        if not ch:
            raise self.error("unexpected end of formula")
        name = self.take_name()
        if name == "top":
            return Top()
        if name == "bot":
            return Bot()
        return Atom(name)


def parse_formula(text: str) -> Formula:
    """Parse the textual formula grammar (see module docstring)."""
    return _FormulaParser(text).parse()


# --- DOT export -----------------------------------------------------------

def export_dot(m: PointedModel, annotate: DepthBoundMap | None = None,
               dashed: Iterable[str] = ()) -> str:
    """Deterministic Graphviz rendering of a pointed model.

    The designated world is double-circled, node labels are ``world:props``
    (plus depth/bound lines when ``annotate`` is given), edges carry their
    index as label whenever the model has more than one index, and the
    indices in ``dashed`` are drawn with dashed edges.
    """
    dashed = set(dashed)
    show_index = len(m.relations) > 1
    lines = ["digraph model {"]
    for w in m.worlds:
        props = ",".join(sorted(m.atoms_at(w)))
        label = f"{w}:{props}" if props else w
        if annotate is not None:
            d, b = annotate.depth[w], annotate.bound[w]
            d_str = "inf" if d == UNREACHABLE else str(int(d))
            b_str = "-inf" if b == NEG_INF else str(int(b))
            label += f"\\nd={d_str} b={b_str}"
        shape = "doublecircle" if w == m.designated else "circle"
        lines.append(f'  "{w}" [label="{label}", shape={shape}];')
    for i, edges in sorted(m.relations.items()):
        attrs = []
        if show_index:
            attrs.append(f'label="{i}"')
        if i in dashed:
            attrs.append("style=dashed")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        for (u, v) in sorted(edges, key=lambda e: (m.position[e[0]], m.position[e[1]])):
            lines.append(f'  "{u}" -> "{v}"{suffix};')
    lines.append("}")
    return "\n".join(lines) + "\n"
