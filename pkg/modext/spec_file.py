"""Reader and writer for object specification files.

A specification file declares named extensions, named lists of them and
named bipartite digraphs, one statement per line::

    # the non-split extension of Z/2 by Z/2
    ext nonsplit B 4 A (2)
    ext split B 2 2 A (1,0)
    list pair nonsplit split
    digraph d X x1 x2 Y y1 E x1>y1 x2>y1 y1>x1

``B`` lists cyclic orders in any order; ``A`` lists generators written as
coordinate tuples against those orders. Coordinates are carried into the
canonical decomposition of ``B`` by the Chinese remainder theorem. All names
share one namespace. The full grammar is in ``docs/file_formats.rst``.
"""

from __future__ import annotations

import logging
import re
from collections.abc import Iterable, Iterator
from pathlib import Path

from attrs import define, field

from modext.engine.caps import Caps
from modext.engine.digraph import BipartiteDigraph
from modext.engine.extensions import ExtObject, make_ext
from modext.engine.groups import canonical_coordinates, canonicalize
from modext.exceptions import ModextError, SpecFileError

logger = logging.getLogger(__name__)

__all__ = [
    "ExtDeclaration",
    "ObjectSpecFile",
    "dump_spec_file",
    "ext_line",
    "load_spec_file",
    "parse_spec_file",
]

NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_.\-]*\Z")
TOKEN_RE = re.compile(r"\([^)]*\)?|[^\s(]+")
INT_RE = re.compile(r"\d+\Z")


@define(frozen=True)
class _Token:
    text: str
    line: int
    column: int

    def error(self, message: str) -> SpecFileError:
        return SpecFileError(message, self.line, self.column)


@define(frozen=True)
class ExtDeclaration:
    """An ``ext`` statement as written.

    Attributes:
        name: Declared name.
        orders: Cyclic orders of ``B``, as written.
        generators: Generators of ``A``, against ``orders``.
        line: Line of the statement.
    """

    name: str
    orders: tuple[int, ...]
    generators: tuple[tuple[int, ...], ...]
    line: int


@define(eq=False)
class ObjectSpecFile:
    """The parsed content of a specification file, in declaration order."""

    declarations: dict[str, ExtDeclaration] = field(factory=dict)
    objects: dict[str, ExtObject] = field(factory=dict)
    lists: dict[str, tuple[str, ...]] = field(factory=dict)
    digraphs: dict[str, BipartiteDigraph] = field(factory=dict)

    def is_declared(self, name: str) -> bool:
        return name in self.objects or name in self.lists or name in self.digraphs

    def object(self, name: str) -> ExtObject:
        """Look up a declared extension.

        Raises:
            SpecFileError: If no extension has that name.
        """
        try:
            return self.objects[name]
        except KeyError:
            raise SpecFileError(f"No extension named {name!r}") from None

    def object_list(self, name: str) -> list[ExtObject]:
        """Look up a list; an extension name stands for the list holding only it."""
        return [self.objects[member] for member in self.list_names(name)]

    def list_names(self, name: str) -> tuple[str, ...]:
        if name in self.lists:
            return self.lists[name]
        if name in self.objects:
            return (name,)
        raise SpecFileError(f"No list or extension named {name!r}")

    def digraph(self, name: str) -> BipartiteDigraph:
        try:
            return self.digraphs[name]
        except KeyError:
            raise SpecFileError(f"No digraph named {name!r}") from None


def _tokenize(text: str) -> Iterator[list[_Token]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = [_Token(m.group(), number, m.start() + 1) for m in TOKEN_RE.finditer(line)]
        if tokens:
            yield tokens


def _name(token: _Token, spec: ObjectSpecFile) -> str:
    if not NAME_RE.match(token.text):
        raise token.error(f"Invalid name {token.text!r}")
    if spec.is_declared(token.text):
        raise token.error(f"Name {token.text!r} is already declared")
    return token.text


def _int(token: _Token) -> int:
    if not INT_RE.match(token.text):
        raise token.error(f"Expected a non-negative integer, got {token.text!r}")
    return int(token.text)


def _tuple(token: _Token) -> tuple[int, ...]:
    text = token.text
    if not (text.startswith("(") and text.endswith(")")):
        raise token.error(f"Expected a coordinate tuple like (1,0), got {text!r}")
    parts = [part.strip() for part in text[1:-1].split(",")]
    if not all(INT_RE.match(part) for part in parts):
        raise token.error(f"Tuple {text!r} must hold comma-separated non-negative integers")
    return tuple(int(part) for part in parts)


def _expect(tokens: list[_Token], position: int, keyword: str) -> None:
    if position >= len(tokens):
        last = tokens[-1]
        raise SpecFileError(f"Expected {keyword!r} after {last.text!r}", last.line, last.column + len(last.text))
    if tokens[position].text != keyword:
        raise tokens[position].error(f"Expected {keyword!r}, got {tokens[position].text!r}")


def _with_location(exc: ModextError, token: _Token) -> ModextError:
    located = type(exc)(f"{token.line}:{token.column}: {exc}")
    located.__cause__ = exc
    return located


def _parse_ext(tokens: list[_Token], spec: ObjectSpecFile, caps: Caps | None) -> None:
    head = tokens[0]
    if len(tokens) < 2:
        raise head.error("Expected a name after 'ext'")
    name = _name(tokens[1], spec)
    _expect(tokens, 2, "B")
    rest = tokens[3:]
    split = next((i for i, token in enumerate(rest) if token.text == "A"), None)
    if split is None:
        raise SpecFileError("Expected 'A' after the orders of B", head.line, head.column)
    orders = tuple(_int(token) for token in rest[:split])
    for token, order in zip(rest, orders):
        if order < 1:
            raise token.error("Cyclic orders must be positive")
    generators = []
    for token in rest[split + 1 :]:
        coords = _tuple(token)
        if len(coords) != len(orders):
            raise token.error(f"Tuple {token.text} has {len(coords)} coordinates, B has {len(orders)} orders")
        for coord, order in zip(coords, orders):
            if coord >= order:
                raise token.error(f"Coordinate {coord} of {token.text} is not below its order {order}")
        generators.append(coords)

    B = canonicalize(orders)
    try:
        if B.is_zero:
            obj = ExtObject.zero()
        else:
            obj = make_ext(B, [canonical_coordinates(orders, g) for g in generators], caps)
    except ModextError as exc:
        raise _with_location(exc, tokens[1]) from exc
    spec.declarations[name] = ExtDeclaration(name, orders, tuple(generators), head.line)
    spec.objects[name] = obj
    logger.debug(f"Declared {name} = {obj.describe()}")


def _parse_list(tokens: list[_Token], spec: ObjectSpecFile) -> None:
    if len(tokens) < 2:
        raise tokens[0].error("Expected a name after 'list'")
    name = _name(tokens[1], spec)
    members = []
    for token in tokens[2:]:
        if token.text not in spec.objects:
            raise token.error(f"Unknown extension {token.text!r}")
        members.append(token.text)
    spec.lists[name] = tuple(members)


def _parse_digraph(tokens: list[_Token], spec: ObjectSpecFile) -> None:
    if len(tokens) < 2:
        raise tokens[0].error("Expected a name after 'digraph'")
    name = _name(tokens[1], spec)
    _expect(tokens, 2, "X")
    texts = [token.text for token in tokens]
    try:
        y_at = texts.index("Y", 3)
        e_at = texts.index("E", y_at + 1)
    except ValueError:
        raise tokens[0].error("A digraph needs the sections X, Y and E in this order") from None
    xs = [t.text for t in tokens[3:y_at]]
    ys = [t.text for t in tokens[y_at + 1 : e_at]]
    edges = []
    for token in tokens[e_at + 1 :]:
        source, sep, target = token.text.partition(">")
        if not sep or not source or not target:
            raise token.error(f"Expected an edge like x1>y1, got {token.text!r}")
        edges.append((source, target))
    for token in tokens[3:y_at] + tokens[y_at + 1 : e_at]:
        if not NAME_RE.match(token.text):
            raise token.error(f"Invalid vertex name {token.text!r}")
    try:
        spec.digraphs[name] = BipartiteDigraph(xs, ys, edges)
    except ModextError as exc:
        raise _with_location(exc, tokens[1]) from exc


def parse_spec_file(text: str, caps: Caps | None = None) -> ObjectSpecFile:
    """Parse the text of a specification file.

    Raises:
        SpecFileError: On a syntax error, with line and column.
        ScopeViolation: If a declared extension has a non-uniserial end term.
        DomainMismatch: If a declaration does not fit together.
        CapExceeded: If a declared group exceeds the element cap.
    """
    spec = ObjectSpecFile()
    for tokens in _tokenize(text):
        keyword = tokens[0].text
        if keyword == "ext":
            _parse_ext(tokens, spec, caps)
        elif keyword == "list":
            _parse_list(tokens, spec)
        elif keyword == "digraph":
            _parse_digraph(tokens, spec)
        else:
            raise tokens[0].error(f"Unknown statement {keyword!r}; expected ext, list or digraph")
    return spec


def load_spec_file(path: str | Path, caps: Caps | None = None) -> ObjectSpecFile:
    """Read and parse a specification file.

    Raises:
        SpecFileError: If the file cannot be read or parsed.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecFileError(f"Cannot read {path}: {exc.strerror}") from exc
    return parse_spec_file(text, caps)


def ext_line(name: str, X: ExtObject) -> str:
    """The ``ext`` statement declaring ``X`` on its canonical middle group.

    Examples:
        >>> from modext.engine.groups import Group
        >>> ext_line("n", make_ext(Group((4,)), [(2,)]))
        'ext n B 4 A (2)'
    """
    orders = " ".join(str(q) for q in X.B.factors)
    gens = " ".join("(" + ",".join(str(c) for c in g) + ")" for g in X.A.basis)
    return " ".join(part for part in ("ext", name, "B", orders, "A", gens) if part)


def dump_spec_file(
    objects: Iterable[tuple[str, ExtObject]],
    lists: Iterable[tuple[str, Iterable[str]]] = (),
    digraphs: Iterable[tuple[str, BipartiteDigraph]] = (),
    header: Iterable[str] = (),
) -> str:
    """Render declarations as specification-file text, one statement per line."""
    lines = [f"# {comment}" for comment in header]
    lines.extend(ext_line(name, X) for name, X in objects)
    lines.extend(" ".join(["list", name, *members]) for name, members in lists)
    lines.extend(f"digraph {name} {D}" for name, D in digraphs)
    return "\n".join(lines) + "\n"
