"""Lexer, parser and validator for the DOT subset used by legal diagrams.

The accepted grammar (see docs/dot-grammar.md for the EBNF) covers plain
``graph``/``digraph`` files with node, edge and default-attribute statements,
bracketed attribute lists, quoted strings with ``\\"`` / ``\\\\`` escapes and
line continuations, comments (``//``, ``/* */``, ``#``) and anonymous or named
subgraphs.  ``strict``, ports, HTML-like labels and subgraphs as edge
endpoints are rejected.

Parsing is total: any input (str or bytes, up to 1 MiB) either yields a
`DotAst` or raises `DotParseError` with the location of the first fault.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Union

MAX_INPUT_BYTES = 1 << 20
MAX_SUBGRAPH_DEPTH = 32

_KEYWORDS = frozenset({"graph", "digraph", "subgraph", "node", "edge", "strict"})


@dataclass(frozen=True)
class Attr:
    """One ``key=value`` pair; later duplicates override earlier on lookup."""

    key: str
    value: str


@dataclass(frozen=True)
class NodeStmt:
    id: str
    attrs: tuple[Attr, ...] = ()


@dataclass(frozen=True)
class EdgeStmt:
    endpoints: tuple[str, ...]
    attrs: tuple[Attr, ...] = ()


@dataclass(frozen=True)
class DefaultStmt:
    target: str  # "graph" | "node" | "edge"
    attrs: tuple[Attr, ...] = ()


@dataclass(frozen=True)
class Subgraph:
    name: Optional[str]
    statements: tuple["Statement", ...] = ()


Statement = Union[NodeStmt, EdgeStmt, DefaultStmt, Subgraph]


@dataclass(frozen=True)
class DotAst:
    directed: bool
    name: Optional[str]
    statements: tuple[Statement, ...] = ()


class DotParseError(Exception):
    """First fault found in a DOT source.

    kind is one of: lex, syntax, unterminated_string, mixed_edge_op,
    depth_exceeded.  Offsets are in bytes, line/column are 1-based and
    column counts characters.
    """

    def __init__(self, kind: str, message: str, byte_offset: int, line: int, column: int):
        super().__init__(f"{line}:{column}: {kind}: {message}")
        self.kind = kind
        self.message = message
        self.byte_offset = byte_offset
        self.line = line
        self.column = column


class _Token(NamedTuple):
    type: str  # one of: { } [ ] ; , = -> -- id eof
    value: str
    quoted: bool
    pos: int  # character offset
    line: int
    column: int


class ValidationResult(NamedTuple):
    valid: bool
    error: Optional[Exception]


def _is_id_char(ch: str) -> bool:
    return ch.isalnum() or ch in "_." or ord(ch) >= 0x80


class _Lexer:
    def __init__(self, source: str):
        self.src = source
        self.pos = 0
        self.line = 1
        self.col = 1

    def error(self, kind: str, message: str, pos: int, line: int, col: int) -> DotParseError:
        byte_offset = len(self.src[:pos].encode("utf-8"))
        return DotParseError(kind, message, byte_offset, line, col)

    def _advance(self, n: int = 1) -> None:
        for _ in range(n):
            if self.pos < len(self.src):
                if self.src[self.pos] == "\n":
                    self.line += 1
                    self.col = 1
                else:
                    self.col += 1
                self.pos += 1

    def _skip_trivia(self) -> None:
        src = self.src
        while self.pos < len(src):
            ch = src[self.pos]
            if ch in " \t\r\n\f\v":
                self._advance()
            elif ch == "#":
                while self.pos < len(src) and src[self.pos] != "\n":
                    self._advance()
            elif ch == "/" and self.pos + 1 < len(src) and src[self.pos + 1] == "/":
                while self.pos < len(src) and src[self.pos] != "\n":
                    self._advance()
            elif ch == "/" and self.pos + 1 < len(src) and src[self.pos + 1] == "*":
                start = (self.pos, self.line, self.col)
                self._advance(2)
                while self.pos < len(src):
                    if src[self.pos] == "*" and self.pos + 1 < len(src) and src[self.pos + 1] == "/":
                        self._advance(2)
                        break
                    self._advance()
                else:
                    raise self.error("lex", "unterminated block comment", *start)
            else:
                return

    def _scan_quoted(self) -> _Token:
        start = (self.pos, self.line, self.col)
        self._advance()  # opening quote
        out: list[str] = []
        src = self.src
        while self.pos < len(src):
            ch = src[self.pos]
            if ch == '"':
                self._advance()
                return _Token("id", "".join(out), True, *start)
            if ch == "\\" and self.pos + 1 < len(src):
                nxt = src[self.pos + 1]
                if nxt == '"' or nxt == "\\":
                    out.append(nxt)
                    self._advance(2)
                elif nxt == "\n":
                    self._advance(2)  # line continuation
                elif nxt == "\r":
                    self._advance(2)
                    if self.pos < len(src) and src[self.pos] == "\n":
                        self._advance()
                else:
                    out.append(ch)
                    out.append(nxt)
                    self._advance(2)
            else:
                out.append(ch)
                self._advance()
        raise self.error("unterminated_string", "string opened here is never closed", *start)

    def next_token(self) -> _Token:
        self._skip_trivia()
        if self.pos >= len(self.src):
            return _Token("eof", "", False, self.pos, self.line, self.col)
        start = (self.pos, self.line, self.col)
        ch = self.src[self.pos]
        if ch in "{}[];,=":
            self._advance()
            return _Token(ch, ch, False, *start)
        if ch == "-":
            nxt = self.src[self.pos + 1] if self.pos + 1 < len(self.src) else ""
            if nxt == ">" or nxt == "-":
                self._advance(2)
                return _Token("->" if nxt == ">" else "--", ch + nxt, False, *start)
            raise self.error("lex", "stray '-' (expected '->' or '--')", *start)
        if ch == '"':
            return self._scan_quoted()
        if _is_id_char(ch):
            while self.pos < len(self.src) and _is_id_char(self.src[self.pos]):
                self._advance()
            return _Token("id", self.src[start[0]:self.pos], False, *start)
        raise self.error("lex", f"unexpected character {ch!r}", *start)


class _Parser:
    def __init__(self, lexer: _Lexer):
        self.lexer = lexer
        self.tok = lexer.next_token()

    def _advance(self) -> _Token:
        tok = self.tok
        self.tok = self.lexer.next_token()
        return tok

    def error(self, message: str, tok: Optional[_Token] = None, kind: str = "syntax") -> DotParseError:
        tok = tok or self.tok
        return self.lexer.error(kind, message, tok.pos, tok.line, tok.column)

    def _expect(self, type_: str) -> _Token:
        if self.tok.type != type_:
            raise self.error(f"expected {type_!r}, found {self._describe(self.tok)}")
        return self._advance()

    @staticmethod
    def _describe(tok: _Token) -> str:
        if tok.type == "eof":
            return "end of input"
        if tok.type == "id":
            return repr(tok.value)
        return repr(tok.value)

    def _keyword(self) -> Optional[str]:
        """Lowercased keyword if the current token is an unquoted keyword id."""
        if self.tok.type == "id" and not self.tok.quoted and self.tok.value.lower() in _KEYWORDS:
            return self.tok.value.lower()
        return None

    def _expect_name(self, what: str) -> str:
        if self.tok.type != "id":
            raise self.error(f"expected {what}, found {self._describe(self.tok)}")
        if self._keyword() is not None:
            raise self.error(f"keyword {self.tok.value!r} cannot be used as {what}")
        return self._advance().value

    def parse_graph(self, lenient_tail: bool) -> DotAst:
        kw = self._keyword()
        if kw == "strict":
            raise self.error("the 'strict' modifier is not supported")
        if kw not in ("graph", "digraph"):
            raise self.error(f"expected 'graph' or 'digraph', found {self._describe(self.tok)}")
        self._advance()
        directed = kw == "digraph"
        name = None
        if self.tok.type == "id" and self._keyword() is None:
            name = self._advance().value
        self._expect("{")
        statements = self._statement_list(directed, depth=0)
        self._expect("}")
        if not lenient_tail and self.tok.type != "eof":
            raise self.error("trailing content after closing '}'")
        return DotAst(directed=directed, name=name, statements=statements)

    def _statement_list(self, directed: bool, depth: int) -> tuple[Statement, ...]:
        stmts: list[Statement] = []
        while self.tok.type not in ("}", "eof"):
            stmts.append(self._statement(directed, depth))
            while self.tok.type in (";", ","):
                self._advance()
        return tuple(stmts)

    def _statement(self, directed: bool, depth: int) -> Statement:
        if self.tok.type == "{":
            return self._subgraph(None, directed, depth)
        kw = self._keyword()
        if kw == "subgraph":
            self._advance()
            name = None
            if self.tok.type == "id" and self._keyword() is None:
                name = self._advance().value
            return self._subgraph(name, directed, depth)
        if kw in ("node", "edge", "graph"):
            tok = self._advance()
            if self.tok.type != "[":
                raise self.error(f"expected '[' after {tok.value!r}")
            return DefaultStmt(kw, self._attr_lists())
        if kw is not None:
            raise self.error(f"unexpected keyword {self.tok.value!r}")
        if self.tok.type != "id":
            raise self.error(f"expected a statement, found {self._describe(self.tok)}")
        first = self._advance().value
        if self.tok.type == "=":
            self._advance()
            value = self._expect_attr_id("attribute value")
            return DefaultStmt("graph", (Attr(first, value),))
        if self.tok.type in ("->", "--"):
            return self._edge_statement(first, directed)
        return NodeStmt(first, self._attr_lists())

    def _edge_statement(self, first: str, directed: bool) -> EdgeStmt:
        endpoints = [first]
        while self.tok.type in ("->", "--"):
            op = self.tok
            if directed and op.type == "--":
                raise self.error("undirected edge '--' inside a digraph", op, kind="mixed_edge_op")
            if not directed and op.type == "->":
                raise self.error("directed edge '->' inside an undirected graph", op, kind="mixed_edge_op")
            self._advance()
            endpoints.append(self._expect_name("an edge endpoint"))
        return EdgeStmt(tuple(endpoints), self._attr_lists())

    def _expect_attr_id(self, what: str) -> str:
        # attribute keys/values live in an unambiguous position, so
        # keyword-looking ids ("node", "box", ...) are plain ids here
        if self.tok.type != "id":
            raise self.error(f"expected {what}, found {self._describe(self.tok)}")
        return self._advance().value

    def _attr_lists(self) -> tuple[Attr, ...]:
        attrs: list[Attr] = []
        while self.tok.type == "[":
            self._advance()
            while self.tok.type == "id":
                key = self._advance().value
                self._expect("=")
                value = self._expect_attr_id("attribute value")
                attrs.append(Attr(key, value))
                while self.tok.type in (",", ";"):
                    self._advance()
            self._expect("]")
        return tuple(attrs)

    def _subgraph(self, name: Optional[str], directed: bool, depth: int) -> Subgraph:
        if depth + 1 > MAX_SUBGRAPH_DEPTH:
            raise self.error(f"subgraphs nested deeper than {MAX_SUBGRAPH_DEPTH}", kind="depth_exceeded")
        self._expect("{")
        statements = self._statement_list(directed, depth + 1)
        self._expect("}")
        return Subgraph(name, statements)


def parse_dot(source: Union[str, bytes], *, lenient_tail: bool = False) -> DotAst:
    """Parse DOT source into a `DotAst`; raise `DotParseError` on the first fault.

    Deterministic and total for inputs up to 1 MiB.  With ``lenient_tail``,
    content after the closing brace is ignored instead of rejected.
    """
    if isinstance(source, bytes):
        if len(source) > MAX_INPUT_BYTES:
            raise DotParseError("lex", f"input exceeds {MAX_INPUT_BYTES} bytes", 0, 1, 1)
        try:
            text = source.decode("utf-8")
        except UnicodeDecodeError as exc:
            prefix = source[: exc.start]
            line = prefix.count(b"\n") + 1
            column = exc.start - (prefix.rfind(b"\n") + 1) + 1
            raise DotParseError("lex", "input is not valid UTF-8", exc.start, line, column) from None
    else:
        text = source
        if len(text.encode("utf-8")) > MAX_INPUT_BYTES:
            raise DotParseError("lex", f"input exceeds {MAX_INPUT_BYTES} bytes", 0, 1, 1)
    return _Parser(_Lexer(text)).parse_graph(lenient_tail)


def validate_dot(source: Union[str, bytes], *, lenient_tail: bool = False) -> ValidationResult:
    """Check that source parses and normalizes into a legal-diagram graph.

    Errors are returned as data, never raised.
    """
    from .legal_graph import NormalizeError, from_ast

    try:
        from_ast(parse_dot(source, lenient_tail=lenient_tail))
    except (DotParseError, NormalizeError) as exc:
        return ValidationResult(False, exc)
    return ValidationResult(True, None)


def _quote(value: str) -> str:
    escaped = value.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def _render_id(value: str) -> str:
    if value and all(_is_id_char(c) for c in value) and value.lower() not in _KEYWORDS:
        return value
    return _quote(value)


def _render_attrs(attrs: tuple[Attr, ...], force_brackets: bool = False) -> str:
    if not attrs and not force_brackets:
        return ""
    inner = ", ".join(f"{_render_id(a.key)}={_render_id(a.value)}" for a in attrs)
    return f" [{inner}]"


def serialize(ast: DotAst) -> str:
    """Render an AST back to DOT text that reparses to a structurally equal AST."""
    op = " -> " if ast.directed else " -- "
    lines: list[str] = []

    def emit(stmts: tuple[Statement, ...], indent: str) -> None:
        for stmt in stmts:
            if isinstance(stmt, NodeStmt):
                lines.append(f"{indent}{_render_id(stmt.id)}{_render_attrs(stmt.attrs)};")
            elif isinstance(stmt, EdgeStmt):
                chain = op.join(_render_id(e) for e in stmt.endpoints)
                lines.append(f"{indent}{chain}{_render_attrs(stmt.attrs)};")
            elif isinstance(stmt, DefaultStmt):
                lines.append(f"{indent}{stmt.target}{_render_attrs(stmt.attrs, force_brackets=True)};")
            else:
                head = "subgraph " + (_render_id(stmt.name) + " " if stmt.name else "")
                lines.append(f"{indent}{head}{{")
                emit(stmt.statements, indent + "    ")
                lines.append(f"{indent}}}")

    head = "digraph" if ast.directed else "graph"
    if ast.name is not None:
        head += f" {_render_id(ast.name)}"
    lines.append(head + " {")
    emit(ast.statements, "    ")
    lines.append("}")
    return "\n".join(lines) + "\n"
