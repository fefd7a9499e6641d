"""Tokenizer for a Solidity subset, emitting AST node-type streams.

The supported grammar covers ERC-20-style token contracts: contract,
library, and interface declarations holding state variables, functions
(incl. constructor/fallback/receive), modifiers, and events, with the
usual statement and expression forms. Inline assembly collapses to a
single opaque node. Anything outside the subset raises ParseFailure,
which callers turn into a skip marker.

Streams carry node-TYPE names only; identifiers, literal values,
comments, and whitespace never reach a stream, so renaming and
reformatting cannot change it. Emission is in source order: an
``if (sender[i] == '0x0d83a1')`` contributes IfStatement,
BlockIdentifier, IndexAccess, BinaryOperation, Literal. A subscript
holding a single identifier or literal is subsumed into its IndexAccess
marker; compound subscripts contribute their inner operation tokens.

TOKEN_ENUM_VERSION freezes the emission vocabulary; bump it on any
change, since stored fingerprints embed it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum

from ..errors import ParseFailure

TOKEN_ENUM_VERSION = "1"

# The frozen node-type vocabulary (version 1).
NODE_TYPES = frozenset({
    "StateVariableDeclaration", "FunctionDefinition", "EventDefinition",
    "ModifierDefinition",
    "ElementaryTypeName", "UserDefinedTypeName", "Mapping", "ArrayTypeName",
    "FunctionTypeName",
    "IfStatement", "ForStatement", "WhileStatement", "DoWhileStatement",
    "ReturnStatement", "EmitStatement", "BreakStatement", "ContinueStatement",
    "ThrowStatement", "VariableDeclaration", "PlaceholderStatement",
    "InlineAssembly", "TryStatement",
    "Assignment", "BinaryOperation", "UnaryOperation", "Conditional",
    "FunctionCall", "FunctionCallOptions", "MemberAccess", "IndexAccess",
    "BlockIdentifier", "Literal", "TupleExpression", "NewExpression",
    "VisibilitySpecifier", "StateMutability", "ModifierInvocation",
})


class ComponentKind(str, Enum):
    STATE_VARIABLE = "state_variable"
    FUNCTION = "function"
    EVENT = "event"
    MODIFIER = "modifier"


@dataclass(frozen=True, slots=True)
class ComponentTokenStream:
    component_kind: ComponentKind
    tokens: tuple[str, ...]


@dataclass(frozen=True, slots=True)
class TopLevelUnit:
    kind: str  # contract | library | interface
    name: str
    text: str  # verbatim source slice, declaration through closing brace


# ---------------------------------------------------------------------------
# Lexing

_TOKEN_RE = re.compile(
    r"""
    (?P<comment>//[^\n]*|/\*.*?\*/)
  | (?P<string>hex"(?:[^"\\]|\\.)*"|unicode"(?:[^"\\]|\\.)*"
        |"(?:[^"\\\n]|\\.)*"|'(?:[^'\\\n]|\\.)*')
  | (?P<number>0[xX][0-9a-fA-F_]+|\d[\d_]*(?:\.\d[\d_]*)?(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_$][A-Za-z0-9_$]*)
  | (?P<punct>\*\*=?|<<=?|>>=?|=>|\+\+|--|&&|\|\||[<>=!+\-*/%&^|~]=?
        |[{}()\[\];:,.?])
  | (?P<ws>\s+)
    """,
    re.VERBOSE | re.DOTALL,
)

_NUMBER_UNITS = frozenset({
    "wei", "gwei", "szabo", "finney", "ether",
    "seconds", "minutes", "hours", "days", "weeks", "years",
})

_ELEMENTARY_RE = re.compile(
    r"^(address|bool|string|byte|bytes(?:[1-9]|[12]\d|3[0-2])?"
    r"|u?int(?:8|16|24|32|40|48|56|64|72|80|88|96|104|112|120|128"
    r"|136|144|152|160|168|176|184|192|200|208|216|224|232|240|248|256)?"
    r"|u?fixed(?:\d+x\d+)?)$"
)

_VISIBILITY = frozenset({"public", "private", "internal", "external"})
_MUTABILITY = frozenset({"view", "pure", "payable", "constant", "immutable"})
_IGNORED_DECORATORS = frozenset({"virtual", "override", "memory", "storage",
                                 "calldata", "indexed", "anonymous"})


@dataclass(frozen=True, slots=True)
class LexToken:
    kind: str  # string | number | ident | punct
    value: str
    line: int


def lex(source: str) -> list[LexToken]:
    """Lexical tokens with comments and whitespace removed."""
    tokens: list[LexToken] = []
    pos = 0
    line = 1
    n = len(source)
    while pos < n:
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            raise ParseFailure(f"line {line}: unexpected character {source[pos]!r}")
        pos = m.end()
        text = m.group(0)
        if m.lastgroup in ("comment", "ws"):
            line += text.count("\n")
            continue
        tokens.append(LexToken(m.lastgroup, text, line))
        line += text.count("\n")
    return tokens


def normalize_source(source: str) -> str:
    """Comment-free, whitespace-collapsed form used for corpus matching."""
    return " ".join(t.value for t in lex(source))


def is_elementary_type(name: str) -> bool:
    return bool(_ELEMENTARY_RE.match(name))


# ---------------------------------------------------------------------------
# Top-level structure

def parse_units(source: str) -> list[TopLevelUnit]:
    """Top-level contract/library/interface units, in source order.

    Pragmas, imports, file-level constants, and free functions are
    skipped: component extraction only looks inside the units.
    """
    tokens = lex(source)
    spans = _unit_spans(source, tokens)
    return [TopLevelUnit(kind=k, name=n, text=source[a:b]) for k, n, a, b in spans]


def _unit_spans(source: str, tokens: list[LexToken]) -> list[tuple[str, str, int, int]]:
    # Re-scan with positions; the regex lexer loses offsets, so track them here.
    positioned: list[tuple[LexToken, int, int]] = []
    pos = 0
    for t in tokens:
        start = source.index(t.value, pos)
        positioned.append((t, start, start + len(t.value)))
        pos = start + len(t.value)

    spans = []
    i = 0
    while i < len(positioned):
        tok = positioned[i][0]
        if tok.kind == "ident" and tok.value in ("contract", "library", "interface"):
            kind = tok.value
            start = positioned[i][1]
            if tok.value == "contract" and i > 0 and positioned[i - 1][0].value == "abstract":
                start = positioned[i - 1][1]
            if i + 1 >= len(positioned) or positioned[i + 1][0].kind != "ident":
                raise ParseFailure(f"line {tok.line}: {kind} without a name")
            name = positioned[i + 1][0].value
            j = i + 2
            while j < len(positioned) and positioned[j][0].value != "{":
                j += 1
            if j == len(positioned):
                raise ParseFailure(f"line {tok.line}: {kind} {name} has no body")
            depth = 0
            end = j
            while end < len(positioned):
                v = positioned[end][0].value
                if v == "{":
                    depth += 1
                elif v == "}":
                    depth -= 1
                    if depth == 0:
                        break
                end += 1
            if depth != 0:
                raise ParseFailure(f"line {tok.line}: unbalanced braces in {name}")
            spans.append((kind, name, start, positioned[end][2]))
            i = end + 1
        else:
            i += 1
    return spans


# ---------------------------------------------------------------------------
# Component extraction

def tokenize(source: str) -> list[ComponentTokenStream]:
    """One stream per state variable, function, event, and modifier, in
    declaration order across all top-level units."""
    streams: list[ComponentTokenStream] = []
    for unit in parse_units(source):
        body = _unit_body_tokens(unit.text)
        streams.extend(_Components(body).parse())
    return streams


def _unit_body_tokens(unit_text: str) -> list[LexToken]:
    tokens = lex(unit_text)
    try:
        open_idx = next(i for i, t in enumerate(tokens) if t.value == "{")
    except StopIteration:
        raise ParseFailure("unit has no body") from None
    return tokens[open_idx + 1:-1]


class _Cursor:
    def __init__(self, tokens: list[LexToken]):
        self.tokens = tokens
        self.i = 0

    def peek(self, offset: int = 0) -> LexToken | None:
        j = self.i + offset
        return self.tokens[j] if j < len(self.tokens) else None

    def next(self) -> LexToken:
        if self.i >= len(self.tokens):
            raise ParseFailure("unexpected end of input")
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, value: str) -> LexToken:
        t = self.next()
        if t.value != value:
            raise ParseFailure(f"line {t.line}: expected {value!r}, got {t.value!r}")
        return t

    def at(self, value: str) -> bool:
        t = self.peek()
        return t is not None and t.value == value

    def done(self) -> bool:
        return self.i >= len(self.tokens)

    def skip_balanced(self, open_: str, close: str) -> list[LexToken]:
        """Consume from the current open bracket through its match; returns
        the inner tokens."""
        self.expect(open_)
        depth = 1
        inner: list[LexToken] = []
        while True:
            t = self.next()
            if t.value == open_:
                depth += 1
            elif t.value == close:
                depth -= 1
                if depth == 0:
                    return inner
            inner.append(t)


class _Components:
    """Splits a unit body into components and emits their token streams."""

    def __init__(self, tokens: list[LexToken]):
        self.cur = _Cursor(tokens)

    def parse(self) -> list[ComponentTokenStream]:
        streams: list[ComponentTokenStream] = []
        while not self.cur.done():
            t = self.cur.peek()
            v = t.value
            if v == ";":
                self.cur.next()
            elif v in ("function", "constructor", "fallback", "receive"):
                streams.append(self._function())
            elif v == "event":
                streams.append(self._event())
            elif v == "modifier":
                streams.append(self._modifier())
            elif v in ("struct", "enum"):
                self.cur.next()  # keyword
                if self.cur.peek() and self.cur.peek().kind == "ident":
                    self.cur.next()  # name
                self.cur.skip_balanced("{", "}")
            elif v == "using":
                self._skip_to_semicolon()
            else:
                streams.append(self._state_variable())
        return streams

    def _skip_to_semicolon(self) -> None:
        while not self.cur.done() and not self.cur.at(";"):
            self.cur.next()
        if not self.cur.done():
            self.cur.next()

    def _collect_signature(self) -> tuple[list[str], bool]:
        """Tokens between a definition keyword and its body; returns the
        emitted tokens and whether a body follows ('{' vs ';')."""
        out: list[str] = []
        emitter = _Emitter(self.cur, out)
        if self.cur.peek() and self.cur.peek().kind == "ident" \
                and self.cur.peek().value not in ("(",):
            nxt = self.cur.peek()
            if nxt.value not in _VISIBILITY and nxt.value not in _MUTABILITY:
                self.cur.next()  # the erased name
        if self.cur.at("("):
            emitter.parameter_list()
        while not self.cur.done():
            t = self.cur.peek()
            if t.value in ("{", ";"):
                return out, t.value == "{"
            if t.value in _VISIBILITY:
                out.append("VisibilitySpecifier")
                self.cur.next()
            elif t.value in _MUTABILITY:
                out.append("StateMutability")
                self.cur.next()
            elif t.value in _IGNORED_DECORATORS:
                self.cur.next()
                if self.cur.at("("):  # override(Base, Other)
                    self.cur.skip_balanced("(", ")")
            elif t.value == "returns":
                self.cur.next()
                emitter.parameter_list()
            elif t.kind == "ident":
                out.append("ModifierInvocation")
                self.cur.next()
                if self.cur.at("("):
                    emitter.call_arguments()
            else:
                raise ParseFailure(
                    f"line {t.line}: unexpected {t.value!r} in signature")
        raise ParseFailure("signature missing body or semicolon")

    def _function(self) -> ComponentTokenStream:
        self.cur.next()  # function/constructor/fallback/receive
        tokens = ["FunctionDefinition"]
        sig, has_body = self._collect_signature()
        tokens.extend(sig)
        if has_body:
            body = self.cur.skip_balanced("{", "}")
            _Emitter(_Cursor(body), tokens).statements()
        else:
            self.cur.expect(";")
        return ComponentTokenStream(ComponentKind.FUNCTION, tuple(tokens))

    def _event(self) -> ComponentTokenStream:
        self.cur.next()
        tokens = ["EventDefinition"]
        sig, has_body = self._collect_signature_event()
        tokens.extend(sig)
        return ComponentTokenStream(ComponentKind.EVENT, tuple(tokens))

    def _collect_signature_event(self) -> tuple[list[str], bool]:
        out: list[str] = []
        emitter = _Emitter(self.cur, out)
        if self.cur.peek() and self.cur.peek().kind == "ident":
            self.cur.next()
        if self.cur.at("("):
            emitter.parameter_list()
        while not self.cur.done() and not self.cur.at(";"):
            self.cur.next()  # 'anonymous' etc.
        if not self.cur.done():
            self.cur.next()
        return out, False

    def _modifier(self) -> ComponentTokenStream:
        self.cur.next()
        tokens = ["ModifierDefinition"]
        sig, has_body = self._collect_signature()
        tokens.extend(sig)
        if has_body:
            body = self.cur.skip_balanced("{", "}")
            _Emitter(_Cursor(body), tokens).statements()
        else:
            self.cur.expect(";")
        return ComponentTokenStream(ComponentKind.MODIFIER, tuple(tokens))

    def _state_variable(self) -> ComponentTokenStream:
        tokens = ["StateVariableDeclaration"]
        emitter = _Emitter(self.cur, tokens)
        emitter.type_name()
        while not self.cur.done() and not self.cur.at(";"):
            t = self.cur.peek()
            if t.value in _VISIBILITY:
                tokens.append("VisibilitySpecifier")
                self.cur.next()
            elif t.value in _MUTABILITY:
                tokens.append("StateMutability")
                self.cur.next()
            elif t.value in _IGNORED_DECORATORS:
                self.cur.next()
            elif t.kind == "ident":
                self.cur.next()  # the erased variable name
            elif t.value == "=":
                self.cur.next()
                tokens.append("Assignment")
                emitter.expression()
            else:
                raise ParseFailure(
                    f"line {t.line}: unexpected {t.value!r} in state variable")
        if not self.cur.done():
            self.cur.next()  # ';'
        return ComponentTokenStream(ComponentKind.STATE_VARIABLE, tuple(tokens))


# ---------------------------------------------------------------------------
# Statement / expression emission

_ASSIGN_OPS = frozenset({"=", "+=", "-=", "*=", "/=", "%=", "|=", "&=", "^=",
                         "<<=", ">>=", "**="})
_BINARY_OPS = frozenset({"||", "&&", "|", "^", "&", "==", "!=", "<", ">", "<=",
                         ">=", "<<", ">>", "+", "-", "*", "/", "%", "**"})
_PREFIX_OPS = frozenset({"!", "~", "-", "+", "++", "--", "delete"})


class _Emitter:
    """Source-order node-type emission over a token cursor."""

    def __init__(self, cur: _Cursor, out: list[str]):
        self.cur = cur
        self.out = out

    # -- statements ---------------------------------------------------------

    def statements(self) -> None:
        while not self.cur.done():
            self.statement()

    def statement(self) -> None:
        t = self.cur.peek()
        if t is None:
            return
        v = t.value
        if v == "{":
            inner = self.cur.skip_balanced("{", "}")
            _Emitter(_Cursor(inner), self.out).statements()
        elif v == ";":
            self.cur.next()
        elif v == "if":
            self.out.append("IfStatement")
            self.cur.next()
            self._paren_expression()
            self.statement()
            if self.cur.at("else"):
                self.cur.next()
                self.statement()
        elif v == "for":
            self.out.append("ForStatement")
            self.cur.next()
            header = self.cur.skip_balanced("(", ")")
            sub = _Emitter(_Cursor(header), self.out)
            sub.statements()
            self.statement()
        elif v == "while":
            self.out.append("WhileStatement")
            self.cur.next()
            self._paren_expression()
            self.statement()
        elif v == "do":
            self.out.append("DoWhileStatement")
            self.cur.next()
            self.statement()
            self.cur.expect("while")
            self._paren_expression()
            if self.cur.at(";"):
                self.cur.next()
        elif v == "return":
            self.out.append("ReturnStatement")
            self.cur.next()
            if not self.cur.at(";") and not self.cur.done():
                self.expression()
            if self.cur.at(";"):
                self.cur.next()
        elif v == "emit":
            self.out.append("EmitStatement")
            self.cur.next()
            self.expression()
            if self.cur.at(";"):
                self.cur.next()
        elif v == "break":
            self.out.append("BreakStatement")
            self.cur.next()
            if self.cur.at(";"):
                self.cur.next()
        elif v == "continue":
            self.out.append("ContinueStatement")
            self.cur.next()
            if self.cur.at(";"):
                self.cur.next()
        elif v == "throw":
            self.out.append("ThrowStatement")
            self.cur.next()
            if self.cur.at(";"):
                self.cur.next()
        elif v == "assembly":
            self.out.append("InlineAssembly")
            self.cur.next()
            if self.cur.peek() and self.cur.peek().kind == "string":
                self.cur.next()
            if self.cur.at("("):  # assembly ("memory-safe")
                self.cur.skip_balanced("(", ")")
            self.cur.skip_balanced("{", "}")
        elif v == "unchecked":
            self.cur.next()
            inner = self.cur.skip_balanced("{", "}")
            _Emitter(_Cursor(inner), self.out).statements()
        elif v == "try":
            self.out.append("TryStatement")
            self.cur.next()
            self.expression()
            while self.cur.at("returns") or self.cur.at("catch"):
                kw = self.cur.next().value
                if self.cur.peek() and self.cur.peek().kind == "ident" and kw == "catch":
                    self.cur.next()  # error name
                if self.cur.at("("):
                    self.parameter_list()
                if self.cur.at("{"):
                    inner = self.cur.skip_balanced("{", "}")
                    _Emitter(_Cursor(inner), self.out).statements()
        elif v == "_" and self._is_placeholder():
            self.out.append("PlaceholderStatement")
            self.cur.next()
            if self.cur.at(";"):
                self.cur.next()
        elif self._looks_like_declaration():
            self.out.append("VariableDeclaration")
            self._variable_declaration()
        else:
            self.expression()
            if self.cur.at(";"):
                self.cur.next()

    def _is_placeholder(self) -> bool:
        nxt = self.cur.peek(1)
        return nxt is None or nxt.value == ";"

    def _paren_expression(self) -> None:
        inner = self.cur.skip_balanced("(", ")")
        if inner:
            _Emitter(_Cursor(inner), self.out).expression()

    def _looks_like_declaration(self) -> bool:
        t = self.cur.peek()
        if t is None or t.kind != "ident":
            return False
        if is_elementary_type(t.value) or t.value in ("mapping", "function"):
            return True
        # UserType name / UserType[] name
        offset = 1
        while True:
            nxt = self.cur.peek(offset)
            if nxt is None:
                return False
            if nxt.value == ".":
                offset += 2
                continue
            if nxt.value == "[":
                depth = 0
                while True:
                    probe = self.cur.peek(offset)
                    if probe is None:
                        return False
                    if probe.value == "[":
                        depth += 1
                    elif probe.value == "]":
                        depth -= 1
                        if depth == 0:
                            offset += 1
                            break
                    offset += 1
                continue
            break
        nxt = self.cur.peek(offset)
        if nxt is None or nxt.kind != "ident":
            return False
        return nxt.value in _IGNORED_DECORATORS or self._plain_name(nxt)

    @staticmethod
    def _plain_name(token: LexToken) -> bool:
        return token.kind == "ident" and not is_elementary_type(token.value) \
            and token.value not in ("mapping", "function", "new", "delete")

    def _variable_declaration(self) -> None:
        self.type_name()
        while self.cur.peek() and self.cur.peek().value in _IGNORED_DECORATORS:
            self.cur.next()
        if self.cur.peek() and self.cur.peek().kind == "ident":
            self.cur.next()  # erased name
        if self.cur.at("="):
            self.cur.next()
            self.out.append("Assignment")
            self.expression()
        if self.cur.at(";"):
            self.cur.next()

    # -- types ----------------------------------------------------------------

    def type_name(self) -> None:
        t = self.cur.peek()
        if t is None:
            raise ParseFailure("expected a type")
        if t.value == "mapping":
            self.out.append("Mapping")
            self.cur.next()
            inner = self.cur.skip_balanced("(", ")")
            sub = _Cursor(inner)
            sub_emitter = _Emitter(sub, self.out)
            sub_emitter.type_name()
            if sub.peek() and sub.peek().kind == "ident":
                sub.next()  # optional key name (0.8.18+)
            if sub.at("=>"):
                sub.next()
            sub_emitter.type_name()
            if sub.peek() and sub.peek().kind == "ident":
                sub.next()
        elif t.value == "function":
            self.out.append("FunctionTypeName")
            self.cur.next()
            if self.cur.at("("):
                self.parameter_list()
            while self.cur.peek() and (
                self.cur.peek().value in _VISIBILITY
                or self.cur.peek().value in _MUTABILITY
                or self.cur.peek().value == "returns"
            ):
                if self.cur.peek().value == "returns":
                    self.cur.next()
                    self.parameter_list()
                else:
                    self.cur.next()
        elif is_elementary_type(t.value):
            self.out.append("ElementaryTypeName")
            self.cur.next()
        elif t.kind == "ident":
            self.out.append("UserDefinedTypeName")
            self.cur.next()
            while self.cur.at("."):
                self.cur.next()
                if self.cur.peek() and self.cur.peek().kind == "ident":
                    self.cur.next()
        else:
            raise ParseFailure(f"line {t.line}: expected a type, got {t.value!r}")
        while self.cur.at("["):
            self.out.append("ArrayTypeName")
            self.cur.skip_balanced("[", "]")

    def parameter_list(self) -> None:
        inner = self.cur.skip_balanced("(", ")")
        sub = _Cursor(inner)
        emitter = _Emitter(sub, self.out)
        while not sub.done():
            if sub.at(","):
                sub.next()
                continue
            emitter.type_name()
            while sub.peek() and sub.peek().value in _IGNORED_DECORATORS:
                sub.next()
            if sub.peek() and sub.peek().kind == "ident":
                sub.next()  # erased parameter name

    # -- expressions ------------------------------------------------------------

    def expression(self) -> None:
        self._assignment()

    def _assignment(self) -> None:
        self._conditional()
        t = self.cur.peek()
        if t and t.value in _ASSIGN_OPS:
            self.cur.next()
            self.out.append("Assignment")
            self._assignment()

    def _conditional(self) -> None:
        self._binary(0)
        if self.cur.at("?"):
            self.cur.next()
            self.out.append("Conditional")
            self._assignment()
            self.cur.expect(":")
            self._assignment()

    _PRECEDENCE = (
        ("||",), ("&&",), ("|",), ("^",), ("&",),
        ("==", "!="), ("<", ">", "<=", ">="), ("<<", ">>"),
        ("+", "-"), ("*", "/", "%"), ("**",),
    )

    def _binary(self, level: int) -> None:
        if level >= len(self._PRECEDENCE):
            self._unary()
            return
        ops = self._PRECEDENCE[level]
        self._binary(level + 1)
        while True:
            t = self.cur.peek()
            if t is None or t.value not in ops:
                return
            self.cur.next()
            self.out.append("BinaryOperation")
            self._binary(level + 1)

    def _unary(self) -> None:
        t = self.cur.peek()
        if t and t.value in _PREFIX_OPS:
            self.cur.next()
            self.out.append("UnaryOperation")
            self._unary()
            return
        if t and t.value == "new":
            self.cur.next()
            self.out.append("NewExpression")
            self.type_name()
            self._suffixes()
            return
        self._primary()
        self._suffixes()

    def _primary(self) -> None:
        t = self.cur.peek()
        if t is None:
            raise ParseFailure("expected an expression")
        if t.kind in ("number", "string") or t.value in ("true", "false"):
            self.out.append("Literal")
            self.cur.next()
            nxt = self.cur.peek()
            if t.kind == "number" and nxt and nxt.value in _NUMBER_UNITS:
                self.cur.next()  # denomination suffix folds into the literal
            return
        if t.value == "(":
            inner = self.cur.skip_balanced("(", ")")
            parts = _split_top_level(inner, ",")
            if len(parts) > 1:
                self.out.append("TupleExpression")
            for part in parts:
                if part:
                    _Emitter(_Cursor(part), self.out).expression()
            return
        if t.value == "[":
            inner = self.cur.skip_balanced("[", "]")
            self.out.append("TupleExpression")  # inline array literal
            for part in _split_top_level(inner, ","):
                if part:
                    _Emitter(_Cursor(part), self.out).expression()
            return
        if is_elementary_type(t.value):
            self.out.append("ElementaryTypeName")  # cast, e.g. uint256(x)
            self.cur.next()
            return
        if t.kind == "ident":
            self.out.append("BlockIdentifier")
            self.cur.next()
            return
        raise ParseFailure(f"line {t.line}: unexpected {t.value!r} in expression")

    def _suffixes(self) -> None:
        while True:
            t = self.cur.peek()
            if t is None:
                return
            if t.value == ".":
                self.cur.next()
                nxt = self.cur.next()  # erased member name (or 'address' etc.)
                self.out.append("MemberAccess")
            elif t.value == "(":
                self.out.append("FunctionCall")
                self.call_arguments()
            elif t.value == "{":
                self.out.append("FunctionCallOptions")
                inner = self.cur.skip_balanced("{", "}")
                sub = _Cursor(inner)
                while not sub.done():
                    if sub.at(",") or sub.at(":"):
                        sub.next()
                        continue
                    if sub.peek().kind == "ident" and sub.peek(1) and sub.peek(1).value == ":":
                        sub.next()  # erased option name
                        continue
                    _Emitter(sub, self.out)._option_value()
            elif t.value == "[":
                self.out.append("IndexAccess")
                inner = self.cur.skip_balanced("[", "]")
                if len(inner) == 1 and (inner[0].kind in ("ident", "number", "string")
                                        or inner[0].value in ("true", "false")):
                    continue  # trivial subscript subsumed into IndexAccess
                if inner:
                    _Emitter(_Cursor(inner), self.out).expression()
            elif t.value in ("++", "--"):
                self.cur.next()
                self.out.append("UnaryOperation")
            else:
                return

    def _option_value(self) -> None:
        # value expression inside {gas: ..., value: ...}
        collected: list[LexToken] = []
        depth = 0
        while not self.cur.done():
            t = self.cur.peek()
            if depth == 0 and t.value == ",":
                break
            if t.value in "([{":
                depth += 1
            elif t.value in ")]}":
                depth -= 1
            collected.append(self.cur.next())
        if collected:
            _Emitter(_Cursor(collected), self.out).expression()

    def call_arguments(self) -> None:
        inner = self.cur.skip_balanced("(", ")")
        if inner and inner[0].value == "{":
            sub = _Cursor(inner)
            named = sub.skip_balanced("{", "}")
            nsub = _Cursor(named)
            while not nsub.done():
                if nsub.at(",") :
                    nsub.next()
                    continue
                if nsub.peek().kind == "ident" and nsub.peek(1) and nsub.peek(1).value == ":":
                    nsub.next()
                    nsub.next()
                    continue
                _Emitter(nsub, self.out)._option_value()
            return
        for part in _split_top_level(inner, ","):
            if part:
                _Emitter(_Cursor(part), self.out).expression()


def _split_top_level(tokens: list[LexToken], separator: str) -> list[list[LexToken]]:
    parts: list[list[LexToken]] = [[]]
    depth = 0
    for t in tokens:
        if t.value in "([{":
            depth += 1
        elif t.value in ")]}":
            depth -= 1
        if depth == 0 and t.value == separator:
            parts.append([])
        else:
            parts[-1].append(t)
    return parts
