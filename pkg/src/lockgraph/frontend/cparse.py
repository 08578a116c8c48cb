"""Lexer and recursive-descent parser for the mini-C subset.

The grammar covers global declarations, struct/union/enum/typedef
declarations (bodies are skipped), function definitions, and the usual
statement forms. Expressions are parsed in full so that calls nested
anywhere in a statement are found; their values are never evaluated.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Union


class ParseError(Exception):
    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Token:
    kind: str  # id | num | str | char | op | eof
    text: str
    line: int
    column: int


_PUNCT = sorted(
    """... <<= >>= -> ++ -- << >> <= >= == != && || += -= *= /= %= &= ^= |=
    { } ( ) [ ] ; , . & * + - ~ ! / % < > ^ | ? : =""".split(),
    key=len, reverse=True)

_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r\f\v]+)"
    r"|(?P<nl>\n)"
    r"|(?P<lcomment>//[^\n]*)"
    r"|(?P<bcomment>/\*.*?\*/)"
    r"|(?P<id>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<num>(?:0[xX][0-9A-Fa-f]+|\d+\.?\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)[uUlLfF]*)"
    r"|(?P<str>\"(?:[^\"\\\n]|\\.)*\")"
    r"|(?P<char>'(?:[^'\\\n]|\\.)+')"
    r"|(?P<op>" + "|".join(re.escape(p) for p in _PUNCT) + r")",
    re.DOTALL,
)


_DIRECTIVE_RE = re.compile(r"[ \t]*#")


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    line, line_start, pos = 1, 0, 0
    at_line_start = True
    n = len(source)
    while pos < n:
        if at_line_start:
            # Preprocessor directives are skipped, including continuation lines.
            m = _DIRECTIVE_RE.match(source, pos)
            if m:
                while True:
                    end = source.find("\n", pos)
                    if end == -1:
                        pos = n
                        break
                    continued = source[pos:end].rstrip().endswith("\\")
                    pos = end + 1
                    line += 1
                    line_start = pos
                    if not continued:
                        break
                continue
        if source.startswith("/*", pos) and source.find("*/", pos + 2) == -1:
            raise ParseError("unterminated comment", line, pos - line_start + 1)
        m = _TOKEN_RE.match(source, pos)
        if not m:
            raise ParseError(f"unexpected character {source[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        text = m.group()
        col = pos - line_start + 1
        if kind == "nl":
            line += 1
            line_start = m.end()
            at_line_start = True
        elif kind == "bcomment":
            newlines = text.count("\n")
            if newlines:
                line += newlines
                line_start = pos + text.rfind("\n") + 1
        elif kind not in ("ws", "lcomment"):
            tokens.append(Token(kind, text, line, col))
            at_line_start = False
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


# ---------------------------------------------------------------- AST

@dataclass
class Expr:
    line: int
    column: int
    text: str = field(default="", compare=False)


@dataclass
class Name(Expr):
    name: str = ""


@dataclass
class Literal(Expr):
    value: str = ""


@dataclass
class CallExpr(Expr):
    func: Optional[Expr] = None
    args: list[Expr] = field(default_factory=list)


@dataclass
class Member(Expr):
    obj: Optional[Expr] = None
    name: str = ""
    arrow: bool = False


@dataclass
class Index(Expr):
    obj: Optional[Expr] = None
    index: Optional[Expr] = None


@dataclass
class Unary(Expr):
    op: str = ""
    operand: Optional[Expr] = None


@dataclass
class Cast(Expr):
    operand: Optional[Expr] = None


@dataclass
class Compound(Expr):
    """Any other operator: binary, ternary, assignment, comma, sizeof."""
    op: str = ""
    operands: list[Expr] = field(default_factory=list)


@dataclass
class Stmt:
    line: int
    column: int


@dataclass
class Block(Stmt):
    items: list[Stmt] = field(default_factory=list)


@dataclass
class IfStmt(Stmt):
    cond: Optional[Expr] = None
    then: Optional[Stmt] = None
    orelse: Optional[Stmt] = None


@dataclass
class WhileStmt(Stmt):
    cond: Optional[Expr] = None
    body: Optional[Stmt] = None


@dataclass
class DoWhileStmt(Stmt):
    body: Optional[Stmt] = None
    cond: Optional[Expr] = None


@dataclass
class ForStmt(Stmt):
    init: Optional[Stmt] = None
    cond: Optional[Expr] = None
    step: Optional[Expr] = None
    body: Optional[Stmt] = None


@dataclass
class ReturnStmt(Stmt):
    value: Optional[Expr] = None


@dataclass
class BreakStmt(Stmt):
    pass


@dataclass
class ContinueStmt(Stmt):
    pass


@dataclass
class ExprStmt(Stmt):
    expr: Optional[Expr] = None


@dataclass
class DeclStmt(Stmt):
    inits: list[Expr] = field(default_factory=list)


@dataclass
class UnsupportedStmt(Stmt):
    construct: str = ""
    inner: Optional[Stmt] = None  # statement following a label


@dataclass
class FuncDef:
    name: str
    params: list[str]
    body: Block
    line: int


@dataclass
class TranslationUnit:
    filename: str
    functions: list[FuncDef] = field(default_factory=list)
    # (name, type names) for every global object declaration
    globals: list[tuple[str, frozenset[str]]] = field(default_factory=list)


AnyExpr = Union[Name, Literal, CallExpr, Member, Index, Unary, Cast, Compound]

# ---------------------------------------------------------------- parser

_STORAGE = {"static", "extern", "auto", "register", "inline", "__inline", "__inline__",
            "_Thread_local", "__thread", "typedef", "_Noreturn"}
_QUALIFIERS = {"const", "volatile", "restrict", "__restrict", "__restrict__", "_Atomic"}
_BASE_TYPES = {"void", "char", "short", "int", "long", "float", "double", "signed",
               "unsigned", "_Bool", "_Complex"}
_TAGS = {"struct", "union", "enum"}
_WELL_KNOWN_TYPES = {"bool", "FILE", "Lock", "va_list"}
_KEYWORDS = (_STORAGE | _QUALIFIERS | _BASE_TYPES | _TAGS
             | {"if", "else", "while", "do", "for", "return", "break", "continue",
                "switch", "case", "default", "goto", "sizeof"})

_BINARY_PREC = {
    "||": 1, "&&": 2, "|": 3, "^": 4, "&": 5, "==": 6, "!=": 6,
    "<": 7, ">": 7, "<=": 7, ">=": 7, "<<": 8, ">>": 8,
    "+": 9, "-": 9, "*": 10, "/": 10, "%": 10,
}
_ASSIGN_OPS = {"=", "+=", "-=", "*=", "/=", "%=", "&=", "^=", "|=", "<<=", ">>="}


class Parser:
    def __init__(self, source: str, filename: str, type_names: frozenset[str] = frozenset()) -> None:
        self.tokens = tokenize(source)
        self.pos = 0
        self.filename = filename
        self.typedefs: set[str] = set(_WELL_KNOWN_TYPES) | set(type_names)

    # token helpers
    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.pos + k, len(self.tokens) - 1)]

    def at(self, text: str) -> bool:
        t = self.tok
        return t.text == text and t.kind in ("op", "id")

    def advance(self) -> Token:
        t = self.tok
        if t.kind != "eof":
            self.pos += 1
        return t

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.advance()
            return True
        return False

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(f"expected {text!r}")
        return self.advance()

    def expect_ident(self) -> Token:
        t = self.tok
        if t.kind != "id" or t.text in _KEYWORDS:
            self.fail("expected identifier")
        return self.advance()

    def fail(self, message: str) -> None:
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        raise ParseError(f"{message}, found {found}", t.line, t.column)

    def span_text(self, start: int) -> str:
        return " ".join(t.text for t in self.tokens[start:self.pos])

    def is_type_name(self, t: Token) -> bool:
        if t.kind != "id":
            return False
        return (t.text in _BASE_TYPES or t.text in _TAGS or t.text in _QUALIFIERS
                or t.text in _STORAGE or t.text in self.typedefs
                or (t.text.endswith("_t") and t.text not in _KEYWORDS))

    def skip_balanced(self, open_: str, close: str) -> None:
        depth = 0
        while True:
            t = self.tok
            if t.kind == "eof":
                self.fail(f"unbalanced {open_!r}")
            if t.text == open_ and t.kind == "op":
                depth += 1
            elif t.text == close and t.kind == "op":
                depth -= 1
                if depth == 0:
                    self.advance()
                    return
            self.advance()

    # declarations
    def parse_specifiers(self) -> tuple[set[str], bool]:
        """Consume declaration specifiers; returns (type names, is_typedef)."""
        names: set[str] = set()
        is_typedef = False
        have_base = False
        while True:
            t = self.tok
            if t.kind != "id":
                break
            if t.text in _STORAGE:
                is_typedef |= t.text == "typedef"
                self.advance()
            elif t.text in _QUALIFIERS:
                self.advance()
            elif t.text in _BASE_TYPES:
                names.add(t.text)
                have_base = True
                self.advance()
            elif t.text in _TAGS:
                self.advance()
                if self.tok.kind == "id" and self.tok.text not in _KEYWORDS:
                    names.add(self.advance().text)
                if self.at("{"):
                    self.skip_balanced("{", "}")
                have_base = True
            elif t.text == "__attribute__":
                self.advance()
                self.skip_balanced("(", ")")
            elif not have_base and t.text not in _KEYWORDS:
                names.add(t.text)
                have_base = True
                self.advance()
            else:
                break
        if not have_base and not is_typedef:
            self.fail("expected declaration")
        return names, is_typedef

    def parse_declarator(self) -> tuple[Optional[str], Optional[list[str]], int]:
        """Returns (name, params if this declares a function, pointer depth)."""
        depth = 0
        while self.at("*") or (self.tok.kind == "id" and self.tok.text in _QUALIFIERS):
            if self.advance().text == "*":
                depth += 1
        name: Optional[str] = None
        params: Optional[list[str]] = None
        if self.at("(") and (self.peek().text in ("*", "(") or self.peek().kind == "id"
                             and not self.is_type_name(self.peek())
                             and self.peek(2).text == ")"):
            # Parenthesized declarator such as (*fn)(void *).
            self.advance()
            name, _, inner_depth = self.parse_declarator()
            depth += inner_depth
            self.expect(")")
        elif self.tok.kind == "id" and self.tok.text not in _KEYWORDS:
            name = self.advance().text
        while True:
            if self.at("["):
                self.skip_balanced("[", "]")
            elif self.at("("):
                got = self.parse_params()
                if params is None:
                    params = got
            elif self.at("__attribute__"):
                self.advance()
                self.skip_balanced("(", ")")
            else:
                break
        return name, params, depth

    def parse_params(self) -> list[str]:
        self.expect("(")
        params: list[str] = []
        if self.accept(")"):
            return params
        if self.at("void") and self.peek().text == ")":
            self.advance()
            self.advance()
            return params
        while True:
            if self.accept("..."):
                pass
            else:
                self.parse_specifiers()
                name, _, _ = self.parse_declarator()
                if name is not None:
                    params.append(name)
            if self.accept(")"):
                return params
            self.expect(",")

    def parse_initializer(self) -> Optional[Expr]:
        if self.at("{"):
            self.skip_balanced("{", "}")
            return None
        return self.parse_assignment()

    def parse_unit(self) -> TranslationUnit:
        unit = TranslationUnit(self.filename)
        while self.tok.kind != "eof":
            if self.accept(";"):
                continue
            start = self.tok
            types, is_typedef = self.parse_specifiers()
            if self.accept(";"):
                continue
            first = True
            while True:
                name, params, _ = self.parse_declarator()
                if first and params is not None and self.at("{") and not is_typedef:
                    if name is None:
                        self.fail("function definition without a name")
                    body = self.parse_block()
                    unit.functions.append(FuncDef(name, params, body, start.line))
                    break
                first = False
                if name is None:
                    self.fail("expected declarator")
                if is_typedef:
                    self.typedefs.add(name)
                elif params is None:
                    unit.globals.append((name, frozenset(types)))
                if self.accept("="):
                    self.parse_initializer()
                if self.accept(";"):
                    break
                self.expect(",")
        return unit

    # statements
    def looks_like_declaration(self) -> bool:
        t = self.tok
        if t.kind != "id":
            return False
        if t.text in _STORAGE or t.text in _QUALIFIERS or t.text in _BASE_TYPES or t.text in _TAGS:
            return True
        if t.text in _KEYWORDS:
            return False
        nxt = self.peek()
        if self.is_type_name(t) and nxt.text not in ("(", "=", ".", "->", "[", "++", "--", ";", ",", ")"):
            return True
        if nxt.kind == "id" and nxt.text not in _KEYWORDS:
            return True
        if nxt.text == "*":
            k = 1
            while self.peek(k).text == "*":
                k += 1
            after = self.peek(k)
            if after.kind == "id" and self.peek(k + 1).text in (";", "=", ",", "["):
                return True
        return False

    def parse_block(self) -> Block:
        t = self.expect("{")
        block = Block(t.line, t.column)
        while not self.at("}"):
            if self.tok.kind == "eof":
                self.fail("expected '}'")
            block.items.append(self.parse_statement())
        self.advance()
        return block

    def parse_declaration_stmt(self) -> DeclStmt:
        t = self.tok
        stmt = DeclStmt(t.line, t.column)
        _, is_typedef = self.parse_specifiers()
        if self.accept(";"):
            return stmt
        while True:
            name, _, _ = self.parse_declarator()
            if is_typedef and name:
                self.typedefs.add(name)
            if self.accept("="):
                init = self.parse_initializer()
                if init is not None:
                    stmt.inits.append(init)
            if self.accept(";"):
                return stmt
            self.expect(",")

    def parse_statement(self) -> Stmt:
        t = self.tok
        if self.at("{"):
            return self.parse_block()
        if self.accept(";"):
            return Block(t.line, t.column)
        if t.kind == "id":
            kw = t.text
            if kw == "if":
                self.advance()
                self.expect("(")
                cond = self.parse_expression()
                self.expect(")")
                then = self.parse_statement()
                orelse = self.parse_statement() if self.accept("else") else None
                return IfStmt(t.line, t.column, cond, then, orelse)
            if kw == "while":
                self.advance()
                self.expect("(")
                cond = self.parse_expression()
                self.expect(")")
                return WhileStmt(t.line, t.column, cond, self.parse_statement())
            if kw == "do":
                self.advance()
                body = self.parse_statement()
                self.expect("while")
                self.expect("(")
                cond = self.parse_expression()
                self.expect(")")
                self.expect(";")
                return DoWhileStmt(t.line, t.column, body, cond)
            if kw == "for":
                self.advance()
                self.expect("(")
                init: Optional[Stmt] = None
                if self.looks_like_declaration():
                    init = self.parse_declaration_stmt()
                elif not self.accept(";"):
                    e = self.parse_expression()
                    self.expect(";")
                    init = ExprStmt(e.line, e.column, e)
                cond = None if self.at(";") else self.parse_expression()
                self.expect(";")
                step = None if self.at(")") else self.parse_expression()
                self.expect(")")
                return ForStmt(t.line, t.column, init, cond, step, self.parse_statement())
            if kw == "return":
                self.advance()
                value = None if self.at(";") else self.parse_expression()
                self.expect(";")
                return ReturnStmt(t.line, t.column, value)
            if kw == "break":
                self.advance()
                self.expect(";")
                return BreakStmt(t.line, t.column)
            if kw == "continue":
                self.advance()
                self.expect(";")
                return ContinueStmt(t.line, t.column)
            if kw == "switch":
                self.advance()
                self.expect("(")
                self.parse_expression()
                self.expect(")")
                self.parse_statement()
                return UnsupportedStmt(t.line, t.column, "switch")
            if kw in ("case", "default"):
                self.advance()
                if kw == "case":
                    self.parse_conditional()
                self.expect(":")
                return UnsupportedStmt(t.line, t.column, kw)
            if kw == "goto":
                self.advance()
                self.expect_ident()
                self.expect(";")
                return UnsupportedStmt(t.line, t.column, "goto")
            if kw not in _KEYWORDS and self.peek().text == ":":
                self.advance()
                self.advance()
                inner = self.parse_statement()
                return UnsupportedStmt(t.line, t.column, "label", inner)
            if self.looks_like_declaration():
                return self.parse_declaration_stmt()
        e = self.parse_expression()
        self.expect(";")
        return ExprStmt(t.line, t.column, e)

    # expressions
    def parse_expression(self) -> Expr:
        start = self.pos
        e = self.parse_assignment()
        if self.at(","):
            operands = [e]
            while self.accept(","):
                operands.append(self.parse_assignment())
            e = Compound(e.line, e.column, self.span_text(start), ",", operands)
        return e

    def parse_assignment(self) -> Expr:
        start = self.pos
        lhs = self.parse_conditional()
        if self.tok.kind == "op" and self.tok.text in _ASSIGN_OPS:
            op = self.advance().text
            rhs = self.parse_assignment()
            return Compound(lhs.line, lhs.column, self.span_text(start), op, [lhs, rhs])
        return lhs

    def parse_conditional(self) -> Expr:
        start = self.pos
        cond = self.parse_binary(1)
        if self.accept("?"):
            a = self.parse_expression()
            self.expect(":")
            b = self.parse_conditional()
            return Compound(cond.line, cond.column, self.span_text(start), "?:", [cond, a, b])
        return cond

    def parse_binary(self, min_prec: int) -> Expr:
        start = self.pos
        lhs = self.parse_unary()
        while self.tok.kind == "op" and _BINARY_PREC.get(self.tok.text, 0) >= min_prec:
            op = self.advance().text
            rhs = self.parse_binary(_BINARY_PREC[op] + 1)
            lhs = Compound(lhs.line, lhs.column, self.span_text(start), op, [lhs, rhs])
        return lhs

    def at_type_in_parens(self) -> bool:
        if not self.at("("):
            return False
        t = self.peek()
        if t.kind != "id" or not self.is_type_name(t):
            return False
        # A typedef name followed by an operator could still be an expression.
        nxt = self.peek(2)
        return t.text in _KEYWORDS or nxt.text in (")", "*") or nxt.kind == "id"

    def parse_type_name(self) -> None:
        self.parse_specifiers()
        self.parse_declarator()

    def parse_unary(self) -> Expr:
        start = self.pos
        t = self.tok
        if t.kind == "op" and t.text in ("&", "*", "+", "-", "!", "~", "++", "--"):
            self.advance()
            operand = self.parse_unary()
            return Unary(t.line, t.column, self.span_text(start), t.text, operand)
        if t.kind == "id" and t.text == "sizeof":
            self.advance()
            if self.at_type_in_parens():
                self.advance()
                self.parse_type_name()
                self.expect(")")
                return Compound(t.line, t.column, self.span_text(start), "sizeof", [])
            operand = self.parse_unary()
            return Compound(t.line, t.column, self.span_text(start), "sizeof", [operand])
        if self.at_type_in_parens():
            self.advance()
            self.parse_type_name()
            self.expect(")")
            if self.at("{"):
                self.skip_balanced("{", "}")
                return Literal(t.line, t.column, self.span_text(start), "compound")
            operand = self.parse_unary()
            return Cast(t.line, t.column, self.span_text(start), operand)
        return self.parse_postfix()

    def parse_postfix(self) -> Expr:
        start = self.pos
        e = self.parse_primary()
        while True:
            t = self.tok
            if self.accept("("):
                args: list[Expr] = []
                if not self.accept(")"):
                    while True:
                        args.append(self.parse_assignment())
                        if self.accept(")"):
                            break
                        self.expect(",")
                e = CallExpr(e.line, e.column, self.span_text(start), e, args)
            elif self.accept("["):
                idx = self.parse_expression()
                self.expect("]")
                e = Index(e.line, e.column, self.span_text(start), e, idx)
            elif t.text in (".", "->") and t.kind == "op":
                self.advance()
                field_name = self.expect_ident().text
                e = Member(e.line, e.column, self.span_text(start), e, field_name, t.text == "->")
            elif t.text in ("++", "--") and t.kind == "op":
                self.advance()
                e = Compound(e.line, e.column, self.span_text(start), "post" + t.text, [e])
            else:
                return e

    def parse_primary(self) -> Expr:
        start = self.pos
        t = self.tok
        if t.kind == "id" and t.text not in _KEYWORDS:
            self.advance()
            return Name(t.line, t.column, t.text, t.text)
        if t.kind in ("num", "char"):
            self.advance()
            return Literal(t.line, t.column, t.text, t.text)
        if t.kind == "str":
            while self.tok.kind == "str":
                self.advance()
            return Literal(t.line, t.column, self.span_text(start), "string")
        if self.accept("("):
            e = self.parse_expression()
            self.expect(")")
            return e
        self.fail("expected expression")
        raise AssertionError("unreachable")


def parse_unit(source: str, filename: str = "<input>",
               type_names: frozenset[str] = frozenset()) -> TranslationUnit:
    return Parser(source, filename, type_names).parse_unit()
