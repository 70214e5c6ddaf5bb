"""Lexer, AST and recovering parser for the declarative input language.

The language is statement-oriented: declarations bind names to rings,
polynomials, ideals, fractional ideals, centres, atlases, divisors and
sheaves; ``show`` statements run side-effect-free commands.  Statements
end with ';'.  One fatal diagnostic is reported per broken statement and
parsing resumes at the next top-level ';'.

    ring A = QQ[x,y];
    ideal I = (x, y);
    poly f = x^2;
    show proper(I, f, (u, v));
    atlas P1 = { chart QQ[s]; chart QQ[u];
                 overlap 0 1: g = s; u -> 1/s;
                 overlap 1 0: g = u; s -> 1/u; };
    divisor D on P1 = (s, 1);
    sheaf S on P1 = ((s), (1));
    show complement(P1, D);
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field


@dataclass(frozen=True)
class Span:
    line: int
    column: int
    length: int


@dataclass
class Diagnostic:
    severity: str  # "error" | "warning"
    span: Span
    message: str
    hint: str | None = None

    def render(self, filename: str = "<script>") -> str:
        out = (
            f"{filename}:{self.span.line}:{self.span.column}: "
            f"{self.severity}: {self.message}"
        )
        if self.hint:
            out += f"\n    hint: {self.hint}"
        return out


@dataclass(frozen=True)
class Token:
    kind: str  # NAME, INT, SYM, EOF
    value: str
    span: Span


_SYMBOLS = ("->", "(", ")", "[", "]", "{", "}", ",", ";", ":", "=", "+", "-", "*", "^", "/")


class LexError(Exception):
    def __init__(self, span: Span, message: str):
        self.span = span
        self.message = message


def tokenize(source: str):
    tokens: list[Token] = []
    line, col = 1, 1
    i = 0
    n = len(source)
    while i < n:
        ch = source[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and source[i] != "\n":
                i += 1
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            tokens.append(Token("NAME", source[i:j], Span(line, col, j - i)))
            col += j - i
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            tokens.append(Token("INT", source[i:j], Span(line, col, j - i)))
            col += j - i
            i = j
            continue
        if source.startswith("->", i):
            tokens.append(Token("SYM", "->", Span(line, col, 2)))
            i += 2
            col += 2
            continue
        if ch in "()[]{},;:=+-*^/":
            tokens.append(Token("SYM", ch, Span(line, col, 1)))
            i += 1
            col += 1
            continue
        raise LexError(Span(line, col, 1), f"unexpected character {ch!r}")
    tokens.append(Token("EOF", "", Span(line, col, 0)))
    return tokens


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Expr:
    pass


@dataclass(frozen=True)
class Num(Expr):
    value: int
    span: Span = dc_field(compare=False, default=Span(0, 0, 0))


@dataclass(frozen=True)
class Name(Expr):
    ident: str
    span: Span = dc_field(compare=False, default=Span(0, 0, 0))


@dataclass(frozen=True)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr
    span: Span = dc_field(compare=False, default=Span(0, 0, 0))


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr
    span: Span = dc_field(compare=False, default=Span(0, 0, 0))


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: int
    span: Span = dc_field(compare=False, default=Span(0, 0, 0))


@dataclass(frozen=True)
class TupleExpr(Expr):
    items: tuple
    span: Span = dc_field(compare=False, default=Span(0, 0, 0))


@dataclass(frozen=True)
class FieldSpec:
    kind: str  # "QQ" | "GF"
    prime: int | None = None

    def render(self) -> str:
        return "QQ" if self.kind == "QQ" else f"GF({self.prime})"


@dataclass(frozen=True)
class Statement:
    pass


@dataclass(frozen=True)
class RingDecl(Statement):
    name: str
    field_spec: FieldSpec
    variables: tuple
    order: str  # "grevlex" | "lex"
    span: Span = dc_field(compare=False, default=Span(0, 0, 0))


@dataclass(frozen=True)
class PolyDecl(Statement):
    name: str
    expr: Expr
    span: Span = dc_field(compare=False, default=Span(0, 0, 0))


@dataclass(frozen=True)
class IdealDecl(Statement):
    name: str
    exprs: tuple
    span: Span = dc_field(compare=False, default=Span(0, 0, 0))


@dataclass(frozen=True)
class FracDecl(Statement):
    name: str
    items: tuple  # of (num_expr, den_expr | None)
    span: Span = dc_field(compare=False, default=Span(0, 0, 0))


@dataclass(frozen=True)
class CentreDecl(Statement):
    name: str
    ideal: Expr
    f_expr: Expr
    span: Span = dc_field(compare=False, default=Span(0, 0, 0))


@dataclass(frozen=True)
class ChartSpec:
    field_spec: FieldSpec
    variables: tuple


@dataclass(frozen=True)
class ImageSpec:
    variable: str
    num: Expr
    den: Expr | None


@dataclass(frozen=True)
class OverlapSpec:
    i: int
    j: int
    g_expr: Expr
    images: tuple  # of ImageSpec


@dataclass(frozen=True)
class AtlasDecl(Statement):
    name: str
    charts: tuple  # of ChartSpec
    overlaps: tuple  # of OverlapSpec
    span: Span = dc_field(compare=False, default=Span(0, 0, 0))


@dataclass(frozen=True)
class DivisorDecl(Statement):
    name: str
    atlas: str
    equations: tuple  # of Expr, one per chart
    span: Span = dc_field(compare=False, default=Span(0, 0, 0))


@dataclass(frozen=True)
class SheafDecl(Statement):
    name: str
    atlas: str
    ideals: tuple  # of tuple[Expr]
    span: Span = dc_field(compare=False, default=Span(0, 0, 0))


@dataclass(frozen=True)
class ShowStmt(Statement):
    command: str
    args: tuple  # of Expr
    span: Span = dc_field(compare=False, default=Span(0, 0, 0))


@dataclass(frozen=True)
class Script:
    statements: tuple


@dataclass
class ParseResult:
    script: Script
    diagnostics: list


COMMANDS = (
    "modify",
    "rees",
    "proper",
    "strict",
    "transforms_equal",
    "minors",
    "member",
    "denominators",
    "centre_from",
    "modify_global",
    "complement",
)

_DECL_KEYWORDS = (
    "ring",
    "poly",
    "ideal",
    "frac",
    "centre",
    "atlas",
    "divisor",
    "sheaf",
)


class _ParseError(Exception):
    def __init__(self, span: Span, message: str, hint: str | None = None):
        self.span = span
        self.message = message
        self.hint = hint


class Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0
        self.diagnostics: list[Diagnostic] = []

    # -- token plumbing -------------------------------------------------

    def peek(self, ahead: int = 0) -> Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def at_sym(self, value: str) -> bool:
        tok = self.peek()
        return tok.kind == "SYM" and tok.value == value

    def expect_sym(self, value: str) -> Token:
        tok = self.peek()
        if tok.kind == "SYM" and tok.value == value:
            return self.advance()
        raise _ParseError(tok.span, f"expected {value!r}, found {tok.value!r}")

    def expect_name(self, what: str = "a name") -> Token:
        tok = self.peek()
        if tok.kind == "NAME":
            return self.advance()
        raise _ParseError(tok.span, f"expected {what}, found {tok.value or 'end of input'!r}")

    def expect_int(self) -> int:
        tok = self.peek()
        if tok.kind == "INT":
            self.advance()
            return int(tok.value)
        raise _ParseError(tok.span, f"expected an integer, found {tok.value!r}")

    def expect_keyword(self, word: str):
        tok = self.peek()
        if tok.kind == "NAME" and tok.value == word:
            return self.advance()
        raise _ParseError(tok.span, f"expected {word!r}, found {tok.value!r}")

    # -- recovery ---------------------------------------------------------

    def skip_statement(self):
        depth = 0
        while True:
            tok = self.peek()
            if tok.kind == "EOF":
                return
            if tok.kind == "SYM":
                if tok.value in "([{":
                    depth += 1
                elif tok.value in ")]}":
                    depth = max(0, depth - 1)
                elif tok.value == ";" and depth == 0:
                    self.advance()
                    return
            self.advance()

    # -- grammar ----------------------------------------------------------

    def parse_script(self) -> Script:
        statements = []
        while self.peek().kind != "EOF":
            try:
                statements.append(self.parse_statement())
            except _ParseError as err:
                self.diagnostics.append(
                    Diagnostic("error", err.span, err.message, err.hint)
                )
                self.skip_statement()
        return Script(tuple(statements))

    def parse_statement(self) -> Statement:
        tok = self.peek()
        if tok.kind != "NAME":
            raise _ParseError(
                tok.span,
                f"expected a declaration or 'show', found {tok.value!r}",
            )
        if tok.value == "show":
            return self.parse_show()
        if tok.value in _DECL_KEYWORDS:
            return getattr(self, f"parse_{tok.value}")()
        raise _ParseError(
            tok.span,
            f"unknown statement keyword {tok.value!r}",
            hint="declarations start with one of: "
            + ", ".join(_DECL_KEYWORDS)
            + "; commands with 'show'",
        )

    def parse_field(self) -> FieldSpec:
        tok = self.expect_name("a coefficient field (QQ or GF(p))")
        if tok.value == "QQ":
            return FieldSpec("QQ")
        if tok.value == "GF":
            self.expect_sym("(")
            p = self.expect_int()
            self.expect_sym(")")
            return FieldSpec("GF", p)
        raise _ParseError(tok.span, f"unknown coefficient field {tok.value!r}")

    def parse_ring(self) -> RingDecl:
        start = self.advance().span  # 'ring'
        name = self.expect_name("a ring name").value
        self.expect_sym("=")
        spec = self.parse_field()
        self.expect_sym("[")
        variables = [self.expect_name("a variable name").value]
        while self.at_sym(","):
            self.advance()
            variables.append(self.expect_name("a variable name").value)
        self.expect_sym("]")
        order = "grevlex"
        if self.peek().kind == "NAME" and self.peek().value == "with":
            self.advance()
            self.expect_keyword("order")
            tok = self.expect_name("a monomial order (lex or grevlex)")
            if tok.value not in ("lex", "grevlex"):
                raise _ParseError(tok.span, f"unknown order {tok.value!r}")
            order = tok.value
        self.expect_sym(";")
        return RingDecl(name, spec, tuple(variables), order, start)

    def parse_poly(self) -> PolyDecl:
        start = self.advance().span
        name = self.expect_name("a polynomial name").value
        self.expect_sym("=")
        expr = self.parse_expr()
        self.expect_sym(";")
        return PolyDecl(name, expr, start)

    def parse_ideal(self) -> IdealDecl:
        start = self.advance().span
        name = self.expect_name("an ideal name").value
        self.expect_sym("=")
        self.expect_sym("(")
        exprs = []
        if not self.at_sym(")"):
            exprs.append(self.parse_expr())
            while self.at_sym(","):
                self.advance()
                exprs.append(self.parse_expr())
        self.expect_sym(")")
        self.expect_sym(";")
        return IdealDecl(name, tuple(exprs), start)

    def parse_frac(self) -> FracDecl:
        start = self.advance().span
        name = self.expect_name("a fractional ideal name").value
        self.expect_sym("=")
        self.expect_sym("(")
        items = [self.parse_fraction_item()]
        while self.at_sym(","):
            self.advance()
            items.append(self.parse_fraction_item())
        self.expect_sym(")")
        self.expect_sym(";")
        return FracDecl(name, tuple(items), start)

    def parse_fraction_item(self):
        num = self.parse_expr(allow_div=False)
        den = None
        if self.at_sym("/"):
            self.advance()
            den = self.parse_expr(allow_div=False)
        return (num, den)

    def parse_centre(self) -> CentreDecl:
        start = self.advance().span
        name = self.expect_name("a centre name").value
        self.expect_sym("=")
        self.expect_sym("(")
        ideal = self.parse_expr()
        self.expect_sym(",")
        f_expr = self.parse_expr()
        self.expect_sym(")")
        self.expect_sym(";")
        return CentreDecl(name, ideal, f_expr, start)

    def parse_atlas(self) -> AtlasDecl:
        start = self.advance().span
        name = self.expect_name("an atlas name").value
        self.expect_sym("=")
        self.expect_sym("{")
        charts: list[ChartSpec] = []
        overlaps: list[OverlapSpec] = []
        while not self.at_sym("}"):
            tok = self.peek()
            if tok.kind == "NAME" and tok.value == "chart":
                self.advance()
                spec = self.parse_field()
                self.expect_sym("[")
                variables = [self.expect_name("a variable name").value]
                while self.at_sym(","):
                    self.advance()
                    variables.append(self.expect_name("a variable name").value)
                self.expect_sym("]")
                self.expect_sym(";")
                charts.append(ChartSpec(spec, tuple(variables)))
            elif tok.kind == "NAME" and tok.value == "overlap":
                self.advance()
                i = self.expect_int()
                j = self.expect_int()
                self.expect_sym(":")
                self.expect_keyword("g")
                self.expect_sym("=")
                g_expr = self.parse_expr()
                self.expect_sym(";")
                images = []
                while (
                    self.peek().kind == "NAME"
                    and self.peek(1).kind == "SYM"
                    and self.peek(1).value == "->"
                ):
                    var = self.advance().value
                    self.advance()  # ->
                    num = self.parse_expr(allow_div=False)
                    den = None
                    if self.at_sym("/"):
                        self.advance()
                        den = self.parse_expr(allow_div=False)
                    self.expect_sym(";")
                    images.append(ImageSpec(var, num, den))
                overlaps.append(OverlapSpec(i, j, g_expr, tuple(images)))
            else:
                raise _ParseError(
                    tok.span,
                    f"expected 'chart', 'overlap' or '}}', found {tok.value!r}",
                )
        self.expect_sym("}")
        self.expect_sym(";")
        return AtlasDecl(name, tuple(charts), tuple(overlaps), start)

    def parse_divisor(self) -> DivisorDecl:
        start = self.advance().span
        name = self.expect_name("a divisor name").value
        self.expect_keyword("on")
        atlas = self.expect_name("an atlas name").value
        self.expect_sym("=")
        self.expect_sym("(")
        equations = [self.parse_expr()]
        while self.at_sym(","):
            self.advance()
            equations.append(self.parse_expr())
        self.expect_sym(")")
        self.expect_sym(";")
        return DivisorDecl(name, atlas, tuple(equations), start)

    def parse_sheaf(self) -> SheafDecl:
        start = self.advance().span
        name = self.expect_name("a sheaf name").value
        self.expect_keyword("on")
        atlas = self.expect_name("an atlas name").value
        self.expect_sym("=")
        self.expect_sym("(")
        ideals = [self.parse_ideal_literal()]
        while self.at_sym(","):
            self.advance()
            ideals.append(self.parse_ideal_literal())
        self.expect_sym(")")
        self.expect_sym(";")
        return SheafDecl(name, atlas, tuple(ideals), start)

    def parse_ideal_literal(self):
        self.expect_sym("(")
        exprs = []
        if not self.at_sym(")"):
            exprs.append(self.parse_expr())
            while self.at_sym(","):
                self.advance()
                exprs.append(self.parse_expr())
        self.expect_sym(")")
        return tuple(exprs)

    def parse_show(self) -> ShowStmt:
        start = self.advance().span  # 'show'
        cmd = self.expect_name("a command name")
        if cmd.value not in COMMANDS:
            raise _ParseError(
                cmd.span,
                f"unknown command {cmd.value!r}",
                hint="commands: " + ", ".join(COMMANDS),
            )
        self.expect_sym("(")
        args = []
        if not self.at_sym(")"):
            args.append(self.parse_arg())
            while self.at_sym(","):
                self.advance()
                args.append(self.parse_arg())
        self.expect_sym(")")
        self.expect_sym(";")
        return ShowStmt(cmd.value, tuple(args), cmd.span)

    def parse_arg(self) -> Expr:
        # a parenthesized comma list is a tuple argument (e.g. fresh names)
        return self.parse_expr(allow_tuple=True)

    # -- expressions -------------------------------------------------------

    def parse_expr(self, allow_div: bool = True, allow_tuple: bool = False) -> Expr:
        left = self.parse_term(allow_div, allow_tuple)
        while self.peek().kind == "SYM" and self.peek().value in ("+", "-"):
            op = self.advance()
            right = self.parse_term(allow_div, False)
            left = BinOp(op.value, left, right, op.span)
        return left

    def parse_term(self, allow_div: bool, allow_tuple: bool) -> Expr:
        left = self.parse_factor(allow_tuple)
        while self.peek().kind == "SYM" and (
            self.peek().value == "*" or (allow_div and self.peek().value == "/")
        ):
            op = self.advance()
            right = self.parse_factor(False)
            left = BinOp(op.value, left, right, op.span)
        return left

    def parse_factor(self, allow_tuple: bool) -> Expr:
        tok = self.peek()
        if tok.kind == "SYM" and tok.value == "-":
            self.advance()
            return Neg(self.parse_factor(False), tok.span)
        atom = self.parse_atom(allow_tuple)
        if self.at_sym("^"):
            caret = self.advance()
            exp = self.expect_int()
            return Pow(atom, exp, caret.span)
        return atom

    def parse_atom(self, allow_tuple: bool) -> Expr:
        tok = self.peek()
        if tok.kind == "INT":
            self.advance()
            return Num(int(tok.value), tok.span)
        if tok.kind == "NAME":
            self.advance()
            return Name(tok.value, tok.span)
        if tok.kind == "SYM" and tok.value == "(":
            self.advance()
            first = self.parse_expr()
            if self.at_sym(",") and allow_tuple:
                items = [first]
                while self.at_sym(","):
                    self.advance()
                    items.append(self.parse_expr())
                self.expect_sym(")")
                return TupleExpr(tuple(items), tok.span)
            self.expect_sym(")")
            return first
        raise _ParseError(
            tok.span,
            f"expected a polynomial expression, found {tok.value or 'end of input'!r}",
        )


def parse(source: str) -> ParseResult:
    """Parse; diagnostics carry source spans, recovery continues at ';'."""
    try:
        tokens = tokenize(source)
    except LexError as err:
        return ParseResult(
            Script(()), [Diagnostic("error", err.span, err.message)]
        )
    parser = Parser(tokens)
    script = parser.parse_script()
    return ParseResult(script, parser.diagnostics)


# ---------------------------------------------------------------------------
# canonical renderer (round-trips through parse)
# ---------------------------------------------------------------------------


def render_expr(e: Expr) -> str:
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Name):
        return e.ident
    if isinstance(e, Neg):
        return f"-{_wrap(e.operand)}"
    if isinstance(e, Pow):
        return f"{_wrap(e.base)}^{e.exponent}"
    if isinstance(e, BinOp):
        if e.op in ("+", "-"):
            return f"{render_expr(e.left)} {e.op} {render_expr(e.right)}"
        return f"{_wrap(e.left)}{e.op}{_wrap(e.right)}"
    if isinstance(e, TupleExpr):
        return "(" + ", ".join(render_expr(x) for x in e.items) + ")"
    raise TypeError(f"unknown expression node {e!r}")


def _wrap(e: Expr) -> str:
    if isinstance(e, (BinOp, Neg)):
        return f"({render_expr(e)})"
    return render_expr(e)


def _render_fraction(item) -> str:
    num, den = item
    if den is None:
        return render_expr(num)
    return f"{_wrap(num)}/{_wrap(den)}"


def render_statement(stmt: Statement) -> str:
    if isinstance(stmt, RingDecl):
        base = (
            f"ring {stmt.name} = {stmt.field_spec.render()}"
            f"[{','.join(stmt.variables)}]"
        )
        if stmt.order != "grevlex":
            base += f" with order {stmt.order}"
        return base + ";"
    if isinstance(stmt, PolyDecl):
        return f"poly {stmt.name} = {render_expr(stmt.expr)};"
    if isinstance(stmt, IdealDecl):
        return (
            f"ideal {stmt.name} = ("
            + ", ".join(render_expr(e) for e in stmt.exprs)
            + ");"
        )
    if isinstance(stmt, FracDecl):
        return (
            f"frac {stmt.name} = ("
            + ", ".join(_render_fraction(item) for item in stmt.items)
            + ");"
        )
    if isinstance(stmt, CentreDecl):
        return (
            f"centre {stmt.name} = ({render_expr(stmt.ideal)}, "
            f"{render_expr(stmt.f_expr)});"
        )
    if isinstance(stmt, AtlasDecl):
        lines = [f"atlas {stmt.name} = {{"]
        for chart in stmt.charts:
            lines.append(
                f"  chart {chart.field_spec.render()}"
                f"[{','.join(chart.variables)}];"
            )
        for ov in stmt.overlaps:
            lines.append(
                f"  overlap {ov.i} {ov.j}: g = {render_expr(ov.g_expr)};"
            )
            for im in ov.images:
                rhs = render_expr(im.num)
                if im.den is not None:
                    rhs = f"{_wrap(im.num)}/{_wrap(im.den)}"
                lines.append(f"  {im.variable} -> {rhs};")
        lines.append("};")
        return "\n".join(lines)
    if isinstance(stmt, DivisorDecl):
        return (
            f"divisor {stmt.name} on {stmt.atlas} = ("
            + ", ".join(render_expr(e) for e in stmt.equations)
            + ");"
        )
    if isinstance(stmt, SheafDecl):
        parts = [
            "(" + ", ".join(render_expr(e) for e in ideal) + ")"
            for ideal in stmt.ideals
        ]
        return f"sheaf {stmt.name} on {stmt.atlas} = (" + ", ".join(parts) + ");"
    if isinstance(stmt, ShowStmt):
        return (
            f"show {stmt.command}("
            + ", ".join(render_expr(a) for a in stmt.args)
            + ");"
        )
    raise TypeError(f"unknown statement {stmt!r}")


def render_script(script: Script) -> str:
    return "\n".join(render_statement(s) for s in script.statements) + "\n"
