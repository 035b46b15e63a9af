"""
Input language: ring and object declarations plus one check command.

    ring W(1) over QZ;
    module M = coker [[z*d1 - 1]];
    lattice L = M;
    complex C = [1, 1] with [[z]];
    check M holonomic-hat

Elements use x1..xn, d1..dn, z (in ring QZ), integers, + - * ^ and
division by scalar subexpressions; # starts a comment.  Every expression
is normal-ordered while parsing, so printing and reparsing an element is
the identity on normal forms.
"""

from fractions import Fraction

from .errors import ParseError, RingMismatch, UndeclaredName
from .weyl import QQ, QZ, WeylAlgebra

SUBCOMMANDS = (
    "gb", "nf", "dim", "grade", "holonomic", "ext", "charcycle", "dual",
    "reduce", "holonomic-hat", "good-lattice", "compare-lattices",
    "kunneth", "derham", "chi", "euler-check",
)

_PUNCT = "()[]{},;=+-*/^"


class Token:
    __slots__ = ("kind", "value", "line", "col")

    def __init__(self, kind, value, line, col):
        self.kind = kind
        self.value = value
        self.line = line
        self.col = col

    def __repr__(self):
        return "Token(%s, %r)" % (self.kind, self.value)


def tokenize(source):
    tokens = []
    line = 1
    col = 1
    i = 0
    size = len(source)
    while i < size:
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
            while i < size and source[i] != "\n":
                i += 1
            continue
        if (source[i:i + 2] == "--" and i + 2 < size
                and source[i + 2].isalpha()):
            j = i + 2
            while j < size and (source[j].isalnum() or source[j] == "-"):
                j += 1
            name = source[i + 2:j]
            if not name:
                raise ParseError("dangling '--'", line, col)
            tokens.append(Token("flag", name, line, col))
            col += j - i
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < size and source[j].isdigit():
                j += 1
            tokens.append(Token("int", int(source[i:j]), line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < size and (source[j].isalnum() or source[j] == "_"):
                j += 1
            tokens.append(Token("name", source[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch in _PUNCT:
            tokens.append(Token("punct", ch, line, col))
            i += 1
            col += 1
            continue
        raise ParseError("unexpected character %r" % ch, line, col)
    tokens.append(Token("end", None, line, col))
    return tokens


class Session:
    """Declarations plus at most one command, ready for dispatch."""

    __slots__ = ("n", "ring", "modules", "lattices", "complexes", "command")

    def __init__(self):
        self.n = None
        self.ring = None
        self.modules = {}
        self.lattices = {}
        self.complexes = {}
        self.command = None


class _Parser:
    MAX_DEPTH = 64

    def __init__(self, source):
        self.tokens = tokenize(source)
        self.pos = 0
        self.session = Session()
        self.algebra = None
        self.depth = 0

    # --- token plumbing

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        if tok.kind != "end":
            self.pos += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, tok.line, tok.col)

    def expect_punct(self, ch):
        tok = self.next()
        if tok.kind != "punct" or tok.value != ch:
            self.fail("expected %r, found %r" % (ch, tok.value), tok)
        return tok

    def expect_name(self, value=None):
        tok = self.next()
        if tok.kind != "name":
            self.fail("expected a name, found %r" % (tok.value,), tok)
        if value is not None and tok.value != value:
            self.fail("expected %r, found %r" % (value, tok.value), tok)
        return tok

    def expect_int(self):
        tok = self.next()
        if tok.kind != "int":
            self.fail("expected an integer, found %r" % (tok.value,), tok)
        return tok

    def at_punct(self, ch):
        tok = self.peek()
        return tok.kind == "punct" and tok.value == ch

    def eat_punct(self, ch):
        if self.at_punct(ch):
            self.next()
            return True
        return False

    # --- grammar

    def parse(self):
        while True:
            tok = self.peek()
            if tok.kind == "end":
                break
            if tok.kind != "name":
                self.fail("expected a declaration or check, found %r"
                          % (tok.value,), tok)
            if tok.value == "ring":
                self.ring_decl()
            elif tok.value == "module":
                self.module_decl()
            elif tok.value == "lattice":
                self.lattice_decl()
            elif tok.value == "complex":
                self.complex_decl()
            elif tok.value == "check":
                self.check_command()
            else:
                self.fail("unknown statement %r" % tok.value, tok)
        return self.session

    def ring_decl(self):
        self.expect_name("ring")
        if self.session.ring is not None:
            self.fail("ring already declared")
        self.expect_name("W")
        self.expect_punct("(")
        ntok = self.expect_int()
        if not 1 <= ntok.value <= 8:
            self.fail("number of variables must be between 1 and 8", ntok)
        self.expect_punct(")")
        self.expect_name("over")
        rtok = self.expect_name()
        if rtok.value not in ("QQ", "QZ"):
            self.fail("ring must be QQ or QZ", rtok)
        self.expect_punct(";")
        self.session.n = ntok.value
        self.session.ring = QQ if rtok.value == "QQ" else QZ
        self.algebra = WeylAlgebra(self.session.n, self.session.ring)

    def require_ring(self, tok):
        if self.session.ring is None:
            self.fail("ring declaration required first", tok)

    def fresh_name(self):
        tok = self.expect_name()
        s = self.session
        if tok.value in s.modules or tok.value in s.lattices \
                or tok.value in s.complexes:
            self.fail("name %r already declared" % tok.value, tok)
        if tok.value in ("ring", "module", "lattice", "complex", "check",
                         "coker", "over", "with", "z", "W"):
            self.fail("reserved word %r cannot name an object" % tok.value,
                      tok)
        if tok.value[0] in ("x", "d") and tok.value[1:].isdigit():
            self.fail("%r collides with a variable name" % tok.value, tok)
        return tok.value

    def module_decl(self):
        tok = self.expect_name("module")
        self.require_ring(tok)
        name = self.fresh_name()
        self.expect_punct("=")
        self.expect_name("coker")
        matrix = self.matrix()
        self.expect_punct(";")
        self.session.modules[name] = matrix

    def lattice_decl(self):
        tok = self.expect_name("lattice")
        self.require_ring(tok)
        name = self.fresh_name()
        self.expect_punct("=")
        base = self.expect_name()
        if base.value not in self.session.modules:
            raise UndeclaredName("no module named %r" % base.value,
                                 base.line, base.col)
        gens = None
        if self.peek().kind == "name" and self.peek().value == "with":
            self.next()
            gens = self.matrix()
        self.expect_punct(";")
        self.session.lattices[name] = (base.value, gens)

    def complex_decl(self):
        tok = self.expect_name("complex")
        self.require_ring(tok)
        name = self.fresh_name()
        self.expect_punct("=")
        self.expect_punct("[")
        ranks = []
        if not self.at_punct("]"):
            while True:
                ranks.append(self.expect_int().value)
                if not self.eat_punct(","):
                    break
        self.expect_punct("]")
        matrices = []
        if self.peek().kind == "name" and self.peek().value == "with":
            self.next()
            while self.at_punct("["):
                matrices.append(self.scalar_matrix())
        self.expect_punct(";")
        self.session.complexes[name] = (ranks, matrices)

    def check_command(self):
        tok = self.expect_name("check")
        self.require_ring(tok)
        if self.session.command is not None:
            self.fail("only one check per input", tok)
        target = self.expect_name()
        s = self.session
        if target.value not in s.modules and target.value not in s.lattices \
                and target.value not in s.complexes:
            raise UndeclaredName("no object named %r" % target.value,
                                 target.line, target.col)
        sub = self.subcommand_name()
        args = []
        flags = {}
        while True:
            tok = self.peek()
            if tok.kind == "end" or (tok.kind == "punct" and tok.value == ";"):
                self.eat_punct(";")
                break
            if tok.kind == "flag":
                self.next()
                if tok.value == "stats":
                    flags["stats"] = True
                elif tok.value in ("max-degree", "zpower"):
                    flags[tok.value] = self.expect_int().value
                else:
                    self.fail("unknown flag --%s" % tok.value, tok)
                continue
            if tok.kind == "int":
                args.append(self.next().value)
                continue
            if tok.kind == "name" and (tok.value in s.modules
                                       or tok.value in s.lattices):
                args.append(self.next().value)
                continue
            # anything else is an element argument (for nf)
            args.append(self.element_argument())
        self.session.command = {"target": target.value, "subcommand": sub,
                                "args": args, "flags": flags}

    def subcommand_name(self):
        tok = self.expect_name()
        name = tok.value
        while self.at_punct("-"):
            nxt = self.tokens[self.pos + 1]
            if nxt.kind != "name":
                break
            joined = name + "-" + nxt.value
            if not any(s == joined or s.startswith(joined + "-")
                       for s in SUBCOMMANDS):
                break
            self.next()
            self.next()
            name = joined
        if name not in SUBCOMMANDS:
            self.fail("unknown subcommand %r" % name, tok)
        return name

    def element_argument(self):
        if self.at_punct("["):
            return self.row()
        return [self.element()]

    # --- matrices and elements

    def matrix(self):
        self.expect_punct("[")
        rows = []
        if not self.at_punct("]"):
            while True:
                rows.append(self.row())
                if not self.eat_punct(","):
                    break
        self.expect_punct("]")
        width = None
        for row in rows:
            if not row:
                continue
            if width is None:
                width = len(row)
            elif len(row) != width:
                self.fail("ragged matrix rows")
        return rows

    def row(self):
        self.expect_punct("[")
        entries = []
        if not self.at_punct("]"):
            while True:
                entries.append(self.element())
                if not self.eat_punct(","):
                    break
        self.expect_punct("]")
        return entries

    def scalar_matrix(self):
        tok = self.peek()
        rows = self.matrix()
        out = []
        for row in rows:
            orow = []
            for w in row:
                if w.is_zero():
                    orow.append(Fraction(0))
                elif not _is_scalar(w):
                    self.fail("complex entries must be scalars", tok)
                else:
                    orow.append(_scalar_of(self.algebra, w))
            out.append(orow)
        return out

    def element(self):
        self.depth += 1
        if self.depth > self.MAX_DEPTH:
            self.fail("expression too deeply nested")
        try:
            u = self.term()
            while True:
                if self.at_punct("+"):
                    self.next()
                    u = u + self.term()
                elif self.at_punct("-"):
                    self.next()
                    u = u - self.term()
                else:
                    return u
        finally:
            self.depth -= 1

    def term(self):
        u = self.factor()
        while True:
            if self.at_punct("*"):
                self.next()
                u = u * self.factor()
            elif self.at_punct("/"):
                tok = self.next()
                v = self.factor()
                if v.is_zero():
                    self.fail("division by zero", tok)
                if not _is_scalar(v):
                    self.fail("division only by scalar subexpressions", tok)
                c = _scalar_of(self.algebra, v)
                u = u.scale(1 / c if isinstance(c, Fraction) else c.inv())
            else:
                return u

    def factor(self):
        if self.at_punct("-"):
            self.next()
            return self.factor().scale(Fraction(-1))
        u = self.atom()
        while self.at_punct("^"):
            self.next()
            etok = self.expect_int()
            if etok.value > 64:
                self.fail("exponent too large", etok)
            u = u ** etok.value
        return u

    def atom(self):
        tok = self.next()
        W = self.algebra
        if tok.kind == "int":
            return W.scalar(Fraction(tok.value))
        if tok.kind == "punct" and tok.value == "(":
            u = self.element()
            self.expect_punct(")")
            return u
        if tok.kind == "name":
            if tok.value == "z":
                if self.session.ring != QZ:
                    raise RingMismatch("z needs ring QZ", tok.line, tok.col)
                return W.z()
            kind = tok.value[0]
            rest = tok.value[1:]
            if kind in ("x", "d") and rest.isdigit():
                i = int(rest)
                if not 1 <= i <= self.session.n:
                    self.fail("variable %s outside W(%d)"
                              % (tok.value, self.session.n), tok)
                return W.x(i) if kind == "x" else W.d(i)
        self.fail("expected an element, found %r" % (tok.value,), tok)


def _zero_key(w):
    zero = (0,) * w.n
    return (zero, zero, 0)


def _is_scalar(w):
    if not w.terms:
        return False
    return set(w.terms) == {_zero_key(w)}


def _scalar_of(W, w):
    return w.terms[_zero_key(w)]


def parse(source):
    """Parse a full session; raises ParseError subclasses with positions."""
    return _Parser(source).parse()
