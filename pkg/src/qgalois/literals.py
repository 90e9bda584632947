"""
Element literals: a small recursive-descent parser and the canonical printer.

Grammar (whitespace is ignored)::

    tensor   := ['+'|'-'] tterm (('+'|'-') tterm)*
    tterm    := product (SEP product)*          one product per leg
    product  := unary (('*'|'/') unary)*
    unary    := '-' unary | power
    power    := atom ['^' exponent]
    exponent := ['-'] INT | '(' ['-'] INT ')' | '{' ['-'] INT '}'
    atom     := INT | 'z' | generator | '(' sum ')'
    sum      := ['+'|'-'] product (('+'|'-') product)*

SEP is one of ``(x)``, ``@`` or ``⊗``.  ``z`` denotes the primitive root
zeta_n, not lambda.  The printer writes g1 with an explicit exponent
(``x^1``), g2 bare at exponent one, and sorts terms lexicographically.
"""

from __future__ import annotations

from .errors import ParseError
from .qalgebra import Element, Presentation, Tensor, as_tensor, tensor
from .scalar import CyclotomicScalar, format_scalar

_SEP = "SEP"


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks: list[tuple[str, str, int]] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("INT", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(("NAME", text[i:j], i))
            i = j
            continue
        if ch in "@⊗":
            toks.append((_SEP, ch, i))
            i += 1
            continue
        if ch == "(":
            # "(x)" right after an operand is the tensor separator
            j = i + 1
            while j < n and text[j].isspace():
                j += 1
            if j < n and text[j] == "x":
                k = j + 1
                while k < n and text[k].isspace():
                    k += 1
                if k < n and text[k] == ")" and toks and (
                        toks[-1][0] in ("INT", "NAME") or toks[-1][1] in (")", "}")):
                    toks.append((_SEP, "(x)", i))
                    i = k + 1
                    continue
        if ch in "+-*/^(){}":
            toks.append(("OP", ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i, text)
    toks.append(("END", "", n))
    return toks


class _Parser:
    def __init__(self, text: str, legs: tuple[Presentation, ...]):
        self.text = text
        self.legs = legs
        self.field = legs[0].field
        self.toks = _tokenize(text)
        self.i = 0

    # -- token helpers ----------------------------------------------------
    def peek(self):
        return self.toks[self.i]

    def at(self, value: str) -> bool:
        kind, v, _ = self.toks[self.i]
        return kind == "OP" and v == value

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, v, pos = self.peek()
        if kind != "OP" or v != value:
            raise ParseError(f"expected {value!r}", pos, self.text)
        return self.take()

    def error(self, msg: str):
        raise ParseError(msg, self.peek()[2], self.text)

    # -- value helpers ----------------------------------------------------
    def lift(self, v, leg: int) -> Element:
        if isinstance(v, Element):
            return v
        return self.legs[leg].scalar(v)

    # -- grammar ----------------------------------------------------------
    def parse(self) -> Tensor:
        sign = 1
        if self.at("+") or self.at("-"):
            sign = -1 if self.take()[1] == "-" else 1
        total = self.tterm().scale(sign)
        while self.at("+") or self.at("-"):
            sign = -1 if self.take()[1] == "-" else 1
            total = total + self.tterm().scale(sign)
        kind, v, pos = self.peek()
        if kind != "END":
            raise ParseError(f"unexpected {v!r}", pos, self.text)
        return total

    def tterm(self) -> Tensor:
        start = self.peek()[2]
        factors = [self.lift(self.product(0), 0)]
        while self.peek()[0] == _SEP:
            pos = self.take()[2]
            leg = len(factors)
            if leg >= len(self.legs):
                raise ParseError(f"too many tensor factors (expected {len(self.legs)})", pos, self.text)
            factors.append(self.lift(self.product(leg), leg))
        if len(factors) != len(self.legs):
            raise ParseError(f"expected {len(self.legs)} tensor factors, got {len(factors)}",
                             start, self.text)
        if len(factors) == 1:
            return as_tensor(factors[0])
        return tensor(*factors)

    def sum(self, leg: int):
        sign = 1
        if self.at("+") or self.at("-"):
            sign = -1 if self.take()[1] == "-" else 1
        v = self.product(leg) * sign
        while self.at("+") or self.at("-"):
            sign = -1 if self.take()[1] == "-" else 1
            v = self._add(v, self.product(leg) * sign, leg)
        return v

    def _add(self, a, b, leg):
        if isinstance(a, Element) or isinstance(b, Element):
            return self.lift(a, leg) + self.lift(b, leg)
        return a + b

    def product(self, leg: int):
        v = self.unary(leg)
        while self.at("*") or self.at("/"):
            op = self.take()[1]
            pos = self.peek()[2]
            rhs = self.unary(leg)
            if op == "*":
                v = v * rhs
                continue
            if isinstance(rhs, Element):
                if set(rhs.terms) - {(0, 0)}:
                    raise ParseError("division only by nonzero scalars", pos, self.text)
                rhs = rhs.terms.get((0, 0), self.field.zero)
            if not rhs:
                raise ParseError("division by zero", pos, self.text)
            v = v * rhs.inverse()
        return v

    def unary(self, leg: int):
        if self.at("-"):
            self.take()
            return -self.unary(leg)
        if self.at("+"):
            self.take()
            return self.unary(leg)
        return self.power(leg)

    def power(self, leg: int):
        pos = self.peek()[2]
        base = self.atom(leg)
        if self.at("^"):
            self.take()
            e = self.exponent()
            if e < 0:
                if isinstance(base, Element):
                    if not base.is_invertible_monomial():
                        raise ParseError("negative power of a non-invertible element", pos, self.text)
                elif not base:
                    raise ParseError("negative power of zero", pos, self.text)
            base = base ** e
        return base

    def exponent(self) -> int:
        close = None
        if self.at("(") or self.at("{"):
            close = ")" if self.take()[1] == "(" else "}"
        sign = 1
        if self.at("-") or self.at("+"):
            sign = -1 if self.take()[1] == "-" else 1
        kind, v, pos = self.peek()
        if kind != "INT":
            raise ParseError("expected integer exponent", pos, self.text)
        self.take()
        if close:
            self.expect(close)
        return sign * int(v)

    def atom(self, leg: int):
        kind, v, pos = self.peek()
        if kind == "INT":
            self.take()
            return self.field.rational(int(v))
        if kind == "NAME":
            self.take()
            if v == "z":
                return self.field.zeta(1)
            pres = self.legs[leg]
            if v == pres.names[0]:
                return pres.gen1()
            if v == pres.names[1]:
                return pres.gen2()
            raise ParseError(f"unknown generator {v!r}", pos, self.text)
        if kind == "OP" and v == "(":
            self.take()
            inner = self.sum(leg)
            self.expect(")")
            return inner
        if kind == "END":
            raise ParseError("unexpected end of input", pos, self.text)
        raise ParseError(f"unexpected {v!r}", pos, self.text)


def parse_tensor(text: str, legs) -> Tensor:
    """Parse a literal living in the tensor product of ``legs``."""
    if isinstance(legs, Presentation):
        legs = (legs,)
    return _Parser(text, tuple(legs)).parse()


def parse_element(text: str, pres: Presentation) -> Element:
    """Parse a literal into normal form."""
    return parse_tensor(text, (pres,)).to_element()


def parse_scalar(text: str, field_or_pres):
    """Parse a scalar literal such as ``1/2 - z^2``."""
    from .scalar import CyclotomicField
    field = field_or_pres if isinstance(field_or_pres, CyclotomicField) else field_or_pres.field
    pres = Presentation(field.n, 1, 1, names=("g", "h"))
    e = parse_element(text, pres)
    if set(e.terms) - {(0, 0)}:
        raise ParseError("not a scalar literal", 0, text)
    return e.terms.get((0, 0), field.zero)


# -- printing --------------------------------------------------------------------

def monomial_text(pres: Presentation, key) -> str:
    p, q = key
    parts = []
    if p:
        parts.append(f"{pres.names[0]}^{p}")
    if q == 1:
        parts.append(pres.names[1])
    elif q > 1:
        parts.append(f"{pres.names[1]}^{q}")
    return "*".join(parts) if parts else "1"


def _term(coef: CyclotomicScalar, body: str) -> str:
    if body == "1":
        return format_scalar(coef)
    if coef == 1:
        return body
    if coef == -1:
        return "-" + body
    return f"{format_scalar(coef)}*{body}"


def _join(terms: list[str]) -> str:
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


def format_element(e: Element) -> str:
    return _join([_term(c, monomial_text(e.pres, k)) for k, c in e.items()])


def format_tensor(t: Tensor) -> str:
    if len(t.legs) == 1:
        return format_element(t.to_element())
    terms = []
    for k, c in t.items():
        legs = [monomial_text(p, kk) for p, kk in zip(t.legs, k)]
        body = " (x) ".join(legs)
        if legs[0] == "1" and c != 1 and c != -1:
            # the coefficient takes the place of a unit first leg
            terms.append(" (x) ".join([format_scalar(c)] + legs[1:]))
        elif c == 1:
            terms.append(body)
        elif c == -1:
            terms.append("-" + body)
        else:
            terms.append(f"{format_scalar(c)}*{body}")
    return _join(terms)


def format_value(v) -> str:
    """Canonical text for a scalar, Element or Tensor."""
    if isinstance(v, Element):
        return format_element(v)
    if isinstance(v, Tensor):
        return format_tensor(v)
    if isinstance(v, CyclotomicScalar):
        return format_scalar(v)
    return str(v)
