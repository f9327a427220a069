"""Exact arithmetic for the coefficient field: rational functions in one
variable q whose coefficients are Gaussian rationals (Fraction + Fraction*i).

Everything downstream (relation extraction, rewriting, pairings, module
decompositions) runs over this field, so there is no floating point anywhere
and every reported identity is exact.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable, Mapping, Sequence, TypeVar


class PoleError(ArithmeticError):
    """Raised when a rational function is evaluated at a zero of its
    denominator (a genuine pole: numerator and denominator are coprime)."""


_ZERO_F = Fraction(0)
_ONE_F = Fraction(1)


class QI:
    """A Gaussian rational a + b*i with exact Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("QI is immutable")

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, QI):
            return other
        if isinstance(other, (int, Fraction)):
            return QI(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QI(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return QI(-self.re, -self.im)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QI(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QI(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QI(self.re * o.re - self.im * o.im,
                  self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def inv(self):
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return QI(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def conjugate(self):
        return QI(self.re, -self.im)

    # -- comparisons ------------------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    # -- display ----------------------------------------------------------

    def __str__(self):
        re_, im_ = self.re, self.im
        if im_ == 0:
            return str(re_)
        if im_ == 1:
            im_s = "i"
        elif im_ == -1:
            im_s = "-i"
        else:
            im_s = f"{im_}*i"
        if re_ == 0:
            return im_s
        sign = "+" if im_ > 0 else "-"
        mag = im_s.lstrip("-")
        return f"{re_}{sign}{mag}"

    def __repr__(self):
        return f"QI({self.re!r}, {self.im!r})"


QI_ZERO = QI(0)
QI_ONE = QI(1)
QI_I = QI(0, 1)


# ---------------------------------------------------------------------------
# Dense polynomials in q over QI, represented as tuples with no trailing zeros.
# ---------------------------------------------------------------------------

Poly = tuple  # tuple[QI, ...]

P_ZERO: Poly = ()
P_ONE: Poly = (QI_ONE,)


def ptrim(coeffs) -> Poly:
    c = list(coeffs)
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def padd(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for k, cb in enumerate(b):
        out[k] = out[k] + cb
    return ptrim(out)


def pneg(a: Poly) -> Poly:
    return tuple(-c for c in a)


def psub(a: Poly, b: Poly) -> Poly:
    return padd(a, pneg(b))


def pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return P_ZERO
    out = [QI_ZERO] * (len(a) + len(b) - 1)
    for j, ca in enumerate(a):
        if not ca:
            continue
        for k, cb in enumerate(b):
            if cb:
                out[j + k] = out[j + k] + ca * cb
    return ptrim(out)


def pscale(a: Poly, c: QI) -> Poly:
    if not c:
        return P_ZERO
    return tuple(x * c for x in a)


def pdivmod(a: Poly, b: Poly):
    """Euclidean division of polynomials over the field QI."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return P_ZERO, a
    rem = list(a)
    quot = [QI_ZERO] * (len(a) - len(b) + 1)
    inv_lead = b[-1].inv()
    for shift in range(len(a) - len(b), -1, -1):
        c = rem[shift + len(b) - 1] * inv_lead
        if c:
            quot[shift] = c
            for k, cb in enumerate(b):
                rem[shift + k] = rem[shift + k] - c * cb
    return ptrim(quot), ptrim(rem)


def pgcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, pdivmod(a, b)[1]
    if not a:
        return P_ZERO
    return pscale(a, a[-1].inv())  # monic


def peval(a: Poly, x: QI) -> QI:
    acc = QI_ZERO
    for c in reversed(a):
        acc = acc * x + c
    return acc


def poly_str(p: Poly, var: str = "q"):
    """Render a polynomial; returns (text, number_of_terms)."""
    if not p:
        return "0", 1
    parts = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if not c:
            continue
        if c.re and c.im:
            sign, body = "+", f"({c})"
        elif c.im:
            sign = "+" if c.im > 0 else "-"
            m = abs(c.im)
            body = "i" if m == 1 else f"{m}*i"
        else:
            sign = "+" if c.re > 0 else "-"
            m = abs(c.re)
            body = str(m)
        if k > 0:
            qpow = var if k == 1 else f"{var}^{k}"
            body = qpow if body == "1" else f"{body}*{qpow}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    text = (first_body if first_sign == "+" else "-" + first_body)
    for sign, body in parts[1:]:
        text += sign + body
    return text, len(parts)


# ---------------------------------------------------------------------------
# Scalar: a reduced fraction of two such polynomials, denominator monic.
# ---------------------------------------------------------------------------

class Scalar:
    """An element of Q(i)(q), kept in canonical form: numerator and
    denominator coprime, denominator monic.  Canonical form makes equality
    a tuple comparison and guarantees that a vanishing denominator at a
    specialization point is a true pole."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=P_ONE, _normalized=False):
        if _normalized:
            object.__setattr__(self, "num", num)
            object.__setattr__(self, "den", den)
            return
        num = ptrim(num)
        den = ptrim(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            den = P_ONE
        else:
            g = pgcd(num, den)
            if len(g) > 1:
                num = pdivmod(num, g)[0]
                den = pdivmod(den, g)[0]
            lead = den[-1]
            if lead != QI_ONE:
                w = lead.inv()
                num = pscale(num, w)
                den = pscale(den, w)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- constructors -----------------------------------------------------

    @staticmethod
    def from_int(n) -> "Scalar":
        return Scalar((QI(n),) if n else P_ZERO, P_ONE, _normalized=True)

    @staticmethod
    def from_qi(z: QI) -> "Scalar":
        return Scalar((z,) if z else P_ZERO, P_ONE, _normalized=True)

    # -- predicates -------------------------------------------------------

    def __bool__(self):
        return bool(self.num)

    def is_one(self):
        return self.num == P_ONE and self.den == P_ONE

    def constant_value(self):
        """The QI value if this scalar does not involve q, else None."""
        if len(self.num) <= 1 and self.den == P_ONE:
            return self.num[0] if self.num else QI_ZERO
        return None

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar.from_int(other) if isinstance(other, int) else Scalar.from_qi(QI(other))
        if isinstance(other, QI):
            return Scalar.from_qi(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == P_ONE and o.den == P_ONE:
            return Scalar(padd(self.num, o.num), P_ONE, _normalized=True)
        return Scalar(padd(pmul(self.num, o.den), pmul(o.num, self.den)),
                      pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(pneg(self.num), self.den, _normalized=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == P_ONE and o.den == P_ONE:
            return Scalar(pmul(self.num, o.num), P_ONE, _normalized=True)
        return Scalar(pmul(self.num, o.num), pmul(self.den, o.den))

    __rmul__ = __mul__

    def inv(self) -> "Scalar":
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return Scalar(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    # -- comparisons ------------------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    # -- specialization ---------------------------------------------------

    def specialize(self, q0) -> QI:
        """Evaluate at q = q0 exactly.  Raises PoleError at a pole."""
        if not isinstance(q0, QI):
            q0 = QI(q0)
        d = peval(self.den, q0)
        if not d:
            # num, den coprime => den(q0)=0 means (q-q0) does not divide num
            raise PoleError(f"pole at q = {q0}")
        return peval(self.num, q0) / d

    # -- display ----------------------------------------------------------

    def __str__(self):
        num_s, num_terms = poly_str(self.num)
        if self.den == P_ONE:
            return num_s
        den_s, den_terms = poly_str(self.den)
        if num_terms > 1:
            num_s = f"({num_s})"
        if den_terms > 1 or "*" in den_s or den_s.startswith("-"):
            den_s = f"({den_s})"
        return f"{num_s}/{den_s}"

    def __repr__(self):
        return f"<Scalar {self}>"


ZERO = Scalar.from_int(0)
ONE = Scalar.from_int(1)
I = Scalar.from_qi(QI_I)
Q = Scalar((QI_ZERO, QI_ONE), P_ONE, _normalized=True)

HALF = Scalar.from_qi(QI(Fraction(1, 2)))


def integer(n: int) -> Scalar:
    return Scalar.from_int(n)


# ---------------------------------------------------------------------------
# A small expression parser, generic over the target ring.
#
# Grammar:  expr   := term (('+'|'-') term)*
#           term   := unary (('*'|'/') unary)*
#           unary  := ('+'|'-')* power
#           power  := primary (('^'|'**') ('+'|'-')? INT)?
#           primary:= INT | NAME | '(' expr ')'
#
# NAME is looked up in the caller's atom table, so the same parser serves the
# commutative scalars ({"q": Q, "i": I}) and noncommutative words.
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(\*\*|\d+|[A-Za-z_][A-Za-z0-9_]*|[()+\-*/^])")

T = TypeVar("T")


def _tokenize(text: str):
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValueError(f"cannot tokenize {text[pos:]!r}")
            break
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, atoms, from_int):
        self.toks = tokens
        self.k = 0
        self.atoms = atoms
        self.from_int = from_int

    def peek(self):
        return self.toks[self.k] if self.k < len(self.toks) else None

    def next(self):
        t = self.peek()
        self.k += 1
        return t

    def expr(self):
        v = self.term()
        while self.peek() in ("+", "-"):
            op = self.next()
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while self.peek() in ("*", "/"):
            op = self.next()
            w = self.unary()
            v = v * w if op == "*" else v / w
        return v

    def unary(self):
        neg = False
        while self.peek() in ("+", "-"):
            if self.next() == "-":
                neg = not neg
        v = self.power()
        return -v if neg else v

    def power(self):
        v = self.primary()
        if self.peek() in ("^", "**"):
            self.next()
            sign = 1
            while self.peek() in ("+", "-"):
                if self.next() == "-":
                    sign = -sign
            t = self.next()
            if t is None or not t.isdigit():
                raise ValueError("exponent must be an integer")
            v = v ** (sign * int(t))
        return v

    def primary(self):
        t = self.next()
        if t is None:
            raise ValueError("unexpected end of expression")
        if t == "(":
            v = self.expr()
            if self.next() != ")":
                raise ValueError("missing closing parenthesis")
            return v
        if t.isdigit():
            return self.from_int(int(t))
        if t in self.atoms:
            return self.atoms[t]
        raise ValueError(f"unknown symbol {t!r}; expected one of "
                         f"{sorted(self.atoms)}")


def parse_expr(text: str, atoms: Mapping[str, T], from_int: Callable[[int], T]) -> T:
    """Parse an arithmetic expression into whatever ring the atoms live in."""
    p = _Parser(_tokenize(text), atoms, from_int)
    v = p.expr()
    if p.peek() is not None:
        raise ValueError(f"unexpected token {p.peek()!r}")
    return v


def scalar(text: str) -> Scalar:
    """Parse a scalar like '(q^2-1)/(q+1)' or '1/2*i'."""
    return parse_expr(text, {"q": Q, "i": I}, Scalar.from_int)
