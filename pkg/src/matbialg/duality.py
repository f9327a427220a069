"""Duality brackets between the quotient bialgebras and their tangent algebras.

Each of the three quotients carries a distinguished family of linear
functionals, defined directly on the normal-form basis:

* ``A``  -- reads the exponent off the pure power of the first letter
            (a degree counter on the diagonal string),
* ``B``  -- indicator of words of the shape  (second letter) * (first letter)^k,
* ``C``  -- indicator of words of the shape  (first letter)^k * (third letter),
* ``D``  -- indicator of a single fourth letter (for ``s03``), resp. of
            (first letter)^k * (fourth letter) (for ``s14``/``s14o``),
* ``E``  -- evaluation at the empty word only (``s14``),
* ``K``  -- multiplicative sign character, (-1)^k on (first letter)^k
            and zero off the diagonal string.

Products of functionals are formed by convolution: the product u*v
evaluated on a word f is the sum of u(f_1) v(f_2) over the terms of the
coproduct of f.  This module computes that bracket exactly, verifies
claimed relations and coproducts of the functional algebra against it,
cuts a nine-dimensional subalgebra out of the ``s03`` dual by solving for
structure constants, and runs linear (in)feasibility certificates for
antipode candidates.
"""

from functools import lru_cache

from .scalars import Scalar, ZERO, ONE, integer
from .freealg import NCPoly, ncparse, format_word
from .bialgebra import Presentation, algebra
from .linalg import rank, rref, solve, transpose

_S0 = ZERO
_S1 = ONE
_MINUS1 = integer(-1)


# ---------------------------------------------------------------------------
# word-shape helpers on the normal-form basis (letters at, bt, ct, dt)
# ---------------------------------------------------------------------------

def _apow(w):
    """k if w == at^k (k >= 0), else None."""
    return len(w) if all(x == "at" for x in w) else None


def _is_b_ak(w):
    return bool(w) and w[0] == "bt" and all(x == "at" for x in w[1:])


def _is_ak_b(w):
    return bool(w) and w[-1] == "bt" and all(x == "at" for x in w[:-1])


def _is_ak_c(w):
    return bool(w) and w[-1] == "ct" and all(x == "at" for x in w[:-1])


def _is_ak_d(w):
    return bool(w) and w[-1] == "dt" and all(x == "at" for x in w[:-1])


def _is_b_ak_c(w):
    return (len(w) >= 2 and w[0] == "bt" and w[-1] == "ct"
            and all(x == "at" for x in w[1:-1]))


# ---------------------------------------------------------------------------
# base evaluations of the generating functionals
# ---------------------------------------------------------------------------

def _base_s03(z, w):
    if z == "A":
        k = _apow(w)
        return integer(k) if k else _S0
    if z == "B":
        return _S1 if _is_b_ak(w) else _S0
    if z == "C":
        return _S1 if _is_ak_c(w) else _S0
    if z == "D":
        return _S1 if w == ("dt",) else _S0
    raise KeyError(z)


def _base_s14(z, w):
    if z == "A":
        k = _apow(w)
        return integer(k) if k else _S0
    if z == "B":
        return _S1 if w == ("bt",) else _S0
    if z == "C":
        return _S1 if w == ("ct",) else _S0
    if z == "D":
        return _S1 if _is_ak_d(w) else _S0
    if z == "E":
        return _S1 if not w else _S0
    if z == "K":
        k = _apow(w)
        return _S0 if k is None else (_S1 if k % 2 == 0 else _MINUS1)
    raise KeyError(z)


def _base_s14o(z, w):
    if z == "A":
        k = _apow(w)
        return integer(k) if k else _S0
    if z == "B":
        return _S1 if _is_ak_b(w) else _S0
    if z == "C":
        return _S1 if _is_ak_c(w) else _S0
    if z == "D":
        return _S1 if _is_ak_d(w) else _S0
    if z == "K":
        k = _apow(w)
        return _S0 if k is None else (_S1 if k % 2 == 0 else _MINUS1)
    raise KeyError(z)


DUAL_LETTERS = {
    "s03": ("A", "B", "C", "D"),
    "s14": ("A", "B", "C", "D", "E", "K"),
    "s14o": ("A", "B", "C", "D", "K"),
}

_BASE = {"s03": _base_s03, "s14": _base_s14, "s14o": _base_s14o}

# parse-time abbreviations: the sl(2) ladder elements of the s14o dual
_ALIASES = {
    "s14o": {
        "Xp": lambda: ncparse("D - C", ("C", "D")) / 2,
        "Xm": lambda: ncparse("D + C", ("C", "D")) / 2,
    },
}


class Duality:
    """The bracket between one quotient bialgebra and its functional algebra.

    Functional words are tuples of dual letter names; they multiply by
    convolution against the coproduct of the underlying quotient.  All
    evaluations are exact and memoized.
    """

    def __init__(self, presentation: Presentation, letters, base):
        self.presentation = presentation
        self.letters = tuple(letters)
        self._base = base
        self._pair_cache = {}

    # -- parsing ------------------------------------------------------------

    def parse(self, text):
        """Parse an expression in the dual letters (aliases expanded)."""
        if isinstance(text, NCPoly):
            return text
        aliases = _ALIASES.get(self.presentation.name, {})
        p = ncparse(text, self.letters + tuple(aliases))
        if aliases and any(x in aliases for w in p.terms for x in w):
            images = {x: NCPoly.letter(x) for x in self.letters}
            images.update({x: f() for x, f in aliases.items()})
            p = p.map_letters(images)
        return p

    def base(self, z, w) -> Scalar:
        return self._base(z, tuple(w))

    # -- the bracket --------------------------------------------------------

    def pair_word(self, u, w) -> Scalar:
        """Bracket of a functional word u against a normal word w."""
        u = tuple(u)
        w = tuple(w)
        if not u:
            return self.presentation.counit(w)
        if len(u) == 1:
            return self._base(u[0], w)
        key = (u, w)
        hit = self._pair_cache.get(key)
        if hit is None:
            head, rest = u[0], u[1:]
            total = _S0
            for (f1, f2), c in self.presentation.coproduct_word(w).terms.items():
                v = self._base(head, f1)
                if v:
                    t = self.pair_word(rest, f2)
                    if t:
                        total = total + v * t * c
            self._pair_cache[key] = hit = total
        return hit

    def pair_normal(self, u: NCPoly, w) -> Scalar:
        """Bracket of a parsed functional against one normal word."""
        w = tuple(w)
        total = _S0
        for uw, uc in u.terms.items():
            v = self.pair_word(uw, w)
            if v:
                total = total + uc * v
        return total

    def pair(self, u, f) -> Scalar:
        """Bracket of a functional (word/str/NCPoly) against an algebra
        element (word/str/NCPoly); the algebra side is reduced first."""
        if isinstance(u, str):
            u = self.parse(u)
        if not isinstance(u, NCPoly):
            u = NCPoly.word(tuple(u))
        if not isinstance(f, NCPoly) and not isinstance(f, str):
            f = NCPoly.word(tuple(f))
        f = self.presentation.normal_form(f)
        total = _S0
        for fw, fc in f.terms.items():
            v = self.pair_normal(u, fw)
            if v:
                total = total + fc * v
        return total

    def counit_dual(self, u) -> Scalar:
        """Value of a functional on the unit word."""
        if isinstance(u, str):
            u = self.parse(u)
        return self.pair_normal(u, ())

    # -- enumeration --------------------------------------------------------

    def words(self, maxdeg, mindeg=0):
        for d in range(mindeg, maxdeg + 1):
            for w in self.presentation.basis(d):
                yield w

    def profile(self, u, maxdeg):
        """All nonzero brackets of u against basis words of degree <= maxdeg."""
        u = self.parse(u) if isinstance(u, str) else u
        out = {}
        for w in self.words(maxdeg):
            v = self.pair_normal(u, w)
            if v:
                out[w] = v
        return out

    # -- verification -------------------------------------------------------

    def verify_relation(self, lhs, rhs, maxdeg):
        """Check lhs == rhs as functionals on all words of degree <= maxdeg.

        Returns (ok, witness): witness is the first word separating the two
        sides, or None.
        """
        diff = self.parse(lhs) - self.parse(rhs)
        for w in self.words(maxdeg):
            if self.pair_normal(diff, w):
                return False, w
        return True, None

    def verify_coproduct(self, z, claimed, maxdeg):
        """Check that the claimed coproduct of the functional z reproduces
        z on products:  sum of u(f) v(g) over claimed terms u (x) v must
        equal z(f g) for all basis words with deg f + deg g <= maxdeg.

        `claimed` is a list of (left, right) functional expressions.
        Returns (ok, witness_pair).
        """
        got = self.verify_coproducts([("", z, claimed, None)], maxdeg)[0]
        return got.ok, got.witness

    def verify_coproducts(self, claims, maxdeg):
        """Bulk form of verify_coproduct: one pass over the word pairs for
        several claims.  `claims` is a list of (tag, z, terms, counit_value)
        tuples; the counit entry is ignored here."""
        P = self.presentation
        parsed = []
        for tag, z, claimed, _ in claims:
            parsed.append((tag, self.parse(z),
                           [(self.parse(u), self.parse(v)) for u, v in claimed]))
        bad = {}
        for df in range(maxdeg + 1):
            for f in P.basis(df):
                pf = NCPoly.word(f)
                lefts = [[self.pair_normal(u, f) for u, _ in terms]
                         for _, _, terms in parsed]
                for dg in range(maxdeg + 1 - df):
                    for g in P.basis(dg):
                        prod = P.normal_form(pf * NCPoly.word(g))
                        for idx, (tag, z, terms) in enumerate(parsed):
                            if idx in bad:
                                continue
                            got = _S0
                            for lv, (_, v) in zip(lefts[idx], terms):
                                if lv:
                                    rv = self.pair_normal(v, g)
                                    if rv:
                                        got = got + lv * rv
                            want = _S0
                            for w, c in prod.terms.items():
                                t = self.pair_normal(z, w)
                                if t:
                                    want = want + c * t
                            if got != want:
                                bad[idx] = (f, g)
        return [CheckLine(tag, idx not in bad, maxdeg, "coproduct split",
                          bad.get(idx))
                for idx, (tag, _, _) in enumerate(parsed)]

    def casimir_check(self, z, maxdeg):
        """Does z commute with every generating functional (under the
        bracket, up to degree maxdeg)?  Returns (ok, witness)."""
        z = self.parse(z)
        for g in self.letters:
            gp = NCPoly.letter(g)
            ok, w = self.verify_relation(z * gp, gp * z, maxdeg)
            if not ok:
                return False, (g, w)
        return True, None


@lru_cache(maxsize=None)
def duality(name: str) -> Duality:
    if name not in DUAL_LETTERS:
        raise ValueError(f"no functional algebra registered for {name!r}")
    return Duality(algebra(name), DUAL_LETTERS[name], _BASE[name])


# ---------------------------------------------------------------------------
# catalog of verified identities (stable tags; see the project notes for
# the provenance ledger -- tags are deliberately opaque here)
# ---------------------------------------------------------------------------

RELATION_TAGS = {
    "s03": [
        ("s03.rel.a", "A*B", "B*A"),
        ("s03.rel.a", "A*C", "C*A"),
        ("s03.rel.b", "A*D", "D"),
        ("s03.rel.b", "D*A", "D"),
        ("s03.rel.b", "D^3", "D"),
        ("s03.rel.b", "B^2*D", "D"),
        ("s03.rel.b", "D*B^2", "D"),
        ("s03.rel.c", "B*C - C*B", "-2*D"),
        ("s03.rel.d", "D*B", "-B*D"),
        ("s03.rel.d", "D*B", "C*D^2"),
        ("s03.rel.d", "D*B", "D^2*C"),
        ("s03.rel.e", "C*D + D*C", "0"),
        ("s03.rel.f", "B^2 + C^2", "0"),
        ("s03.rel.g", "B^3", "B"),
        ("s03.rel.h", "C^3", "-C"),
        ("s03.rel.i", "B^2*A", "A"),
        ("s03.rel.sq", "B^2*A", "A"),
        ("s03.rel.sq", "B^2*B", "B"),
        ("s03.rel.sq", "B^2*C", "C"),
        ("s03.rel.sq", "B^2*D", "D"),
    ],
    "s14": [
        ("s14.rel.a", "C", "D*B"),
        ("s14.rel.a", "C", "-B*D"),
        ("s14.rel.b", "A*D", "D*A"),
        ("s14.rel.c", "A*B", "B"),
        ("s14.rel.c", "B*A", "B"),
        ("s14.rel.c", "D^2*B", "B"),
        ("s14.rel.c", "B^3", "B"),
        ("s14.rel.d", "E*A", "0"),
        ("s14.rel.d", "A*E", "0"),
        ("s14.rel.d", "E*B", "0"),
        ("s14.rel.d", "B*E", "0"),
        ("s14.rel.d", "E*D", "0"),
        ("s14.rel.d", "D*E", "0"),
        ("s14.rel.e", "E*E", "E"),
    ],
    "s14o": [
        ("s14o.rel.a", "A*B", "B*A"),
        ("s14o.rel.a", "A*C", "C*A"),
        ("s14o.rel.a", "A*D", "D*A"),
        ("s14o.rel.b", "B*C - C*B", "-2*D"),
        ("s14o.rel.b", "B*D - D*B", "-2*C"),
        ("s14o.rel.b", "C*D - D*C", "-2*B"),
        ("s14o.rel.k", "K*A", "A*K"),
        ("s14o.rel.k", "K*B", "B*K"),
        ("s14o.rel.k", "K*C", "C*K"),
        ("s14o.rel.k", "K*D", "D*K"),
        ("s14o.rel.k", "K*K", "1"),
        ("s14o.sl2.a", "B*Xp - Xp*B", "2*Xp"),
        ("s14o.sl2.a", "B*Xm - Xm*B", "-2*Xm"),
        ("s14o.sl2.b", "Xp*Xm - Xm*Xp", "B"),
    ],
}

COPRODUCT_TAGS = {
    "s03": [
        ("s03.cop.A", "A", [("A", "1"), ("1", "A")], "0"),
        ("s03.cop.B", "B", [("B", "1"), ("1 - B^2", "B")], "0"),
        ("s03.cop.C", "C", [("C", "1 - B^2"), ("1", "C")], "0"),
        ("s03.cop.D", "D", [("D", "1 - B^2"), ("1 - B^2", "D")], "0"),
    ],
    "s14": [
        ("s14.cop.A", "A", [("A", "1"), ("1", "A")], "0"),
        ("s14.cop.B", "B", [("B", "E"), ("E", "B")], "0"),
        ("s14.cop.D", "D", [("D", "K"), ("1", "D")], "0"),
        ("s14.cop.E", "E", [("E", "E")], "1"),
        ("s14.cop.K", "K", [("K", "K")], "1"),
    ],
    "s14o": [
        ("s14o.cop.A", "A", [("A", "1"), ("1", "A")], "0"),
        ("s14o.cop.B", "B", [("B", "1"), ("1", "B")], "0"),
        ("s14o.cop.C", "C", [("C", "K"), ("1", "C")], "0"),
        ("s14o.cop.D", "D", [("D", "K"), ("1", "D")], "0"),
        ("s14o.cop.K", "K", [("K", "K")], "1"),
        ("s14o.cop.Xp", "Xp", [("Xp", "K"), ("1", "Xp")], "0"),
        ("s14o.cop.Xm", "Xm", [("Xm", "K"), ("1", "Xm")], "0"),
    ],
}

CASIMIR_TAGS = {
    "s03": [("s03.cas.A", "A"), ("s03.cas.B2", "B^2"), ("s03.cas.D2", "D^2")],
    "s14": [("s14.cas.A", "A"), ("s14.cas.B2", "B^2"), ("s14.cas.D2", "D^2")],
    "s14o": [("s14o.cas.A", "A")],
}


# expected bracket profiles: tag -> list of (functional expr, pattern)
# where pattern(word) gives the expected value on EVERY basis word.

def _p_zero(w):
    return _S0


def _p_b_ak(val):
    def f(w):
        return val(len(w) - 1) if _is_b_ak(w) else _S0
    return f


def _p_ak_b(val):
    def f(w):
        return val(len(w) - 1) if _is_ak_b(w) else _S0
    return f


def _p_ak_c(val):
    def f(w):
        return val(len(w) - 1) if _is_ak_c(w) else _S0
    return f


def _p_ak_d(val):
    def f(w):
        return val(len(w) - 1) if _is_ak_d(w) else _S0
    return f


def _p_ak(val):
    def f(w):
        k = _apow(w)
        return val(k) if k is not None and k >= 1 else _S0
    return f


def _p_word(target, value):
    def f(w):
        return value if w == target else _S0
    return f


def _p_sum(*pats):
    def f(w):
        total = _S0
        for p in pats:
            total = total + p(w)
        return total
    return f


def _kp1(k):
    return integer(k + 1)


def _one(_k):
    return _S1


def _neg1(_k):
    return _MINUS1


PAIRING_TAGS = {
    "s03": [
        ("s03.pair.a", "A*B", _p_b_ak(_kp1)),
        ("s03.pair.a", "B*A", _p_b_ak(_kp1)),
        ("s03.pair.b", "A*C", _p_ak_c(_kp1)),
        ("s03.pair.b", "C*A", _p_ak_c(_kp1)),
        ("s03.pair.c", "A*D", _p_word(("dt",), _S1)),
        ("s03.pair.c", "D*A", _p_word(("dt",), _S1)),
        ("s03.pair.c", "D^3", _p_word(("dt",), _S1)),
        ("s03.pair.c", "B^2*D", _p_word(("dt",), _S1)),
        ("s03.pair.c", "D*B^2", _p_word(("dt",), _S1)),
        ("s03.pair.c", "D", _p_word(("dt",), _S1)),
        ("s03.pair.d", "B*C",
         _p_sum(_p_word(("dt",), _MINUS1),
                lambda w: _S1 if _is_b_ak_c(w) else _S0)),
        ("s03.pair.d", "C*B",
         _p_sum(_p_word(("dt",), _S1),
                lambda w: _S1 if _is_b_ak_c(w) else _S0)),
        ("s03.pair.e", "D*B", _p_word(("ct",), _S1)),
        ("s03.pair.e", "B*D", _p_word(("ct",), _MINUS1)),
        ("s03.pair.e", "C*D^2", _p_word(("ct",), _S1)),
        ("s03.pair.e", "D^2*C", _p_word(("ct",), _S1)),
        ("s03.pair.f", "D*C", _p_word(("bt",), _S1)),
        ("s03.pair.f", "C*D", _p_word(("bt",), _MINUS1)),
        ("s03.pair.g", "B^2", _p_ak(_one)),
        ("s03.pair.g", "C^2", _p_ak(_neg1)),
        ("s03.pair.h", "B^3", _p_b_ak(_one)),
        ("s03.pair.h", "B", _p_b_ak(_one)),
        ("s03.pair.i", "C^3", _p_ak_c(_neg1)),
        ("s03.pair.i", "C", _p_ak_c(_one)),
        ("s03.pair.j", "B^2*A", _p_ak(integer)),
        ("s03.pair.j", "A", _p_ak(integer)),
    ],
    "s14": [
        ("s14.pair.a", "D*B", _p_word(("ct",), _S1)),
        ("s14.pair.a", "B*D", _p_word(("ct",), _MINUS1)),
        ("s14.pair.a", "C", _p_word(("ct",), _S1)),
        ("s14.pair.b", "A*D", _p_ak_d(_kp1)),
        ("s14.pair.b", "D*A", _p_ak_d(_kp1)),
        ("s14.pair.c", "A*B", _p_word(("bt",), _S1)),
        ("s14.pair.c", "B*A", _p_word(("bt",), _S1)),
        ("s14.pair.c", "D^2*B", _p_word(("bt",), _S1)),
        ("s14.pair.c", "B^3", _p_word(("bt",), _S1)),
        ("s14.pair.c", "B", _p_word(("bt",), _S1)),
        ("s14.pair.powA", "A^2", _p_ak(lambda k: integer(k * k))),
        ("s14.pair.powA", "A^3", _p_ak(lambda k: integer(k ** 3))),
        ("s14.pair.powA", "A^4", _p_ak(lambda k: integer(k ** 4))),
        ("s14.pair.K", "K",
         lambda w: (_S1 if len(w) % 2 == 0 else _MINUS1)
         if _apow(w) is not None else _S0),
    ],
    "s14o": [
        ("s14o.pair.base", "A", _p_ak(integer)),
        ("s14o.pair.base", "B", _p_ak_b(_one)),
        ("s14o.pair.base", "C", _p_ak_c(_one)),
        ("s14o.pair.base", "D", _p_ak_d(_one)),
        ("s14o.pair.base", "K",
         lambda w: (_S1 if len(w) % 2 == 0 else _MINUS1)
         if _apow(w) is not None else _S0),
    ],
}


class CheckLine:
    """One verified identity: a stable tag, a verdict and a witness."""

    def __init__(self, tag, ok, maxdeg, detail="", witness=None):
        self.tag = tag
        self.ok = bool(ok)
        self.maxdeg = maxdeg
        self.detail = detail
        self.witness = witness

    def __repr__(self):
        s = "ok" if self.ok else "FAIL"
        extra = f" witness={self.witness!r}" if self.witness is not None else ""
        return f"<{self.tag}: {s} (maxdeg {self.maxdeg}){extra}>"


def relation_report(name, maxdeg=8):
    d = duality(name)
    lines = []
    for tag, lhs, rhs in RELATION_TAGS[name]:
        ok, w = d.verify_relation(lhs, rhs, maxdeg)
        lines.append(CheckLine(tag, ok, maxdeg, f"{lhs} = {rhs}", w))
    return lines


def coproduct_report(name, maxdeg=8):
    d = duality(name)
    lines = d.verify_coproducts(COPRODUCT_TAGS[name], maxdeg)
    for line, (tag, z, _claimed, eps) in zip(lines, COPRODUCT_TAGS[name]):
        line.detail = f"split of {z}"
        if line.ok:
            got = d.counit_dual(z)
            want = d.parse(eps).scalar_part()
            if got != want:
                line.ok = False
                line.witness = "counit value"
    return lines


def casimir_report(name, maxdeg=8):
    d = duality(name)
    lines = []
    for tag, z in CASIMIR_TAGS[name]:
        ok, w = d.casimir_check(z, maxdeg)
        lines.append(CheckLine(tag, ok, maxdeg, f"{z} central", w))
    return lines


def pairing_report(name, maxdeg=8):
    d = duality(name)
    lines = []
    for tag, expr, pattern in PAIRING_TAGS[name]:
        u = d.parse(expr)
        bad = None
        for w in d.words(maxdeg):
            if d.pair_normal(u, w) != pattern(w):
                bad = w
                break
        lines.append(CheckLine(tag, bad is None, maxdeg,
                               f"bracket table for {expr}", bad))
    return lines


def full_report(name, maxdeg=8):
    return (relation_report(name, maxdeg) + coproduct_report(name, maxdeg)
            + casimir_report(name, maxdeg) + pairing_report(name, maxdeg))


# ---------------------------------------------------------------------------
# linear (in)feasibility of convolution equations:  left * u = rhs
# ---------------------------------------------------------------------------

class SpanSolve:
    """Outcome of solving  left * u = rhs  for u in a finite span.

    When infeasible, `witness` (if set) is a single basis word on which
    every candidate is already wrong: the left side vanishes against it
    for the whole span while the right side does not.  `rank_lhs` and
    `rank_aug` give the rank certificate.
    """

    def __init__(self, feasible, coords, witness, rank_lhs, rank_aug):
        self.feasible = feasible
        self.coords = coords
        self.witness = witness
        self.rank_lhs = rank_lhs
        self.rank_aug = rank_aug

    def __repr__(self):
        if self.feasible:
            return "<SpanSolve feasible>"
        return (f"<SpanSolve infeasible: rank {self.rank_lhs} vs "
                f"{self.rank_aug}, witness={self.witness!r}>")


def solve_in_span(dual: Duality, left, rhs, span, maxdeg=8):
    """Solve  left * u = rhs  (convolution) for u in the span of the given
    functional expressions, testing against all words of degree <= maxdeg."""
    left = dual.parse(left)
    rhs = dual.parse(rhs)
    span = [dual.parse(s) for s in span]
    words = list(dual.words(maxdeg))
    products = [left * s for s in span]
    rows = []
    target = []
    witness = None
    for w in words:
        row = [dual.pair_normal(p, w) for p in products]
        t = dual.pair_normal(rhs, w)
        if witness is None and t and not any(row):
            witness = w
        rows.append(row)
        target.append(t)
    x = solve(rows, target)
    r = rank(rows)
    raug = rank([row + [t] for row, t in zip(rows, target)])
    return SpanSolve(x is not None, x, witness, r, raug)


# ---------------------------------------------------------------------------
# the nine-dimensional subalgebra of the s03 functional algebra
# ---------------------------------------------------------------------------

NINE_BASIS = (
    (),
    ("B",),
    ("C",),
    ("D",),
    ("B", "C"),
    ("B", "D"),
    ("D", "C"),
    ("B", "B"),
    ("D", "D"),
)


class FiniteDimAlgebra:
    """An exact finite-dimensional algebra with a distinguished basis.

    `structure[i][j]` holds the coordinate vector of (basis_i * basis_j).
    The basis labels are functional words of the parent bracket algebra.
    """

    def __init__(self, name, basis, structure, unit_index=0):
        self.name = name
        self.basis = tuple(tuple(w) for w in basis)
        self.dim = len(self.basis)
        self.structure = structure
        self.unit_index = unit_index
        self.index = {w: j for j, w in enumerate(self.basis)}

    def unit_vector(self):
        v = [_S0] * self.dim
        v[self.unit_index] = _S1
        return v

    def multiply(self, x, y):
        out = [_S0] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                for k, s in enumerate(self.structure[i][j]):
                    if s:
                        out[k] = out[k] + c * s
        return out

    def left_matrix(self, x):
        """Matrix of left multiplication by the vector x (columns index
        the input basis element)."""
        cols = []
        for j in range(self.dim):
            e = [_S0] * self.dim
            e[j] = _S1
            cols.append(self.multiply(x, e))
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def right_matrix(self, x):
        cols = []
        for j in range(self.dim):
            e = [_S0] * self.dim
            e[j] = _S1
            cols.append(self.multiply(e, x))
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def word_vector(self, u):
        """Coordinates of a product of dual letters, folded left to right."""
        v = self.unit_vector()
        for z in u:
            e = self.index.get((z,))
            if e is None:
                raise KeyError(f"letter {z!r} is not a basis element")
            ev = [_S0] * self.dim
            ev[e] = _S1
            v = self.multiply(v, ev)
        return v

    def element_vector(self, p):
        """Coordinates of an arbitrary polynomial in the dual letters."""
        out = [_S0] * self.dim
        for w, c in p.terms.items():
            v = self.word_vector(w)
            for k in range(self.dim):
                if v[k]:
                    out[k] = out[k] + c * v[k]
        return out

    def is_associative(self):
        mats = [self.left_matrix(self._unit_at(i)) for i in range(self.dim)]
        for i in range(self.dim):
            for j in range(self.dim):
                prod = self.structure[i][j]
                lhs = self.left_matrix(prod)
                got = _mat_mul(mats[i], mats[j])
                if lhs != got:
                    return False
        return True

    def is_unital(self):
        u = self.unit_vector()
        for i in range(self.dim):
            e = self._unit_at(i)
            if self.multiply(u, e) != e or self.multiply(e, u) != e:
                return False
        return True

    def _unit_at(self, i):
        v = [_S0] * self.dim
        v[i] = _S1
        return v


def _mat_mul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    return [[sum((a[i][k] * b[k][j] for k in range(m)), _S0)
             for j in range(p)] for i in range(n)]


def build_finite_subalgebra(name="s03", basis=NINE_BASIS, frame_deg=3,
                            verify_deg=8):
    """Cut the finite subalgebra spanned by `basis` out of the functional
    algebra: identify each product with a combination of basis elements by
    matching brackets on a separating frame of words, then verify the
    identification on every word of degree <= verify_deg.

    Raises ValueError if the basis brackets do not separate points or if
    any product escapes the span.
    """
    d = duality(name)
    candidates = list(d.words(frame_deg))
    profile = [[d.pair_word(u, w) for w in candidates] for u in basis]
    # choose pivot columns: a maximal independent set of candidate words
    red, pivots = rref(profile)
    if len(pivots) != len(basis):
        raise ValueError("basis brackets do not separate the span")
    frame = [candidates[j] for j in pivots]
    G = [[d.pair_word(u, w) for w in frame] for u in basis]
    Gt = transpose(G)

    def coords(poly):
        t = [d.pair_normal(poly, w) for w in frame]
        x = solve(Gt, t)
        if x is None:
            raise ValueError("element escapes the span")
        return x

    n = len(basis)
    structure = []
    polys = [NCPoly.word(u) for u in basis]
    for i in range(n):
        row = []
        for j in range(n):
            prod = polys[i] * polys[j]
            x = coords(prod)
            # certify the identification everywhere, not just on the frame
            for w in d.words(verify_deg):
                want = d.pair_normal(prod, w)
                got = _S0
                for k in range(n):
                    if x[k]:
                        v = d.pair_word(basis[k], w)
                        if v:
                            got = got + x[k] * v
                if got != want:
                    raise ValueError(
                        f"product {format_word(basis[i])}*"
                        f"{format_word(basis[j])} escapes the span "
                        f"at word {format_word(w)}")
            row.append(x)
        structure.append(row)
    alg = FiniteDimAlgebra(name + "-span", basis, structure)
    if not alg.is_unital() or not alg.is_associative():
        raise ValueError("identified structure constants are inconsistent")
    return alg


def antipode_certificates(maxdeg=8):
    """The two infeasibility certificates and two feasible controls for the
    antipode equations of the functional algebras.

    For ``s03`` the flip axiom applied to the first-letter functional
    forces  (1 - B^2) * u = -B;  for ``s14`` the empty-word evaluation
    forces  E * u = 1.  Both are linear in u and provably inconsistent.
    """
    d03 = duality("s03")
    span03 = [format_word(w) if w else "1" for w in NINE_BASIS]
    span03 += [f"A^{n}" for n in (1, 2)] + ["B*A", "C*A", "D*A"]
    bad03 = solve_in_span(d03, "1 - B^2", "-B", span03, maxdeg)
    good03 = solve_in_span(d03, "B^2", "B", span03, maxdeg)

    d14 = duality("s14")
    letters = ("A", "B", "D", "E")
    span14 = ["1"]
    words = [(x,) for x in letters]
    span14 += [format_word(w) for w in words]
    span14 += [format_word(w + (y,)) for w in words for y in letters]
    span14 += [format_word(w + (y, z)) for w in words
               for y in letters for z in letters]
    bad14 = solve_in_span(d14, "E", "1", span14, maxdeg)
    good14 = solve_in_span(d14, "1", "1", span14, maxdeg)
    return {
        "s03.antipode.B": bad03,
        "s03.antipode.control": good03,
        "s14.antipode.E": bad14,
        "s14.antipode.control": good14,
    }
