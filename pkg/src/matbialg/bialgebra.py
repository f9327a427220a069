"""Bialgebra presentations: an algebra given by a rewrite system together
with a coproduct and counit on its generators, extended multiplicatively.

Three generator alphabets appear for the quadratic algebras handled here:

- matrix entries        a, b, c, d      (entries of the defining 2x2 matrix);
- symmetrized letters   at, bt, ct, dt  with at=(a+d)/2, dt=(a-d)/2,
                                        bt=(b+c)/2, ct=(b-c)/2 — these turn
                                        every relation into a monomial or a
                                        sorting rule, so normal words are easy
                                        to enumerate;
- for the q=±1 algebra additionally ah, bh, ch, dh with ah=at+bt, bh=dt-ct,
  ch=ct+dt, dh=at-bt — a generator quadruple in which the coproduct is again
  matrix-shaped while the relations stay sortable.

The registry at the bottom builds the concrete bialgebras once and caches them.
"""

from __future__ import annotations

from .freealg import EMPTY, NCPoly, RewriteSystem, format_word, ncparse
from .scalars import ONE, Scalar

_S0 = Scalar.from_int(0)


class TensorPoly:
    """An element of F ⊗ F: scalar combinations of pairs of words."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for k, c in terms.items():
                if c:
                    clean[k] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("TensorPoly is immutable")

    @staticmethod
    def zero():
        return TensorPoly()

    @staticmethod
    def unit():
        return TensorPoly({(EMPTY, EMPTY): ONE})

    @staticmethod
    def tensor(p: NCPoly, q: NCPoly) -> "TensorPoly":
        out = {}
        for w1, c1 in p.terms.items():
            for w2, c2 in q.terms.items():
                c = c1 * c2
                k = (w1, w2)
                s = out.get(k)
                out[k] = c if s is None else s + c
        return TensorPoly(out)

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            out[k] = c if s is None else s + c
        return TensorPoly(out)

    def __neg__(self):
        return TensorPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TensorPoly):
            out = {}
            for (u1, v1), c1 in self.terms.items():
                for (u2, v2), c2 in other.terms.items():
                    k = (u1 + u2, v1 + v2)
                    c = c1 * c2
                    s = out.get(k)
                    out[k] = c if s is None else s + c
            return TensorPoly(out)
        c = Scalar._coerce(other)
        if c is None:
            return NotImplemented
        return TensorPoly({k: x * c for k, x in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, TensorPoly) and self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def flip(self):
        """Swap the two tensor slots."""
        out = {}
        for (u, v), c in self.terms.items():
            k = (v, u)
            s = out.get(k)
            out[k] = c if s is None else s + c
        return TensorPoly(out)

    def reduce(self, rs: RewriteSystem) -> "TensorPoly":
        out = {}
        for (u, v), c in self.terms.items():
            nu = rs._nf_word(u, "leftmost")
            nv = rs._nf_word(v, "leftmost")
            for wu, cu in nu.terms.items():
                cc = c * cu
                for wv, cv in nv.terms.items():
                    k = (wu, wv)
                    s = out.get(k)
                    t = cc * cv
                    out[k] = t if s is None else s + t
        return TensorPoly(out)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for (u, v) in sorted(self.terms, key=lambda k: (len(k[0]) + len(k[1]), k)):
            c = self.terms[(u, v)]
            body = f"{format_word(u)}(x){format_word(v)}"
            s = str(c)
            if s == "1":
                pieces.append(body)
            elif s == "-1":
                pieces.append("-" + body)
            else:
                if "+" in s[1:] or "-" in s[1:] or "/" in s:
                    s = f"({s})"
                pieces.append(f"{s}*{body}")
        out = pieces[0]
        for t in pieces[1:]:
            out += (" - " + t[1:]) if t.startswith("-") else (" + " + t)
        return out

    def __repr__(self):
        return f"<TensorPoly {self}>"


def tensor(p: NCPoly, q: NCPoly) -> TensorPoly:
    return TensorPoly.tensor(p, q)


class Presentation:
    """An algebra-with-coproduct: rewrite system + coproduct/counit tables on
    the generators, extended to all elements multiplicatively."""

    def __init__(self, name, rewrite: RewriteSystem, coproduct, counit,
                 description=""):
        self.name = name
        self.rewrite = rewrite
        self.alphabet = rewrite.alphabet
        self.description = description
        self.cop_letter = dict(coproduct)
        self.counit_letter = dict(counit)
        for x in self.alphabet:
            if x not in self.cop_letter or x not in self.counit_letter:
                raise ValueError(f"missing coproduct/counit for letter {x!r}")
        self._cop_cache = {EMPTY: TensorPoly.unit()}

    # -- algebra side -------------------------------------------------------

    def parse(self, text: str) -> NCPoly:
        return ncparse(text, self.alphabet)

    def normal_form(self, x) -> NCPoly:
        if isinstance(x, str):
            x = self.parse(x)
        return self.rewrite.normal_form(x)

    def basis(self, deg: int):
        return self.rewrite.basis(deg)

    def hilbert(self, maxdeg: int):
        return self.rewrite.hilbert(maxdeg)

    def relations(self):
        """The defining relations as polynomials lhs - rhs (== 0)."""
        return [NCPoly.word(lhs) - rhs for lhs, rhs in self.rewrite.rules.items()]

    # -- coalgebra side -----------------------------------------------------

    def counit(self, x) -> Scalar:
        if isinstance(x, str):
            x = self.parse(x)
        if not isinstance(x, NCPoly):
            x = NCPoly.word(x)
        total = _S0
        for w, c in x.terms.items():
            val = c
            for letter in w:
                e = self.counit_letter[letter]
                if not e:
                    val = _S0
                    break
                val = val * e
            total = total + val
        return total

    def coproduct_word(self, w) -> TensorPoly:
        """Reduced coproduct of a single word, memoized."""
        w = tuple(w)
        hit = self._cop_cache.get(w)
        if hit is None:
            hit = (self.coproduct_word(w[:-1]) * self.cop_letter[w[-1]]) \
                .reduce(self.rewrite)
            self._cop_cache[w] = hit
        return hit

    def coproduct(self, x) -> TensorPoly:
        if isinstance(x, str):
            x = self.parse(x)
        if not isinstance(x, NCPoly):
            x = NCPoly.word(x)
        out = TensorPoly.zero()
        for w, c in x.terms.items():
            out = out + self.coproduct_word(w) * c
        return out

    def coproduct_free(self, x) -> TensorPoly:
        """Coproduct computed in the free algebra, with no reduction — used
        to check that the coproduct descends to the quotient at all."""
        if isinstance(x, str):
            x = self.parse(x)
        if not isinstance(x, NCPoly):
            x = NCPoly.word(x)
        out = TensorPoly.zero()
        for w, c in x.terms.items():
            prod = TensorPoly.unit()
            for letter in w:
                prod = prod * self.cop_letter[letter]
            out = out + prod * c
        return out

    def iterated_coproduct(self, x, slots: int):
        """Apply the coproduct repeatedly (to the last slot) until the given
        number of tensor slots is reached; returns {tuple_of_words: scalar}."""
        if isinstance(x, (str, NCPoly)):
            start = self.coproduct(x) if slots >= 2 else None
        else:
            start = self.coproduct_word(x) if slots >= 2 else None
        if slots < 2:
            raise ValueError("need at least two slots")
        cur = {k: c for k, c in start.terms.items()}
        for _ in range(slots - 2):
            nxt = {}
            for key, c in cur.items():
                for (u, v), c2 in self.coproduct_word(key[-1]).terms.items():
                    k2 = key[:-1] + (u, v)
                    s = nxt.get(k2)
                    t = c * c2
                    nxt[k2] = t if s is None else s + t
            cur = {k: c for k, c in nxt.items() if c}
        return cur

    # -- structural checks ---------------------------------------------------

    def check_compatibility(self):
        """The coproduct and counit must send every defining relation to zero
        (modulo the ideal, on both tensor slots).  Returns failures."""
        failures = []
        for lhs, rhs in self.rewrite.rules.items():
            rel = NCPoly.word(lhs) - rhs
            d = self.coproduct_free(rel).reduce(self.rewrite)
            e = self.counit(rel)
            if d or e:
                failures.append((format_word(lhs), d, e))
        return failures

    def check_coassociativity(self):
        failures = []
        for x in self.alphabet:
            base = self.coproduct_word((x,))
            left, right = {}, {}
            for (u, v), c in base.terms.items():
                for (p, r), c2 in self.coproduct_word(u).terms.items():
                    k = (p, r, v)
                    s = left.get(k)
                    t = c * c2
                    left[k] = t if s is None else s + t
                for (p, r), c2 in self.coproduct_word(v).terms.items():
                    k = (u, p, r)
                    s = right.get(k)
                    t = c * c2
                    right[k] = t if s is None else s + t
            left = {k: c for k, c in left.items() if c}
            right = {k: c for k, c in right.items() if c}
            if left != right:
                failures.append(x)
        return failures

    def check_counit(self):
        failures = []
        for x in self.alphabet:
            nf = self.normal_form(NCPoly.letter(x))
            lhs = NCPoly.zero()
            rhs = NCPoly.zero()
            for (u, v), c in self.coproduct_word((x,)).terms.items():
                lhs = lhs + NCPoly.word(v) * (c * self.counit(NCPoly.word(u)))
                rhs = rhs + NCPoly.word(u) * (c * self.counit(NCPoly.word(v)))
            if self.normal_form(lhs) != nf or self.normal_form(rhs) != nf:
                failures.append(x)
        return failures

    def verify_structure(self):
        """Run all bialgebra axioms; returns {check_name: ok_bool}."""
        return {
            "relations_preserved": not self.check_compatibility(),
            "coassociative": not self.check_coassociativity(),
            "counit": not self.check_counit(),
        }

    def is_grouplike(self, p) -> bool:
        if isinstance(p, str):
            p = self.parse(p)
        p = self.normal_form(p)
        return (self.coproduct(p) == tensor(p, p).reduce(self.rewrite)
                and self.counit(p) == ONE)

    def __repr__(self):
        return f"<Presentation {self.name}>"


# ---------------------------------------------------------------------------
# changes of generators (exact linear substitutions)
# ---------------------------------------------------------------------------

MATRIX_LETTERS = ("a", "b", "c", "d")
SYM_LETTERS = ("at", "bt", "ct", "dt")
MC_LETTERS = ("ah", "bh", "ch", "dh")


def _L(x):
    return NCPoly.letter(x)


# matrix entries written in symmetrized letters
MATRIX_IN_SYM = {
    "a": _L("at") + _L("dt"),
    "b": _L("bt") + _L("ct"),
    "c": _L("bt") - _L("ct"),
    "d": _L("at") - _L("dt"),
}

# symmetrized letters written in matrix entries
SYM_IN_MATRIX = {
    "at": (_L("a") + _L("d")) / 2,
    "bt": (_L("b") + _L("c")) / 2,
    "ct": (_L("b") - _L("c")) / 2,
    "dt": (_L("a") - _L("d")) / 2,
}

# matrix-coproduct letters written in symmetrized letters
MC_IN_SYM = {
    "ah": _L("at") + _L("bt"),
    "bh": _L("dt") - _L("ct"),
    "ch": _L("ct") + _L("dt"),
    "dh": _L("at") - _L("bt"),
}

# symmetrized letters written in matrix-coproduct letters
SYM_IN_MC = {
    "at": (_L("ah") + _L("dh")) / 2,
    "bt": (_L("ah") - _L("dh")) / 2,
    "ct": (_L("ch") - _L("bh")) / 2,
    "dt": (_L("bh") + _L("ch")) / 2,
}


def matrix_coproduct(letters=MATRIX_LETTERS):
    """The coproduct dual to 2x2 matrix multiplication, with the four letters
    read row-by-row as the matrix entries; counit = entries of the identity."""
    a_, b_, c_, d_ = letters
    cop = {
        a_: TensorPoly({((a_,), (a_,)): ONE, ((b_,), (c_,)): ONE}),
        b_: TensorPoly({((a_,), (b_,)): ONE, ((b_,), (d_,)): ONE}),
        c_: TensorPoly({((c_,), (a_,)): ONE, ((d_,), (c_,)): ONE}),
        d_: TensorPoly({((c_,), (b_,)): ONE, ((d_,), (d_,)): ONE}),
    }
    cou = {a_: ONE, b_: _S0, c_: _S0, d_: ONE}
    return cop, cou


def _sym_coproduct():
    """The matrix coproduct transported to the symmetrized letters (this
    closed form is verified against the transport in the tests)."""
    def tp(entries):
        return TensorPoly({((u,), (v,)): Scalar.from_int(s) for u, v, s in entries})

    cop = {
        "at": tp([("at", "at", 1), ("bt", "bt", 1), ("ct", "ct", -1), ("dt", "dt", 1)]),
        "bt": tp([("at", "bt", 1), ("bt", "at", 1), ("ct", "dt", -1), ("dt", "ct", 1)]),
        "ct": tp([("at", "ct", 1), ("ct", "at", 1), ("bt", "dt", -1), ("dt", "bt", 1)]),
        "dt": tp([("at", "dt", 1), ("dt", "at", 1), ("bt", "ct", -1), ("ct", "bt", 1)]),
    }
    cou = {"at": ONE, "bt": _S0, "ct": _S0, "dt": _S0}
    return cop, cou


# ---------------------------------------------------------------------------
# the registry
# ---------------------------------------------------------------------------

def _zero_rules(words):
    return {tuple(w): NCPoly.zero() for w in words}


def _make_s03():
    rules = _zero_rules([
        ("bt", "bt"), ("ct", "ct"), ("at", "dt"), ("dt", "at"),
        ("at", "bt"), ("bt", "dt"), ("dt", "ct"), ("ct", "at"),
    ])
    rs = RewriteSystem(SYM_LETTERS, rules, name="s03")
    cop, cou = _sym_coproduct()
    return Presentation("s03", rs, cop, cou,
                        "bialgebra with eight vanishing quadratic words")


def _make_s14():
    rules = _zero_rules([
        ("at", "bt"), ("bt", "at"), ("at", "ct"), ("ct", "at"),
        ("bt", "dt"), ("dt", "bt"), ("ct", "dt"), ("dt", "ct"),
    ])
    rules[("ct", "bt")] = -_L("bt") * _L("ct")
    rules[("dt", "at")] = -_L("at") * _L("dt")
    rs = RewriteSystem(SYM_LETTERS, rules, name="s14")
    cop, cou = _sym_coproduct()
    return Presentation("s14", rs, cop, cou,
                        "generic-parameter bialgebra: two anticommuting pairs")


def _make_s14o():
    rules = {
        ("bt", "at"): _L("at") * _L("bt"),
        ("ct", "at"): -_L("at") * _L("ct"),
        ("dt", "at"): -_L("at") * _L("dt"),
        ("ct", "bt"): -_L("bt") * _L("ct"),
        ("dt", "bt"): -_L("bt") * _L("dt"),
        ("dt", "ct"): _L("ct") * _L("dt"),
    }
    rs = RewriteSystem(SYM_LETTERS, rules, name="s14o")
    cop, cou = _sym_coproduct()
    return Presentation("s14o", rs, cop, cou,
                        "parameter = ±1 bialgebra: six sorting relations")


_MC_ALPHA = ("ah", "dh", "bh", "ch")      # order chosen so every rule sorts down


def _mc_rules():
    return {
        ("dh", "ah"): _L("ah") * _L("dh"),
        ("bh", "ah"): -_L("ah") * _L("bh"),
        ("ch", "ah"): -_L("ah") * _L("ch"),
        ("bh", "dh"): -_L("dh") * _L("bh"),
        ("ch", "dh"): -_L("dh") * _L("ch"),
        ("ch", "bh"): _L("bh") * _L("ch"),
    }


def _make_s14o_mc():
    rs = RewriteSystem(_MC_ALPHA, _mc_rules(), name="s14o_mc")
    cop, cou = matrix_coproduct(MC_LETTERS)
    return Presentation("s14o_mc", rs, cop, cou,
                        "the ±1 bialgebra on generators with matrix-shaped coproduct")


def _make_s14o_mc_ext():
    """The matrix-coproduct presentation extended by a group-like element
    om = ah*dh + bh*ch and its inverse omi."""
    alpha = ("ah", "dh", "bh", "ch", "om", "omi")
    rules = _mc_rules()
    rules[("bh", "ch")] = _L("om") - _L("ah") * _L("dh")
    for g in ("om", "omi"):
        for x in ("ah", "dh", "bh", "ch"):
            rules[(g, x)] = _L(x) * _L(g)
    rules[("om", "omi")] = NCPoly.one()
    rules[("omi", "om")] = NCPoly.one()
    rs = RewriteSystem(alpha, rules, name="s14o_mc_ext")
    cop, cou = matrix_coproduct(MC_LETTERS)
    for g in ("om", "omi"):
        cop[g] = TensorPoly({((g,), (g,)): ONE})
        cou[g] = ONE
    return Presentation("s14o_mc_ext", rs, cop, cou,
                        "±1 bialgebra with the group-like quantum determinant inverted")


def _make_mat2():
    order = ("a", "b", "c", "d")
    rules = {}
    for j, x in enumerate(order):
        for y in order[:j]:
            rules[(x, y)] = _L(y) * _L(x)
    rs = RewriteSystem(order, rules, name="mat2")
    cop, cou = matrix_coproduct()
    return Presentation("mat2", rs, cop, cou,
                        "commutative coordinate bialgebra of 2x2 matrices")


_FACTORIES = {
    "s03": _make_s03,
    "s14": _make_s14,
    "s14o": _make_s14o,
    "s14o_mc": _make_s14o_mc,
    "s14o_mc_ext": _make_s14o_mc_ext,
    "mat2": _make_mat2,
}

ALGEBRA_NAMES = tuple(_FACTORIES)

_CACHE = {}


def algebra(name: str) -> Presentation:
    """Fetch a registered bialgebra presentation by name (cached)."""
    if name not in _FACTORIES:
        raise KeyError(f"unknown algebra {name!r}; have {sorted(_FACTORIES)}")
    if name not in _CACHE:
        _CACHE[name] = _FACTORIES[name]()
    return _CACHE[name]
