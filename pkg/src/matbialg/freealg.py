"""Free associative algebra over the exact scalar field, plus terminating
rewrite systems.

Words are tuples of letter names (strings), so multi-character letters are
fine.  A rewrite system carries an explicit alphabet order; words are compared
degree-first, then letter-by-letter in that order ("deglex").  Every rule must
strictly decrease that order, which makes reduction terminate; local
confluence is then checked mechanically on critical pairs, and separately by
reducing words with two different strategies up to a chosen degree.
"""

from __future__ import annotations

from itertools import product

from .scalars import I, ONE, Q, Scalar, parse_expr

Word = tuple  # tuple[str, ...]
EMPTY: Word = ()


def _as_scalar(x):
    if isinstance(x, Scalar):
        return x
    coerced = Scalar._coerce(x)
    return coerced


class NCPoly:
    """Noncommutative polynomial: finitely many words with scalar coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for w, c in terms.items():
                if c:
                    clean[w] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("NCPoly is immutable")

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero():
        return NCPoly()

    @staticmethod
    def one():
        return NCPoly({EMPTY: ONE})

    @staticmethod
    def letter(name: str):
        return NCPoly({(name,): ONE})

    @staticmethod
    def word(w, coeff=ONE):
        return NCPoly({tuple(w): coeff if isinstance(coeff, Scalar) else _as_scalar(coeff)})

    @staticmethod
    def from_scalar(c):
        return NCPoly({EMPTY: _as_scalar(c)})

    @staticmethod
    def from_int(n: int):
        return NCPoly({EMPTY: Scalar.from_int(n)})

    # -- inspection -------------------------------------------------------

    def coefficient(self, w) -> Scalar:
        return self.terms.get(tuple(w), Scalar.from_int(0))

    def support(self):
        return set(self.terms)

    def is_scalar(self):
        return all(w == EMPTY for w in self.terms)

    def scalar_part(self) -> Scalar:
        return self.terms.get(EMPTY, Scalar.from_int(0))

    def max_degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def homogeneous_component(self, deg: int):
        return NCPoly({w: c for w, c in self.terms.items() if len(w) == deg})

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, NCPoly):
            c = _as_scalar(other)
            if c is None:
                return NotImplemented
            other = NCPoly.from_scalar(c)
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            out[w] = c if s is None else s + c
        return NCPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, NCPoly):
            c = _as_scalar(other)
            if c is None:
                return NotImplemented
            other = NCPoly.from_scalar(c)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, NCPoly):
            out = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = w1 + w2
                    c = c1 * c2
                    s = out.get(w)
                    out[w] = c if s is None else s + c
            return NCPoly(out)
        c = _as_scalar(other)
        if c is None:
            return NotImplemented
        return NCPoly({w: x * c for w, x in self.terms.items()})

    def __rmul__(self, other):
        c = _as_scalar(other)
        if c is None:
            return NotImplemented
        return NCPoly({w: c * x for w, x in self.terms.items()})

    def __truediv__(self, other):
        if isinstance(other, NCPoly):
            if not other.is_scalar():
                raise TypeError("can only divide by a scalar")
            other = other.scalar_part()
        c = _as_scalar(other)
        if c is None:
            return NotImplemented
        return self * c.inv()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if self.is_scalar():
                return NCPoly.from_scalar(self.scalar_part() ** n)
            raise ValueError("negative power of a noncommutative element")
        out = NCPoly.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            c = _as_scalar(other)
            if c is None:
                return NotImplemented
            other = NCPoly.from_scalar(c)
        return self.terms == other.terms

    __hash__ = None

    # -- substitution -----------------------------------------------------

    def map_letters(self, images):
        """Apply the algebra map sending each letter to images[letter]
        (letters absent from the table map to themselves)."""
        out = NCPoly.zero()
        cache = {}
        for w, c in self.terms.items():
            prod = cache.get(w)
            if prod is None:
                prod = NCPoly.one()
                for x in w:
                    img = images.get(x)
                    prod = prod * (img if img is not None else NCPoly.letter(x))
                cache[w] = prod
            out = out + prod * c
        return out

    def map_coefficients(self, f):
        return NCPoly({w: f(c) for w, c in self.terms.items()})

    def reversed_words(self):
        """The same polynomial with every word written backwards (the
        canonical anti-isomorphism with the opposite algebra)."""
        out = {}
        for w, c in self.terms.items():
            rw = w[::-1]
            s = out.get(rw)
            out[rw] = c if s is None else s + c
        return NCPoly(out)

    # -- display ----------------------------------------------------------

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"<NCPoly {self}>"


def format_word(w) -> str:
    if not w:
        return "1"
    parts = []
    j = 0
    while j < len(w):
        k = j
        while k < len(w) and w[k] == w[j]:
            k += 1
        parts.append(w[j] if k - j == 1 else f"{w[j]}^{k - j}")
        j = k
    return "*".join(parts)


def _coeff_prefix(c: Scalar) -> str:
    s = str(c)
    if s == "1":
        return ""
    if s == "-1":
        return "-"
    if "+" in s[1:] or "-" in s[1:] or "/" in s:
        s = f"({s})"
    return s + "*"


def format_poly(p: NCPoly, alphabet=None) -> str:
    if not p:
        return "0"
    if alphabet is None:
        def key(w):
            return (len(w), w)
    else:
        index = {x: j for j, x in enumerate(alphabet)}

        def key(w):
            return (len(w), tuple(index[x] for x in w))
    pieces = []
    for w in sorted(p.terms, key=key, reverse=True):
        c = p.terms[w]
        if w == EMPTY:
            s = str(c)
            if "+" in s[1:] or "-" in s[1:]:
                s = f"({s})"
            pieces.append(s)
        else:
            pieces.append(_coeff_prefix(c) + format_word(w))
    out = pieces[0]
    for t in pieces[1:]:
        if t.startswith("-"):
            out += " - " + t[1:]
        else:
            out += " + " + t
    return out


def ncparse(text: str, letters) -> NCPoly:
    """Parse a noncommutative expression such as 'a*b - q*b*a + 1'."""
    atoms = {"q": NCPoly.from_scalar(Q), "i": NCPoly.from_scalar(I)}
    for x in letters:
        atoms[x] = NCPoly.letter(x)
    return parse_expr(text, atoms, NCPoly.from_int)


# ---------------------------------------------------------------------------
# deglex machinery and linear echelonization of relation sets
# ---------------------------------------------------------------------------

def deglex_key(w, index):
    return (len(w), tuple(index[x] for x in w))


def leading_word(p: NCPoly, index):
    return max(p.terms, key=lambda w: deglex_key(w, index))


def linear_reduce(p: NCPoly, pivots, index):
    """Subtract pivot multiples until no word of p is a pivot lead.
    `pivots` maps leading words to monic polynomials."""
    while p:
        hit = None
        hk = None
        for w in p.terms:
            if w in pivots:
                k = deglex_key(w, index)
                if hk is None or k > hk:
                    hit, hk = w, k
        if hit is None:
            break
        p = p - pivots[hit] * p.terms[hit]
    return p


def echelonize(polys, alphabet):
    """Canonical reduced echelon basis of the linear span of `polys`,
    ordered by increasing deglex leading word.  Two generating sets span the
    same subspace iff their echelon bases are equal lists."""
    index = {x: j for j, x in enumerate(alphabet)}
    pivots = {}
    for p in polys:
        p = linear_reduce(p, pivots, index)
        if not p:
            continue
        lw = leading_word(p, index)
        p = p * p.terms[lw].inv()
        for w0, q0 in list(pivots.items()):
            c = q0.coefficient(lw)
            if c:
                pivots[w0] = q0 - p * c
        pivots[lw] = p
    return [pivots[w] for w in sorted(pivots, key=lambda w: deglex_key(w, index))]


def span_equal(polys_a, polys_b, alphabet) -> bool:
    """Linear span equality (complete ideal-equality test for sets of
    homogeneous quadratic relations: the degree-2 slice determines the ideal)."""
    return echelonize(polys_a, alphabet) == echelonize(polys_b, alphabet)


# ---------------------------------------------------------------------------
# Rewrite systems
# ---------------------------------------------------------------------------

class RewriteSystem:
    """A set of word rewriting rules lhs -> rhs with every rhs word strictly
    deglex-smaller than its lhs.  Reduction therefore terminates on every
    input; confluence is a separate property checked by `critical_pairs` /
    `confluence_probe`."""

    def __init__(self, alphabet, rules, name=""):
        self.alphabet = list(alphabet)
        self.index = {x: j for j, x in enumerate(self.alphabet)}
        if len(self.index) != len(self.alphabet):
            raise ValueError("duplicate letters in alphabet")
        self.name = name
        self.rules = {}
        for lhs, rhs in rules.items():
            lhs = tuple(lhs)
            if not lhs:
                raise ValueError("empty left-hand side")
            if not isinstance(rhs, NCPoly):
                rhs = NCPoly.from_scalar(_as_scalar(rhs))
            for x in lhs:
                if x not in self.index:
                    raise ValueError(f"rule uses letter {x!r} not in alphabet")
            lk = deglex_key(lhs, self.index)
            for w in rhs.terms:
                for x in w:
                    if x not in self.index:
                        raise ValueError(f"rule uses letter {x!r} not in alphabet")
                if not deglex_key(w, self.index) < lk:
                    raise ValueError(
                        f"rule {format_word(lhs)} -> {format_poly(rhs)} "
                        f"does not decrease the word order")
            self.rules[lhs] = rhs
        self._lhs_lens = sorted({len(l) for l in self.rules}, reverse=True)
        self._nf_cache = {"leftmost": {}, "rightmost": {}}

    @staticmethod
    def from_relations(alphabet, relations, name=""):
        """Orient a list of relation polynomials (== 0) into rules by
        echelonizing and solving each pivot for its leading word."""
        ech = echelonize(relations, alphabet)
        index = {x: j for j, x in enumerate(alphabet)}
        rules = {}
        for p in ech:
            lw = leading_word(p, index)
            rules[lw] = NCPoly.word(lw) - p
        return RewriteSystem(alphabet, rules, name=name)

    # -- matching ---------------------------------------------------------

    def _match(self, word, strategy):
        positions = range(len(word)) if strategy == "leftmost" \
            else range(len(word) - 1, -1, -1)
        for pos in positions:
            for L in self._lhs_lens:
                if pos + L <= len(word) and word[pos:pos + L] in self.rules:
                    return pos, word[pos:pos + L]
        return None

    def is_normal_word(self, word) -> bool:
        word = tuple(word)
        for L in self._lhs_lens:
            for pos in range(len(word) - L + 1):
                if word[pos:pos + L] in self.rules:
                    return False
        return True

    # -- reduction --------------------------------------------------------

    def _nf_word(self, word, strategy) -> NCPoly:
        cache = self._nf_cache[strategy]
        hit = cache.get(word)
        if hit is not None:
            return hit
        m = self._match(word, strategy)
        if m is None:
            out = NCPoly.word(word)
        else:
            pos, lhs = m
            prefix, suffix = word[:pos], word[pos + len(lhs):]
            out = NCPoly.zero()
            for w, c in self.rules[lhs].terms.items():
                out = out + self._nf_word(prefix + w + suffix, strategy) * c
        cache[word] = out
        return out

    def normal_form(self, x, strategy: str = "leftmost") -> NCPoly:
        """Fully reduce a polynomial (or a word, or a parseable string)."""
        if isinstance(x, str):
            x = ncparse(x, self.alphabet)
        elif not isinstance(x, NCPoly):
            x = NCPoly.word(x)
        out = NCPoly.zero()
        for w, c in x.terms.items():
            out = out + self._nf_word(w, strategy) * c
        return out

    reduce = normal_form

    def reduces_to_zero(self, x) -> bool:
        return not self.normal_form(x)

    # -- bases ------------------------------------------------------------

    def basis(self, deg: int):
        """All normal words of exactly this length, in deglex order."""
        out = []
        rules = self.rules
        lens = self._lhs_lens

        def extend(word):
            if len(word) == deg:
                out.append(word)
                return
            for x in self.alphabet:
                w2 = word + (x,)
                if all(L > len(w2) or w2[-L:] not in rules for L in lens):
                    extend(w2)

        extend(EMPTY)
        return out

    def basis_upto(self, maxdeg: int):
        return {d: self.basis(d) for d in range(maxdeg + 1)}

    def hilbert(self, maxdeg: int):
        return [len(self.basis(d)) for d in range(maxdeg + 1)]

    # -- confluence -------------------------------------------------------

    def critical_pairs(self):
        """All overlap ambiguities with their two one-step resolutions fully
        reduced.  An empty failure list together with the (built-in) strict
        decrease of every rule certifies confluence outright."""
        failures = []
        items = list(self.rules.items())
        for l1, r1 in items:
            for l2, r2 in items:
                for k in range(1, min(len(l1), len(l2))):
                    if l1[len(l1) - k:] == l2[:k]:
                        word = l1 + l2[k:]
                        a = self.normal_form(r1 * NCPoly.word(l2[k:]))
                        b = self.normal_form(NCPoly.word(l1[:len(l1) - k]) * r2)
                        if a != b:
                            failures.append((word, a, b))
                if l1 != l2 and len(l2) < len(l1):
                    for p in range(len(l1) - len(l2) + 1):
                        if l1[p:p + len(l2)] == l2:
                            a = self.normal_form(r1)
                            b = self.normal_form(
                                NCPoly.word(l1[:p]) * r2
                                * NCPoly.word(l1[p + len(l2):]))
                            if a != b:
                                failures.append((l1, a, b))
        return failures

    def is_confluent(self) -> bool:
        return not self.critical_pairs()

    def confluence_probe(self, maxdeg: int):
        """Reduce every word of length <= maxdeg with two different
        strategies; report any word whose two normal forms differ."""
        failures = []
        for d in range(maxdeg + 1):
            for w in product(self.alphabet, repeat=d):
                if self._nf_word(w, "leftmost") != self._nf_word(w, "rightmost"):
                    failures.append(w)
        return failures

    def __repr__(self):
        return (f"<RewriteSystem {self.name or '?'}: {len(self.rules)} rules "
                f"over {''.join(self.alphabet)}>")
