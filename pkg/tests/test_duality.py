"""Tests for the duality bracket, its verified identities, the nine
dimensional subalgebra and the antipode (in)feasibility certificates.

The bracket engine computes by convolution against coproducts.  As an
independent cross-check, the first two algebras also have closed-form
right-translation operators acting directly on normal words; folding a
functional word through those operators and applying the counit must
reproduce the bracket.  The oracle tables here are written out by hand
and never call the convolution engine.
"""

import pytest
from hypothesis import given, settings, strategies as st

from matbialg.scalars import ZERO, ONE, integer, scalar
from matbialg.freealg import NCPoly
from matbialg.duality import (
    DUAL_LETTERS,
    NINE_BASIS,
    antipode_certificates,
    build_finite_subalgebra,
    casimir_report,
    coproduct_report,
    duality,
    full_report,
    pairing_report,
    relation_report,
    solve_in_span,
)

MAXDEG = 5          # unit-test horizon; the acceptance suite pushes to 8


def braket(name, u, f):
    return duality(name).pair(u, f)


# ---------------------------------------------------------------------------
# base values
# ---------------------------------------------------------------------------

def test_base_values_s03():
    assert braket("s03", "A", "at^3") == integer(3)
    assert braket("s03", "A", "1") == ZERO
    assert braket("s03", "B", "bt*at*at") == ONE
    assert braket("s03", "B", "at*bt") == ZERO  # not a normal word: reduces to 0
    assert braket("s03", "C", "at*at*ct") == ONE
    assert braket("s03", "D", "dt") == ONE
    assert braket("s03", "D", "dt*dt") == ZERO


def test_base_values_s14():
    assert braket("s14", "A", "at^4") == integer(4)
    assert braket("s14", "A", "at*dt") == ZERO
    assert braket("s14", "B", "bt") == ONE
    assert braket("s14", "B", "bt*ct") == ZERO
    assert braket("s14", "C", "ct") == ONE
    assert braket("s14", "D", "at*at*dt") == ONE
    assert braket("s14", "E", "1") == ONE
    assert braket("s14", "E", "at") == ZERO
    assert braket("s14", "K", "at^3") == integer(-1)
    assert braket("s14", "K", "at^4") == ONE
    assert braket("s14", "K", "bt") == ZERO


def test_base_values_s14o():
    assert braket("s14o", "A", "at*at") == integer(2)
    assert braket("s14o", "B", "at*bt") == ONE
    assert braket("s14o", "B", "bt*at") == ONE  # same normal form
    assert braket("s14o", "C", "at*ct") == ONE
    assert braket("s14o", "D", "at*dt") == ONE
    assert braket("s14o", "K", "at") == integer(-1)


def test_counit_functional_values():
    for name in DUAL_LETTERS:
        d = duality(name)
        for z in d.letters:
            want = ONE if z in ("E", "K") else ZERO
            assert d.counit_dual(z) == want, (name, z)


def test_alias_parse_sl2():
    d = duality("s14o")
    half = scalar("1/2")
    assert d.parse("Xp") == (NCPoly.letter("D") - NCPoly.letter("C")) * half
    assert d.parse("Xm") == (NCPoly.letter("D") + NCPoly.letter("C")) * half
    assert d.parse("2*Xp + 2*Xm") == 2 * NCPoly.letter("D")


# ---------------------------------------------------------------------------
# independent right-translation oracles
# ---------------------------------------------------------------------------

def _eps(p: NCPoly):
    """Counit on the symmetrized letters, inlined: 1 on pure at-powers."""
    total = ZERO
    for w, c in p.terms.items():
        if all(x == "at" for x in w):
            total = total + c
    return total


_FIRST_SWAP = {"at": "bt", "bt": "at", "ct": "dt", "dt": "ct"}
_LAST_IMAGE = {"at": ("ct", -1), "bt": ("dt", 1), "ct": ("at", 1), "dt": ("bt", -1)}
_SINGLE_D = {"at": ("dt", 1), "bt": ("ct", -1), "ct": ("bt", -1), "dt": ("at", 1)}


def _rr03(z, p: NCPoly) -> NCPoly:
    out = NCPoly.zero()
    for w, c in p.terms.items():
        if z == "A":
            out = out + NCPoly.word(w, c * integer(len(w)))
        elif z == "B":
            if w:
                out = out + NCPoly.word((_FIRST_SWAP[w[0]],) + w[1:], c)
        elif z == "C":
            if w:
                img, s = _LAST_IMAGE[w[-1]]
                out = out + NCPoly.word(w[:-1] + (img,), c * integer(s))
        elif z == "D":
            if len(w) == 1:
                img, s = _SINGLE_D[w[0]]
                out = out + NCPoly.word((img,), c * integer(s))
    return out


def _oracle03(u, f):
    p = NCPoly.word(tuple(f))
    for z in reversed(u):
        p = _rr03(z, p)
    return _eps(p)


def test_oracle_matches_bracket_s03():
    from itertools import product
    d = duality("s03")
    words = [w for deg in range(5) for w in d.presentation.basis(deg)]
    for n in range(4):
        for u in product("ABCD", repeat=n):
            for f in words:
                assert d.pair_word(u, f) == _oracle03(u, f), (u, f)


def _split_family(w):
    """(family, k, l) for s14 normal words: at^k dt^l or bt^k ct^l."""
    if all(x in ("at", "dt") for x in w):
        k = sum(1 for x in w if x == "at")
        return "ad", k, len(w) - k
    k = sum(1 for x in w if x == "bt")
    return "bc", k, len(w) - k


def _rr14(z, p: NCPoly) -> NCPoly:
    out = NCPoly.zero()
    for w, c in p.terms.items():
        if z == "A":
            out = out + NCPoly.word(w, c * integer(len(w)))
        elif z == "B":
            if len(w) == 1:
                out = out + NCPoly.word((_FIRST_SWAP[w[0]],), c)
        elif z == "E":
            if not w:
                out = out + NCPoly.word((), c)
        elif z == "D":
            fam, k, l = _split_family(w)
            x, y = ("at", "dt") if fam == "ad" else ("bt", "ct")
            lower = 1 if fam == "bc" else -1     # sign of the l -> l-1 term
            if l:
                s = lower * (1 if l % 2 == 0 else -1) * l
                out = out + NCPoly.word((x,) * (k + 1) + (y,) * (l - 1),
                                        c * integer(s))
            if k:
                s = -lower * (1 if l % 2 == 0 else -1) * k
                out = out + NCPoly.word((x,) * (k - 1) + (y,) * (l + 1),
                                        c * integer(s))
    return out


def _oracle14(u, f):
    p = NCPoly.word(tuple(f))
    for z in reversed(u):
        p = _rr14(z, p)
    return _eps(p)


def test_oracle_matches_bracket_s14():
    from itertools import product
    d = duality("s14")
    words = [w for deg in range(5) for w in d.presentation.basis(deg)]
    for n in range(4):
        for u in product("ABDE", repeat=n):
            for f in words:
                assert d.pair_word(u, f) == _oracle14(u, f), (u, f)


def test_oracle_spot_values():
    # a few values worked out by hand with the closed forms
    assert _oracle14(("D", "D"), ("dt", "dt")) == integer(-2)
    assert braket("s14", "D*D", "dt*dt") == integer(-2)
    assert _oracle03(("A", "B"), ("bt", "at")) == integer(2)
    assert braket("s03", "A*B", "bt*at") == integer(2)


# ---------------------------------------------------------------------------
# the verified identity catalog
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("name", ["s03", "s14", "s14o"])
def test_relation_report(name):
    for line in relation_report(name, MAXDEG):
        assert line.ok, (line.tag, line.witness)


@pytest.mark.parametrize("name", ["s03", "s14", "s14o"])
def test_coproduct_report(name):
    for line in coproduct_report(name, MAXDEG):
        assert line.ok, (line.tag, line.witness)


@pytest.mark.parametrize("name", ["s03", "s14", "s14o"])
def test_casimir_report(name):
    for line in casimir_report(name, MAXDEG):
        assert line.ok, (line.tag, line.witness)


@pytest.mark.parametrize("name", ["s03", "s14", "s14o"])
def test_pairing_tables(name):
    for line in pairing_report(name, MAXDEG + 1):
        assert line.ok, (line.tag, line.witness)


def test_report_tags_are_unique_enough():
    # every tag appears, and the full report is the concatenation
    lines = full_report("s14", 3)
    tags = [l.tag for l in lines]
    assert "s14.rel.a" in tags and "s14.cop.E" in tags
    assert "s14.pair.powA" in tags and "s14.cas.D2" in tags


# ---------------------------------------------------------------------------
# convolution laws (engine-level properties)
# ---------------------------------------------------------------------------

sym_words = st.lists(st.sampled_from(["at", "bt", "ct", "dt"]),
                     max_size=5).map(tuple)
dual_words_s03 = st.lists(st.sampled_from("ABCD"), max_size=3).map(tuple)


@settings(max_examples=60, deadline=None)
@given(u=dual_words_s03, v=dual_words_s03, f=sym_words)
def test_convolution_associative(u, v, f):
    d = duality("s03")
    p, q = NCPoly.word(u), NCPoly.word(v)
    w = NCPoly.letter("B") - 2 * NCPoly.word(("A", "D"))
    lhs = (p * q) * w
    rhs = p * (q * w)
    nf = d.presentation.normal_form(NCPoly.word(f))
    assert d.pair(lhs, nf) == d.pair(rhs, nf)


@settings(max_examples=60, deadline=None)
@given(f=sym_words, g=sym_words)
def test_sign_character_multiplicative(f, g):
    for name in ("s14", "s14o"):
        d = duality(name)
        pf = d.presentation.normal_form(NCPoly.word(f))
        pg = d.presentation.normal_form(NCPoly.word(g))
        prod = d.presentation.normal_form(pf * pg)
        assert d.pair("K", prod) == d.pair("K", pf) * d.pair("K", pg)


@settings(max_examples=40, deadline=None)
@given(f=sym_words)
def test_unit_functional_is_counit(f):
    for name in ("s03", "s14", "s14o"):
        d = duality(name)
        nf = d.presentation.normal_form(NCPoly.word(f))
        assert d.pair("1", nf) == d.presentation.counit(nf)


@pytest.mark.parametrize("name", ["s03", "s14", "s14o"])
def test_diagonal_power_values(name):
    d = duality(name)
    for n in range(1, 5):
        u = d.parse("A") ** n
        for k in range(7):
            want = integer(k ** n)
            assert d.pair(u, NCPoly.word(("at",) * k)) == want


# ---------------------------------------------------------------------------
# separation structure: which words the functionals can see at all
# ---------------------------------------------------------------------------

def _alive(name, letters, maxlen, deg):
    from itertools import product
    d = duality(name)
    dualwords = [w for n in range(maxlen + 1)
                 for w in product(letters, repeat=n)]
    out = {}
    for dd in range(deg + 1):
        for f in d.presentation.basis(dd):
            out[f] = any(d.pair_word(u, f) for u in dualwords)
    return out


def test_separation_s03():
    alive = _alive("s03", "ABCD", 4, 3)

    def expected(w):
        # the four shapes the base functionals are built from, plus the
        # lone fourth letter
        if w == ("dt",):
            return True
        core = w
        if core and core[0] == "bt":
            core = core[1:]
        if core and core[-1] == "ct":
            core = core[:-1]
        return all(x == "at" for x in core)

    for w, got in alive.items():
        assert got == expected(w), w


def test_separation_s14():
    # the whole off-diagonal family is annihilated from length two on
    alive = _alive("s14", "ABCDEK", 4, 3)
    for w, got in alive.items():
        fam, _, _ = _split_family(w)
        if fam == "bc" and len(w) >= 2:
            assert not got, w
        else:
            assert got, w


def test_separation_s14o():
    alive = _alive("s14o", "ABCDK", 4, 3)
    assert all(alive.values())


# ---------------------------------------------------------------------------
# the nine-dimensional subalgebra
# ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def nine():
    return build_finite_subalgebra(verify_deg=6)


# left multiplication by each generating functional, basis element by basis
# element; the two-letter labels follow NINE_BASIS order
LEFT_MULT = {
    "B": {"1": "B", "B": "B^2", "C": "B*C", "D": "B*D", "B*C": "C",
          "B*D": "D", "D*C": "D^2", "B^2": "B", "D^2": "D*C"},
    "C": {"1": "C", "B": "B*C + 2*D", "C": "-B^2", "D": "-D*C",
          "B*C": "-B + 2*D*C", "B*D": "D^2", "D*C": "D", "B^2": "C",
          "D^2": "-B*D"},
    "D": {"1": "D", "B": "-B*D", "C": "D*C", "D": "D^2", "B*C": "-D^2",
          "B*D": "-D*C", "D*C": "-B*D", "B^2": "D", "D^2": "D"},
}

_LABEL = {"1": (), "B": ("B",), "C": ("C",), "D": ("D",),
          "B*C": ("B", "C"), "B*D": ("B", "D"), "D*C": ("D", "C"),
          "B^2": ("B", "B"), "D^2": ("D", "D")}


def test_nine_dim_basis_is_fixed():
    assert NINE_BASIS == tuple(_LABEL[k] for k in
                               ("1", "B", "C", "D", "B*C", "B*D", "D*C",
                                "B^2", "D^2"))


def test_nine_dim_left_multiplication_table(nine):
    d = duality("s03")
    for gen, row in LEFT_MULT.items():
        gv = nine.word_vector((gen,))
        for col, expr in row.items():
            got = nine.multiply(gv, nine.word_vector(_LABEL[col]))
            want = nine.element_vector(d.parse(expr))
            assert got == want, (gen, col)


def test_nine_dim_is_algebra(nine):
    assert nine.dim == 9
    assert nine.is_unital()
    assert nine.is_associative()


def test_nine_dim_cubic_collapses(nine):
    d = duality("s03")
    pairs = [("B*D*C", "D^2"), ("B^2*C", "C"), ("B*D^2", "D*C"),
             ("B^2*B", "B"), ("D*D*D", "D")]
    for lhs, rhs in pairs:
        assert nine.element_vector(d.parse(lhs)) == \
            nine.element_vector(d.parse(rhs)), lhs


def test_nine_dim_escape_detected():
    # dropping the D^2 basis vector makes D*D escape the remaining span
    basis = tuple(w for w in NINE_BASIS if w != ("D", "D"))
    with pytest.raises(ValueError):
        build_finite_subalgebra(basis=basis, verify_deg=4)


# ---------------------------------------------------------------------------
# antipode certificates
# ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def certs():
    return antipode_certificates(6)


def test_antipode_infeasible_s03(certs):
    c = certs["s03.antipode.B"]
    assert not c.feasible
    assert c.witness == ("bt",)
    assert c.rank_aug == c.rank_lhs + 1


def test_antipode_infeasible_s14(certs):
    c = certs["s14.antipode.E"]
    assert not c.feasible
    assert c.witness == ("at",)
    assert c.rank_aug == c.rank_lhs + 1


def test_antipode_controls_feasible(certs):
    assert certs["s03.antipode.control"].feasible
    assert certs["s14.antipode.control"].feasible


def test_antipode_infeasible_inside_nine_dim(nine):
    from matbialg.linalg import rank, solve
    d = duality("s03")
    squash = nine.left_matrix(nine.element_vector(d.parse("1 - B^2")))
    target = [-x for x in nine.word_vector(("B",))]
    assert solve(squash, target) is None
    aug = [row + [t] for row, t in zip(squash, target)]
    assert rank(aug) == rank(squash) + 1


def test_squashed_multiplier_has_rank_one(nine):
    # (1 - B^2) annihilates every non-unit basis element, so its left
    # multiplication matrix has rank exactly one
    from matbialg.linalg import rank
    d = duality("s03")
    squash = nine.left_matrix(nine.element_vector(d.parse("1 - B^2")))
    assert rank(squash) == 1


def test_idempotent_functional_s14():
    d = duality("s14")
    ok, _ = d.verify_relation("E*E", "E", MAXDEG)
    assert ok


# ---------------------------------------------------------------------------
# negative controls: corrupted claims must be caught, with exact witnesses
# ---------------------------------------------------------------------------

def test_wrong_relation_detected():
    d = duality("s03")
    ok, witness = d.verify_relation("B^3", "-B", MAXDEG)
    assert not ok and witness == ("bt",)
    ok, witness = d.verify_relation("C^3", "C", MAXDEG)
    assert not ok and witness == ("ct",)


def test_wrong_coproduct_detected():
    d = duality("s03")
    # pretending the first-letter functional splits primitively
    ok, witness = d.verify_coproduct("B", [("B", "1"), ("1", "B")], 4)
    assert not ok
    assert witness == (("at",), ("bt",))


def test_wrong_casimir_detected():
    d = duality("s03")
    ok, witness = d.casimir_check("B", 4)
    assert not ok
    gen, word = witness
    assert gen in ("C", "D")


def test_infeasible_solve_reports_solution_when_feasible():
    d = duality("s03")
    res = solve_in_span(d, "B^2", "B", ["B", "C"], 4)
    assert res.feasible
    # the coordinates must solve the equation: B^2 * B = B
    assert res.coords[0] == ONE and res.coords[1] == ZERO
