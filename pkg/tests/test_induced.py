"""Localized monomials, extended brackets, antipode, induced ladders."""

import pytest
from hypothesis import given, settings, strategies as st

from matbialg.bialgebra import algebra
from matbialg.duality import duality
from matbialg.freealg import NCPoly
from matbialg.induced import (
    DUAL_ANTIPODE,
    OMEGA_IN_BASE,
    InducedModule,
    PowerElem,
    act_left,
    act_right,
    action_oracle_report,
    antipode,
    antipode_axiom_report,
    classical_bracket,
    classical_match_report,
    classical_order_control,
    dual_antipode_report,
    elem_poly,
    hat_pair,
    hat_to_base,
    induce,
    induced_report,
    leibniz_report,
    left_right_commute_report,
    negative_power_report,
    om_action_report,
    omega_report,
    sl2_generators,
    split_tail,
    word_elem,
)
from matbialg.reps import WeightError, intertwiner_space
from matbialg.scalars import ONE, ZERO, integer, scalar


def j(*xs):
    return [integer(x) for x in xs]


EXT = algebra("s14o_mc_ext")
MC = algebra("s14o_mc")
BASE = algebra("s14o")


# -- change of alphabet -------------------------------------------------------

def test_hat_letters_in_base():
    assert hat_to_base("ah") == BASE.parse("at + bt")
    assert hat_to_base("bh") == BASE.parse("dt - ct")
    assert hat_to_base("ch") == BASE.parse("ct + dt")
    assert hat_to_base("dh") == BASE.parse("at - bt")


def test_determinant_in_base():
    assert hat_to_base(MC.parse("ah*dh + bh*ch")) == BASE.parse(OMEGA_IN_BASE)


def test_hat_to_base_rejects_tail_letters():
    with pytest.raises(ValueError, match="no image"):
        hat_to_base(NCPoly.word(("om",)))


def test_split_tail():
    assert split_tail(("ah", "bh", "om", "om")) == (("ah", "bh"), 2)
    assert split_tail(("dh", "omi")) == (("dh",), -1)
    assert split_tail(()) == ((), 0)


# -- the extended bracket -----------------------------------------------------

def test_single_letter_brackets():
    table = [
        ("A", "ah", 1), ("A", "dh", 1), ("A", "bh", 0), ("A", "ch", 0),
        ("B", "ah", 1), ("B", "dh", -1), ("B", "bh", 0),
        ("K", "ah", -1), ("K", "dh", -1), ("K", "bh", 0),
        ("Xp", "bh", 1), ("Xp", "ch", 0), ("Xp", "ah", 0),
        ("Xm", "ch", 1), ("Xm", "bh", 0), ("Xm", "dh", 0),
    ]
    for z, w, want in table:
        assert hat_pair(z, (w,)) == integer(want), (z, w)


def test_c_and_d_straddle_the_off_diagonal():
    # bh maps onto dt - ct, which both D and C see
    assert hat_pair("D", "bh") == ONE
    assert hat_pair("C", "bh") == integer(-1)
    assert hat_pair("D", "ch") == ONE
    assert hat_pair("C", "ch") == ONE


def test_om_tail_pairings():
    for n in range(-3, 4):
        w = ("om",) * n if n >= 0 else ("omi",) * (-n)
        assert hat_pair("A", w) == integer(2 * n)
        assert hat_pair("K", w) == ONE
        for z in ("B", "C", "D", "Xp", "Xm"):
            assert hat_pair(z, w) == ZERO, (z, n)


def test_om_tail_matches_expanded_powers():
    # for nonnegative tails the group-like rule must agree with pairing
    # the fully expanded base polynomial
    d = duality("s14o")
    omega = BASE.parse(OMEGA_IN_BASE)
    for wtext in ("ah", "ah*dh", "bh", "dh*dh"):
        hat = MC.parse(wtext)
        for n in (1, 2):
            expanded = hat_to_base(hat)
            for _ in range(n):
                expanded = BASE.normal_form(expanded * omega)
            wext = EXT.parse(wtext) * NCPoly.word(("om",) * n)
            for z in ("A", "B", "C", "D", "K", "Xp", "Xm"):
                assert hat_pair(z, wext) == d.pair(z, expanded), (wtext, n, z)


def test_bracket_respects_determinant_rewrite():
    for z in ("A", "B", "C", "D", "K"):
        lhs = hat_pair(z, "bh*ch")
        rhs = hat_pair(z, "om") - hat_pair(z, "ah*dh")
        assert lhs == rhs, z


def test_bracket_on_products_of_functionals():
    # convolution against the extended coproduct: <B*B, ah*ah> counts the
    # two ways of landing on the diagonal string
    got = hat_pair("B*B", "ah*ah")
    direct = duality("s14o").pair("B*B", hat_to_base(MC.parse("ah*ah")))
    assert got == direct


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["A", "B", "C", "D", "K", "Xp", "Xm"]),
       st.lists(st.sampled_from(["ah", "dh", "bh", "ch", "om", "omi"]),
                min_size=0, max_size=3))
def test_om_omi_insertion_is_invisible(z, w):
    w = tuple(w)
    assert hat_pair(z, w) == hat_pair(z, w + ("om", "omi"))
    assert hat_pair(z, w) == hat_pair(z, ("omi",) + w + ("om",))


# -- determinant element and antipode -----------------------------------------

def test_omega_report_all_ok():
    lines = omega_report()
    assert all(line.ok for line in lines), [l.tag for l in lines if not l.ok]
    assert {l.tag for l in lines} == {
        "s14o.om.det", "s14o.om.base", "s14o.om.grouplike", "s14o.om.central",
        "s14o.om.inverse", "s14o.om.counit", "s14o.om.pairing",
        "s14o.om.adjugate", "s14o.om.antipode",
    }


def test_antipode_letter_images():
    assert antipode("ah") == EXT.parse("dh*omi")
    assert antipode("dh") == EXT.parse("ah*omi")
    assert antipode("bh") == EXT.parse("bh*omi")
    assert antipode("om") == EXT.parse("omi")


def test_antipode_reverses_words():
    # anti-homomorphism: the images multiply in the reversed order
    got = antipode("ah*bh")
    assert got == EXT.normal_form("-dh*bh*omi*omi")


def test_antipode_is_an_involution():
    for deg in range(4):
        for w in EXT.basis(deg):
            p = NCPoly.word(w)
            assert antipode(antipode(p)) == EXT.normal_form(p), w


def test_antipode_axiom():
    assert antipode_axiom_report(3).ok


def test_dual_antipode_legs():
    line = dual_antipode_report(3)
    assert line.ok, line.witness


def test_dual_antipode_spot_value():
    # <image(D), ah*dh> == <D, antipode(ah*dh)>
    img = duality("s14o").parse(DUAL_ANTIPODE["D"])
    lhs = hat_pair(img, "ah*dh")
    rhs = hat_pair("D", antipode("ah*dh"))
    assert lhs == rhs


# -- first-order substitution rule --------------------------------------------

def test_classical_match_to_degree_four():
    line = classical_match_report(4)
    assert line.ok, line.witness


def test_classical_rule_is_order_sensitive():
    rule, bracket = classical_order_control()
    assert rule == ONE
    assert bracket == integer(-1)


def test_classical_bracket_values():
    assert classical_bracket("A", ("ah", "ah")) == integer(2)
    assert classical_bracket("B", ("ah", "dh")) == ZERO
    assert classical_bracket("Xp", ("dh", "bh")) == ONE
    assert classical_bracket("Xp", ("bh", "bh")) == ZERO


# -- localized power monomials ------------------------------------------------

def test_monomial_reduction_on_construction():
    # bh*ch rewrites onto om - ah*dh
    e = PowerElem.monomial(0, 0, 1, 1)
    want = PowerElem.monomial(0, 0, 0, 0, 1) - PowerElem.monomial(1, 1, 0, 0)
    assert e == want


def test_mul_exchange_signs():
    a = PowerElem.monomial(1, 0, 0, 0)
    b = PowerElem.monomial(0, 0, 1, 0)
    assert b * a == PowerElem.monomial(1, 0, 1, 0) * integer(-1)
    d = PowerElem.monomial(0, 1, 0, 0)
    assert d * a == PowerElem.monomial(1, 1, 0, 0)


def test_negative_diagonal_power_is_inverse():
    dinv = PowerElem.monomial(0, -1, 0, 0)
    d = PowerElem.monomial(0, 1, 0, 0)
    assert d * dinv == PowerElem.one()
    assert dinv * d == PowerElem.one()
    b = PowerElem.monomial(0, 0, 1, 0)
    assert b * dinv == dinv * b * integer(-1)


def test_str_formatting():
    assert str(PowerElem.monomial(1, -2, 0, 0, 3)) == "ah*dh^-2*om^3"
    assert str(PowerElem.zero()) == "0"
    assert str(PowerElem.one()) == "1"
    assert str(PowerElem.monomial(0, 0, 1, 0, 0, coeff=integer(-1))) == "-bh"


_KEY = st.tuples(st.integers(0, 2), st.integers(-2, 2), st.integers(0, 2),
                 st.integers(0, 2), st.integers(-1, 1))


@settings(max_examples=40, deadline=None)
@given(_KEY, _KEY, _KEY)
def test_monomial_multiplication_associative(k1, k2, k3):
    a, b, c = (PowerElem.monomial(*k) for k in (k1, k2, k3))
    assert (a * b) * c == a * (b * c)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.sampled_from(["ah", "dh", "bh", "ch", "om", "omi"]),
                min_size=0, max_size=3),
       st.lists(st.sampled_from(["ah", "dh", "bh", "ch", "om", "omi"]),
                min_size=0, max_size=3))
def test_monomial_multiplication_matches_presentation(w1, w2):
    lhs = word_elem(tuple(w1)) * word_elem(tuple(w2))
    rhs = word_elem(tuple(w1) + tuple(w2))
    assert lhs == rhs


def test_word_elem_round_trip():
    for deg in range(4):
        for w in EXT.basis(deg):
            e = word_elem(w)
            assert elem_poly(e) == EXT.normal_form(NCPoly.word(w)), w


def test_elem_poly_rejects_negative_powers():
    with pytest.raises(ValueError, match="negative dh exponent"):
        elem_poly(PowerElem.monomial(0, -1, 0, 0))


# -- translation actions ------------------------------------------------------

def test_left_action_single_letters():
    assert act_left("Xp", word_elem("ah")) == word_elem("ch")
    assert act_left("Xp", word_elem("bh")) == word_elem("dh")
    assert act_left("Xm", word_elem("dh")) == word_elem("bh")
    assert act_left("Xm", word_elem("ch")) == word_elem("ah")
    assert act_left("Xp", word_elem("ch")) == PowerElem.zero()
    assert act_left("Xp", word_elem("dh")) == PowerElem.zero()


def test_left_action_closed_form_signs():
    # ah^2 sends the raising step across the block with a sign
    assert act_left("Xp", PowerElem.monomial(2, 0, 0, 0)) == \
        PowerElem.monomial(1, 0, 0, 1) * integer(-2)
    assert act_left("Xm", PowerElem.monomial(0, 2, 0, 0)) == \
        PowerElem.monomial(0, 1, 1, 0) * integer(-2)


def test_scalar_actions():
    e = PowerElem.monomial(1, 2, 3, 0, -1)
    assert act_left("A", e) == e * integer(-4)   # -(1+2+3+0-2)
    assert act_right("A", e) == e * integer(4)
    assert act_left("B", e) == e * integer(-2)   # 2+0-1-3
    assert act_right("B", e) == e * integer(-4)  # 1+0-2-3
    assert act_left("K", e) == e                 # parity of 1+2+3 is even
    f = PowerElem.monomial(1, 0, 0, 0)
    assert act_left("K", f) == f * integer(-1)


def test_action_on_om_powers():
    for n in (-2, -1, 1, 3):
        e = PowerElem.monomial(0, 0, 0, 0, n)
        assert act_left("A", e) == e * integer(-2 * n)
        assert act_right("A", e) == e * integer(2 * n)
        assert act_left("K", e) == e
        assert not act_left("Xp", e)
        assert not act_right("Xm", e)


def test_action_through_parsed_expressions():
    # composite functionals run through the dual parser (aliases expanded)
    e = PowerElem.monomial(1, -1, 1, 0, 0)
    comm = act_left("Xp*Xm - Xm*Xp", e)
    assert comm == act_left("B", e)
    assert act_left("K*K", e) == e
    assert act_left("D", word_elem("ah")) == word_elem("ch")


def test_action_oracle():
    line = action_oracle_report(3)
    assert line.ok, line.witness


def test_leibniz_rules():
    assert leibniz_report().ok


def test_left_right_commute():
    assert left_right_commute_report().ok


def test_om_action_report():
    assert om_action_report().ok


def test_negative_power_consistency():
    assert negative_power_report().ok


@settings(max_examples=30, deadline=None)
@given(_KEY, _KEY, st.sampled_from(["Xp", "Xm"]))
def test_twisted_product_rule_random(k1, k2, z):
    g, h = PowerElem.monomial(*k1), PowerElem.monomial(*k2)
    assert act_left(z, g * h) == \
        act_left(z, g) * h + act_left("K", g) * act_left(z, h)
    assert act_right(z, g * h) == \
        act_right(z, g) * act_right("K", h) + g * act_right(z, h)


# -- induced ladder modules ---------------------------------------------------

def test_parity_rejection():
    with pytest.raises(WeightError, match="parity"):
        induce(1, 2)
    with pytest.raises(WeightError, match="parity"):
        induce(2, 5)
    with pytest.raises(WeightError):
        induce(-1, 2)


def test_window_rejection():
    with pytest.raises(ValueError, match="window too short"):
        induce(3, 3, L=4)
    # L == nu + 2 is the smallest accepted window
    assert induce(3, 3, L=5).L == 5


def test_ladder_scalars():
    m = induce(3, 3, L=12)
    assert m.rep.scalar_action("A") == integer(-3)
    assert m.rep.scalar_action("K") == integer(-1)
    B = m.rep.matrices["B"]
    for l in range(13):
        assert B[l][l] == integer(3 - 2 * l)
        for i in range(13):
            if i != l:
                assert B[i][l] == ZERO


def test_ladder_steps_frozen():
    m = induce(3, 3, L=12)
    assert [str(m.up[l - 1][l]) for l in range(1, 5)] == ["1", "-2", "3", "-4"]
    assert [str(m.down[l + 1][l]) for l in range(5)] == \
        ["3", "-2", "1", "0", "-1"]
    # the raising step kills the bottom rung
    assert all(m.up[i][0] == ZERO for i in range(13))


def test_ladder_and_sl2_reports():
    m = induce(3, 3, L=12)
    assert m.ladder_report().ok
    assert m.sl2_report().ok
    assert m.dropped == [("Xm", "u12")]


def test_truncated_relations_hold_off_boundary():
    m = induce(3, 3, L=12)
    assert m.rep.boundary == frozenset({11, 12})
    lines = m.rep.check_relations()
    assert all(l.ok for l in lines)
    assert any("2 window-boundary columns excluded" in l.detail
               for l in lines)


def test_invariant_bottom():
    m = induce(3, 3, L=12)
    assert m.invariant_dim() == 4
    sub = m.submodule()
    assert sub.dim == 4
    assert sub.relations_hold()
    cert = m.certificate()
    assert cert["ok"]
    assert [str(s) for s in cert["b_spectrum"]] == ["3", "1", "-1", "-3"]
    # Schur line: the bottom has a one-dimensional endomorphism space
    assert len(intertwiner_space(sub.matrices, sub.matrices)) == 1


def test_rep_action_reaches_ladder_matrices():
    # the module exposes A,B,C,D,K; the ladder aliases come back through
    # the parser as (D -+ C)/2
    m = induce(2, 4, L=10)
    assert m.rep.action("Xp") == m.up
    assert m.rep.action("Xm") == m.down


def test_eta_form_is_sign_free():
    m = induce(3, 5, L=12)
    assert m.eta_report().ok
    T, mats, up, down = m.eta_transform()
    for l in range(1, 13):
        assert up[l - 1][l] == integer(l)
    for l in range(12):
        assert down[l + 1][l] == integer(3 - l)


def test_degenerate_weights():
    # nu == 0: the bottom is the trivial line
    m = induce(0, 4, L=6)
    assert m.invariant_dim() == 1
    assert m.certificate()["ok"]
    assert m.rep.scalar_action("A") == integer(-4)
    # rho below nu is fine: the degree weight is free
    m2 = induce(4, 0, L=10)
    assert m2.rep.scalar_action("A") == ZERO
    assert m2.omega_power == -2
    assert m2.invariant_dim() == 5


@pytest.mark.parametrize("nu,rho", [(0, 0), (1, 1), (2, 0), (4, 2), (5, 3)])
def test_ladder_reports_over_weight_grid(nu, rho):
    m = induce(nu, rho, L=nu + 4)
    assert m.ladder_report().ok
    assert m.sl2_report().ok
    assert m.invariant_dim() == nu + 1
    assert m.certificate()["ok"]
    assert m.eta_report().ok
    assert m.vector_field_report().ok


def test_invariant_rungs_nonnegative():
    m = induce(3, 3, L=12)
    genuine, band = m.invariant_rungs()
    assert genuine == [frozenset(range(4))]
    # every other seed climbs into the untrusted top band
    assert all(max(s) >= 11 for s in band)
    line = m.invariant_report()
    assert line.ok and "dimension 4" in line.detail


def test_negative_weight_module():
    # opposite-sign pairs with equal parity are legitimate: the window
    # just never closes, so no invariant subspace can be certified
    m = induce(-1, 1, L=8)
    assert m.omega_power == 1
    assert m.rep.scalar_action("A") == integer(-1)
    B = m.rep.matrices["B"]
    assert [str(B[l][l]) for l in range(3)] == ["-1", "-3", "-5"]
    assert m.ladder_report().ok
    assert m.sl2_report().ok
    assert m.eta_report().ok
    assert m.vector_field_report().ok
    genuine, band = m.invariant_rungs()
    assert genuine == []
    assert band  # every closure climbs out of the window
    line = m.invariant_report()
    assert line.ok
    assert "no invariant subspace within truncation" in line.detail


def test_negative_weight_has_no_bottom():
    m = induce(-1, 1, L=8)
    with pytest.raises(ValueError, match="negative diagonal weight"):
        m.submodule()
    with pytest.raises(ValueError, match="negative diagonal weight"):
        m.certificate()


def test_right_action_membership():
    # the ladder vectors are carved out of the localized algebra by
    # right-action conditions; check one rung directly
    m = induce(3, 3, L=6)
    u = m.vectors[2]
    assert not act_right("Xm", u)
    assert act_right("A", u) == u * integer(3)
    assert act_right("B", u) == u * integer(-3)


def test_vector_field_matrices():
    m = induce(2, 2, L=5)
    _, mats, up, down = m.eta_transform()
    # lowering differentiates: column l holds the single entry l
    assert up[1][2] == integer(2)
    assert up[4][5] == integer(5)
    # raising multiplies by nu - l, with the step off the window dropped
    assert down[3][2] == ZERO  # nu - 2 == 0
    assert down[1][0] == integer(2)
    assert all(down[i][5] == ZERO for i in range(6))
    assert m.vector_field_report().ok


def test_sl2_generator_certificate():
    xp, xm, line = sl2_generators(maxdeg=3)
    assert line.ok, (line.detail, line.witness)
    assert line.tag == "s14o.ind.sl2gens"
    d = duality("s14o")
    assert d.counit_dual(xp) == ZERO and d.counit_dual(xm) == ZERO
    # the pair straddles the two off-diagonal functionals
    assert xp == (d.parse("D") - d.parse("C")) * scalar("1/2")
    assert xm == (d.parse("D") + d.parse("C")) * scalar("1/2")


def test_induced_report_aggregate():
    lines = induced_report(nu_max=3, L=8, maxdeg=2)
    assert all(l.ok for l in lines), \
        [(l.tag, l.detail, l.witness) for l in lines if not l.ok]
    # 9 determinant/antipode facts, 8 engine facts, 1 rejection line and
    # 1 generator line, then seven lines for each of the 8 weight pairs
    # with equal parity and six for the negative-weight probe
    assert len(lines) == 9 + 8 + 1 + 1 + 7 * 8 + 6
    tags = {l.tag for l in lines}
    for t in ("s14o.ind.ladder", "s14o.ind.sl2", "s14o.ind.invariant",
              "s14o.ind.bottom", "s14o.ind.eta", "s14o.ind.field",
              "s14o.ind.window", "s14o.ind.reject", "s14o.ind.engine",
              "s14o.ind.sl2gens"):
        assert t in tags
    neg = [l for l in lines if l.tag == "s14o.ind.invariant"
           and "nu=-1" in l.detail]
    assert len(neg) == 1 and neg[0].ok
    assert "no invariant subspace within truncation" in neg[0].detail
