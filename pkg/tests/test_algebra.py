import random

import pytest

from homlie import coeffexpr as ce
from homlie.algebra import (
    AlgebraPresentation,
    AlphaRule,
    BracketTerm,
    Family,
    PresentationError,
    UnknownBuiltin,
    UnknownGenerator,
    Vector,
    Window,
    builtin,
)
from homlie.qfield import QRational, qbracket, qbrace, qpow

Q1 = QRational(1)


def vec(p, fam, deg, coeff=1):
    return Vector.of(p.generator(fam, deg), coeff)


# -- bracket and twist values ---------------------------------------------------


def test_w22q_trivial_bracket(w22q):
    out = w22q.bracket(vec(w22q, "L", 1), vec(w22q, "L", 2))
    assert out == vec(w22q, "L", 3)  # coefficient [2-1] = 1


def test_w22q_mixed_bracket_oracle(w22q):
    out = w22q.bracket(vec(w22q, "L", 0), vec(w22q, "W", 3))
    assert out.get(w22q.generator("W", 3)) == qbracket(3)


def test_w22q_skew_resolution(w22q):
    # [W_3, L_1] = -[L_1, W_3] = -[3-1] W_4 through the mirror rule
    out = w22q.bracket(vec(w22q, "W", 3), vec(w22q, "L", 1))
    assert out == Vector.of(w22q.generator("W", 4), -qbracket(2))
    mirror = w22q.bracket(vec(w22q, "L", 1), vec(w22q, "W", 3))
    assert out == -1 * mirror


def test_wittsuperq_gg_bracket_vanishes(wittsuperq):
    out = wittsuperq.bracket(vec(wittsuperq, "G", 2), vec(wittsuperq, "G", 5))
    assert out.is_zero


@pytest.mark.parametrize("m,n", [(2, 5), (0, 1), (-3, 4), (1, 1)])
def test_wittsuperq_super_skew_resolution(wittsuperq, m, n):
    # oracle: the sign rule with |G| = 1, |L| = 0 applied to the declared rule
    direct = wittsuperq.bracket(vec(wittsuperq, "G", m), vec(wittsuperq, "L", n))
    mirror = wittsuperq.bracket(vec(wittsuperq, "L", n), vec(wittsuperq, "G", m))
    assert direct == -1 * mirror
    assert direct.get(wittsuperq.generator("G", m + n)) == qbrace(n) - qbrace(m + 1)


def test_alpha_values(w22q, wittq, example49):
    assert w22q.alpha(vec(w22q, "L", 2)) == Vector.of(
        w22q.generator("L", 2), qpow(2) + qpow(-2)
    )
    assert wittq.alpha(vec(wittq, "L", 0)) == Vector.of(
        wittq.generator("L", 0), QRational(2)
    )
    y = example49.generator("y")
    assert example49.alpha(Vector.of(y)) == Vector.of(y, qpow(1))


def test_example49_brackets(example49):
    x1 = example49.generator("x1")
    x2 = example49.generator("x2")
    y = example49.generator("y")
    lam = qpow(1)
    assert example49.bracket(Vector.of(x1), Vector.of(x2)) == Vector.of(x1, lam ** 2)
    assert example49.bracket(Vector.of(y), Vector.of(y)) == Vector.of(x1, lam ** 2)
    assert example49.bracket(Vector.of(x2), Vector.of(y)) == Vector.of(
        y, -(lam / QRational(2))
    )
    # super mirror of an odd/even pair keeps the minus sign
    assert example49.bracket(Vector.of(y), Vector.of(x2)) == Vector.of(
        y, lam / QRational(2)
    )


def test_unknown_generator_and_builtin(w22q):
    with pytest.raises(UnknownGenerator):
        w22q.generator("G", 0)
    with pytest.raises(UnknownBuiltin):
        builtin("nope")


# -- structural properties --------------------------------------------------------


def _random_vec(p, window, rng):
    gens = p.gens_in(window)
    out = Vector({})
    for _ in range(rng.randint(1, 3)):
        out = out + Vector.of(rng.choice(gens), QRational(rng.randint(-4, 4)))
    return out


@pytest.mark.parametrize("name", ["w22q", "wittq", "wittsuperq", "example49"])
def test_bracket_bilinear_alpha_linear(name):
    p = builtin(name)
    rng = random.Random(11)
    w = Window(-3, 3)
    for _ in range(25):
        x, y, z = (_random_vec(p, w, rng) for _ in range(3))
        c = QRational(rng.randint(-3, 3))
        assert p.bracket(x + c * y, z) == p.bracket(x, z) + c * p.bracket(y, z)
        assert p.bracket(z, x + c * y) == p.bracket(z, x) + c * p.bracket(z, y)
        assert p.alpha(x + c * y) == p.alpha(x) + c * p.alpha(y)


@pytest.mark.parametrize("name", ["w22q", "wittq", "wittsuperq"])
def test_grading_and_parity_additivity(name):
    p = builtin(name)
    w = Window(-3, 3)
    gens = p.gens_in(w)
    for g1 in gens:
        for g2 in gens:
            for g, _ in p.bracket_gens(g1, g2):
                assert g.degree == g1.degree + g2.degree
                assert g.parity == (g1.parity + g2.parity) % 2


@pytest.mark.parametrize("name", ["w22q", "wittq", "wittsuperq", "example49"])
def test_skew_or_super_skew_on_window_pairs(name):
    p = builtin(name)
    w = Window(-3, 3)
    gens = p.gens_in(w)
    for g1 in gens:
        for g2 in gens:
            lhs = p.bracket(Vector.of(g1), Vector.of(g2))
            sign = -1 if (g1.parity * g2.parity) % 2 == 0 else 1
            assert lhs == sign * p.bracket(Vector.of(g2), Vector.of(g1))


def test_alpha_preserves_degree_and_parity(wittsuperq):
    w = Window(-4, 4)
    for g in wittsuperq.gens_in(w):
        for gg, _ in wittsuperq.alpha_gens(g):
            assert gg.degree == g.degree and gg.parity == g.parity


# -- validation -------------------------------------------------------------------


def _mk(families, brackets, alphas, mode="lie"):
    return AlgebraPresentation("test", mode, families, brackets, alphas)


def test_rejects_odd_family_in_lie_mode():
    with pytest.raises(PresentationError):
        _mk([Family("G", 1, "all")], {}, {"G": AlphaRule(ce.num(1), "G")})


def test_rejects_parity_violating_target():
    fams = [Family("L", 0, "all"), Family("G", 1, "all")]
    rules = {("G", "G"): [BracketTerm(ce.num(1), "G", 0)]}
    alphas = {"L": AlphaRule(ce.num(1), "L"), "G": AlphaRule(ce.num(1), "G")}
    with pytest.raises(PresentationError):
        _mk(fams, rules, alphas, mode="super")


def test_rejects_missing_alpha_rule():
    with pytest.raises(PresentationError):
        _mk([Family("L", 0, "all")], {}, {})


def test_rejects_mixed_indexing():
    fams = [Family("L", 0, "all"), Family("x", 0, None)]
    alphas = {"L": AlphaRule(ce.num(1), "L"), "x": AlphaRule(ce.num(1), "x")}
    with pytest.raises(PresentationError):
        _mk(fams, {}, alphas)


def test_window_basis_ordering(w22q):
    gens = w22q.gens_in(Window(-1, 1))
    assert [str(g) for g in gens] == [
        "L(-1)", "L(0)", "L(1)", "W(-1)", "W(0)", "W(1)"
    ]


def test_finite_degree_domain():
    fams = [Family("L", 0, (0, 1, 2))]
    rules = {("L", "L"): [BracketTerm(ce.qbr(ce.affine(cm=-1, cn=1)), "L", 0)]}
    alphas = {"L": AlphaRule(ce.num(1), "L")}
    p = _mk(fams, rules, alphas)
    gens = p.gens_in(Window(-5, 5))
    assert [g.degree for g in gens] == [0, 1, 2]
    # bracket targets outside the finite domain are truncated away
    out = p.bracket(vec(p, "L", 1), vec(p, "L", 2))
    assert out.is_zero
