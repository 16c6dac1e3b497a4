from fractions import Fraction

import pytest

from homlie import coeffexpr as ce
from homlie.algebra import (
    AlgebraPresentation,
    AlphaRule,
    BracketTerm,
    Family,
    Vector,
    Window,
    builtin,
)
from homlie.checker import (
    ClassModeMismatch,
    check_axioms,
    check_bilinear_class,
    check_bilinear_skew,
    check_linear_class,
    check_multiplicative,
)
from homlie.classify import known_map
from homlie.maps import BilinearMap, LinearMap, scaled_bracket
from homlie.qfield import QRational, qpow

WIN = Window(-4, 4)
Q1 = QRational(1)


# -- axioms -----------------------------------------------------------------


@pytest.mark.parametrize("name", ["w22q", "wittq", "wittsuperq"])
def test_builtin_axioms_pass(name):
    assert check_axioms(builtin(name), WIN).passed


def test_example49_axioms_pass(example49):
    assert check_axioms(example49, WIN).passed


@pytest.mark.parametrize("name", ["w22q", "wittq", "wittsuperq"])
def test_builtin_twists_not_multiplicative(name):
    rep = check_multiplicative(builtin(name), WIN)
    assert not rep.passed
    assert len(rep.witnesses) >= 1


def _perturbed_w22q():
    # bracket coefficient changed to [n-m] + 1: no longer satisfies the
    # twisted Jacobi identity
    coeff = ce.add(ce.qbr(ce.affine(cm=-1, cn=1)), ce.num(1))
    alpha = ce.add(ce.q_to(ce.affine(cm=1)), ce.q_to(ce.affine(cm=-1)))
    return AlgebraPresentation(
        "perturbed", "lie",
        [Family("L", 0, "all"), Family("W", 0, "all")],
        {
            ("L", "L"): [BracketTerm(coeff, "L", 0)],
            ("L", "W"): [BracketTerm(coeff, "W", 0)],
        },
        {"L": AlphaRule(alpha, "L"), "W": AlphaRule(alpha, "W")},
    )


def test_perturbed_bracket_fails_jacobi():
    p = _perturbed_w22q()
    # independent oracle: evaluate the twisted Jacobi sum at (L_0, L_1, L_2)
    x, y, z = (Vector.of(p.generator("L", d)) for d in (0, 1, 2))
    total = (
        p.bracket(p.alpha(x), p.bracket(y, z))
        + p.bracket(p.alpha(z), p.bracket(x, y))
        + p.bracket(p.alpha(y), p.bracket(z, x))
    )
    assert not total.is_zero
    rep = check_axioms(p, Window(-3, 3))
    assert not rep.passed
    assert any(name == "hom-jacobi" for name, *_ in rep.witnesses)


def test_identity_twist_on_geometric_bracket():
    # same bracket as the one-family deformation but alpha = id: the twisted
    # Jacobi identity fails while multiplicativity holds trivially
    src_rules = {("L", "L"): [BracketTerm(
        ce.sub(ce.qnm(ce.affine(cn=1)), ce.qnm(ce.affine(cm=1))), "L", 0)]}
    p = AlgebraPresentation(
        "idtwist", "lie", [Family("L", 0, "all")], src_rules,
        {"L": AlphaRule(ce.num(1), "L")},
    )
    assert check_multiplicative(p, Window(-3, 3)).passed
    assert not check_axioms(p, Window(-3, 3)).passed


# -- bilinear classes ----------------------------------------------------------


@pytest.mark.parametrize("name,cls", [
    ("w22q", "biderivation"),
    ("wittq", "biderivation"),
    ("wittsuperq", "super_biderivation"),
])
@pytest.mark.parametrize("scale", [1, None])
def test_inner_maps_pass(name, cls, scale):
    p = builtin(name)
    coeff = Q1 if scale else (qpow(1) + QRational(2)) / QRational(3)
    phi = scaled_bracket(p, coeff=coeff)
    assert check_bilinear_class(p, phi, cls, Window(-3, 3)).passed


def test_phi0_is_a_biderivation(w22q):
    phi = known_map("phi_0", w22q)
    assert check_bilinear_class(w22q, phi, "biderivation", WIN).passed


def test_phi0_is_not_an_alpha_biderivation(w22q):
    phi = known_map("phi_0", w22q)
    rep = check_bilinear_class(w22q, phi, "alpha_biderivation", WIN)
    assert not rep.passed


def test_phi_minus1_is_an_odd_super_biderivation(wittsuperq):
    phi = known_map("phi_minus1", wittsuperq)
    assert phi.parity == 1 and phi.degree == -1
    assert check_bilinear_class(wittsuperq, phi, "super_biderivation", WIN).passed


def test_class_mode_mismatch(wittq, wittsuperq):
    phi = scaled_bracket(wittq)
    with pytest.raises(ClassModeMismatch):
        check_bilinear_class(wittq, phi, "super_biderivation", WIN)
    with pytest.raises(ClassModeMismatch):
        check_bilinear_class(wittsuperq, scaled_bracket(wittsuperq), "biderivation", WIN)


# -- linear classes ---------------------------------------------------------------


def _w22q_commuting_instance(p, lam, mu):
    table = {}
    for g in p.gens_in(WIN):
        if g.family == "L":
            table[g] = Vector.of(g, QRational(lam)) + Vector.of(
                p.generator("W", g.degree), QRational(mu)
            )
        else:
            table[g] = Vector.of(g, QRational(lam))
    return LinearMap.from_table(0, table, degree=0)


@pytest.mark.parametrize("lam,mu", [(1, 0), (0, 1)])
def test_w22q_commuting_family_instances(w22q, lam, mu):
    f = _w22q_commuting_instance(w22q, lam, mu)
    assert check_linear_class(w22q, f, "commuting_map", WIN).passed


def test_identity_is_not_a_derivation(wittq):
    f = LinearMap.from_rule(0, lambda g: Vector.of(g), degree=0)
    assert not check_linear_class(wittq, f, "derivation", Window(-3, 3)).passed


def test_odd_commuting_map_on_super(wittsuperq):
    p = wittsuperq
    table = {}
    for g in p.gens_in(WIN):
        if g.family == "L":
            table[g] = Vector.of(p.generator("G", g.degree - 1))
        else:
            table[g] = Vector({})
    f = LinearMap.from_table(1, table, degree=-1)
    assert check_linear_class(p, f, "commuting_map", WIN).passed


# -- cross-class properties ---------------------------------------------------------


@pytest.mark.parametrize("lam,mu", [(1, 0), (0, 1)])
def test_commuting_map_induces_biderivation(w22q, lam, mu):
    # for a commuting f, (x, y) -> [x, f(y)] is a biderivation
    f = _w22q_commuting_instance(w22q, lam, mu)

    def rule(g1, g2):
        img = f(g2)
        if img is None:
            return None
        return w22q.bracket(Vector.of(g1), img)

    phi = BilinearMap.from_rule(0, rule, degree=0)
    assert check_bilinear_class(w22q, phi, "biderivation", WIN).passed


def test_super_commuting_map_induces_super_biderivation(wittsuperq):
    p = wittsuperq
    table = {}
    for g in p.gens_in(WIN):
        table[g] = Vector.of(p.generator("G", g.degree - 1)) if g.family == "L" else Vector({})
    f = LinearMap.from_table(1, table, degree=-1)

    def rule(g1, g2):
        img = f(g1)
        if img is None:
            return None
        return p.bracket(img, Vector.of(g2))

    phi = BilinearMap.from_rule(1, rule, degree=-1)
    assert check_bilinear_class(p, phi, "super_biderivation", WIN).passed


def _example49_phi(p, a, k):
    lam = qpow(1)
    x1, x2, y = (p.generator(f) for f in ("x1", "x2", "y"))
    d = (Q1 / lam ** 2) * (QRational(Fraction(1, 2)) - lam) * QRational(k)
    table = {
        (x1, x2): Vector.of(x1, QRational(-2) * d * lam),
        (x2, x1): Vector.of(x1, QRational(2) * d * lam),
        (x2, x2): Vector.of(x1, QRational(a)),
        (x2, y): Vector.of(y, d),
        (y, x2): Vector.of(y, -d),
        (y, y): Vector.of(x1, QRational(k)),
    }
    full = {(g1, g2): table.get((g1, g2), Vector({}))
            for g1 in (x1, x2, y) for g2 in (x1, x2, y)}
    return BilinearMap.from_table(0, full)


def test_example49_twisted_biderivation_partials_are_twisted_derivations(example49):
    # partial maps at an even argument satisfy the twist-power-1 derivation law
    p = example49
    phi = _example49_phi(p, 1, 1)
    for z in (p.generator("x1"), p.generator("x2")):
        left = LinearMap.from_rule(0, lambda g, z=z: phi(g, z))
        right = LinearMap.from_rule(0, lambda g, z=z: phi(z, g))
        assert check_linear_class(p, left, "alpha_k_derivation", WIN, k=1).passed
        assert check_linear_class(p, right, "alpha_k_derivation", WIN, k=1).passed


def test_example49_skew_failure_witness(example49):
    p = example49
    phi = _example49_phi(p, 1, 0)
    rep = check_bilinear_skew(p, phi, WIN)
    assert not rep.passed
    x2 = p.generator("x2")
    assert any(inputs == (x2, x2) for _, inputs, _, _ in rep.witnesses)


def test_report_sorting_and_str(w22q):
    rep = check_multiplicative(w22q, Window(-2, 2))
    keys = [tuple(w22q.gen_sort_key(g) for g in w[1]) for w in rep.witnesses]
    assert keys == sorted(keys)
    assert "failed" in str(rep)
    ok = check_axioms(w22q, Window(-2, 2))
    assert "passed" in str(ok)
