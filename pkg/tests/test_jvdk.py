import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import FIELDS
from planeaut.autom import AffineMap, Alpha, Beta, Endo, compose, monomial_order, unvectorize
from planeaut.errors import NotAutomorphism, NotTriangular, ParseError, SingularAffine
from planeaut.fields import QQ, F
from planeaut.jvdk import (
    ElementaryWord, NormalForm, Swap, Transvection, decompose, invert_automorphism,
    is_automorphism, normal_form_from_json, normal_form_to_json, normalize, peel,
    random_normal_form, recompose, split_affine, split_triangular,
)


def E(f, g, field=QQ):
    return Endo.parse(f, g, field)


def aff(*c, field=QQ):
    return AffineMap.of(field, *c)


def beta(*h, field=QQ):
    return Beta(field, tuple(field(c) for c in h))


IOTA = Alpha(QQ)
ID_AFF = AffineMap.identity(QQ)


# -- peel -------------------------------------------------------------------------


def test_peel_elementary():
    phi = E("x+y^3", "y")
    w = peel(phi)
    assert w.factors == (ID_AFF, Transvection(QQ, True, QQ(1), 3))
    assert w.recompose() == phi


def test_peel_singular():
    with pytest.raises(NotAutomorphism):
        peel(E("x", "x"))


def test_peel_two_steps():
    phi = E("x+y^2", "y+(x+y^2)^3")
    w = peel(phi)
    assert w.recompose() == phi
    assert w.factors[0] == ID_AFF
    assert set(w.factors[1:]) == {Transvection(QQ, True, QQ(1), 2), Transvection(QQ, False, QQ(1), 3)}
    # each elementary factor as a literal pair
    pairs = {t.to_endo() for t in w.factors[1:]}
    assert pairs == {E("x+y^2", "y"), E("x", "y+x^3")}


@pytest.mark.parametrize("f,g", [("x+y", "x+y^2"), ("x^2", "y"), ("x", "x^2"), ("3", "y"),
                                 ("x^2+y", "x^3"), ("x^2+y^2", "x^2")])
def test_peel_rejects(f, g):
    with pytest.raises(NotAutomorphism):
        peel(E(f, g))


# -- splitting ------------------------------------------------------------------------


def test_split_triangular():
    tau = E("2x+y^3+3y+4", "5y+6")
    b, c = split_triangular(tau)
    assert b == beta(0, "1/2")
    assert c == aff(2, 3, 4, 0, 5, 6)
    assert compose(b.to_endo(), c.to_endo()) == tau

    b, c = split_triangular(E("x+3y+1", "y"))
    assert b is None and c == aff(1, 3, 1, 0, 1, 0)

    b, c = split_triangular(E("x+y^2", "y"))
    assert b == beta(1) and c == ID_AFF


def test_split_triangular_rejects():
    for f, g in [("x^2", "y"), ("x+y", "y+x"), ("y^2", "y"), ("x", "y^2")]:
        with pytest.raises(NotTriangular):
            split_triangular(E(f, g))


def test_split_affine():
    alpha, c = split_affine(aff(1, 0, 0, 1, 1, 0))
    assert alpha == Alpha(QQ, QQ(1)) and c == aff(-1, 1, 0, 0, 1, 0)
    assert compose(alpha.to_endo(), c.to_endo()) == E("x", "x+y")

    alpha, c = split_affine(aff(1, 3, 1, 0, 2, 0))
    assert alpha == IOTA and c == aff(1, 3, 1, 0, 2, 0)

    alpha, c = split_affine(aff(0, 1, 0, 1, 0, 0))
    assert alpha == Alpha(QQ, QQ(0)) and c == ID_AFF

    with pytest.raises(SingularAffine):
        split_affine(aff(1, 1, 0, 2, 2, 0))


@pytest.mark.parametrize("field", FIELDS, ids=lambda f: f.name)
def test_split_affine_recomposes(field, rng):
    from planeaut.jvdk import random_affine
    for _ in range(200):
        lam = random_affine(field, rng)
        alpha, c = split_affine(lam)
        assert c.a2 == 0
        assert compose(alpha.to_endo(), c.to_endo()) == lam.to_endo()


# -- normalize / decompose / recompose ------------------------------------------------------


def test_normalize_single_beta():
    w = ElementaryWord(QQ, (ID_AFF, Transvection(QQ, True, QQ(1), 2)))
    assert normalize(w) == NormalForm(QQ, ((IOTA, beta(1)),), ID_AFF)


def test_normalize_conjugated():
    w = ElementaryWord(QQ, (Swap(QQ), Transvection(QQ, True, QQ(1), 2), Swap(QQ)))
    nf = normalize(w)
    assert nf == NormalForm(QQ, ((Alpha(QQ, QQ(0)), beta(1)),), aff(0, 1, 0, 1, 0, 0))
    assert recompose(nf) == w.recompose()


def test_normalize_affine_only():
    lam = aff(0, 1, 0, 1, 1, 0)
    nf = normalize(ElementaryWord(QQ, (lam,)))
    assert nf.k == 0 and nf.lam == lam


def test_normalize_lower_transvection():
    w = ElementaryWord(QQ, (Transvection(QQ, False, QQ(2), 3),))
    nf = normalize(w)
    assert recompose(nf) == E("x", "y+2x^3")
    assert nf.beta_degrees() == (3,)


def test_normalize_collapses_cancelling_word():
    t = Transvection(QQ, True, QQ(1), 2)
    t_inv = Transvection(QQ, True, QQ(-1), 2)
    nf = normalize(ElementaryWord(QQ, (t, Swap(QQ), Swap(QQ), t_inv)))
    assert nf == NormalForm(QQ, (), ID_AFF)


def test_decompose_examples():
    nf = decompose(E("y+(x+y)^2", "x+y"))
    assert nf == NormalForm(QQ, ((Alpha(QQ, QQ(1)), beta(1)),), ID_AFF)
    assert recompose(nf) == E("y+(x+y)^2", "x+y")
    assert decompose(Endo.identity(QQ)) == NormalForm(QQ, (), ID_AFF)
    with pytest.raises(NotAutomorphism):
        decompose(E("x+y", "x+y^2"))


def test_not_automorphism_by_point_count():
    # over F_2, y^2 = y pointwise, so (x+y, x+y^2) collapses the plane onto the diagonal
    fld = F(2)
    phi = E("x+y", "x+y^2", fld)
    image = {(phi.f.evaluate(a, b), phi.g.evaluate(a, b)) for a in range(2) for b in range(2)}
    assert len(image) < 4
    assert not is_automorphism(phi)


def test_recompose_examples():
    nf = NormalForm(QQ, ((Alpha(QQ, QQ(1)), beta(1)),), ID_AFF)
    assert recompose(nf) == E("y+(x+y)^2", "x+y")
    assert recompose(NormalForm(QQ, (), aff(0, 1, 0, 1, 0, 0))) == E("y", "x")


def test_recompose_matches_closed_form():
    # single-factor points expand to a1*(h(x+a*y)) + a1*y + b1*(x+a*y) + c1, and likewise for g
    rng = random.Random(5)
    for _ in range(50):
        nf = random_normal_form(QQ, rng, degrees=(rng.randint(2, 5),))
        (alpha, b), lam = nf.factors[0], nf.lam
        a = alpha.a if alpha.a is not None else QQ(0)
        xa = Endo.parse("x", "y", QQ).f + Endo.parse("y", "y", QQ).f.scale(a)
        y = Endo.parse("y", "y", QQ).f
        h = sum((xa ** (k + 2)).scale(c) for k, c in enumerate(b.h))
        if alpha.is_iota:
            # alpha_1 = iota: (x + h(y), y) then lambda
            x = Endo.parse("x", "x", QQ).f
            hy = sum((y ** (k + 2)).scale(c) for k, c in enumerate(b.h))
            F_, G_ = x + hy, y
        else:
            F_, G_ = y + h, xa
        expected = Endo(F_.scale(lam.a1) + G_.scale(lam.b1) + lam.c1,
                        F_.scale(lam.a2) + G_.scale(lam.b2) + lam.c2)
        assert recompose(nf) == expected


def test_is_automorphism_examples():
    assert is_automorphism(E("y+(x+y)^2", "x+y"))
    assert not is_automorphism(E("x", "x^2"))
    assert not is_automorphism(E("x^2", "y"))


def test_invert_examples():
    assert invert_automorphism(E("x+y^2", "y")) == E("x-y^2", "y")
    inv = invert_automorphism(E("y", "x+y"))
    assert inv == E("-x+y", "x")
    assert compose(E("y", "x+y"), inv) == Endo.identity(QQ)
    assert invert_automorphism(Endo.identity(QQ)) == Endo.identity(QQ)
    with pytest.raises(NotAutomorphism):
        invert_automorphism(E("x^2", "y"))


# -- properties -------------------------------------------------------------------------------


@pytest.mark.parametrize("field", [F(5), QQ], ids=lambda f: f.name)
def test_uniqueness_and_degree_law(field):
    rng = random.Random(1)
    for _ in range(250):
        nf = random_normal_form(field, rng)
        phi = recompose(nf)
        assert decompose(phi) == nf
        assert phi.degree() == nf.degree()


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.integers(0, 2**32), st.sampled_from(FIELDS))
def test_group_laws(seed1, seed2, field):
    r1, r2 = random.Random(seed1), random.Random(seed2)
    phi = recompose(random_normal_form(field, r1, max_degree=6, max_k=2))
    psi = recompose(random_normal_form(field, r2, max_degree=6, max_k=2))
    inv = invert_automorphism(phi)
    ident = Endo.identity(field)
    assert compose(phi, inv) == ident
    assert compose(inv, phi) == ident
    assert invert_automorphism(inv) == phi
    prod = compose(phi, psi)
    assert recompose(decompose(prod)) == prod


def _all_normal_forms_upto2(q):
    fld = F(q)
    els = list(range(q))
    lams = [AffineMap(fld, *c) for c in itertools.product(els, repeat=6)]
    lams = [lam for lam in lams if lam.is_invertible()]
    alphas = [Alpha(fld)] + [Alpha(fld, a) for a in els]
    out = [NormalForm(fld, (), lam) for lam in lams]
    for alpha in alphas:
        for h2 in els[1:]:
            for lam in lams:
                out.append(NormalForm(fld, ((alpha, Beta(fld, (h2,))),), lam))
    return out


def test_exhaustive_ground_truth_f2():
    fld = F(2)
    order = monomial_order(2)
    accepted = set()
    for vec in itertools.product(range(2), repeat=2 * len(order)):
        phi = unvectorize(vec, 2, fld)
        if is_automorphism(phi):
            accepted.add(phi)
    generated = {recompose(nf) for nf in _all_normal_forms_upto2(2)}
    assert len(generated) == len(_all_normal_forms_upto2(2)) == 96
    assert accepted == generated
    # every accepted pair really has a two-sided inverse
    ident = Endo.identity(fld)
    for phi in accepted:
        inv = invert_automorphism(phi)
        assert compose(phi, inv) == ident == compose(inv, phi)


def test_normal_form_json():
    nf = NormalForm(QQ, ((Alpha(QQ, QQ("1/2")), beta(0, 3)), (Alpha(QQ, QQ(0)), beta(1))),
                    aff(1, 2, 3, 0, 1, 0))
    data = normal_form_to_json(nf)
    assert data == {
        "factors": [{"alpha": "1/2", "beta": ["0", "3"]}, {"alpha": "0", "beta": ["1"]}],
        "lambda": ["1", "2", "3", "0", "1", "0"],
    }
    assert normal_form_from_json(data, QQ) == nf
    data["factors"][1]["alpha"] = "iota"
    with pytest.raises(ParseError):
        normal_form_from_json(data, QQ)
    with pytest.raises(ParseError):
        normal_form_from_json({"factors": [], "lambda": ["1", "1", "0", "1", "1", "0"]}, QQ)
