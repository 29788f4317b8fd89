import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hermlift.chartools import is_squarefree
from hermlift.lvalue import dirichlet_L1
from hermlift.quadfield import (Form, IdealClassRep, L1_class_number_formula, class_group,
                                compose, forms_with_first_coefficient, genus_character_average,
                                genus_coset_reps, inverse_ideal_lattice, normalized_rep,
                                prime_ideal_rep, reduce_form, reduced_forms, roots_of_unity)
from hermlift.pullback import enumerate_pullback_points
from oracles import reduced_form_count

KNOWN_H = {3: 1, 4: 1, 7: 1, 8: 1, 11: 1, 15: 2, 20: 2, 23: 3, 39: 4, 47: 5, 71: 7, 84: 4,
           420: 8, 163: 1, 55: 4}


@pytest.mark.parametrize("D,h", sorted(KNOWN_H.items()))
def test_class_numbers(D, h):
    assert len(reduced_forms(D)) == h == reduced_form_count(D)
    assert class_group(D).h_K == h


@pytest.mark.parametrize("D", [3, 4, 7, 15, 20, 23, 39, 47, 84, 420])
def test_class_number_formula_against_series(D):
    # h = w sqrt(D) L(1, chi) / (2 pi), with L(1, chi) from the digamma resummation
    h = roots_of_unity(D) * math.sqrt(D) * dirichlet_L1(D, "series") / (2 * math.pi)
    assert abs(h - len(reduced_forms(D))) < 1e-10
    assert abs(L1_class_number_formula(D) - dirichlet_L1(D, "series")) < 1e-12


def test_reduction_is_idempotent_and_equivalent():
    f = Form(23, 37, 15)  # disc 37^2 - 4*23*15 = 1369 - 1380 = -11
    g = reduce_form(f)
    assert g.is_reduced() and g.disc == f.disc
    assert reduce_form(g) == g
    assert g == Form(1, 1, 3)


DISCS = [15, 23, 39, 47, 84, 420]


def _cls(D):
    return st.sampled_from(reduced_forms(D))


@given(st.sampled_from(DISCS).flatmap(lambda D: st.tuples(_cls(D), _cls(D), _cls(D))))
def test_composition_group_laws(fs):
    f, g, h = fs
    D = -f.disc
    one = reduce_form(Form(1, D % 2, (D % 2 + D) // 4))
    assert reduce_form(compose(f, one)) == reduce_form(f)
    assert reduce_form(compose(f, g)) == reduce_form(compose(g, f))
    assert reduce_form(compose(compose(f, g), h)) == reduce_form(compose(f, compose(g, h)))
    inv = Form(f.a, -f.b, f.c)
    assert reduce_form(compose(f, inv)) == one


@pytest.mark.parametrize("D", [15, 23, 84])
def test_composition_multiplies_represented_values(D):
    # f1 represents m1, f2 represents m2 with gcd 1 => f1*f2 represents m1*m2
    forms = reduced_forms(D)
    for f1 in forms:
        for f2 in forms:
            m1, m2 = f1.a, f2.a
            if math.gcd(m1, m2) != 1:
                continue
            h = compose(f1, f2)
            assert any(h(x, y) == m1 * m2 for x in range(-40, 41) for y in range(-40, 41))


@pytest.mark.parametrize("D", [3, 15, 20, 23, 84, 420])
def test_normalized_representatives(D):
    cg = class_group(D)
    assert [r.reduced for r in cg.reps] and len({r.reduced for r in cg.reps}) == cg.h_K
    for r in cg.reps:
        assert math.gcd(r.norm_C, 2 * D) == 1
        assert -r.form.a < r.form.b <= r.form.a
    assert cg.reps[0].norm_C == 1


def test_example_representatives():
    assert class_group(3).forms == [Form(1, 1, 1)]
    assert [r.form for r in class_group(15).reps] == [Form(1, 1, 4), Form(17, 11, 2)]


def test_squarefree_representatives():
    for D in [15, 84, 420]:
        for r in genus_coset_reps(class_group(D)):
            assert is_squarefree(r.norm_C) and math.gcd(r.norm_C, 2 * D) == 1


def test_forms_with_first_coefficient():
    cands = forms_with_first_coefficient(Form(2, 1, 2), 17)
    assert cands and all(c.a == 17 and c.disc == -15 for c in cands)
    assert all(reduce_form(c) == Form(2, 1, 2) for c in cands)


def test_invalid_representatives():
    with pytest.raises(ValueError):
        IdealClassRep(15, Form(1, 1, 5))
    with pytest.raises(ValueError):
        IdealClassRep(15, Form(-1, 1, -4))


@pytest.mark.parametrize("D", [3, 15, 23])
def test_inverse_lattice_norm_form(D):
    for rep in class_group(D).reps:
        q, scale = inverse_ideal_lattice(rep)
        for x in range(-5, 6):
            for y in range(-5, 6):
                assert q(x, y) == 4 * rep.form.a * rep.form(x, y)
                assert Fraction(q(x, y), scale) == rep.norm_of(x, y)


def test_inverse_lattice_norm_via_complex_numbers():
    rep = class_group(15).reps[1]
    a, b, _ = rep.form
    tau = (b + 1j * math.sqrt(15)) / (2 * a)
    for x, y in [(1, 0), (0, 1), (3, -2), (-4, 7)]:
        alpha = (x + y * tau) / (1j * math.sqrt(15))
        assert abs(abs(alpha) ** 2 - float(rep.norm_of(x, y))) < 1e-12


def test_pullback_point_counts():
    assert len(enumerate_pullback_points(class_group(3).reps[0])) == 7
    assert [len(enumerate_pullback_points(r)) for r in class_group(15).reps] == [19, 23]


def test_pullback_points_brute_force():
    for rep in class_group(15).reps + class_group(23).reps:
        brute = sorted((x, y) for x in range(-60, 61) for y in range(-60, 61)
                       if rep.form(x, y) < rep.D)
        assert enumerate_pullback_points(rep) == brute


def test_genus_character_averages():
    cg = class_group(15)
    got = {tuple(sorted(Q)): genus_character_average(15, cg, Q)
           for Q in [(), (3,), (5,), (3, 5)]}
    assert got == {(): 1, (3,): 0, (5,): 0, (3, 5): -1}
    cg23 = class_group(23)
    assert cg23.genus_index == 1
    assert genus_character_average(23, cg23, ()) == 1
    assert genus_character_average(23, cg23, (23,)) == -1


def test_square_cosets_partition():
    for D in [15, 84, 420]:
        cg = class_group(D)
        cosets = cg.square_cosets()
        assert sorted(i for c in cosets for i in c) == list(range(cg.h_K))
        assert len(cosets) == cg.genus_index == 2 ** (len(cg.D.ramified_primes) - 1)


def test_prime_ideal_rep():
    r = prime_ideal_rep(15, 17)
    assert r.form.a == 17 and r.form.disc == -15
    with pytest.raises(ValueError):
        prime_ideal_rep(15, 7)
