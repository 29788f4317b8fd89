import pytest

from hermlift.exact import QuadElement
from hermlift.maasslift import (HermitianIndex, LiftTable, aD_factor, alpha_F, content,
                                fc_star, lift_coefficient)
from hermlift.quadfield import class_group

SQRT_M5 = QuadElement(0, 1, 5)


@pytest.fixture(scope="module")
def t3(f3):
    return LiftTable(f3, class_group(3).reps[0], exact=True)


@pytest.fixture(scope="module", params=[0, 1])
def t15(request, f15):
    return LiftTable(f15, class_group(15).reps[request.param])


def test_cross_identity_exact(t3):
    for n in range(1, 201):
        assert fc_star(t3, n) == aD_factor(t3, n) * alpha_F(t3, n)


def _scale(t, n):
    # size of the individual twisted terms being summed
    return 4 * abs(t.f.a(n)) + 1.0


def test_cross_identity_numeric(t15):
    for n in range(1, 201):
        lhs = fc_star(t15, n)
        rhs = aD_factor(t15, n) * alpha_F(t15, n)
        assert abs(lhs - rhs) <= 1e-13 * _scale(t15, n)


def test_twisted_sum_purely_imaginary(t3, t15):
    for n in range(1, 201):
        assert fc_star(t3, n).is_purely_imaginary()
        z = fc_star(t15, n)
        assert abs(z.real) <= 1e-13 * _scale(t15, n)


def test_alpha_F_small_values(t3):
    # alpha_F(6) = a_f(2) (a_f(3) + (-3, -6)_3 conj a_f(3)), and (-3, -6)_3 = +1
    assert alpha_F(t3, 6) == -648 * SQRT_M5
    assert alpha_F(t3, 1) == 1
    assert alpha_F(t3, 2) == 12 * SQRT_M5


def test_aD_factor_values(t3):
    assert [aD_factor(t3, n) for n in range(1, 7)] == [0, 2, 1, 0, 2, 1]


def test_content_and_positivity(t3):
    rep = t3.rep
    H = HermitianIndex(2, 4, 2, 0, rep)
    assert content(H) == 2
    assert H.N_H == 2 * 4 * 3 - rep.form(2, 0)
    with pytest.raises(ValueError):
        content(HermitianIndex(0, 0, 0, 0, rep))
    with pytest.raises(ValueError):
        lift_coefficient(t3, HermitianIndex(1, 1, 2, 0, rep))  # N_H = 3 - 4 < 0


def test_lift_coefficient_divisor_sum(t3):
    rep = t3.rep
    H = HermitianIndex(2, 2, 0, 0, rep)  # content 2, N_H = 12
    expected = alpha_F(t3, 12) + 2**11 * alpha_F(t3, 3)
    assert lift_coefficient(t3, H) == expected


def test_lift_depends_only_on_content_and_NH(t3):
    rep = t3.rep
    seen = {}
    for n in range(1, 4):
        for m in range(1, 4):
            for x in range(-4, 5):
                for y in range(-4, 5):
                    H = HermitianIndex(n, m, x, y, rep)
                    if not H.is_positive():
                        continue
                    key = (content(H), H.N_H)
                    v = lift_coefficient(t3, H)
                    assert seen.setdefault(key, v) == v


def test_rep_mismatch(f3, f15):
    with pytest.raises(ValueError):
        LiftTable(f3, class_group(15).reps[0])
    with pytest.raises(ValueError):
        LiftTable(f15, class_group(15).reps[0], exact=True)
