import math

import mpmath
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from mixedspec.errors import ContractError, InputError
from mixedspec.rings import (
    ONE,
    Z,
    Z_INV,
    ZERO,
    CosPoly,
    CyclotomicElement,
    LaurentPoly,
    chebyshev_t,
    cos_sum_form,
    cyclotomic_poly,
    eval_at_root_of_unity,
    eval_numeric,
    format_cos_sum,
    is_real,
    laurent_add,
    laurent_conjugate,
    laurent_mul,
    laurent_neg,
    normalize_angle,
    to_cos_poly,
    totient,
)

laurents = st.dictionaries(st.integers(-6, 6), st.integers(-20, 20), max_size=6).map(LaurentPoly)


@st.composite
def real_laurents(draw):
    half = draw(st.dictionaries(st.integers(1, 6), st.integers(-20, 20), max_size=5))
    c0 = draw(st.integers(-20, 20))
    a = LaurentPoly(c0)
    for k, c in half.items():
        a = a + LaurentPoly.cos_pair(k, c)
    return a


def test_basic_laurent_arithmetic():
    s = Z + Z_INV
    assert laurent_mul(s, s) == LaurentPoly({2: 1, 0: 2, -2: 1})
    assert laurent_mul(s, ZERO) == ZERO
    assert laurent_mul(Z, Z_INV) == ONE
    assert laurent_add(Z, laurent_neg(Z)).is_zero()
    assert LaurentPoly({3: 0, 1: 2}).coeffs == {1: 2}
    assert ZERO.coeffs == {}


def test_powers():
    assert Z**-3 == LaurentPoly.monomial(-3)
    assert (Z + Z_INV) ** 2 == LaurentPoly({2: 1, 0: 2, -2: 1})
    with pytest.raises((ContractError, ValueError)):
        (Z + ONE) ** -1


@given(laurents, laurents, laurents)
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + b == b + a
    assert a - a == ZERO


def test_conjugate():
    a = LaurentPoly({2: 1, 1: 3})
    assert laurent_conjugate(a) == LaurentPoly({-2: 1, -1: 3})
    assert laurent_conjugate(LaurentPoly(5)) == 5


@given(laurents)
def test_conjugate_involution(a):
    assert laurent_conjugate(laurent_conjugate(a)) == a
    assert is_real(a + laurent_conjugate(a))


def test_is_real():
    assert is_real(Z + Z_INV)
    assert not is_real(Z)
    assert is_real(ZERO)


def test_to_cos_poly_examples():
    assert to_cos_poly(LaurentPoly({2: 1, -2: 1})) == CosPoly([-2, 0, 4])
    assert to_cos_poly(Z + Z_INV) == CosPoly([0, 2])
    a = -LaurentPoly.cos_pair(3) - LaurentPoly.cos_pair(2) - LaurentPoly.cos_pair(1) - 2
    assert to_cos_poly(a) == CosPoly([0, 4, -4, -8])
    with pytest.raises(ContractError):
        to_cos_poly(Z)


def test_to_cos_poly_against_direct_evaluation(rng):
    a = -LaurentPoly.cos_pair(3) - LaurentPoly.cos_pair(2) - LaurentPoly.cos_pair(1) - 2
    f = to_cos_poly(a)
    for theta in rng.uniform(0, math.pi, 10):
        direct = -2 * (1 + math.cos(theta) + math.cos(2 * theta) + math.cos(3 * theta))
        assert abs(f(math.cos(theta)) - direct) < 1e-12


def test_chebyshev_matches_sympy():
    c = sympy.Symbol("c")
    for k in range(0, 12):
        ref = sympy.Poly(sympy.chebyshevt(k, c), c).all_coeffs()[::-1]
        assert chebyshev_t(k) == CosPoly([int(x) for x in ref])


@given(real_laurents(), st.floats(1e-3, math.pi))
def test_cos_poly_agrees_with_numeric(a, theta):
    assert abs(to_cos_poly(a)(math.cos(theta)) - eval_numeric(a, theta)) < 1e-9 * (1 + a.l1_norm())


@given(real_laurents())
def test_cos_poly_zero_iff_laurent_zero(a):
    assert to_cos_poly(a).is_zero() == a.is_zero()


def test_eval_numeric():
    assert abs(eval_numeric(Z + Z_INV, math.pi / 3) - 1.0) < 1e-12
    assert eval_numeric(ZERO, 0.7) == 0
    a3 = -LaurentPoly.cos_pair(3) - LaurentPoly.cos_pair(2) - LaurentPoly.cos_pair(1) - 2
    assert abs(eval_numeric(a3, math.pi / 2)) < 1e-12
    with pytest.raises(ContractError):
        eval_numeric(Z, 1.0)


def test_cos_sum_rendering():
    a3 = -LaurentPoly.cos_pair(3) - LaurentPoly.cos_pair(2) - LaurentPoly.cos_pair(1) - 2
    a4 = -LaurentPoly.cos_pair(3) - LaurentPoly.cos_pair(2) - LaurentPoly.cos_pair(1) + 3
    assert format_cos_sum(a3) == "-2(1 + cos θ + cos 2θ + cos 3θ)"
    assert format_cos_sum(a4) == "3 - 2(cos θ + cos 2θ + cos 3θ)"
    assert cos_sum_form(a4) == (3, {1: -2, 2: -2, 3: -2})


def test_cyclotomic_examples():
    assert cyclotomic_poly(9) == (1, 0, 0, 1, 0, 0, 1)
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)
    with pytest.raises(InputError):
        cyclotomic_poly(0)


def test_cyclotomic_matches_sympy():
    x = sympy.Symbol("x")
    for n in range(1, 61):
        ref = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()[::-1]
        assert cyclotomic_poly(n) == tuple(int(c) for c in ref)
        assert len(cyclotomic_poly(n)) - 1 == totient(n)


def test_cyclotomic_of_primes():
    for p in sympy.primerange(2, 101):
        assert cyclotomic_poly(p) == (1,) * p


def test_eval_at_root_examples():
    assert eval_at_root_of_unity(Z**3 - 1, 1, 3).is_zero()
    assert eval_at_root_of_unity(1 + Z + Z * Z, 1, 3).is_zero()
    m = 3
    s = ZERO
    for j in range(1, m + 1):
        s = s + LaurentPoly.cos_pair(2 * j - 1)
    for l in (1, 2, 4, 5):
        assert eval_at_root_of_unity(s, l, 2 * m).is_zero()
    mpmath.mp.prec = 128
    val = sum(2 * mpmath.cos((2 * j - 1) * mpmath.pi / m) for j in range(1, m + 1))
    assert abs(val) < mpmath.mpf(2) ** -100


@given(st.dictionaries(st.integers(-5, 5), st.integers(-2, 2), max_size=4).map(LaurentPoly),
       st.integers(1, 12), st.integers(-12, 12))
def test_eval_at_root_matches_numeric(a, n, l):
    exact = eval_at_root_of_unity(a, l, n)
    w = complex(math.cos(2 * math.pi * l / n), math.sin(2 * math.pi * l / n))
    numeric = a(w)
    assert exact.is_zero() == (abs(numeric) < 1e-9)
    assert abs(exact.to_complex() - numeric) < 1e-8


def test_cyclotomic_element_arithmetic():
    z = CyclotomicElement.root_power(12, 1)
    prod = CyclotomicElement.one(12)
    for _ in range(12):
        prod = prod * z
    assert prod == 1
    assert z * CyclotomicElement.root_power(12, -1) == CyclotomicElement.one(12)
    assert (z + z) - z == z
    with pytest.raises(ContractError):
        z + CyclotomicElement.one(5)
    assert CyclotomicElement.zero(7).is_zero()
    assert len(CyclotomicElement(9, [1, 2, 3, 4, 5, 6, 7, 8, 9]).coeffs) == 6


def test_serialization():
    a = LaurentPoly({-2: 3, 1: -1})
    assert a.to_json() == [[-2, 3], [1, -1]]
    assert LaurentPoly.from_json(a.to_json()) == a
    assert CosPoly([-2, 0, 4]).to_json() == [-2, 0, 4]
    assert CyclotomicElement.root_power(4, 1).to_json() == {"n": 4, "coeffs": [0, 1]}


def test_normalize_angle():
    assert normalize_angle(1, 2) == (1, 2)
    assert normalize_angle(2, 4) == (1, 2)
    assert normalize_angle(5, 3) == (1, 3)
    assert normalize_angle(-1, 3) == (1, 3)
    assert normalize_angle(3, 1) == (1, 1)
    with pytest.raises(InputError):
        normalize_angle(2, 1)
    with pytest.raises(InputError):
        normalize_angle(1, 0)
