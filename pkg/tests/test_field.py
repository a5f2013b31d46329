import itertools

import pytest
from hypothesis import given, strategies as st

from cagekit.field import (DivisionByZero, FieldElem, NotPrimePower, factor_prime_power,
                           make_field)

SMALL_QS = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]


def brute_irreducibles(p, n):
    """Monic degree-n polynomials over F_p with no factorisation as a
    product of two monic polynomials of positive degree (by multiplying out
    every pair)."""
    def mul(f, g):
        out = [0] * (len(f) + len(g) - 1)
        for i, a in enumerate(f):
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
        return tuple(out)

    monic = {d: [low + (1,) for low in itertools.product(range(p), repeat=d)]
             for d in range(1, n)}
    reducible = {mul(f, g) for d in range(1, n) for f in monic[d] for g in monic[n - d]}
    return [low + (1,) for low in itertools.product(range(p), repeat=n)
            if low + (1,) not in reducible]


@pytest.mark.parametrize("q, p, n", [(2, 2, 1), (5, 5, 1), (4, 2, 2), (9, 3, 2),
                                     (8, 2, 3), (16, 2, 4), (27, 3, 3), (49, 7, 2)])
def test_factor_prime_power(q, p, n):
    assert factor_prime_power(q) == (p, n)


@pytest.mark.parametrize("q", [0, 1, 6, 10, 12, 15, 18, 100, -4])
def test_not_prime_power(q):
    with pytest.raises(NotPrimePower):
        make_field(q)


def test_prime_field_q5():
    F = make_field(5)
    assert (F.p, F.n) == (5, 1)
    for a, b in itertools.product(range(5), repeat=2):
        assert F.add(a, b) == (a + b) % 5
        assert F.mul(a, b) == (a * b) % 5


@pytest.mark.parametrize("q", [4, 8, 9, 16, 25, 27])
def test_modulus_is_lexicographically_first_irreducible(q):
    F = make_field(q)
    # itertools.product order on (c_0..c_{n-1}) is the lexicographic order
    assert F.modulus == brute_irreducibles(F.p, F.n)[0]


def test_known_moduli():
    assert make_field(4).modulus == (1, 1, 1)  # x^2 + x + 1
    assert make_field(9).modulus == (1, 0, 1)  # x^2 + 1
    assert make_field(8).modulus == (1, 0, 1, 1)  # x^3 + x^2 + 1
    assert make_field(16).modulus == (1, 0, 0, 1, 1)  # x^4 + x^3 + 1


def test_gf4_products():
    F = make_field(4)
    assert F.mul(2, 2) == 3  # x * x = x + 1
    assert F.mul(2, 3) == 1


def test_characteristic_examples():
    F2 = make_field(2)
    for a, b in itertools.product(range(2), repeat=2):
        assert F2.mul(F2.scalar(2), F2.mul(a, b)) == 0
    F3 = make_field(3)
    assert F3.add(2, 1) == 0


def test_inverse_examples():
    assert make_field(5).inv(2) == 3
    for q in SMALL_QS:
        assert make_field(q).inv(1) == 1
    F8 = make_field(8)
    assert all(F8.mul(a, F8.inv(a)) == 1 for a in range(1, 8))


def test_inverse_of_zero():
    with pytest.raises(DivisionByZero):
        make_field(7).inv(0)


@pytest.mark.parametrize("q", [2, 4, 9])
def test_elements(q):
    assert make_field(q).elements() == list(range(q))


@pytest.mark.parametrize("q", SMALL_QS)
def test_field_axioms_exhaustive(q):
    F = make_field(q)
    E = range(q)
    for a in E:
        assert F.add(a, 0) == a and F.mul(a, 1) == a and F.mul(a, 0) == 0
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
        for b in E:
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)
            assert F.sub(F.add(a, b), b) == a
            for c in E:
                assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
                assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
                assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


@pytest.mark.parametrize("q", SMALL_QS)
def test_frobenius(q):
    F = make_field(q)
    for a, b in itertools.product(range(q), repeat=2):
        assert F.pow(F.add(a, b), F.p) == F.add(F.pow(a, F.p), F.pow(b, F.p))


@pytest.mark.parametrize("q", SMALL_QS)
def test_multiplicative_group_is_cyclic_of_order_q_minus_1(q):
    F = make_field(q)
    orders = []
    for a in range(1, q):
        k, x = 1, a
        while x != 1:
            x, k = F.mul(x, a), k + 1
        orders.append(k)
    assert max(orders) == q - 1


def test_determinism():
    from cagekit.field import FieldSpec
    a = make_field(16)
    b = FieldSpec(a.p, a.n, a.modulus)
    assert a == b
    assert (a.mul_table == b.mul_table).all()
    assert (a.add_table == b.add_table).all()


def test_reducible_modulus_rejected():
    from cagekit.field import FieldSpec
    with pytest.raises(ValueError):
        FieldSpec(2, 2, (1, 0, 1))  # (x + 1)^2


def clmul_mod(a, b, poly_bits, n):
    """Carry-less product reduced by the modulus, on GF(2^n) bit vectors."""
    out = 0
    for i in range(n):
        if b >> i & 1:
            out ^= a << i
    for i in range(2 * n - 2, n - 1, -1):
        if out >> i & 1:
            out ^= poly_bits << (i - n)
    return out


def test_untabled_field_matches_bitwise_oracle():
    F = make_field(1024)
    assert F._mul is None
    poly_bits = sum(c << i for i, c in enumerate(F.modulus))
    rng = __import__("random").Random(7)
    for _ in range(300):
        a, b = rng.randrange(1024), rng.randrange(1024)
        assert F.mul(a, b) == clmul_mod(a, b, poly_bits, 10)
        assert F.add(a, b) == a ^ b
    for a in rng.sample(range(1, 1024), 30):
        assert F.mul(a, F.inv(a)) == 1


@given(st.sampled_from(SMALL_QS), st.data())
def test_field_elem_operators(q, data):
    F = make_field(q)
    a = F(data.draw(st.integers(0, q - 1)))
    b = F(data.draw(st.integers(0, q - 1)))
    assert isinstance(a + b, FieldElem)
    assert (a + b) - b == a
    assert a * b == b * a
    assert (a + b) ** 2 == a * a + 2 * a * b + b * b
    if b.value:
        assert (a / b) * b == a


def test_p_of_x_in_f4_takes_values_zero_and_one():
    F = make_field(4)
    assert {F.add(1, F.add(x, F.mul(x, x))) for x in range(4)} == {0, 1}
