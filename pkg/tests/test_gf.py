import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wenger import gf
from wenger.gf import FieldError, FieldSpec, elements, find_irreducible, inv, power, trace


def _brute_irreducible(p, e):
    # no factorization into two monic factors of positive degree
    def polys(d):
        for tail in itertools.product(range(p), repeat=d):
            yield list(tail) + [1]

    def mul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
        return out

    products = {tuple(mul(a, b)) for d in range(1, e) for a in polys(d) for b in polys(e - d)}
    # lex order on the canonical integer of the non-leading coefficients
    for cand in sorted(polys(e), key=lambda c: sum(x * p**i for i, x in enumerate(c[:-1]))):
        if tuple(cand) not in products:
            return tuple(cand)


@pytest.mark.parametrize(
    "p, e, expected",
    [(2, 1, (0, 1)), (2, 2, (1, 1, 1)), (3, 2, (1, 0, 1))],
)
def test_find_irreducible_examples(p, e, expected):
    assert find_irreducible(p, e) == expected


@pytest.mark.parametrize("p, e", [(2, 3), (2, 4), (3, 3), (5, 2), (7, 2), (2, 6)])
def test_find_irreducible_matches_factor_enumeration(p, e):
    assert find_irreducible(p, e) == _brute_irreducible(p, e)


@pytest.mark.parametrize("p, e", [(4, 2), (1, 1), (2, 0), (2, 7)])
def test_find_irreducible_rejects(p, e):
    with pytest.raises(FieldError):
        find_irreducible(p, e)


def test_reducible_modulus_rejected():
    with pytest.raises(FieldError, match="reducible"):
        FieldSpec(2, 2, (1, 0, 1))  # X^2 + 1 = (X + 1)^2 over GF(2)


def test_factor_prime_power():
    assert gf.factor_prime_power(9) == (3, 2)
    assert gf.factor_prime_power(16) == (2, 4)
    with pytest.raises(FieldError, match="6 is not a prime power"):
        gf.factor_prime_power(6)


def test_small_examples():
    f4 = FieldSpec.create(4)
    x = f4.element(2)  # canonical integer 2 is the class of X
    assert (x + x).value == 0
    assert (x * x).coeffs == (1, 1)  # X^2 = X + 1
    f3 = FieldSpec.create(3)
    assert (f3.element(2) + f3.element(2)).value == 1
    assert inv(FieldSpec.create(5).element(2)).value == 3
    f9 = FieldSpec.create(9)
    for a in elements(f9):
        assert (a + (-a)).value == 0
        assert (f9.one() * a) == a


def test_trace_examples():
    f4 = FieldSpec.create(4)
    assert trace(f4.zero()).value == 0
    assert trace(f4.element(2)).value == 1
    assert trace(FieldSpec.create(3).element(2)).value == 2


def test_enumerate_order():
    assert [a.value for a in elements(FieldSpec.create(2))] == [0, 1]
    els = elements(FieldSpec.create(4))
    assert [a.value for a in els] == [0, 1, 2, 3]
    assert len(set(els)) == 4


def test_gf9_multiplicative_group_is_cyclic():
    f9 = FieldSpec.create(9)
    orders = [gf.multiplicative_order(a) for a in elements(f9)[1:]]
    assert 8 in orders
    assert all(8 % o == 0 for o in orders)


def test_mismatched_fields_and_zero_inverse():
    a = FieldSpec.create(4).one()
    b = FieldSpec.create(2).one()
    with pytest.raises(FieldError):
        a + b
    with pytest.raises(ZeroDivisionError):
        inv(FieldSpec.create(4).zero())


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_field_axioms_exhaustive(q):
    f = FieldSpec.create(q)
    add, mul = f.add_table, f.mul_table
    r = np.arange(q)
    assert np.array_equal(add, add.T) and np.array_equal(mul, mul.T)
    # associativity and distributivity over all triples
    assert np.array_equal(add[add[:, :, None], r[None, None, :]], add[r[:, None, None], add[None, :, :]])
    assert np.array_equal(mul[mul[:, :, None], r[None, None, :]], mul[r[:, None, None], mul[None, :, :]])
    assert np.array_equal(mul[r[:, None, None], add[None, :, :]], add[mul[:, :, None], mul[:, None, :]])
    assert np.array_equal(add[0], r) and np.array_equal(mul[1], r)
    assert np.all(add[r, f.neg_table] == 0)
    assert all(mul[a, f.inv_int(a)] == 1 for a in range(1, q))
    # every row of the multiplication table over nonzero elements is a permutation
    assert all(sorted(mul[a, 1:]) == list(range(1, q)) for a in range(1, q))


@pytest.mark.parametrize("q", [4, 8, 9])
def test_tables_agree_with_scalar_ops(q):
    f = FieldSpec.create(q)
    els = elements(f)
    for a in els:
        for b in els:
            assert (a + b).value == f.add_table[a.value, b.value]
            assert (a * b).value == f.mul_table[a.value, b.value]
            assert (a - b).value == f.sub_table[a.value, b.value]


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 16, 27, 25])
def test_trace_fibers(q):
    f = FieldSpec.create(q)
    tr = f.trace_table
    assert set(tr.tolist()) == set(range(f.p))
    assert np.all(np.bincount(tr, minlength=f.p) == q // f.p)
    assert np.array_equal(tr[f.add_table], (tr[:, None] + tr[None, :]) % f.p)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_additive_character_orthogonality(q):
    from wenger.spectral import additive_character_sum

    f = FieldSpec.create(q)
    for x in range(q):
        s = additive_character_sum(f, x)
        assert abs(s - ((q - 1) if x == 0 else -1)) < 1e-9


@settings(max_examples=60, deadline=None)
@given(q=st.sampled_from([4, 8, 9, 16, 25, 27]), a=st.integers(0, 10**6), n=st.integers(0, 200))
def test_power_matches_repeated_multiplication(q, a, n):
    f = FieldSpec.create(q)
    x = f.element(a % q)
    acc = f.one()
    for _ in range(n):
        acc = acc * x
    assert power(x, n) == acc
    if x:
        assert x * inv(x) == f.one()
        assert power(x, q - 1) == f.one()


def test_frobenius_is_additive():
    f = FieldSpec.create(27)
    for a in range(0, 27, 5):
        for b in range(27):
            lhs = f.pow_int(f.add_int(a, b), 3)
            assert lhs == f.add_int(f.pow_int(a, 3), f.pow_int(b, 3))


def test_alternate_moduli_are_all_fields():
    polys = list(gf.irreducible_polys(2, 3))
    assert len(polys) == 2  # X^3+X+1, X^3+X^2+1
    assert polys[0] == find_irreducible(2, 3)
    assert len(list(gf.irreducible_polys(3, 2))) == 3
    # count of monic irreducibles of degree 2 over GF(p) is (p^2 - p)/2
    assert len(list(gf.irreducible_polys(5, 2))) == (25 - 5) // 2
