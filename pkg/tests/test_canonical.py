"""Falling-factorial normal forms, kernel enumeration, closed-form counts."""

import itertools
import math
import random

import pytest

from ringfunc.canonical import (
    CanonicalForm,
    UnitValuedCanonicalForm,
    beta,
    canonicalize,
    canonicalize_unit_valued,
    count_polynomial_functions,
    count_unit_valued_functions,
    enumerate_canonical_forms,
    enumerate_kernel,
    enumerate_unit_valued_forms,
    falling_factorial,
    falling_factorial_coefficients,
    kernel_basis,
    kernel_count,
    leading_representative,
    uv_table_from_index,
    uv_table_index,
    vp_factorial,
)
from ringfunc.funcspace import induce, induced_tables, unit_valued_tables
from ringfunc.poly import Polynomial, X
from ringfunc.rings import SizeCapError, make_ring


def _naive_valuation(p, j):
    f = math.factorial(j)
    v = 0
    while f % p == 0:
        f //= p
        v += 1
    return v


def test_factorial_valuation_matches_direct_division():
    for p in (2, 3, 5, 7):
        for j in range(0, 26):
            assert vp_factorial(p, j) == _naive_valuation(p, j)
    with pytest.raises(ValueError):
        vp_factorial(2, -1)


def test_degree_cutoff_values():
    assert beta(2, 1) == 2
    assert beta(2, 2) == 4
    assert beta(2, 3) == 4
    assert beta(2, 4) == 6
    assert beta(3, 1) == 3
    assert beta(3, 2) == 6
    assert beta(3, 3) == 9
    assert beta(5, 1) == 5
    assert beta(5, 2) == 10


def test_degree_cutoff_is_the_least_factorial_with_enough_valuation():
    for p in (2, 3, 5):
        for n in range(1, 5):
            k = beta(p, n)
            assert math.factorial(k) % p**n == 0
            assert math.factorial(k - 1) % p**n != 0


def test_degree_cutoff_bounds():
    for p in (2, 3, 5, 7):
        last = 0
        for n in range(1, 7):
            b = beta(p, n)
            assert last <= b <= n * p
            last = b


def test_degree_cutoff_validation():
    with pytest.raises(ValueError):
        beta(4, 2)
    with pytest.raises(ValueError):
        beta(2, 0)


def test_falling_factorial_polynomials():
    assert falling_factorial(0) == Polynomial((1,))
    assert falling_factorial(1) == X
    assert falling_factorial(2) == X**2 - X
    assert falling_factorial(3) == X**3 - 3 * X**2 + 2 * X


def test_falling_factorial_values_count_arrangements():
    for j in range(6):
        f = falling_factorial(j)
        for k in range(12):
            expected = math.perm(k, j) if k >= j else 0
            assert f.eval_int(k) == expected
            assert f.eval_int(k) % math.factorial(j) == 0


def test_falling_factorial_basis_expansion_round_trips():
    rng = random.Random(31)
    for _ in range(50):
        f = Polynomial([rng.randrange(-50, 51) for _ in range(rng.randrange(8))])
        b = falling_factorial_coefficients(f, len(f.coeffs) + 1)
        g = Polynomial.zero()
        for j, c in enumerate(b):
            g = g + falling_factorial(j) * c
        assert g == f


def test_basis_expansion_rejects_ring_tagged_input():
    f4 = make_ring("fq:4")
    f = Polynomial((f4.one,), ring=f4)
    with pytest.raises(ValueError):
        falling_factorial_coefficients(f, 2)


# ---------------------------------------------------------------------------
# the null-function kernel between consecutive power levels


def test_kernel_basis_pairs():
    assert kernel_basis(2, 2) == [(1, 0), (1, 1), (0, 2), (0, 3)]
    assert kernel_basis(2, 3) == [(2, 0), (2, 1), (1, 2), (1, 3)]
    assert kernel_basis(3, 2) == [(1, 0), (1, 1), (1, 2), (0, 3), (0, 4), (0, 5)]
    for p in (2, 3, 5):
        for n in (2, 3, 4):
            assert len(kernel_basis(p, n)) == beta(p, n)
    with pytest.raises(ValueError):
        kernel_basis(2, 1)


@pytest.mark.parametrize("p,n,expected", [(2, 2, 16), (2, 3, 16), (3, 2, 729)])
def test_kernel_combinations_vanish_one_level_down_and_separate_at_the_top(p, n, expected):
    assert kernel_count(p, n) == expected
    below = make_ring(f"zpn:{p},{n - 1}")
    top = make_ring(f"zpn:{p},{n}")
    seen = set()
    for f in enumerate_kernel(p, n):
        assert induce(f, below).is_zero()
        seen.add(induce(f, top).values)
    assert len(seen) == expected


def test_kernel_enumeration_cap():
    with pytest.raises(SizeCapError):
        list(enumerate_kernel(3, 2, cap=100))


# ---------------------------------------------------------------------------
# canonical forms of arbitrary polynomial functions


def test_canonicalize_square_example():
    form = canonicalize(X**2, 2, 2)
    assert form.terms == ((0, 1, 1), (0, 2, 1))
    assert form.to_polynomial() == X**2
    assert canonicalize(X**4, 2, 2) == form  # same function mod 4


def test_canonicalize_constant_and_zero():
    assert canonicalize(Polynomial.zero(), 2, 2).terms == ()
    assert canonicalize(Polynomial.constant(4), 2, 2).terms == ()
    assert canonicalize(Polynomial.constant(3), 2, 2).terms == ((0, 0, 1), (1, 0, 1))


def test_canonicalize_rejects_ring_tagged_input():
    f4 = make_ring("fq:4")
    with pytest.raises(ValueError):
        canonicalize(Polynomial((f4.one,), ring=f4), 2, 2)


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_canonicalize_preserves_the_function_and_is_idempotent(p, n):
    ring = make_ring(f"zpn:{p},{n}")
    m = p**n
    rng = random.Random(100 * p + n)
    for _ in range(25):
        f = Polynomial([rng.randrange(m) for _ in range(rng.randrange(9))])
        form = canonicalize(f, p, n)
        assert induce(form.to_polynomial(), ring) == induce(f, ring)
        assert canonicalize(form.to_polynomial(), p, n) == form


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3)])
def test_canonical_forms_biject_with_function_tables(p, n):
    ring = make_ring(f"zpn:{p},{n}")
    tables = {induce(form.to_polynomial(), ring).values for form in enumerate_canonical_forms(p, n)}
    assert len(tables) == count_polynomial_functions(p, n)
    assert tables == induced_tables(ring)


def test_distinct_forms_give_distinct_functions_sampled():
    ring = make_ring("zpn:3,2")
    forms = list(enumerate_canonical_forms(3, 2))
    assert len(forms) == 19683
    rng = random.Random(9)
    for _ in range(300):
        a, b = rng.sample(range(len(forms)), 2)
        ta = induce(forms[a].to_polynomial(), ring)
        tb = induce(forms[b].to_polynomial(), ring)
        assert ta != tb


def test_form_validation():
    CanonicalForm(2, 2, ((0, 1, 1), (0, 2, 1)))
    with pytest.raises(ValueError):
        CanonicalForm(2, 2, ((0, 1, 0),))  # zero digit
    with pytest.raises(ValueError):
        CanonicalForm(2, 2, ((0, 1, 2),))  # digit out of range
    with pytest.raises(ValueError):
        CanonicalForm(2, 2, ((0, 2, 1), (0, 1, 1)))  # unsorted
    with pytest.raises(ValueError):
        CanonicalForm(2, 2, ((1, 2, 1),))  # null term: 1 + v(2!) = 2
    with pytest.raises(ValueError):
        CanonicalForm(4, 2, ())
    with pytest.raises(ValueError):
        CanonicalForm(2, 0, ())


def test_form_json_shape():
    form = canonicalize(X**2, 2, 2)
    assert form.to_json_dict() == {"p": 2, "n": 2, "terms": [[0, 1, 1], [0, 2, 1]]}


# ---------------------------------------------------------------------------
# closed-form counts


def test_function_counts():
    assert count_polynomial_functions(2, 2) == 64
    assert count_polynomial_functions(2, 3) == 1024
    assert count_polynomial_functions(3, 2) == 19683
    assert count_unit_valued_functions(2, 2) == 16
    assert count_unit_valued_functions(2, 3) == 256
    assert count_unit_valued_functions(3, 2) == 5832


def test_counts_at_the_prime_level():
    for p in (2, 3, 5, 7):
        assert count_polynomial_functions(p, 1) == p**p
        assert count_unit_valued_functions(p, 1) == (p - 1) ** p


def test_counts_grow_by_the_kernel_between_levels():
    for p in (2, 3, 5):
        for n in range(2, 5):
            step = p ** beta(p, n)
            assert count_polynomial_functions(p, n) == count_polynomial_functions(p, n - 1) * step
            assert count_unit_valued_functions(p, n) == count_unit_valued_functions(p, n - 1) * step
            assert step == kernel_count(p, n)


# ---------------------------------------------------------------------------
# unit-valued layered forms


def test_unit_table_ranking_round_trips():
    for p in (2, 3, 5):
        count = (p - 1) ** p
        seen = set()
        for s in range(1, count + 1):
            table = uv_table_from_index(s, p)
            assert uv_table_index(table, p) == s
            seen.add(table)
        assert len(seen) == count
    with pytest.raises(ValueError):
        uv_table_index((0, 1), 2)
    with pytest.raises(ValueError):
        uv_table_index((1, 1, 1), 2)
    with pytest.raises(ValueError):
        uv_table_from_index(0, 3)


def test_ranking_is_lexicographic():
    assert uv_table_from_index(1, 3) == (1, 1, 1)
    assert uv_table_from_index(2, 3) == (1, 1, 2)
    assert uv_table_from_index(8, 3) == (2, 2, 2)


def test_leading_representative_induces_the_ranked_table():
    zp = make_ring("zpn:3,1")
    for s in range(1, 9):
        f = leading_representative(3, s)
        assert f.degree < 3
        assert induce(f, zp).values == uv_table_from_index(s, 3)


def test_layered_form_of_a_constant():
    form = canonicalize_unit_valued(Polynomial.constant(3), 2, 2)
    assert form == UnitValuedCanonicalForm(2, 2, 1, ((2, ((1, 0, 1),)),))
    assert form.to_polynomial() == Polynomial.constant(3)


def test_layered_form_rejects_non_unit_valued_input():
    with pytest.raises(ValueError):
        canonicalize_unit_valued(X, 2, 2)
    with pytest.raises(ValueError):
        canonicalize_unit_valued(Polynomial.constant(3), 3, 2)  # 3 = 0 mod 3


def test_layered_form_at_the_prime_level_has_no_layers():
    form = canonicalize_unit_valued(Polynomial.constant(1), 2, 1)
    assert form.s == 1
    assert form.layers == ()
    forms = list(enumerate_unit_valued_forms(2, 1))
    assert len(forms) == 1


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2)])
def test_layered_form_preserves_the_function_and_is_idempotent(p, n):
    ring = make_ring(f"zpn:{p},{n}")
    m = p**n
    rng = random.Random(500 * p + n)
    done = 0
    while done < 15:
        f = Polynomial([rng.randrange(m) for _ in range(rng.randrange(8))])
        if not induce(f, ring).is_unit_valued():
            continue
        done += 1
        form = canonicalize_unit_valued(f, p, n)
        assert induce(form.to_polynomial(), ring) == induce(f, ring)
        assert canonicalize_unit_valued(form.to_polynomial(), p, n) == form


def test_layer_depths_track_their_level():
    form = canonicalize_unit_valued(Polynomial((1, 3, 3)), 3, 2)
    assert any(terms for _, terms in form.layers)
    for k, terms in form.layers:
        for i, j, _ in terms:
            assert i + vp_factorial(3, j) == k - 1


@pytest.mark.parametrize("p,n,expected", [(2, 2, 16), (2, 3, 256)])
def test_layered_forms_biject_with_unit_valued_tables(p, n, expected):
    ring = make_ring(f"zpn:{p},{n}")
    tables = {induce(form.to_polynomial(), ring).values for form in enumerate_unit_valued_forms(p, n)}
    assert len(tables) == expected
    assert tables == unit_valued_tables(ring)


def test_layered_form_enumeration_count_only():
    forms = list(enumerate_unit_valued_forms(3, 2))
    assert len(forms) == 5832
    assert len(set(forms)) == 5832


def test_layered_form_validation():
    with pytest.raises(ValueError):
        UnitValuedCanonicalForm(2, 2, 0, ((2, ()),))
    with pytest.raises(ValueError):
        UnitValuedCanonicalForm(2, 2, 1, ())  # missing layer 2
    with pytest.raises(ValueError):
        UnitValuedCanonicalForm(2, 2, 1, ((2, ((0, 0, 1),)),))  # depth 0 in layer 2
    with pytest.raises(ValueError):
        UnitValuedCanonicalForm(2, 2, 1, ((2, ((1, 0, 0),)),))  # zero digit


def test_layered_form_json_shape():
    form = canonicalize_unit_valued(Polynomial.constant(3), 2, 2)
    assert form.to_json_dict() == {"p": 2, "n": 2, "s": 1, "layers": {"2": [[1, 0, 1]]}}
