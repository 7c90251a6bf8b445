import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weylbrauer.ring.automorphism import (
    AutomorphismError,
    RingAutomorphism,
    identity_automorphism,
    permutation_automorphism,
    scaling_automorphism,
)
from weylbrauer.ring.fields import (
    PrimeField,
    QuadraticField,
    QuadraticFieldElement,
    RationalField,
    is_prime,
    real_embedding_signs,
)
from weylbrauer.ring.gf import PRIMITIVE_POLYNOMIALS, galois_field
from weylbrauer.ring.matrix import PolyMatrix, det_bareiss, det_grid, det_report, poly_det
from weylbrauer.ring.poly import MultiPoly, PolyRing, is_unit, poly_ring_fp
from weylbrauer.ring.product import ProductRing, component_idempotents

R3 = poly_ring_fp(3, 2, ["z1", "z2"])


def polys(R, max_deg=2, max_terms=4):
    mono = st.tuples(*[st.integers(0, max_deg) for _ in range(R.nvars)])
    coeff = st.integers(0, R.field.p - 1)
    return st.dictionaries(mono, coeff, max_size=max_terms).map(lambda d: MultiPoly(R, d))


# --- fields -----------------------------------------------------------------


@given(st.integers(), st.integers(), st.integers())
def test_prime_field_axioms(a, b, c):
    F = PrimeField(5)
    a, b, c = F.coerce(a), F.coerce(b), F.coerce(c)
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    if a:
        assert F.mul(a, F.inv(a)) == 1
    assert 0 <= F.add(a, b) < 5


def test_prime_field_rejects_composite():
    with pytest.raises(ValueError):
        PrimeField(9)
    assert [q for q in range(20) if is_prime(q)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_rational_lowest_terms():
    Q = RationalField()
    x = Q.coerce(Fraction(6, -4))
    assert (x.numerator, x.denominator) == (-3, 2)


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=7)


@given(rationals, rationals, rationals, rationals)
def test_quadratic_field_axioms(a, b, c, d):
    x, y = QuadraticFieldElement(a, b, 2), QuadraticFieldElement(c, d, 2)
    assert x * y == y * x
    assert (x + y) * x == x * x + y * x
    if x:
        assert x * x.inverse() == 1


def test_sqrt_squares_to_d():
    K = QuadraticField(2)
    assert K.sqrt * K.sqrt == 2
    with pytest.raises(ValueError):
        QuadraticField(8)


def test_real_embedding_signs():
    assert real_embedding_signs(QuadraticFieldElement(1, 0, 2)) == (1, 1)
    assert real_embedding_signs(QuadraticFieldElement(0, 1, 2)) == (1, -1)
    assert real_embedding_signs(QuadraticFieldElement(1, -1, 2)) == (-1, 1)


@given(rationals, rationals)
def test_real_embedding_signs_match_floats(a, b):
    x = QuadraticFieldElement(a, b, 2)
    s2 = 2**0.5
    for sign, val in zip(real_embedding_signs(x), (float(a) + float(b) * s2, float(a) - float(b) * s2)):
        if abs(val) > 1e-9:
            assert sign == (1 if val > 0 else -1)


# --- Galois fields ----------------------------------------------------------


def _poly_mulmod(a, b, f, p):
    """Naive product of coefficient lists modulo the monic f over F_p."""
    k = len(f) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    for top in range(len(prod) - 1, k - 1, -1):
        c = prod[top]
        if c:
            for i in range(k + 1):
                prod[top - k + i] = (prod[top - k + i] - c * f[i]) % p
    return (prod + [0] * k)[:k]


@pytest.mark.parametrize("key", [k for k in PRIMITIVE_POLYNOMIALS if k[0] ** k[1] <= 3**8])
def test_primitive_polynomials_are_primitive(key):
    p, k = key
    f = PRIMITIVE_POLYNOMIALS[key]
    assert f[-1] == 1
    q1 = p**k - 1
    x = [0, 1] + [0] * (k - 2) if k > 1 else [0]
    one = [1] + [0] * (k - 1)
    # order of x is exactly q - 1: x^(q-1) = 1 and x^((q-1)/r) != 1 for each prime r | q-1
    def power(e):
        acc, base = one, x
        while e:
            if e & 1:
                acc = _poly_mulmod(acc, base, f, p)
            base = _poly_mulmod(base, base, f, p)
            e >>= 1
        return acc

    assert power(q1) == one
    for r in {r for r in range(2, q1 + 1) if q1 % r == 0 and is_prime(r)}:
        assert power(q1 // r) != one


def test_gf_arithmetic_matches_field_axioms():
    gf = galois_field(3, 2)
    elems = range(gf.q)
    for a in elems:
        for b in elems:
            assert gf.mul(a, b) == gf.mul(b, a)
            assert gf.add(a, gf.neg(a)) == 0
            if b:
                assert gf.mul(gf.div(a, b), b) == a


# --- polynomials ------------------------------------------------------------


@settings(max_examples=60)
@given(polys(R3), polys(R3), polys(R3))
def test_poly_ring_laws(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == R3.zero()


def test_no_zero_coefficients_stored():
    f = MultiPoly(R3, {(1, 0): 3, (0, 1): 1})
    assert f.terms == {(0, 1): 1}


def test_is_unit():
    assert is_unit(R3.constant(2))
    assert not is_unit(R3.gen(0))
    assert not is_unit(R3.zero())


# --- determinants -----------------------------------------------------------


def leibniz(M: PolyMatrix):
    """Permutation expansion; independent of both production strategies."""
    n = M.nrows
    total = M.ring.zero()
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = M.ring.constant(-1 if inversions % 2 else 1)
        for i in range(n):
            term = term * M.entries[i][perm[i]]
        total = total + term
    return total


def test_det_examples():
    z1, z2 = R3.gens()
    assert poly_det(PolyMatrix(R3, [[z1]])) == z1
    assert poly_det(PolyMatrix(R3, [[z1, R3.one()], [R3.zero(), z2]])) == z1 * z2


def square_matrices(R, max_n=6):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(polys(R, 1, 2), min_size=n, max_size=n), min_size=n, max_size=n)
    ).map(lambda rows: PolyMatrix(R, rows))


@settings(max_examples=40, deadline=None)
@given(square_matrices(R3))
def test_det_strategies_agree(M):
    b = det_bareiss(M)
    assert det_grid(M, "conservative") == b
    assert det_grid(M, "column") == b
    rep = det_report(M)
    assert rep.agree and rep.ran() == ["bareiss", "grid"]


@settings(max_examples=25, deadline=None)
@given(square_matrices(R3, 4))
def test_det_matches_leibniz(M):
    assert det_bareiss(M) == leibniz(M)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.lists(polys(R3, 1, 2), min_size=3, max_size=3), min_size=3, max_size=3),
       st.lists(st.lists(polys(R3, 1, 2), min_size=3, max_size=3), min_size=3, max_size=3))
def test_det_multiplicative(a, b):
    A, B = PolyMatrix(R3, a), PolyMatrix(R3, b)
    assert poly_det(A @ B) == poly_det(A) * poly_det(B)


def test_det_over_rationals():
    R = PolyRing(RationalField(), 1)
    (t,) = R.gens()
    M = PolyMatrix(R, [[t, R.constant(Fraction(1, 2))], [R.constant(2), t]])
    assert poly_det(M) == t * t - R.one()


def test_det_numpy_backend_matches_default():
    z1, z2 = R3.gens()
    M = PolyMatrix(R3, [[z1, z2, R3.one()], [z2, z1 * z2, z1], [R3.one(), z1, z2 * z2]])
    assert det_grid(M, backend="numpy") == det_bareiss(M)


# --- product rings and automorphisms ------------------------------------------


def test_component_idempotents():
    R = poly_ring_fp(3, 1, ["z"])
    assert component_idempotents(ProductRing([R])) == [ProductRing([R]).one()]
    B = ProductRing([R, R])
    e = component_idempotents(B)
    assert [tuple(str(x) for x in f.parts) for f in e] == [("1", "0"), ("0", "1")]
    B3 = ProductRing([R, R, R])
    e3 = component_idempotents(B3)
    assert e3[0] + e3[1] + e3[2] == B3.one()


def test_automorphism_rejects_bad_inverse():
    R = poly_ring_fp(3, 1, ["z"])
    B = ProductRing([R])
    (z,) = R.gens()
    with pytest.raises(AutomorphismError):
        RingAutomorphism(B, [0], [[z.scale(2)]], [[z]])
    with pytest.raises(AutomorphismError):
        RingAutomorphism(B, [0], [[z * z]], [[z]])


@settings(max_examples=30)
@given(st.integers(1, 4), st.integers(1, 4))
def test_scaling_automorphisms_compose(a, b):
    R = poly_ring_fp(5, 2)
    B = ProductRing([R])
    f, g = scaling_automorphism(B, [a, 1]), scaling_automorphism(B, [b, 1])
    assert f.compose(g) == scaling_automorphism(B, [a * b, 1])
    assert f.compose(f.inverse()).is_identity()


def test_swap_is_involution():
    R = poly_ring_fp(3, 1)
    B = ProductRing([R, R])
    s = permutation_automorphism(B, [1, 0])
    assert s.compose(s) == identity_automorphism(B)
