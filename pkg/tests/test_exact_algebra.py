from fractions import Fraction

import pytest

from quatpairs.errors import InseparableModulus, NonMonic, NotAUnit, ReducibleModulus
from quatpairs.exact_algebra import (
    EtaleAlgebra,
    PrimeField,
    Rationals,
    char_poly_of_element,
    conjugates,
    etale_make,
    is_square_scalar,
    norm_trace,
    poly_eval,
    quadratic_conjugation,
    roots_in_base,
    splitting_data,
    sqrt_scalar,
)
from quatpairs.sampling import rand_scalar, rand_unit_scalar


def test_etale_make_f9(F3):
    F9 = etale_make(F3, [1, 0, 1])
    assert F9.degree == 2 and F9.is_field
    assert F9.size() == 9


def test_etale_make_split_over_q(Q):
    # t^2 - t has disc 1 != 0: the split algebra Q x Q is fine
    A = etale_make(Q, [0, -1, 1])
    assert not A.is_field
    t = A.gen()
    assert t * t == t


def test_etale_make_split_over_f3(F3):
    A = etale_make(F3, [-1, 0, 1])  # t^2 - 1, disc 4 = 1 mod 3
    assert not A.is_field


def test_etale_make_rejects_inseparable(Q):
    with pytest.raises(InseparableModulus):
        etale_make(Q, [0, 0, 1])  # t^2
    with pytest.raises(InseparableModulus):
        etale_make(Q, [1, 2, 1])  # (t+1)^2


def test_etale_make_rejects_non_monic(Q):
    with pytest.raises(NonMonic):
        etale_make(Q, [1, 0, 2])


def test_conjugates_f9_frobenius(F3):
    F9 = etale_make(F3, [1, 0, 1])
    t = F9.gen()
    cs = conjugates(F9, t)
    assert cs == [t, -t]


def test_conjugates_quadratic_over_q(Q, rng):
    F = etale_make(Q, [-2, 0, 1])  # Q(sqrt 2)
    alpha = F.gen()
    for _ in range(10):
        u = rand_scalar(Q, rng)
        v = rand_scalar(Q, rng)
        x = F.coerce(u) + F.coerce(v) * alpha
        cs = conjugates(F, x)
        assert cs[0] == x
        assert cs[1] == F.coerce(u) - F.coerce(v) * alpha


def test_conjugates_f27(F3):
    F27 = etale_make(F3, [1, -1, 0, 1])  # t^3 - t + 1
    t = F27.gen()
    cs = conjugates(F27, t)
    assert cs == [t, t ** 3, t ** 9]
    # each conjugate is a root of the modulus
    for c in cs:
        assert poly_eval([F27.coerce(v) for v in F27.modulus], c).is_zero()
    assert len({c.data for c in cs}) == 3


def test_conjugates_reject_reducible(F3):
    A = etale_make(F3, [-1, 0, 1])
    with pytest.raises(ReducibleModulus):
        conjugates(A, A.gen())


def test_norm_trace_examples(F3, Q):
    F9 = etale_make(F3, [1, 0, 1])
    n, t = norm_trace(F9, F9.gen())
    assert n == F3.one() and t == F3.zero()
    F = etale_make(Q, [-5, 0, 1])  # t^2 - 5
    u, v = Fraction(2), Fraction(3)
    x = F.from_coords([u, v])
    n, t = norm_trace(F, x)
    assert n == Q.coerce(u * u - 5 * v * v)
    assert t == Q.coerce(2 * u)
    # identity has norm 1, trace = degree
    n, t = norm_trace(F, F.one())
    assert n == Q.one() and t == Q.coerce(2)


def test_norm_trace_multiplicative_additive(rng):
    for ring in (etale_make(PrimeField(5), [2, 0, 1]), etale_make(Rationals(), [-1, -3, 0, 1])):
        for _ in range(25):
            x = rand_scalar(ring, rng)
            y = rand_scalar(ring, rng)
            nx, tx = norm_trace(ring, x)
            ny, ty = norm_trace(ring, y)
            nxy, txy = norm_trace(ring, x * y)
            _, txpy = norm_trace(ring, x + y)
            assert nxy == nx * ny
            assert txpy == tx + ty


def test_roots_examples(F5, Q):
    assert sorted(r.data for r in roots_in_base(F5, [F5.coerce(-1), F5.zero(), F5.one()])) == [1, 4]
    assert sorted(r.data for r in roots_in_base(F5, [F5.coerce(1), F5.zero(), F5.one()])) == [2, 3]
    assert roots_in_base(Q, [Q.coerce(-1), Q.coerce(-3), Q.zero(), Q.one()]) == []
    # rational root test handles non-monic and fractional inputs
    roots = roots_in_base(Q, [Q.coerce(Fraction(-1, 2)), Q.coerce(0), Q.coerce(2)])
    assert sorted(r.data for r in roots) == [Fraction(-1, 2), Fraction(1, 2)]


def test_roots_with_multiplicity(F5):
    # (t-1)^2 (t-2)
    coeffs = [F5.coerce(-2), F5.coerce(5), F5.coerce(-4), F5.one()]
    roots = sorted(r.data for r in roots_in_base(F5, coeffs))
    assert roots == [1, 1, 2]


def test_sqrt_exhaustive_small_primes():
    for p in (3, 5, 7, 11, 13):
        k = PrimeField(p)
        for v in range(p):
            x = k.coerce(v)
            if is_square_scalar(x):
                s = sqrt_scalar(x)
                assert s * s == x


def test_conjugates_match_char_poly(rng):
    for ring in (etale_make(PrimeField(3), [1, -1, 0, 1]), etale_make(Rationals(), [-1, -3, 0, 1])):
        for _ in range(5):
            x = rand_unit_scalar(ring, rng)
            cs = conjugates(ring, x)  # asserts the char-poly property internally
            cp = char_poly_of_element(ring, x)
            s = cs[0]
            for c in cs[1:]:
                s = s + c
            # trace = -(coefficient of t^(d-1))
            assert s == s.ring.coerce(-cp[ring.degree - 1])


def test_tower_splitting_non_galois(Q):
    L = etale_make(Q, [-1, -4, 0, 1])  # disc 229, not a square
    sd = splitting_data(L)
    assert sd.algebra_s.degree_over_prime == 6
    c1, c2, c3 = sd.conjugates
    assert c1 + c2 + c3 == sd.algebra_s.zero()
    assert c1 * c2 * c3 == sd.algebra_s.one()
    tau, mu, theta = sd.auts["tau"], sd.auts["mu"], sd.auts["theta"]
    assert tau(c1) == c2 and tau(c2) == c1 and tau(c3) == c3
    assert mu(c1) == c3 and mu(c3) == c1 and mu(c2) == c2
    assert theta(c1) == c2 and theta(c2) == c3 and theta(c3) == c1


def test_galois_cubic_splits_in_itself(Q):
    L = etale_make(Q, [-1, -3, 0, 1])  # disc 81
    sd = splitting_data(L)
    assert sd.algebra_s is L
    th = sd.auts["theta"]
    t = L.gen()
    assert th(th(th(t))) == t and th(t) != t


def test_quadratic_conjugation_is_involution(F7, rng):
    F49 = etale_make(F7, [1, 0, 1])
    nu = quadratic_conjugation(F49)
    for _ in range(10):
        x = rand_scalar(F49, rng)
        assert nu(nu(x)) == x
        n, t = norm_trace(F49, x)
        assert F49.coerce(n) == x * nu(x)
        assert F49.coerce(t) == x + nu(x)


def test_element_inverse_in_split_algebra(F3):
    A = etale_make(F3, [-1, 0, 1])  # split: t = (1,-1) via CRT
    t = A.gen()
    # t is a unit (components +-1): (t)^2 = 1
    assert t.is_unit() and t.inv() == t
    # 1 + t has a zero component: not a unit
    with pytest.raises(NotAUnit):
        (A.one() + t).inv()


def test_tower_height_and_degree_limits(Q, F3):
    L = etale_make(Q, [-1, -4, 0, 1])
    # quadratic layer over the cubic: total degree 6, allowed
    quot = [L.coerce(c) for c in (2, 1, 1)]
    EtaleAlgebra(L, quot)
    with pytest.raises(ValueError):
        # cubic over cubic: total degree 9
        etale_make(L, [L.coerce(1), L.coerce(1), L.coerce(0), L.coerce(1)])
