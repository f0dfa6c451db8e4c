from fractions import Fraction

import pytest

from quatpairs.errors import NotDefinite, ResourceLimit
from quatpairs.exact_algebra import PrimeField, etale_make
from quatpairs.norm_params import (
    algebra_automorphisms,
    count_real_roots,
    cubic_aut_order,
    isolate_real_roots,
    param_set_definite,
    param_set_finite,
    real_signature,
    sign_at_root,
    sign_classes,
    sign_classes_oracle,
    sign_vector,
    theta_root_permutation,
)
from quatpairs.quaternion import QuaternionAlgebra
from quatpairs.sampling import rand_unit_scalar


def test_real_signature_examples():
    assert real_signature([-1, -3, 0, 1]) == (3, 0)   # t^3 - 3t - 1
    assert real_signature([-2, 0, 0, 1]) == (1, 1)    # t^3 - 2
    assert real_signature([0, -1, 0, 1]) == (3, 0)    # t^3 - t
    assert real_signature([-1, -4, 0, 1]) == (3, 0)


def test_sturm_isolation():
    f = [Fraction(-1), Fraction(-3), Fraction(0), Fraction(1)]
    intervals = isolate_real_roots(f)
    assert len(intervals) == 3
    for (lo, hi) in intervals:
        assert count_real_roots(f, lo, hi) == 1
    # intervals ascend and are disjoint
    for (l1, h1), (l2, h2) in zip(intervals, intervals[1:]):
        assert h1 <= l2


def test_sign_at_root():
    f = [Fraction(-2), Fraction(0), Fraction(1)]  # t^2 - 2
    ivs = isolate_real_roots(f)
    # g(t) = t: negative at -sqrt2, positive at +sqrt2
    assert sign_at_root([Fraction(0), Fraction(1)], f, ivs[0]) == -1
    assert sign_at_root([Fraction(0), Fraction(1)], f, ivs[1]) == 1


def test_sign_vector(Q):
    L = etale_make(Q, [-1, -3, 0, 1])
    assert sign_vector(L, 1) == (1, 1, 1)
    assert sign_vector(L, -1) == (-1, -1, -1)
    sv = sign_vector(L, L.gen())
    # roots of t^3-3t-1 sit near -1.53, -0.35, 1.88
    assert sv == (-1, -1, 1)


def test_cubic_aut_order(Q):
    assert cubic_aut_order(etale_make(Q, [-1, -3, 0, 1])) == 3   # disc 81
    assert cubic_aut_order(etale_make(Q, [-1, -4, 0, 1])) == 1   # disc 229
    assert cubic_aut_order(etale_make(Q, [-2, 0, 0, 1])) == 1
    assert cubic_aut_order(etale_make(Q, [1, -2, -1, 1])) == 3   # disc 49


def test_theta_root_permutation_is_three_cycle(Q):
    perm = theta_root_permutation(etale_make(Q, [-1, -3, 0, 1]))
    seen = {0}
    cur = 0
    for _ in range(2):
        cur = perm[cur]
        seen.add(cur)
    assert len(seen) == 3


def test_sign_class_counts():
    assert len(sign_classes(3, [])) == 4
    assert len(sign_classes(3, [(1, 2, 0)])) == 2
    assert len(sign_classes(1, [])) == 1
    for r1, perms in ((3, []), (3, [(1, 2, 0)]), (1, [])):
        assert len(sign_classes(r1, perms)) == sign_classes_oracle(r1, perms)


def test_param_set_definite(Q):
    ham = QuaternionAlgebra(Q, -1, -1)
    assert param_set_definite(etale_make(Q, [-1, -3, 0, 1]), ham)["class_count"] == 2
    assert param_set_definite(etale_make(Q, [-1, -4, 0, 1]), ham)["class_count"] == 4
    assert param_set_definite(etale_make(Q, [-2, 0, 0, 1]), ham)["class_count"] == 1
    rep = param_set_definite(etale_make(Q, [-1, -3, 0, 1]), ham)
    assert "external_assumption" in rep and rep["model"] == "sign_vector"


def test_param_set_definite_rejects_indefinite(Q):
    split = QuaternionAlgebra(Q, 1, 1)
    with pytest.raises(NotDefinite):
        param_set_definite(etale_make(Q, [-2, 0, 0, 1]), split)


def test_sign_class_metamorphic_invariance(Q, rng):
    # multiplying by rational scalars and by squares does not move the class
    ham = QuaternionAlgebra(Q, -1, -1)
    L = etale_make(Q, [-1, -4, 0, 1])
    classes = sign_classes(3, [])

    def class_of(v):
        for idx, cl in enumerate(classes):
            if tuple(v) in {tuple(x) for x in cl} or tuple(v) in cl:
                return idx
        raise AssertionError

    for _ in range(15):
        lam = rand_unit_scalar(L, rng)
        c = rand_unit_scalar(Q, rng)
        mu = rand_unit_scalar(L, rng)
        base = sign_vector(L, lam)
        scaled = sign_vector(L, L.coerce(c) * lam * mu * mu)
        assert class_of(base) == class_of(scaled)


def test_param_set_finite_all_types(F3, F5):
    configs = [
        (F3, [1, -1, 0, 1]),   # F27
        (F3, [0, -1, 0, 1]),   # F3 x F3 x F3
        (F3, [0, 1, 0, 1]),    # F3 x F9
        (F5, [1, 1, 0, 1]),    # F125
        (F5, [0, -1, 0, 1]),   # split
        (F5, [2, 0, 0, 1]),    # F5 x F25
    ]
    for field, modulus in configs:
        rep = param_set_finite(field, modulus)
        assert rep["class_count"] == 1
        assert rep["norm_image_is_all_units"]
    assert param_set_finite(F3, [1, -1, 0, 1])["aut_order"] == 3
    assert param_set_finite(F3, [0, -1, 0, 1])["aut_order"] == 6
    assert param_set_finite(F3, [0, 1, 0, 1])["aut_order"] == 2


def test_param_set_finite_resource_guard():
    with pytest.raises(ResourceLimit):
        param_set_finite(PrimeField(11), [1, 1, 0, 1])


def test_automorphism_enumeration(F3):
    F27 = etale_make(F3, [1, -1, 0, 1])
    auts = algebra_automorphisms(F27)
    assert len(auts) == 3
    t = F27.gen()
    images = {a(t).data for a in auts}
    assert images == {t.data, (t ** 3).data, (t ** 9).data}
