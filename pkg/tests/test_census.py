import numpy as np
import pytest

from quatpairs._accel import get_backend
from quatpairs.census import (
    classify_vec_e7,
    d5_generators,
    d5_pair_to_vec,
    d5_vec_to_pair,
    e7_pair_to_vec,
    enumerate_census,
    first_irreducible_quadratic_constant,
    generator_matrices,
    gl_order,
    sample_census_e7,
)
from quatpairs.errors import ResourceLimit
from quatpairs.exact_algebra import PrimeField
from quatpairs.hermitian_pairs import act, format_splitting_type, is_semistable, splitting_type
from quatpairs.quaternion import QuaternionAlgebra
from quatpairs.representatives import rep_cubic, rep_mixed, rep_split
from quatpairs.sampling import rand_group_element, rand_pair


def test_gl_order():
    assert gl_order(4, 3) == 24261120
    assert gl_order(2, 3) == 48
    assert gl_order(2, 9) == 5760


def test_generator_matrices_are_linear(F3, rng):
    field = F3
    alg = QuaternionAlgebra(field, 1, 1)
    gens = d5_generators(alg, field)
    mats = generator_matrices(alg, field, gens, d5_pair_to_vec, d5_vec_to_pair, 12)
    for g, m in zip(gens, mats):
        for _ in range(5):
            x = rand_pair(alg, 2, rng)
            vec = np.array(d5_pair_to_vec(x), dtype=np.int64)
            expected = np.array(d5_pair_to_vec(act(g, x)), dtype=np.int64)
            assert ((m @ vec) % 3 == expected).all()


def test_vec_roundtrip(F3, rng):
    alg = QuaternionAlgebra(F3, 1, 1)
    for _ in range(10):
        x = rand_pair(alg, 2, rng)
        vec = d5_pair_to_vec(x)
        assert d5_vec_to_pair(alg, F3, vec) == x


def test_irreducible_quadratic_constant():
    assert first_irreducible_quadratic_constant(PrimeField(3)) == 1
    c = first_irreducible_quadratic_constant(PrimeField(5))
    k = PrimeField(5)
    from quatpairs.exact_algebra import is_square_scalar

    assert not is_square_scalar(k.coerce(-c))


def test_census_q3_counts_and_orbits():
    report = enumerate_census(3)
    assert report["total_points"] == 3 ** 12
    assert report["semistable_points"] == report["counts_by_type"]["(1,1)"] + report["counts_by_type"]["(2)"]
    assert report["orbit_count"] == 2
    assert report["orbit_sizes_sum_ok"]
    assert report["orbit_sizes_divide_group"]
    assert report["orbits_disjoint"]
    for orbit in report["orbits"]:
        assert orbit["stabilizer_product_ok"]
        assert orbit["matches_type_class"]
    # exact predictions from the stabilizer structure
    g = report["group_order"]
    assert report["orbits"][0]["orbit_size"] == g // (2 * gl_order(2, 3) ** 2)
    assert report["orbits"][1]["orbit_size"] == g // (2 * gl_order(2, 9))


def test_census_backends_agree():
    a = enumerate_census(3, backend="numpy")
    b = enumerate_census(3, backend="numba")
    assert a == b


def test_chunked_counts_match_type_table():
    # the q=5 census uses the counting kernel; pin it against the table at q=3
    for name in ("numpy", "numba"):
        bk = get_backend(name)
        table = bk.d5_type_table(3)
        counts = bk.d5_counts(3)
        assert [int((table == i).sum()) for i in range(3)] == [int(c) for c in counts]


def test_census_resource_guard():
    with pytest.raises(ResourceLimit):
        enumerate_census(7)
    with pytest.raises(ResourceLimit):
        enumerate_census(3, n=3)
    with pytest.raises(ResourceLimit):
        enumerate_census(5, limits={"max_states": 10})


def test_e7_sampling_all_types(F3):
    report = sample_census_e7(3, 30000, seed=5)
    assert report["all_types_observed"]
    total = sum(report["counts_by_type"].values()) + report["unstable"]
    assert total == 30000
    # backends agree on identical sample streams
    r2 = sample_census_e7(3, 30000, seed=5, backend="numpy")
    r3 = sample_census_e7(3, 30000, seed=5, backend="numba")
    assert r2 == r3


def test_e7_kernel_matches_exact_classifier(F3, rng):
    alg = QuaternionAlgebra(F3, 1, 1)
    for _ in range(40):
        x = rand_pair(alg, 3, rng)
        vec = e7_pair_to_vec(x)
        label = classify_vec_e7(vec, 3)
        if not is_semistable(x):
            assert label == "unstable"
        else:
            assert label == format_splitting_type(splitting_type(x))


def test_rep_roundtrip_through_kernel_classifier(F3, rng):
    from quatpairs.exact_algebra import etale_make

    alg = QuaternionAlgebra(F3, 1, 1)
    assert classify_vec_e7(e7_pair_to_vec(rep_split(alg, 1, 2, 1)), 3) == "(1,1,1)"
    F9 = etale_make(F3, [1, 0, 1])
    assert classify_vec_e7(e7_pair_to_vec(rep_mixed(alg, 2, F9.gen(), F9)), 3) == "(1,2)"
    L27 = etale_make(F3, [1, -1, 0, 1])
    assert classify_vec_e7(e7_pair_to_vec(rep_cubic(alg, L27.gen(), L27)), 3) == "(3)"


def test_sampled_invariance_under_action(F3, rng):
    alg = QuaternionAlgebra(F3, 1, 1)
    for _ in range(20):
        x = rand_pair(alg, 3, rng)
        g = rand_group_element(alg, 3, rng)
        assert classify_vec_e7(e7_pair_to_vec(x), 3) == classify_vec_e7(e7_pair_to_vec(act(g, x)), 3)


def test_d5_kernel_table_matches_exact(F3, rng):
    bk = get_backend()
    table = bk.d5_type_table(3)
    alg = QuaternionAlgebra(F3, 1, 1)
    from quatpairs.census import encode_vec
    from quatpairs.hermitian_pairs import invariant_p
    from quatpairs.exact_algebra import is_square_scalar

    for _ in range(60):
        x = rand_pair(alg, 2, rng)
        idx = encode_vec(d5_pair_to_vec(x), 3)
        p = invariant_p(x)
        if p.is_zero():
            assert table[idx] == 0
        elif is_square_scalar(p):
            assert table[idx] == 1
        else:
            assert table[idx] == 2
