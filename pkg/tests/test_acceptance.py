"""Acceptance suite: one test per criterion, with the stated sample counts,
exactness requirements and runtime bounds.  Each test prints a PASS line
(visible with pytest -s or in the captured output summary)."""

import random
import time

from quatpairs.census import enumerate_census, gl_order
from quatpairs.exact_algebra import PrimeField, Rationals, etale_make, splitting_data
from quatpairs.hermitian_pairs import (
    act,
    character_chi,
    form_of_pair,
    iota,
    pfaffian,
    quat_identity,
    reduced_norm_matrix,
    splitting_type,
)
from quatpairs.norm_params import param_set_definite, param_set_finite
from quatpairs.quaternion import QuaternionAlgebra
from quatpairs.reducible import (
    ReducibleContext,
    rand_case_pair_w2,
    rand_group_element as rand_case_group,
    rand_p_element,
    rand_u_ss,
)
from quatpairs.representatives import (
    d5_g_alpha,
    d5_w,
    d5_x_alpha,
    delta_conjugate_formula,
    e7_beta_splitting,
    e7_g_alpha,
    e7_w,
    e7_x_alpha,
    e7_x_beta,
    embed_group,
    embed_pair,
    lambda_conjugate_formula,
    mu_tilde,
    nu_tilde_d5,
    nu_tilde_e7,
    rep_cubic,
    rep_mixed,
    rep_split,
    tau_tilde,
    theta_tilde,
    trace_delta,
    trace_lambda,
    twist_group,
)
from quatpairs.sampling import (
    rand_group_element,
    rand_hermitian,
    rand_pair,
    rand_unit_scalar,
)

SAMPLES = 1000

FIELDS = [PrimeField(3), PrimeField(5), PrimeField(7), Rationals()]
ALGEBRA_PARAMS = [(1, 1), (-1, -1)]


def _configs():
    for field in FIELDS:
        for (a, b) in ALGEBRA_PARAMS:
            for n in (2, 3):
                yield field, QuaternionAlgebra(field, a, b), n


def test_criterion_1_pfaffian_axioms():
    rng = random.Random(101)
    t0 = time.time()
    checked = 0
    for field, alg, n in _configs():
        assert pfaffian(quat_identity(alg, field, n)) == field.one()
        for _ in range(SAMPLES):
            x = rand_hermitian(alg, n, rng, height=2)
            pf = pfaffian(x)
            assert pf * pf == reduced_norm_matrix(x)
            checked += 1
    elapsed = time.time() - t0
    assert elapsed < 120, f"criterion 1 runtime bound exceeded: {elapsed:.1f}s"
    print(f"\nACCEPTANCE 1 PASS: pfaffian axioms exact on {checked} samples "
          f"across 16 configurations in {elapsed:.1f}s (< 120s)")


def test_criterion_2_equivariance():
    rng = random.Random(102)
    t0 = time.time()
    checked = 0
    from quatpairs.hermitian_pairs import discriminant

    for field, alg, n in _configs():
        for _ in range(SAMPLES):
            x = rand_pair(alg, n, rng, height=2)
            g = rand_group_element(alg, n, rng, height=1)
            ng = reduced_norm_matrix(g.g1)
            assert pfaffian(g.g1 * x.x1 * iota(g.g1)) == ng * pfaffian(x.x1)
            gx = act(g, x)
            f_x = form_of_pair(x)
            f_gx = form_of_pair(gx)
            assert f_gx == f_x.substitute_g2(g.g2).scale(ng)
            assert discriminant(f_gx) == character_chi(g) ** 2 * discriminant(f_x)
            checked += 1
    elapsed = time.time() - t0
    print(f"\nACCEPTANCE 2 PASS: equivariance identities exact on {checked} "
          f"(g,x) samples across 16 configurations in {elapsed:.1f}s")


def test_criterion_3_transporters():
    F3, Q = PrimeField(3), Rationals()
    quad_configs = [
        (F3, [1, 0, 1], "F9"),
        (Q, [-2, 0, 1], "Q(sqrt 2)"),
        (Q, [2, 0, 1], "Q(sqrt -2)"),
    ]
    for field, modulus, _name in quad_configs:
        alg = QuaternionAlgebra(field, 1, 1)
        F = etale_make(field, modulus)
        a1, a2 = -F.modulus[1], F.modulus[0]
        assert act(d5_g_alpha(alg, F), embed_pair(d5_w(alg), F)) == \
            embed_pair(d5_x_alpha(alg, a1, a2), F)
        assert act(e7_g_alpha(alg, F), embed_pair(e7_w(alg), F)) == \
            embed_pair(e7_x_alpha(alg, a1, a2), F)
    cubic_configs = [(F3, [1, -1, 0, 1], "F27"), (Q, [-1, -3, 0, 1], "Galois t^3-3t-1")]
    for field, modulus, _name in cubic_configs:
        alg = QuaternionAlgebra(field, 1, 1)
        L = etale_make(field, modulus)
        b1, b2, b3 = -L.modulus[2], L.modulus[1], -L.modulus[0]
        g, sd = e7_beta_splitting(alg, L)
        assert act(g, embed_pair(e7_w(alg), sd.algebra_s)) == \
            embed_pair(e7_x_beta(alg, b1, b2, b3), sd.algebra_s)
    print("\nACCEPTANCE 3 PASS: transport identities exact over F9, Q(sqrt +-2), "
          "F27 and the Galois cubic")


def test_criterion_4_cocycles():
    F3, Q = PrimeField(3), Rationals()
    count = 0
    for field, modulus in ((F3, [1, 0, 1]), (Q, [-2, 0, 1]), (Q, [2, 0, 1])):
        alg = QuaternionAlgebra(field, 1, 1)
        F = etale_make(field, modulus)
        nu = splitting_data(F).auts["nu"]
        g = d5_g_alpha(alg, F)
        assert twist_group(g, nu, F) == g * embed_group(nu_tilde_d5(alg), F)
        g3 = e7_g_alpha(alg, F)
        assert twist_group(g3, nu, F) == g3 * embed_group(nu_tilde_e7(alg), F)
        count += 2
    tilde = {"theta": theta_tilde, "tau": tau_tilde, "mu": mu_tilde}
    for field, modulus in ((F3, [1, -1, 0, 1]), (Q, [-1, -3, 0, 1]), (Q, [-1, -4, 0, 1])):
        alg = QuaternionAlgebra(field, 1, 1)
        L = etale_make(field, modulus)
        g, sd = e7_beta_splitting(alg, L)
        S = sd.algebra_s
        for name, autmap in sd.auts.items():
            assert twist_group(g, autmap, S) == g * embed_group(tilde[name](alg), S)
            count += 1
    for field in (F3, Q):
        alg = QuaternionAlgebra(field, 1, 1)
        assert act(nu_tilde_d5(alg), d5_w(alg)) == d5_w(alg)
        w3 = e7_w(alg)
        for t in (nu_tilde_e7, tau_tilde, mu_tilde, theta_tilde):
            assert act(t(alg), w3) == w3
        count += 5
    print(f"\nACCEPTANCE 4 PASS: {count} cocycle/stabilizer relations exact "
          "(nu, tau, mu, theta where defined)")


def test_criterion_5_representative_classification():
    F3, Q = PrimeField(3), Rationals()
    for field in (F3, Q):
        alg = QuaternionAlgebra(field, 1, 1)
        assert rep_split(alg, 1, 1, 1) == e7_w(alg)
        assert splitting_type(rep_split(alg, 1, 2, 1)) == (1, 1, 1)
    algq = QuaternionAlgebra(Q, 1, 1)
    for modulus in ([1, 0, 1], [-2, 0, 1]):
        F = etale_make(Q, modulus)
        assert splitting_type(rep_mixed(algq, 2, F.gen(), F)) == (1, 2)
    alg3 = QuaternionAlgebra(F3, 1, 1)
    F9 = etale_make(F3, [1, 0, 1])
    assert splitting_type(rep_mixed(alg3, 1, F9.gen(), F9)) == (1, 2)
    for field, modulus in ((F3, [1, -1, 0, 1]), (Q, [-1, -3, 0, 1]), (Q, [-1, -4, 0, 1])):
        alg = QuaternionAlgebra(field, 1, 1)
        L = etale_make(field, modulus)
        b1, b2, b3 = -L.modulus[2], L.modulus[1], -L.modulus[0]
        assert splitting_type(rep_cubic(alg, L.gen(), L)) == (3,)
        assert rep_cubic(alg, 1, L) == e7_x_beta(alg, b1, b2, b3).scale(field.coerce(-1))
    print("\nACCEPTANCE 5 PASS: representative splitting types (1,1,1)/(1,2)/(3), "
          "rep_split(1,1,1) = w and rep_cubic(1,L) = -x_beta verbatim")


def test_criterion_6_lambda_delta_formulas():
    rng = random.Random(106)
    F3, F5, Q = PrimeField(3), PrimeField(5), Rationals()
    lam_checked = 0
    quad_configs = [(F3, [1, 0, 1]), (F5, [2, 0, 1]), (Q, [-2, 0, 1]), (Q, [3, 1, 1])]
    for field, modulus in quad_configs:
        F = etale_make(field, modulus)
        for _ in range(60):
            lam = rand_unit_scalar(F, rng)
            i = rng.randrange(4)
            assert trace_lambda(F, lam, i) == lambda_conjugate_formula(F, lam, i)
            lam_checked += 1
    assert lam_checked >= 200
    delta_checked = 0
    galois_configs = [(F3, [1, -1, 0, 1]), (F5, [1, 1, 0, 1]),
                      (Q, [-1, -3, 0, 1]), (Q, [1, -2, -1, 1])]
    for field, modulus in galois_configs:
        L = etale_make(field, modulus)
        for _ in range(60):
            delta = rand_unit_scalar(L, rng)
            i = rng.randrange(6)
            assert trace_delta(L, delta, i) == delta_conjugate_formula(L, delta, i)
            delta_checked += 1
        # Euler identities at delta = 1
        b1, b2, b3 = -L.modulus[2], L.modulus[1], -L.modulus[0]
        assert [trace_delta(L, 1, i) for i in range(6)] == [
            field.zero(), field.zero(), field.coerce(-1), -b1,
            -(b1 * b1 - b2), -(b1 ** 3 - 2 * b1 * b2 + b3)]
    assert delta_checked >= 200
    print(f"\nACCEPTANCE 6 PASS: Lambda/Delta trace = conjugate formulas on "
          f"{lam_checked}+{delta_checked} instances; Euler identities reproduced")


def test_criterion_7_census_q3():
    t0 = time.time()
    report = enumerate_census(3)
    elapsed = time.time() - t0
    assert report["orbit_count"] == 2
    assert report["orbit_sizes_sum_ok"]
    assert report["orbits_disjoint"]
    g = report["group_order"]
    assert g == gl_order(4, 3) * gl_order(2, 3)
    for orbit in report["orbits"]:
        assert orbit["stabilizer_product_ok"], "orbit x stabilizer != |G|"
        assert orbit["matches_type_class"]
    assert report["orbits"][0]["predicted_stabilizer_order"] == 2 * gl_order(2, 3) ** 2
    assert report["orbits"][1]["predicted_stabilizer_order"] == 2 * gl_order(2, 9)
    assert elapsed < 1800, f"criterion 7 runtime bound exceeded: {elapsed:.1f}s"
    print(f"\nACCEPTANCE 7 PASS: q=3 census has exactly 2 orbits "
          f"({report['orbits'][0]['orbit_size']} + {report['orbits'][1]['orbit_size']} "
          f"= {report['semistable_points']}), stabilizer products exact, "
          f"{elapsed:.1f}s (< 1800s)")


def test_criterion_8_parameter_sets():
    F3, F5, Q = PrimeField(3), PrimeField(5), Rationals()
    finite_configs = [
        (F3, [1, -1, 0, 1]), (F3, [0, -1, 0, 1]), (F3, [0, 1, 0, 1]),
        (F5, [1, 1, 0, 1]), (F5, [0, -1, 0, 1]), (F5, [2, 0, 0, 1]),
    ]
    for field, modulus in finite_configs:
        rep = param_set_finite(field, modulus)
        assert rep["class_count"] == 1
        assert rep["norm_image_is_all_units"]
    ham = QuaternionAlgebra(Q, -1, -1)
    # class counts are cross-checked against the exhaustive oracle inside
    assert param_set_definite(etale_make(Q, [-1, -3, 0, 1]), ham)["class_count"] == 2
    assert param_set_definite(etale_make(Q, [-1, -4, 0, 1]), ham)["class_count"] == 4
    assert param_set_definite(etale_make(Q, [-2, 0, 0, 1]), ham)["class_count"] == 1
    print("\nACCEPTANCE 8 PASS: finite parameter sets all 1 class by enumeration "
          "(q in {3,5}, three etale types); definite-Q sign model gives 2/4/1")


def test_criterion_9_reducible_roundtrips():
    F3, F5 = PrimeField(3), PrimeField(5)
    t0 = time.time()
    contexts = [
        ("a over F3", ReducibleContext("a", F3)),
        ("a over F5", ReducibleContext("a", F5)),
        ("b over F9/F3", ReducibleContext("b", F3, F=etale_make(F3, [1, 0, 1]))),
        ("c split over F3", ReducibleContext("c", F3, alg=QuaternionAlgebra(F3, 1, 1))),
    ]
    per_case = 100
    search_failures = 0
    for name, ctx in contexts:
        rng = random.Random(hash(name) % (2 ** 31))
        for i in range(per_case):
            w0 = rand_case_pair_w2(ctx, rng)
            g0 = rand_case_group(ctx, rng)
            x = ctx.act(g0, w0)
            g, w = ctx.reduce_to_W(x, seed=i)
            assert ctx.act(g, w) == x and ctx.in_W(w)
            assert ctx.check_bundle_uniqueness(x, g, g0, w, w0)
        for i in range(per_case):
            u0 = rand_u_ss(ctx, rng)
            p0 = rand_p_element(ctx, rng)
            wu = ctx.act(p0, u0)
            p, u, eta = ctx.reduce_W_to_U(wu, seed=i)
            target = ctx.act(ctx.eta(), u) if eta else u
            assert ctx.act(p, target) == wu
            assert ctx.in_U_ss(u) and ctx.in_P(p)
    elapsed = time.time() - t0
    assert search_failures == 0
    print(f"\nACCEPTANCE 9 PASS: {per_case} exact round trips per reduction per "
          f"case (4 configurations), g in P(k) for uniqueness pairs, "
          f"0 KernelUnitSearchFailed, {elapsed:.1f}s")


def test_criterion_10_s3_structure():
    F3, F5, Q = PrimeField(3), PrimeField(5), Rationals()
    rng = random.Random(110)
    contexts = [
        ReducibleContext("a", F5),
        ReducibleContext("b", F3, F=etale_make(F3, [1, 0, 1])),
        ReducibleContext("c", Q, alg=QuaternionAlgebra(Q, -1, -1)),
    ]
    for ctx in contexts:
        th, et = ctx.theta(), ctx.eta()
        ident = ctx.group_identity()
        assert ctx.group_mul(th, ctx.group_mul(th, th)) == ident
        assert ctx.group_mul(et, et) == ident
        elems = ctx.s3_elements()
        assert len(elems) == 6
        for _ in range(3):
            u = rand_u_ss(ctx, rng)
            for s in elems:
                assert ctx.in_U(ctx.act(s, u))
    print("\nACCEPTANCE 10 PASS: theta^3 = eta^2 = 1, |<theta,eta>| = 6, "
          "U invariant under all six elements, per case")
