

import pytest

from quatpairs.errors import NotInSubgroup, NotInW, NotLevelV1, NotLevelV2
from quatpairs.exact_algebra import etale_make
from quatpairs.quaternion import QuaternionAlgebra
from quatpairs.reducible import (
    CasePair,
    ReducibleContext,
    case_a_stabilizer_scan,
    h_points_case_a,
    rand_case_pair_w2,
    rand_group_element,
    rand_p_element,
    rand_u_ss,
)
from quatpairs.representatives import e7_x_alpha, e7_x_beta


def make_ctx(name, F3, F5, Q):
    if name == "a3":
        return ReducibleContext("a", F3)
    if name == "a5":
        return ReducibleContext("a", F5)
    if name == "b9":
        return ReducibleContext("b", F3, F=etale_make(F3, [1, 0, 1]))
    if name == "bq":
        return ReducibleContext("b", Q, F=etale_make(Q, [-2, 0, 1]))
    if name == "c3":
        return ReducibleContext("c", F3, alg=QuaternionAlgebra(F3, 1, 1))
    if name == "cq":
        return ReducibleContext("c", Q, alg=QuaternionAlgebra(Q, -1, -1))
    raise KeyError(name)


@pytest.mark.parametrize("name", ["a3", "b9", "c3"])
def test_s3_structure(name, F3, F5, Q):
    ctx = make_ctx(name, F3, F5, Q)
    th, et = ctx.theta(), ctx.eta()
    ident = ctx.group_identity()
    assert ctx.group_mul(th, ctx.group_mul(th, th)) == ident
    assert ctx.group_mul(et, et) == ident
    elems = ctx.s3_elements()
    assert len(elems) == 6
    # symmetric-group multiplication: theta eta = eta theta^2
    lhs = ctx.group_mul(th, et)
    rhs = ctx.group_mul(et, ctx.group_mul(th, th))
    assert lhs == rhs
    for s in elems:
        ctx.assert_membership(s, "S3")
        ctx.assert_membership(s, "H")


@pytest.mark.parametrize("name", ["a3", "b9", "c3"])
def test_u_invariance(name, F3, F5, Q, rng):
    ctx = make_ctx(name, F3, F5, Q)
    for _ in range(5):
        u = rand_u_ss(ctx, rng)
        for s in ctx.s3_elements():
            assert ctx.in_U(ctx.act(s, u))


def test_levels_case_a(F3):
    ctx = ReducibleContext("a", F3)
    z = F3.zero()
    one = F3.one()
    m1 = [[z, z, z], [z, one, z], [z, z, -one]]
    m2 = [[one, z, z], [z, -one, z], [z, z, z]]
    assert ctx.level(CasePair("a", m1, m2)) == "V1"


def test_levels_case_c(F3, Q):
    ctx = ReducibleContext("c", Q, alg=QuaternionAlgebra(Q, 1, 1))
    xb = e7_x_beta(ctx.alg, 0, -1, 1)  # irreducible cubic over Q as well
    assert ctx.level(CasePair("c", pair=xb)) == "V3"
    xa = e7_x_alpha(ctx.alg, 0, 1)
    assert ctx.level(CasePair("c", pair=xa)) == "V2"
    assert ctx.in_W(CasePair("c", pair=xa))


def test_level_invariance(F3, rng):
    ctx = ReducibleContext("a", F3)
    for _ in range(10):
        x = rand_case_pair_w2(ctx, rng)
        g = rand_group_element(ctx, rng)
        assert ctx.level(ctx.act(g, x)) == ctx.level(x)


def test_w_form_has_v2_factor(F3, rng):
    # for w in W the form vanishes at (1:0)
    for case in ("a", "c"):
        ctx = ReducibleContext(case, F3, alg=QuaternionAlgebra(F3, 1, 1) if case == "c" else None)
        for _ in range(10):
            w = rand_case_pair_w2(ctx, rng)
            form = ctx.form(w)
            assert form.coeffs[0].is_zero()


def test_reduce_to_w_identity_on_w(F3, rng):
    ctx = ReducibleContext("a", F3)
    w = rand_case_pair_w2(ctx, rng)
    g, w2 = ctx.reduce_to_W(w)
    assert g == ctx.group_identity() and w2 == w


def test_reduce_to_w_rejects_wrong_level(F3):
    ctx = ReducibleContext("a", F3)
    z, one = F3.zero(), F3.one()
    u = CasePair("a", [[z, z, z], [z, one, z], [z, z, -one]], [[one, z, z], [z, -one, z], [z, z, z]])
    with pytest.raises(NotLevelV2):
        ctx.reduce_to_W(u)


def test_reduce_w_to_u_rejects(F3, rng):
    ctx = ReducibleContext("a", F3)
    x = rand_case_pair_w2(ctx, rng)
    with pytest.raises(NotLevelV1):
        ctx.reduce_W_to_U(x)
    g = rand_group_element(ctx, rng)
    y = ctx.act(g, x)
    if not ctx.in_W(y):
        with pytest.raises(NotInW):
            ctx.reduce_W_to_U(y)


@pytest.mark.parametrize("name", ["a3", "a5", "b9", "bq", "c3"])
def test_reduce_roundtrips(name, F3, F5, Q, rng):
    ctx = make_ctx(name, F3, F5, Q)
    n = 12 if name in ("a3", "a5", "b9", "c3") else 3
    for i in range(n):
        w0 = rand_case_pair_w2(ctx, rng)
        g0 = rand_group_element(ctx, rng)
        x = ctx.act(g0, w0)
        g, w = ctx.reduce_to_W(x, seed=i)
        assert ctx.act(g, w) == x
        assert ctx.in_W(w)
        assert ctx.check_bundle_uniqueness(x, g, g0, w, w0)
        u0 = rand_u_ss(ctx, rng)
        p0 = rand_p_element(ctx, rng)
        wu = ctx.act(p0, u0)
        p, u, eta = ctx.reduce_W_to_U(wu, seed=i)
        target = ctx.act(ctx.eta(), u) if eta else u
        assert ctx.act(p, target) == wu
        assert ctx.in_U_ss(u) and ctx.in_P(p)
        # the transporter between the two U^ss points lies in H(k)
        h = ctx.group_mul(ctx.group_inv(p0), p)
        if eta:
            h = ctx.group_mul(h, ctx.eta())
        assert ctx.in_H(h) and ctx.act(h, u) == u0


def test_reduce_roundtrip_hamilton_over_q(Q, rng):
    ctx = ReducibleContext("c", Q, alg=QuaternionAlgebra(Q, -1, -1))
    # the quadratic representative lies in W; transport it around and recover
    x_w = CasePair("c", pair=e7_x_alpha(ctx.alg, 0, 1))
    g0 = rand_group_element(ctx, rng)
    x = ctx.act(g0, x_w)
    g, w = ctx.reduce_to_W(x, seed=0)
    assert ctx.act(g, w) == x and ctx.in_W(w)
    assert ctx.check_bundle_uniqueness(x, g, g0, w, x_w)
    u0 = rand_u_ss(ctx, rng)
    p0 = rand_p_element(ctx, rng)
    wu = ctx.act(p0, u0)
    p, u, eta = ctx.reduce_W_to_U(wu, seed=0)
    target = ctx.act(ctx.eta(), u) if eta else u
    assert ctx.act(p, target) == wu and ctx.in_U_ss(u) and ctx.in_P(p)


def test_bundle_uniqueness_negative(F3, rng):
    ctx = ReducibleContext("a", F3)
    w0 = rand_case_pair_w2(ctx, rng)
    p = rand_p_element(ctx, rng)
    x = ctx.act(p, w0)
    # a transporter with a non-triangular GL_2 part fails the structural test
    g_bad = rand_group_element(ctx, rng)
    while ctx.in_P(g_bad):
        g_bad = rand_group_element(ctx, rng)
    w_bad = ctx.act(ctx.group_inv(g_bad), x)
    assert not ctx.check_bundle_uniqueness(x, g_bad, p, w_bad, w0) or ctx.in_P(
        ctx.group_mul(ctx.group_inv(g_bad), p))


def test_membership_errors(F3):
    ctx = ReducibleContext("a", F3)
    g = ctx.theta()
    with pytest.raises(NotInSubgroup):
        ctx.assert_membership(g, "H_circ")


def test_u_subset_w1(F3, rng):
    for case in ("a", "b", "c"):
        ctx = make_ctx({"a": "a3", "b": "b9", "c": "c3"}[case], F3, None, None)
        for _ in range(8):
            u = rand_u_ss(ctx, rng)
            assert ctx.in_W(u)
            assert ctx.level(u) == "V1"


def test_case_a_stabilizer_scan_q3(F3, rng):
    """The complete stabilizer of a U^ss point in G(F_3) lies in H(F_3) and
    coincides with its H-stabilizer; combined with H-transitivity on U^ss,
    every transporter between U^ss points lies in H(F_3)."""
    ctx = ReducibleContext("a", F3)
    u = ctx.u_element(1, 1, 1)
    stab = case_a_stabilizer_scan(ctx, u)
    assert len(stab) > 0
    for g in stab:
        assert ctx.in_H(g)
    h_pts = h_points_case_a(ctx)
    assert len(h_pts) == 768
    h_stab = [h for h in h_pts if ctx.act(h, u) == u]
    assert len(h_stab) == len(stab)
    assert {hash(g) for g in stab} == {hash(h) for h in h_stab}
    # H-transitivity on U^ss(F_3)
    targets = []
    units = [1, 2]
    for a in units:
        for b in units:
            for c in units:
                targets.append(ctx.u_element(a, b, c))
    reached = {hash(ctx.act(h, u)) for h in h_pts}
    assert all(hash(t) in reached for t in targets)


def test_case_a_stabilizer_scan_backends_agree(F3):
    ctx = ReducibleContext("a", F3)
    u = ctx.u_element(1, 2, 1)
    a = case_a_stabilizer_scan(ctx, u, backend="numpy")
    b = case_a_stabilizer_scan(ctx, u, backend="numba")
    assert {hash(g) for g in a} == {hash(g) for g in b}
