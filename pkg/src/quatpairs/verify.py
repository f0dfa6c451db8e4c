"""Runnable identity suites: the algebraic laws the construction rests on,
checked on seeded random samples over a chosen base field.

Each check returns (name, samples, passed); the CLI aggregates these into a
deterministic JSON report.  The suites are reused by the test suite, which
pins the acceptance sample counts.
"""

import random

from .exact_algebra import (
    EtaleAlgebra,
    PrimeField,
    Rationals,
    etale_make,
    splitting_data,
)
from .hermitian_pairs import (
    act,
    character_chi,
    discriminant,
    form_of_pair,
    invariant_p,
    iota,
    is_semistable,
    pfaffian,
    quat_identity,
    reduced_norm_matrix,
    splitting_type,
)
from .quaternion import QuaternionAlgebra, adjugate2, conj, reduced_norm, reduced_trace, split_embed, splitting_context
from .representatives import (
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
from .sampling import (
    rand_group_element,
    rand_hermitian,
    rand_pair,
    rand_quaternion,
    rand_semistable_pair,
    rand_unit_scalar,
)


def parse_field_flag(flag):
    if flag in ("Q", "q"):
        return Rationals()
    if flag.startswith("Fp:"):
        return PrimeField(int(flag.split(":", 1)[1]))
    raise ValueError(f"unknown field flag {flag!r} (want Q or Fp:<p>)")


def _algebras(field):
    return [QuaternionAlgebra(field, 1, 1), QuaternionAlgebra(field, -1, -1)]


# ---------------------------------------------------------------------------
# the splitting-field root oracle for the relative invariant


def form_root_factors(form):
    """(alpha_i, beta_i) pairs with F = prod (alpha_i v1 - beta_i v2) exactly,
    computed in a splitting algebra of F; used as the oracle for the
    discriminant formulas."""
    ring = form.ring
    work = list(form.coeffs)
    inf_count = 0
    while work[0].is_zero():
        inf_count += 1
        work = work[1:]
    lead = work[0]
    monic = [c / lead for c in reversed(work)]  # F(z,1)/lead, ascending in z
    roots, algebra = _poly_roots_split(ring, monic)
    factors = [(algebra.zero(), algebra.coerce(-1))] * inf_count  # v2 factors
    factors += [(algebra.one(), r) for r in roots]                # v1 - r v2
    a0, b0 = factors[0]
    scale = algebra.coerce(lead)
    factors[0] = (a0 * scale, b0 * scale)
    return algebra, factors


def _poly_roots_split(ring, monic):
    """All roots of a monic separable polynomial of degree <= 3 in a splitting
    algebra (the base field, a quadratic extension, or the cubic machinery)."""
    from .exact_algebra import roots_in_base, synthetic_divide

    deg = len(monic) - 1
    rational = roots_in_base(ring, monic)
    if len(rational) == deg:
        return rational, ring
    work = list(monic)
    for r in rational:
        work, rem = synthetic_divide(work, r)
        assert rem.is_zero()
    rdeg = len(work) - 1
    if rdeg == 2:
        ext = EtaleAlgebra(ring, work, _internal=True)
        sd = splitting_data(ext)
        roots = sd.conjugates
        return [ext.coerce(r) for r in rational] + roots, ext
    assert rdeg == 3 and not rational
    ext = EtaleAlgebra(ring, work, _internal=True)
    sd = splitting_data(ext)
    return list(sd.conjugates), sd.algebra_s


def disc_equals_root_product(form):
    """Oracle equivalence: the closed discriminant formula against the
    root-product normalization prod_{i<j} (alpha_i beta_j - alpha_j beta_i)^2."""
    algebra, factors = form_root_factors(form)
    # verify the factorization reproduces the form exactly
    n = form.n
    prod = [algebra.one()] + [algebra.zero()] * n
    cur = [algebra.one()]
    for (a, b) in factors:
        new = [algebra.zero()] * (len(cur) + 1)
        for i, c in enumerate(cur):
            new[i] = new[i] + c * a
            new[i + 1] = new[i + 1] - c * b
        cur = new
    for got, want in zip(cur, form.coeffs):
        if got != algebra.coerce(want):
            return False
    acc = algebra.one()
    for i in range(n):
        for j in range(i + 1, n):
            ai, bi = factors[i]
            aj, bj = factors[j]
            term = ai * bj - aj * bi
            acc = acc * term * term
    return acc == algebra.coerce(discriminant(form))


# ---------------------------------------------------------------------------
# suites


def suite_identities(field, samples=200, seed=0):
    rng = random.Random(seed)
    checks = []
    for alg in _algebras(field):
        tag = f"B=({alg.a.data},{alg.b.data})"
        ok_q = True
        for _ in range(samples):
            p = rand_quaternion(alg, rng)
            q = rand_quaternion(alg, rng)
            ok_q &= reduced_norm(p * q) == reduced_norm(p) * reduced_norm(q)
            ok_q &= conj(p * q) == conj(q) * conj(p)
            ok_q &= p + conj(p) == alg.quaternion(reduced_trace(p))
            ok_q &= p * conj(p) == alg.quaternion(reduced_norm(p))
        checks.append((f"quaternion laws {tag}", samples, ok_q))
        ctx = splitting_context(alg, field)
        emb = split_embed(alg, ctx.ext_ring)
        ok_e = True
        for _ in range(samples):
            p = rand_quaternion(alg, rng)
            q = rand_quaternion(alg, rng)
            mp, mq = emb.apply(p), emb.apply(q)
            mpq = emb.apply(p * q)
            prod = [[mp[0][0] * mq[0][0] + mp[0][1] * mq[1][0], mp[0][0] * mq[0][1] + mp[0][1] * mq[1][1]],
                    [mp[1][0] * mq[0][0] + mp[1][1] * mq[1][0], mp[1][0] * mq[0][1] + mp[1][1] * mq[1][1]]]
            ok_e &= all(prod[i][j] == mpq[i][j] for i in range(2) for j in range(2))
            det = mp[0][0] * mp[1][1] - mp[0][1] * mp[1][0]
            ok_e &= det == ctx.ext_ring.coerce(reduced_norm(p))
            adj = adjugate2(mp)
            mstar = emb.apply(conj(p))
            ok_e &= all(adj[i][j] == mstar[i][j] for i in range(2) for j in range(2))
        checks.append((f"split embedding {tag}", samples, ok_e))
        for n in (2, 3):
            ok_pf = pfaffian(quat_identity(alg, field, n)) == field.one()
            ok_sq = True
            for _ in range(samples):
                x = rand_hermitian(alg, n, rng)
                pf = pfaffian(x)
                ok_sq &= pf * pf == reduced_norm_matrix(x)
            checks.append((f"pfaffian axioms n={n} {tag}", samples, ok_pf and ok_sq))
            ok_eq = True
            ok_form = True
            ok_p = True
            ok_type = True
            for _ in range(max(1, samples // 4)):
                x = rand_pair(alg, n, rng)
                g = rand_group_element(alg, n, rng)
                gx = act(g, x)
                ng = reduced_norm_matrix(g.g1)
                ok_eq &= pfaffian(g.g1 * x.x1 * iota(g.g1)) == ng * pfaffian(x.x1)
                f_x = form_of_pair(x)
                f_gx = form_of_pair(gx)
                ok_form &= f_gx == f_x.substitute_g2(g.g2).scale(ng)
                ok_p &= invariant_p(gx) == character_chi(g) ** 2 * invariant_p(x)
                if is_semistable(x) and field.is_field:
                    ok_type &= splitting_type(gx) == splitting_type(x)
            checks.append((f"pfaffian equivariance n={n} {tag}", samples // 4, ok_eq))
            checks.append((f"form equivariance n={n} {tag}", samples // 4, ok_form))
            checks.append((f"relative invariant chi^2 n={n} {tag}", samples // 4, ok_p))
            checks.append((f"splitting type invariance n={n} {tag}", samples // 4, ok_type))
            ok_act = True
            for _ in range(max(1, samples // 8)):
                x = rand_pair(alg, n, rng)
                g = rand_group_element(alg, n, rng)
                h = rand_group_element(alg, n, rng)
                ok_act &= act(g * h, x) == act(g, act(h, x))
            checks.append((f"group action composition n={n} {tag}", samples // 8, ok_act))
        ok_disc = True
        for _ in range(max(1, samples // 8)):
            for n in (2, 3):
                x = rand_semistable_pair(alg, n, rng)
                ok_disc &= disc_equals_root_product(form_of_pair(x))
        checks.append((f"discriminant root-product oracle {tag}", samples // 8, ok_disc))
    return checks


def _quadratic_exts(field, rng, count):
    out = []
    if isinstance(field, Rationals):
        pool = [2, 3, 5, -1, -2, 7, -7, 13]
        for d in pool[:count]:
            out.append(etale_make(field, [-d, 0, 1]))
        return out
    tries = 0
    while len(out) < count and tries < 200:
        tries += 1
        c1 = rng.randrange(field.p)
        c0 = rng.randrange(field.p)
        try:
            ext = etale_make(field, [c0, c1, 1])
        except Exception:
            continue
        if ext.is_field and not any(e.modulus == ext.modulus for e in out):
            out.append(ext)
    return out


def _cubic_fields(field, rng, count, galois_only=False):
    out = []
    if isinstance(field, Rationals):
        pool = [[-1, -3, 0, 1], [-1, -2, 1, 1]] if galois_only else \
            [[-1, -3, 0, 1], [-1, -4, 0, 1], [-2, 0, 0, 1], [-1, -2, 1, 1], [1, -1, 0, 1]]
        for mod in pool[:count]:
            out.append(etale_make(field, mod))
        return out
    tries = 0
    while len(out) < count and tries < 500:
        tries += 1
        mod = [rng.randrange(field.p) for _ in range(3)] + [1]
        try:
            ext = etale_make(field, mod)
        except Exception:
            continue
        if ext.is_field and not any(e.modulus == ext.modulus for e in out):
            out.append(ext)
    return out


def suite_representatives(field, samples=50, seed=0):
    rng = random.Random(seed)
    checks = []
    alg = QuaternionAlgebra(field, 1, 1)
    quads = _quadratic_exts(field, rng, 2)
    for F in quads:
        a1 = -F.modulus[1]
        a2 = F.modulus[0]
        sd = splitting_data(F)
        nu = sd.auts["nu"]
        w2 = d5_w(alg)
        ga = d5_g_alpha(alg, F)
        ok = act(ga, embed_pair(w2, F)) == embed_pair(d5_x_alpha(alg, a1, a2), F)
        checks.append((f"D5 transport over {F}", 1, ok))
        ok = twist_group(ga, nu, F) == ga * embed_group(nu_tilde_d5(alg), F)
        checks.append((f"D5 cocycle nu over {F}", 1, ok))
        w3 = e7_w(alg)
        ga3 = e7_g_alpha(alg, F)
        ok = act(ga3, embed_pair(w3, F)) == embed_pair(e7_x_alpha(alg, a1, a2), F)
        checks.append((f"E7 quadratic transport over {F}", 1, ok))
        ok = twist_group(ga3, nu, F) == ga3 * embed_group(nu_tilde_e7(alg), F)
        checks.append((f"E7 cocycle nu over {F}", 1, ok))
    for L in _cubic_fields(field, rng, 2):
        b1, b2, b3 = -L.modulus[2], L.modulus[1], -L.modulus[0]
        g, sd = e7_beta_splitting(alg, L)
        S = sd.algebra_s
        ok = act(g, embed_pair(e7_w(alg), S)) == embed_pair(e7_x_beta(alg, b1, b2, b3), S)
        checks.append((f"E7 cubic transport over {L}", 1, ok))
        tilde = {"theta": theta_tilde, "tau": tau_tilde, "mu": mu_tilde}
        for name, autmap in sd.auts.items():
            ok = twist_group(g, autmap, S) == g * embed_group(tilde[name](alg), S)
            checks.append((f"E7 cocycle {name} over {L}", 1, ok))
    w3 = e7_w(alg)
    ok = all(act(t(alg), w3) == w3 for t in (nu_tilde_e7, tau_tilde, mu_tilde, theta_tilde))
    ok &= act(nu_tilde_d5(alg), d5_w(alg)) == d5_w(alg)
    checks.append(("tilde elements stabilize w", 5, ok))
    ok = rep_split(alg, 1, 1, 1) == e7_w(alg)
    ok &= splitting_type(rep_split(alg, *[rand_unit_scalar(field, rng) for _ in range(3)])) == (1, 1, 1)
    checks.append(("rep_split", 2, ok))
    ok_l = True
    for F in quads:
        for _ in range(samples):
            lam = rand_unit_scalar(F, rng)
            i = rng.randrange(4)
            ok_l &= trace_lambda(F, lam, i) == lambda_conjugate_formula(F, lam, i)
        rm = rep_mixed(alg, rand_unit_scalar(field, rng), rand_unit_scalar(F, rng), F)
        ok_l &= splitting_type(rm) == (1, 2)
    checks.append(("rep_mixed and Lambda formulas", samples, ok_l))
    ok_d = True
    for L in _cubic_fields(field, rng, 2):
        b1, b2, b3 = -L.modulus[2], L.modulus[1], -L.modulus[0]
        rc = rep_cubic(alg, 1, L)
        ok_d &= rc == e7_x_beta(alg, b1, b2, b3).scale(field.coerce(-1))
        ok_d &= splitting_type(rc) == (3,)
        for _ in range(samples // 2):
            delta = rand_unit_scalar(L, rng)
            i = rng.randrange(6)
            ok_d &= trace_delta(L, delta, i) == delta_conjugate_formula(L, delta, i)
    checks.append(("rep_cubic and Delta formulas", samples, ok_d))
    return checks


def suite_reducible(field, samples=10, seed=0):
    from .quaternion import QuaternionAlgebra
    from .reducible import (
        ReducibleContext,
        rand_case_pair_w2,
        rand_group_element as rand_case_group,
        rand_p_element,
        rand_u_ss,
    )

    rng = random.Random(seed)
    checks = []
    contexts = [("a", ReducibleContext("a", field))]
    quads = _quadratic_exts(field, rng, 1)
    if quads:
        contexts.append(("b", ReducibleContext("b", field, F=quads[0])))
    contexts.append(("c", ReducibleContext("c", field, alg=QuaternionAlgebra(field, 1, 1))))
    for name, ctx in contexts:
        th, et = ctx.theta(), ctx.eta()
        s3 = ctx.s3_elements()
        ok = ctx.group_mul(th, ctx.group_mul(th, th)) == ctx.group_identity()
        ok &= ctx.group_mul(et, et) == ctx.group_identity()
        ok &= len(s3) == 6
        u = rand_u_ss(ctx, rng)
        ok &= all(ctx.in_U(ctx.act(s, u)) for s in s3)
        checks.append((f"case ({name}) S3 and U-invariance", 6, ok))
        ok_w = ok_u = True
        for i in range(samples):
            w0 = rand_case_pair_w2(ctx, rng)
            g0 = rand_case_group(ctx, rng)
            x = ctx.act(g0, w0)
            g, w = ctx.reduce_to_W(x, seed=i)
            ok_w &= ctx.act(g, w) == x and ctx.in_W(w)
            ok_w &= ctx.check_bundle_uniqueness(x, g, g0, w, w0)
            u0 = rand_u_ss(ctx, rng)
            p0 = rand_p_element(ctx, rng)
            wu = ctx.act(p0, u0)
            p, uu, eta_app = ctx.reduce_W_to_U(wu, seed=i)
            target = ctx.act(ctx.eta(), uu) if eta_app else uu
            ok_u &= ctx.act(p, target) == wu and ctx.in_U_ss(uu) and ctx.in_P(p)
        checks.append((f"case ({name}) reduce_to_W round trips", samples, ok_w))
        checks.append((f"case ({name}) reduce_W_to_U round trips", samples, ok_u))
    return checks


SUITES = {
    "identities": suite_identities,
    "representatives": suite_representatives,
    "reducible": suite_reducible,
}


def run_suite(suite, field_flag, samples=None, seed=0):
    field = parse_field_flag(field_flag)
    names = list(SUITES) if suite == "all" else [suite]
    checks = []
    for name in names:
        fn = SUITES[name]
        kwargs = {"seed": seed}
        if samples is not None:
            kwargs["samples"] = samples
        checks.extend(fn(field, **kwargs))
    return {
        "suite": suite,
        "field": field_flag,
        "seed": seed,
        "checks": [{"name": n, "samples": s, "passed": bool(p)} for (n, s, p) in checks],
        "all_passed": all(p for (_, _, p) in checks),
    }
