"""Explicit base points, orbit representatives, transporters and stabilizer
data for the binary (n=2) and ternary (n=3) pair representations.

All matrices are constructed verbatim; the transport identities
act(g_alpha, w) = x_alpha and act(g_beta, w) = x_beta hold exactly over the
relevant extension and are part of the acceptance suite.

One corrected entry: the n=2 quadratic representative has bottom-right entry
a1^2 - a2 (not a1^2 - 2a2).  The value a1^2 - a2 is forced jointly by the
transport identity and by F_x = -(v1^2 + a1 v1 v2 + a2 v2^2); the ternary
analogue carries the same entry.
"""

from .errors import (
    ConjugatesUnavailable,
    InseparableModulus,
    NonUnitParameter,
    NotInKGroup,
    NotSemistable,
    ReducibleModulus,
)
from .exact_algebra import (
    EtaleAlgebra,
    norm_trace,
    poly_derivative,
    poly_discriminant,
    poly_eval,
    splitting_data,
)
from .hermitian_pairs import (
    GroupElement,
    HermitianPair,
    QuatMatrix,
    act,
    is_semistable,
)
from .quaternion import reduced_norm


def _scalar_matrix(alg, ring, entries):
    n = len(entries)
    return QuatMatrix(alg, ring, [[alg.quaternion(entries[i][j], ring=ring) for j in range(n)]
                                  for i in range(n)])


def _pair(alg, ring, m1, m2):
    return HermitianPair(_scalar_matrix(alg, ring, m1), _scalar_matrix(alg, ring, m2))


# ---------------------------------------------------------------------------
# base points and representatives


def d5_w(alg, ring=None):
    ring = ring or alg.base
    return _pair(alg, ring, [[0, 0], [0, 1]], [[1, 0], [0, 0]])


def d5_x_alpha(alg, a1, a2):
    k = alg.base
    a1, a2 = k.coerce(a1), k.coerce(a2)
    if poly_discriminant([a2, -a1, k.one()]).is_zero():
        raise InseparableModulus("t^2 - a1 t + a2 is inseparable")
    return _pair(alg, k,
                 [[0, 1], [1, a1]],
                 [[1, a1], [a1, a1 * a1 - a2]])


def e7_w(alg, ring=None):
    ring = ring or alg.base
    return _pair(alg, ring,
                 [[0, 0, 0], [0, 1, 0], [0, 0, -1]],
                 [[1, 0, 0], [0, -1, 0], [0, 0, 0]])


def e7_x_alpha(alg, a1, a2):
    k = alg.base
    a1, a2 = k.coerce(a1), k.coerce(a2)
    pair = _pair(alg, k,
                 [[0, 0, 0], [0, 0, 1], [0, 1, a1]],
                 [[-1, 0, 0], [0, 1, a1], [0, a1, a1 * a1 - a2]])
    if not is_semistable(pair):
        raise NotSemistable("t^2 - a1 t + a2 has a repeated root")
    return pair


def e7_x_beta(alg, b1, b2, b3):
    k = alg.base
    b1, b2, b3 = k.coerce(b1), k.coerce(b2), k.coerce(b3)
    r1 = b1 * b1 - b2
    r2 = b1 * b1 * b1 - 2 * b1 * b2 + b3
    pair = _pair(alg, k,
                 [[0, 0, 1], [0, 1, b1], [1, b1, r1]],
                 [[0, 1, b1], [1, b1, r1], [b1, r1, r2]])
    if not is_semistable(pair):
        raise NotSemistable("t^3 - b1 t^2 + b2 t - b3 has a repeated root")
    return pair


# ---------------------------------------------------------------------------
# transporters


def _quadratic_data(F):
    if not (isinstance(F, EtaleAlgebra) and F.degree == 2):
        raise ConjugatesUnavailable("need a quadratic extension")
    if not F.is_field:
        raise ReducibleModulus("quadratic modulus factors over the base")
    sd = splitting_data(F)
    alpha = F.gen()
    alpha_nu = sd.conjugates[1]
    return sd, alpha, alpha_nu


def d5_g_alpha(alg, F):
    """Transporter with act(g_alpha, w) = x_alpha over F = k(alpha)."""
    sd, alpha, alpha_nu = _quadratic_data(F)
    delta_inv = (alpha - alpha_nu).inv()
    g1 = _scalar_matrix(alg, F, [[1, 1], [alpha, alpha_nu]])
    g2 = [[-delta_inv, delta_inv], [-alpha_nu * delta_inv, alpha * delta_inv]]
    return GroupElement(g1, g2)


def e7_g_alpha(alg, F):
    sd, alpha, alpha_nu = _quadratic_data(F)
    delta_inv = (alpha - alpha_nu).inv()
    g1 = _scalar_matrix(alg, F, [[1, 0, 0], [0, 1, 1], [0, alpha, alpha_nu]])
    g2 = [[delta_inv, F.zero()], [alpha_nu * delta_inv, F.coerce(-1)]]
    return GroupElement(g1, g2)


def e7_beta_splitting(alg, L):
    """(g_beta, splitting data) for a cubic field L = k(beta).

    The group element lives over the splitting algebra: L itself over finite
    fields and Galois cubics, the height-2 tower otherwise.
    """
    if not (isinstance(L, EtaleAlgebra) and L.degree == 3):
        raise ConjugatesUnavailable("need a cubic extension")
    if not L.is_field:
        raise ReducibleModulus("cubic modulus factors over the base")
    sd = splitting_data(L)
    b1, b2, b3 = sd.conjugates
    S = sd.algebra_s
    dd = (b1 - b2) * (b2 - b3) * (b3 - b1)
    dinv = dd.inv()
    g1 = _scalar_matrix(alg, S, [
        [1, 1, 1],
        [b1, b2, b3],
        [b1 * b1, b2 * b2, b3 * b3],
    ])
    # sign fixed so the transport g.w = x_beta is exact: the alternant
    # sum_k (b_{k+1}-b_{k+2}) b_k^r equals -D at r=2, so the raw 1/D
    # normalization would land on -x_beta
    g2 = [[(b1 - b2) * dinv, (b3 - b2) * dinv],
          [b3 * (b1 - b2) * dinv, b1 * (b3 - b2) * dinv]]
    return GroupElement(g1, g2), sd


def e7_g_beta(alg, L):
    g, _ = e7_beta_splitting(alg, L)
    return g


# ---------------------------------------------------------------------------
# finite cocycle elements; each stabilizes the matching base point w


def _tilde(alg, ring, m1, m2):
    return GroupElement(_scalar_matrix(alg, ring, m1),
                        [[ring.coerce(c) for c in row] for row in m2])


def nu_tilde_d5(alg, ring=None):
    ring = ring or alg.base
    return _tilde(alg, ring, [[0, 1], [1, 0]], [[0, 1], [1, 0]])


def nu_tilde_e7(alg, ring=None):
    ring = ring or alg.base
    return _tilde(alg, ring, [[1, 0, 0], [0, 0, 1], [0, 1, 0]], [[-1, 0], [1, 1]])


def tau_tilde(alg, ring=None):
    ring = ring or alg.base
    return _tilde(alg, ring, [[0, 1, 0], [1, 0, 0], [0, 0, 1]], [[1, 1], [0, -1]])


def mu_tilde(alg, ring=None):
    ring = ring or alg.base
    return _tilde(alg, ring, [[0, 0, 1], [0, 1, 0], [1, 0, 0]], [[0, -1], [-1, 0]])


def theta_tilde(alg, ring=None):
    ring = ring or alg.base
    return _tilde(alg, ring, [[0, 0, 1], [1, 0, 0], [0, 1, 0]], [[0, 1], [-1, -1]])


# ---------------------------------------------------------------------------
# parametrized orbit representatives via trace identities


def rep_split(alg, p1, p2, p3):
    """Orbit representative for L = k x k x k and parameter (p1, p2, p3)."""
    k = alg.base
    ps = [k.coerce(p) for p in (p1, p2, p3)]
    for p in ps:
        if not p.is_unit():
            raise NonUnitParameter("parameters must be units")
    p1, p2, p3 = ps
    pair = _pair(alg, k,
                 [[0, 0, 0], [0, p2, 0], [0, 0, -p3]],
                 [[p1, 0, 0], [0, -p2, 0], [0, 0, 0]])
    assert is_semistable(pair)
    return pair


def trace_lambda(F, lam, i):
    """Lambda_i = Tr_{F/k}(lambda alpha^i / f'(alpha)); no conjugates needed."""
    alpha = F.gen()
    fprime = poly_eval(poly_derivative(list(F.modulus)), alpha)
    val = F.coerce(lam) * alpha ** i * fprime.inv()
    _, tr = norm_trace(F, val)
    return tr


def trace_delta(L, delta, i):
    """Delta_i = -Tr_{L/k}(delta beta^i / f'(beta))."""
    beta = L.gen()
    fprime = poly_eval(poly_derivative(list(L.modulus)), beta)
    val = L.coerce(delta) * beta ** i * fprime.inv()
    _, tr = norm_trace(L, val)
    return -tr


def rep_mixed(alg, p, lam, F):
    """Orbit representative for L = k x F and parameter (p, lambda)."""
    k = alg.base
    p = k.coerce(p)
    if not p.is_unit():
        raise NonUnitParameter("p must be a unit")
    lam = F.coerce(lam)
    if not lam.is_unit():
        raise NonUnitParameter("lambda must be a unit")
    if not F.is_field or F.degree != 2:
        raise ReducibleModulus("F must be a quadratic field extension")
    l0, l1, l2, l3 = (trace_lambda(F, lam, i) for i in range(4))
    pair = _pair(alg, k,
                 [[0, 0, 0], [0, l0, l1], [0, l1, l2]],
                 [[-p, 0, 0], [0, l1, l2], [0, l2, l3]])
    assert is_semistable(pair)
    return pair


def rep_cubic(alg, delta, L):
    """Orbit representative for a cubic field L and parameter delta."""
    k = alg.base
    delta = L.coerce(delta)
    if not delta.is_unit():
        raise NonUnitParameter("delta must be a unit")
    if not L.is_field or L.degree != 3:
        raise ReducibleModulus("L must be a cubic field extension")
    d = [trace_delta(L, delta, i) for i in range(6)]
    pair = _pair(alg, k,
                 [[d[0], d[1], d[2]], [d[1], d[2], d[3]], [d[2], d[3], d[4]]],
                 [[d[1], d[2], d[3]], [d[2], d[3], d[4]], [d[3], d[4], d[5]]])
    assert is_semistable(pair)
    return pair


def lambda_conjugate_formula(F, lam, i):
    """Oracle: (lambda alpha^i - (lambda alpha^i)^nu) / (alpha - alpha^nu), in k."""
    sd = splitting_data(F)
    nu = sd.auts["nu"]
    alpha = F.gen()
    val = F.coerce(lam) * alpha ** i
    out = (val - nu(val)) * (alpha - nu(alpha)).inv()
    return descend_to_base(out, F.base)


def delta_conjugate_formula(L, delta, i):
    """Oracle: the three-conjugate expression for Delta_i, evaluated in a
    splitting algebra and descended to k."""
    sd = splitting_data(L)
    S = sd.algebra_s
    b = sd.conjugates
    deltas = _element_conjugates(L, sd, L.coerce(delta))
    dd = (b[0] - b[1]) * (b[1] - b[2]) * (b[2] - b[0])
    num = (deltas[0] * b[0] ** i * (b[1] - b[2])
           + deltas[1] * b[1] ** i * (b[2] - b[0])
           + deltas[2] * b[2] ** i * (b[0] - b[1]))
    return descend_to_base(num * dd.inv(), _bottom_field(S))


def _element_conjugates(L, sd, x):
    out = []
    for root in sd.conjugates:
        acc = sd.algebra_s.zero()
        power = sd.algebra_s.one()
        for c in x.data:
            acc = acc + sd.algebra_s.coerce(c) * power
            power = power * root
        out.append(acc)
    return out


def _bottom_field(ring):
    while isinstance(ring, EtaleAlgebra):
        ring = ring.base
    return ring


def descend_to_base(elt, k):
    """Assert an element of an etale tower lies in the bottom field and return it there."""
    ring = elt.ring
    if ring == k:
        return elt
    vec = ring.to_kvec(elt)
    if any(v != 0 for v in vec[1:]):
        raise ValueError(f"element {elt!r} does not lie in {k}")
    return k.coerce(vec[0])


# ---------------------------------------------------------------------------
# stabilizer data: the diagonal group d(b1,b2,b3,t) and the phi maps


def diag_group_element(alg, b1, b2, b3, t):
    """d(b1, b2, b3, t) = (diag(b1, b2, b3), t * 1_2)."""
    ring = b1.ring
    t = ring.coerce(t)
    z = alg.zero(ring)
    g1 = QuatMatrix(alg, ring, [[b1, z, z], [z, b2, z], [z, z, b3]])
    return GroupElement(g1, [[t, ring.zero()], [ring.zero(), t]])


def _split_diag(g):
    """Extract (b1, b2, b3, t) from a d-shaped element or raise NotInKGroup."""
    m = g.g1
    if m.n != 3:
        raise NotInKGroup("expected a 3x3 diagonal part")
    for i in range(3):
        for j in range(3):
            if i != j and not m.rows[i][j].is_zero():
                raise NotInKGroup("g1 is not diagonal")
    if not (g.g2[0][1].is_zero() and g.g2[1][0].is_zero() and g.g2[0][0] == g.g2[1][1]):
        raise NotInKGroup("g2 is not a scalar matrix")
    return m.rows[0][0], m.rows[1][1], m.rows[2][2], g.g2[0][0]


def phi_w(g):
    """phi_w(d(b1,b2,b3,t)) = (t N(b1), t N(b2), t N(b3)) in (k^x)^3."""
    b1, b2, b3, t = _split_diag(g)
    out = tuple(t * reduced_norm(b) for b in (b1, b2, b3))
    for v in out:
        if not v.is_unit():
            raise NotInKGroup("phi value must be a unit")
    return out


def phi_x_alpha(alg, F, g, g_alpha=None):
    """phi on the conjugated diagonal group of the mixed representative.

    g is conjugated back by g_alpha; the diagonal must have shape
    d(b1, b2, b2^nu, t) with b1 over k and t in k.  Returns (t N(b1), t N(b2)).
    """
    sd, _, _ = _quadratic_data(F)
    nu = sd.auts["nu"]
    ga = g_alpha or e7_g_alpha(alg, F)
    d = ga.inv() * _lift_group(g, F) * ga
    b1, b2, b3, t = _split_diag(d)
    k = F.base
    t_k = descend_to_base(t, k)
    for c in b1.coords:
        descend_to_base(c, k)
    if b3 != b2.map_coeffs(nu, F):
        raise NotInKGroup("third block is not the nu-conjugate of the second")
    v1 = t_k * descend_to_base(reduced_norm(b1), k)
    v2 = F.coerce(t_k) * reduced_norm(b2)
    if not (v1.is_unit() and v2.is_unit()):
        raise NotInKGroup("phi value must be a unit")
    return v1, v2


def phi_x_beta(alg, L, g, context=None):
    """phi on the conjugated diagonal group of the cubic representative.

    Returns t N(b) as an element of L; the diagonal must be
    d(b, b^(2), b^(3), t) with b over L (conjugates taken in the splitting
    algebra) and t in k.
    """
    gb, sd = context or e7_beta_splitting(alg, L)
    S = sd.algebra_s
    d = gb.inv() * _lift_group(g, S) * gb
    b1, b2, b3, t = _split_diag(d)
    k = _bottom_field(S)
    t_k = descend_to_base(t, k)
    # b1 must have coordinates in (the embedding of) L
    coords_l = tuple(_pull_to_subfield(c, L, sd) for c in b1.coords)
    from .quaternion import Quaternion

    b_l = Quaternion(alg, L, coords_l)
    imgs = [_element_conjugates(L, sd, c) for c in coords_l]
    expect2 = Quaternion(alg, S, tuple(img[1] for img in imgs))
    expect3 = Quaternion(alg, S, tuple(img[2] for img in imgs))
    if b2 != expect2 or b3 != expect3:
        raise NotInKGroup("diagonal blocks are not the conjugate family of b")
    val = L.coerce(t_k) * reduced_norm(b_l)
    if not val.is_unit():
        raise NotInKGroup("phi value must be a unit")
    return val


def _pull_to_subfield(c, L, sd):
    if c.ring == L:
        return c
    if sd.algebra_s == L:
        return L.coerce(c)
    # tower over L: all non-constant coordinates must vanish
    if all(x.is_zero() for x in c.data[1:]):
        return c.data[0]
    raise NotInKGroup("coordinate does not lie in L")


def _lift_group(g, ring):
    if g.ring == ring:
        return g
    return g.map_coeffs(ring.coerce, ring)


def phi_value(case, g, *, alg, algebra=None):
    """Dispatcher for the stabilizer norm maps; case in {split, mixed, cubic}."""
    if case == "split":
        return phi_w(g)
    if case == "mixed":
        return phi_x_alpha(alg, algebra, g)
    if case == "cubic":
        return phi_x_beta(alg, algebra, g)
    raise ValueError(f"unknown case {case!r}")


class StabilizerDatum:
    """Case tag, ambient algebra and the (unit) phi-image of a K-group point."""

    __slots__ = ("case", "algebra", "value")

    def __init__(self, case, algebra, value):
        self.case = case
        self.algebra = algebra
        self.value = value

    def is_identity(self):
        if self.case == "split":
            return all(v == v.ring.one() for v in self.value)
        if self.case == "mixed":
            return self.value[0] == self.value[0].ring.one() and self.value[1] == self.algebra.one()
        return self.value == self.algebra.one()


def stabilizer_datum(case, g, *, alg, algebra=None):
    return StabilizerDatum(case, algebra, phi_value(case, g, alg=alg, algebra=algebra))


def in_identity_stabilizer(case, g, x, *, alg, algebra=None):
    """g.x = x together with phi(g) = 1: membership in the identity component."""
    ring = g.ring
    xg = x if x.ring == ring else x.map_coeffs(ring.coerce, ring)
    if act(g, xg) != xg:
        return False
    try:
        val = phi_value(case, g, alg=alg, algebra=algebra)
    except NotInKGroup:
        return False
    if case == "split":
        return all(v == v.ring.one() for v in val)
    if case == "mixed":
        return val[0] == val[0].ring.one() and val[1] == algebra.one()
    return val == algebra.one()


def twist_group(g, algmap, ring=None):
    """Apply a Galois automorphism to every coordinate of a group element."""
    return g.map_coeffs(algmap, ring or algmap.dst)


def twist_pair(x, algmap, ring=None):
    return x.map_coeffs(algmap, ring or algmap.dst)


def embed_pair(x, ring):
    return x.map_coeffs(ring.coerce, ring)


def embed_group(g, ring):
    return g.map_coeffs(ring.coerce, ring)
