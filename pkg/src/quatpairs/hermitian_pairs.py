"""The representation (G, V): pairs of n x n Hermitian matrices over a
quaternion algebra acted on by GL_n(B) x GL_2, with the Pfaffian, the binary
form F_x, the relative invariant P, the character chi and splitting types.

The Pfaffian is computed through the split embedding: a Hermitian matrix maps
to a 2n x 2n matrix whose J-twist is alternating, and the classical Pfaffian
of that image (normalized so the identity maps to 1) is the value.  The n=2
closed form alpha*delta - N(q) and the n=3 diagonal product are property
tests against this oracle, not definitions.

Validated n=3 closed form (documented, oracle-checked in the test suite):
for x with diagonal (a1, a2, a3) and off-diagonal entries p = x[0][1],
q = x[0][2], r = x[1][2],

    Pfaff_3(x) = a1*a2*a3 - a1*N(r) - a2*N(q) - a3*N(p) + T(p*r*conj(q)).
"""

from .errors import (
    NotAlternating,
    NotAUnit,
    NotSemistable,
    SizeMismatch,
)
from .exact_algebra import poly_degree, roots_in_base
from .linalg import det as cdet
from .linalg import solve_prime_vec
from .quaternion import Quaternion, conj, splitting_context


class QuatMatrix:
    """n x n matrix over B tensor R, n in {2, 3} (1 allowed for scalars)."""

    __slots__ = ("alg", "ring", "n", "rows")

    def __init__(self, alg, ring, rows):
        self.alg = alg
        self.ring = ring
        self.n = len(rows)
        fixed = []
        for row in rows:
            assert len(row) == self.n
            fixed.append(tuple(self._entry(e) for e in row))
        self.rows = tuple(fixed)

    def _entry(self, e):
        if isinstance(e, Quaternion):
            if e.ring is self.ring or e.ring == self.ring:
                return e
            return Quaternion(self.alg, self.ring, tuple(self.ring.coerce(c) for c in e.coords))
        s = self.ring.coerce(e)
        z = self.ring.zero()
        return Quaternion(self.alg, self.ring, (s, z, z, z))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __add__(self, other):
        return QuatMatrix(self.alg, self.ring,
                          [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return QuatMatrix(self.alg, self.ring,
                          [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __neg__(self):
        return QuatMatrix(self.alg, self.ring, [[-a for a in row] for row in self.rows])

    def __mul__(self, other):
        if isinstance(other, QuatMatrix):
            if other.n != self.n:
                raise SizeMismatch(f"{self.n} vs {other.n}")
            n = self.n
            return QuatMatrix(self.alg, self.ring, [
                [_qsum([self.rows[i][k] * other.rows[k][j] for k in range(n)]) for j in range(n)]
                for i in range(n)
            ])
        # scalar (central) multiple
        return QuatMatrix(self.alg, self.ring, [[e * other for e in row] for row in self.rows])

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, QuatMatrix) and self.n == other.n and all(
            a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb))

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"QuatMatrix({[[e for e in row] for row in self.rows]})"

    def map_entries(self, fn):
        rows = [[fn(e) for e in row] for row in self.rows]
        return QuatMatrix(self.alg, rows[0][0].ring, rows)

    def map_coeffs(self, fn, ring):
        rows = [[Quaternion(self.alg, ring, tuple(fn(c) for c in e.coords)) for e in row] for row in self.rows]
        return QuatMatrix(self.alg, ring, rows)

    def is_zero(self):
        return all(e.is_zero() for row in self.rows for e in row)


def _qsum(qs):
    acc = qs[0]
    for q in qs[1:]:
        acc = acc + q
    return acc


def quat_identity(alg, ring, n):
    return QuatMatrix(alg, ring, [[alg.one(ring) if i == j else alg.zero(ring) for j in range(n)] for i in range(n)])


def quat_zero(alg, ring, n):
    return QuatMatrix(alg, ring, [[alg.zero(ring)] * n for _ in range(n)])


def iota(m):
    """The involution x -> (conjugate of x_ji): an anti-automorphism of M_n(B)."""
    n = m.n
    return QuatMatrix(m.alg, m.ring, [[conj(m.rows[j][i]) for j in range(n)] for i in range(n)])


def is_hermitian(m):
    return iota(m) == m


def split_image(m, ctx=None):
    """The 2n x 2n matrix of base-ring scalars representing m."""
    ctx = ctx or splitting_context(m.alg, m.ring)
    n = m.n
    out = [[None] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            blk = ctx.apply(m.rows[i][j])
            out[2 * i][2 * j] = blk[0][0]
            out[2 * i][2 * j + 1] = blk[0][1]
            out[2 * i + 1][2 * j] = blk[1][0]
            out[2 * i + 1][2 * j + 1] = blk[1][1]
    return out, ctx


def reduced_norm_matrix(m):
    """Reduced norm of M_n(B tensor R) -> R via determinant of the split image.

    The determinant is asserted to descend (zero sqrt(a)-component); a failed
    descent is a bug guard, never silently dropped.
    """
    img, ctx = split_image(m)
    d = cdet(ctx.ext_ring, img)
    return ctx.descend(d, "reduced norm")


def quat_mat_inverse(m):
    """Inverse in M_n(B tensor R), solving the k-linear system m X = 1.

    Works over any coefficient tower; raises NotAUnit when the reduced norm
    is not invertible.
    """
    alg, ring, n = m.alg, m.ring, m.n
    k = ring.prime_base() if hasattr(ring, "prime_base") else ring
    dim_r = ring.degree_over_prime
    dim = n * 4 * dim_r
    basis_vecs = []
    rbasis = ring.k_basis() if hasattr(ring, "k_basis") else [ring.one()]
    for pos in range(n):
        for qidx in range(4):
            for rb in rbasis:
                coords = [ring.zero()] * 4
                coords[qidx] = rb
                q = Quaternion(alg, ring, tuple(coords))
                vec = [alg.zero(ring)] * n
                vec[pos] = q
                basis_vecs.append(vec)
    cols = []
    for vec in basis_vecs:
        out = []
        for i in range(n):
            acc = _qsum([m.rows[i][kk] * vec[kk] for kk in range(n)])
            for c in acc.coords:
                out.extend(ring.to_kvec(c))
        cols.append(out)
    mat = [[cols[j][i] for j in range(len(cols))] for i in range(dim)]
    inv_cols = []
    for j in range(n):
        target_vec = [alg.zero(ring)] * n
        target_vec[j] = alg.one(ring)
        rhs = []
        for q in target_vec:
            for c in q.coords:
                rhs.extend(ring.to_kvec(c))
        sol = solve_prime_vec(k, mat, rhs)
        if sol is None:
            raise NotAUnit("matrix is not invertible in M_n(B)")
        col = []
        for pos in range(n):
            coords = []
            for qidx in range(4):
                lo = (pos * 4 + qidx) * dim_r
                chunk = sol[lo:lo + dim_r]
                coords.append(_from_kvec(ring, chunk))
            col.append(Quaternion(alg, ring, tuple(coords)))
        inv_cols.append(col)
    rows = [[inv_cols[j][i] for j in range(n)] for i in range(n)]
    return QuatMatrix(alg, ring, rows)


def _from_kvec(ring, chunk):
    if hasattr(ring, "from_kvec"):
        return ring.from_kvec(chunk)
    return ring.coerce(chunk[0])


_J2 = ((0, 1), (-1, 0))


def _j_twist(img, ring, n):
    # right-multiply the 2n x 2n image by blockdiag(J, ..., J)
    out = [[None] * (2 * n) for _ in range(2 * n)]
    for i in range(2 * n):
        for bj in range(n):
            c0, c1 = img[i][2 * bj], img[i][2 * bj + 1]
            # (c0, c1) * J = (-c1, c0)
            out[i][2 * bj] = -c1
            out[i][2 * bj + 1] = c0
    return out


def _pf(a, idx, ring):
    if not idx:
        return ring.one()
    i0 = idx[0]
    rest = idx[1:]
    acc = ring.zero()
    for pos, j in enumerate(rest):
        entry = a[i0][j]
        if entry.is_zero():
            continue
        sub = tuple(x for x in rest if x != j)
        term = entry * _pf(a, sub, ring)
        acc = acc + term if pos % 2 == 0 else acc - term
    return acc


def pfaffian(m):
    """Pfaffian of a Hermitian matrix: the degree-n square root of the
    reduced norm, normalized to 1 at the identity.

    Computed as the classical Pfaffian of (split image) * J; the twisted
    image is asserted alternating and the result is descended back to the
    coefficient ring.
    """
    if not is_hermitian(m):
        raise NotAlternating("pfaffian requires a Hermitian matrix")
    img, ctx = split_image(m)
    ring = ctx.ext_ring
    a = _j_twist(img, ring, m.n)
    size = 2 * m.n
    for i in range(size):
        if not a[i][i].is_zero():
            raise NotAlternating("J-twisted split image has nonzero diagonal")
        for j in range(i + 1, size):
            if a[i][j] != -a[j][i]:
                raise NotAlternating("J-twisted split image is not skew-symmetric")
    val = _pf(a, tuple(range(size)), ring)
    return ctx.descend(val, "pfaffian")


class HermitianPair:
    """x = (x1, x2), two Hermitian n x n matrices over B tensor R."""

    __slots__ = ("x1", "x2")

    def __init__(self, x1, x2, check=True):
        if x1.n != x2.n:
            raise SizeMismatch("components have different sizes")
        if check:
            if not (is_hermitian(x1) and is_hermitian(x2)):
                raise ValueError("pair components must be Hermitian")
        self.x1 = x1
        self.x2 = x2

    @property
    def n(self):
        return self.x1.n

    @property
    def ring(self):
        return self.x1.ring

    @property
    def alg(self):
        return self.x1.alg

    def __eq__(self, other):
        return isinstance(other, HermitianPair) and self.x1 == other.x1 and self.x2 == other.x2

    def __hash__(self):
        return hash((self.x1, self.x2))

    def __repr__(self):
        return f"HermitianPair({self.x1!r}, {self.x2!r})"

    def map_coeffs(self, fn, ring):
        return HermitianPair(self.x1.map_coeffs(fn, ring), self.x2.map_coeffs(fn, ring), check=False)

    def scale(self, c):
        return HermitianPair(self.x1 * c, self.x2 * c, check=False)


class GroupElement:
    """g = (g1, g2) with g1 in GL_n(B tensor R) and g2 in GL_2(R)."""

    __slots__ = ("g1", "g2", "ring")

    def __init__(self, g1, g2):
        self.g1 = g1
        self.ring = g1.ring
        self.g2 = tuple(tuple(self.ring.coerce(c) for c in row) for row in g2)

    @property
    def alg(self):
        return self.g1.alg

    def __mul__(self, other):
        g2 = [[self.g2[i][0] * other.g2[0][j] + self.g2[i][1] * other.g2[1][j] for j in range(2)]
              for i in range(2)]
        return GroupElement(self.g1 * other.g1, g2)

    def inv(self):
        d = self.g2[0][0] * self.g2[1][1] - self.g2[0][1] * self.g2[1][0]
        if not d.is_unit():
            raise NotAUnit("GL_2 part is not invertible")
        dinv = d.inv()
        g2inv = [[self.g2[1][1] * dinv, -self.g2[0][1] * dinv],
                 [-self.g2[1][0] * dinv, self.g2[0][0] * dinv]]
        return GroupElement(quat_mat_inverse(self.g1), g2inv)

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.g1 == other.g1 and self.g2 == other.g2

    def __hash__(self):
        return hash((self.g1, self.g2))

    def __repr__(self):
        return f"GroupElement({self.g1!r}, {self.g2!r})"

    def map_coeffs(self, fn, ring):
        g1 = self.g1.map_coeffs(fn, ring)
        g2 = [[fn(c) for c in row] for row in self.g2]
        return GroupElement(g1, g2)


def group_identity(alg, ring, n):
    return GroupElement(quat_identity(alg, ring, n),
                        [[ring.one(), ring.zero()], [ring.zero(), ring.one()]])


def act(g, pair):
    """(g.x)(v) = g1 x(v g2) g1^iota; output asserted Hermitian."""
    if g.g1.n != pair.n:
        raise SizeMismatch("group element and pair have different sizes")
    a, b = g.g2[0]
    c, d = g.g2[1]
    gi = iota(g.g1)
    y1 = g.g1 * (pair.x1 * a + pair.x2 * b) * gi
    y2 = g.g1 * (pair.x1 * c + pair.x2 * d) * gi
    out = HermitianPair(y1, y2, check=True)
    return out


class BinaryForm:
    """Binary form of degree n with coefficients in lex order v1^n, v1^(n-1)v2, ..."""

    __slots__ = ("ring", "n", "coeffs")

    def __init__(self, ring, n, coeffs):
        assert len(coeffs) == n + 1
        self.ring = ring
        self.n = n
        self.coeffs = tuple(ring.coerce(c) for c in coeffs)

    def __eq__(self, other):
        return isinstance(other, BinaryForm) and self.n == other.n and self.coeffs == other.coeffs

    def __repr__(self):
        return f"BinaryForm{tuple(c.data for c in self.coeffs)}"

    def evaluate(self, v1, v2):
        v1 = self.ring.coerce(v1)
        v2 = self.ring.coerce(v2)
        acc = self.ring.zero()
        for i, c in enumerate(self.coeffs):
            acc = acc + c * v1 ** (self.n - i) * v2 ** i
        return acc

    def scale(self, c):
        return BinaryForm(self.ring, self.n, [c * x for x in self.coeffs])

    def substitute_g2(self, g2):
        """The form F(v g2) as a new BinaryForm (g2 a 2x2 matrix over the ring)."""
        a, b = g2[0]
        c, d = g2[1]
        # v g2 = (a v1 + c v2, b v1 + d v2)
        n = self.n
        ring = self.ring
        out = [ring.zero()] * (n + 1)
        for i, coeff in enumerate(self.coeffs):
            # coeff * (a v1 + c v2)^(n-i) * (b v1 + d v2)^i
            poly1 = _binary_power(ring, a, c, n - i)
            poly2 = _binary_power(ring, b, d, i)
            for d1, c1 in enumerate(poly1):
                for d2, c2 in enumerate(poly2):
                    out[d1 + d2] = out[d1 + d2] + coeff * c1 * c2
        return BinaryForm(ring, n, out)


def _binary_power(ring, p, q, m):
    """Coefficients of (p v1 + q v2)^m by v2-degree."""
    coeffs = [ring.one()]
    for _ in range(m):
        new = [ring.zero()] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            new[i] = new[i] + c * p
            new[i + 1] = new[i + 1] + c * q
        coeffs = new
    return coeffs


def form_of_pair(pair):
    """Coefficients of F_x(v) = Pfaff_n(x1 v1 + x2 v2) by interpolation.

    Points (1,0), (0,1), (1,1) for n=2 plus (1,-1) for n=3; the only division
    is by 2, valid for every odd characteristic.
    """
    ring = pair.ring
    a = pfaffian(pair.x1)
    d = pfaffian(pair.x2)
    if pair.n == 2:
        s = pfaffian(_pair_comb(pair, 1, 1))
        return BinaryForm(ring, 2, [a, s - a - d, d])
    s = pfaffian(_pair_comb(pair, 1, 1)) - a - d          # b + c
    t = pfaffian(_pair_comb(pair, 1, -1)) - a + d         # -b + c
    half = ring.coerce(2).inv()
    b = (s - t) * half
    c = (s + t) * half
    return BinaryForm(ring, 3, [a, b, c, d])


def _pair_comb(pair, u, v):
    return pair.x1 * pair.ring.coerce(u) + pair.x2 * pair.ring.coerce(v)


def discriminant(form):
    """n=2: b^2-4ac; n=3: b^2c^2-4ac^3-4b^3d-27a^2d^2+18abcd.

    Both equal the root product prod_{i<j} (alpha_i beta_j - alpha_j beta_i)^2
    over a splitting algebra; the equality is oracle-tested on split instances.
    """
    if form.n == 2:
        a, b, c = form.coeffs
        return b * b - 4 * a * c
    a, b, c, d = form.coeffs
    return (b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d
            - 27 * a * a * d * d + 18 * a * b * c * d)


def invariant_p(pair):
    return discriminant(form_of_pair(pair))


def is_semistable(pair):
    return not invariant_p(pair).is_zero()


def character_chi(g):
    """chi(g) = N(g1) det(g2) for n=2 and N(g1)^2 det(g2)^3 for n=3."""
    nrm = reduced_norm_matrix(g.g1)
    d = g.g2[0][0] * g.g2[1][1] - g.g2[0][1] * g.g2[1][0]
    if g.g1.n == 2:
        return nrm * d
    return nrm * nrm * d * d * d


def projective_rational_roots(form):
    """Rational roots of the form in P^1, with multiplicity, normalized so the
    first nonzero coordinate is 1."""
    ring = form.ring
    dehom = list(reversed(form.coeffs))  # F(z, 1) ascending in z
    deg = poly_degree(dehom)
    roots = []
    for r in roots_in_base(ring, dehom):
        if r.is_zero():
            roots.append((ring.zero(), ring.one()))
        else:
            roots.append((ring.one(), r.inv()))
    for _ in range(form.n - deg):
        roots.append((ring.one(), ring.zero()))
    return roots


def splitting_type(pair):
    """Factorization pattern of F_x over the coefficient field; determines the
    isomorphism class of the etale algebra attached to the pair."""
    form = form_of_pair(pair)
    return splitting_type_of_form(form)


def splitting_type_of_form(form):
    if discriminant(form).is_zero():
        raise NotSemistable("form has a repeated root")
    nroots = len(projective_rational_roots(form))
    if form.n == 2:
        return (1, 1) if nroots == 2 else (2,)
    if nroots == 3:
        return (1, 1, 1)
    if nroots == 1:
        return (1, 2)
    assert nroots == 0
    return (3,)


def format_splitting_type(st):
    return "(" + ",".join(str(x) for x in st) + ")"
