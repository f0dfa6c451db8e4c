"""Seeded random instance generators used by the verify suites and tests.

Over Q the entries are kept at small height so exact arithmetic stays cheap;
over F_p they are uniform.  Every generator takes an explicit random.Random.
"""

from fractions import Fraction

from .exact_algebra import EtaleAlgebra, PrimeField, Rationals
from .hermitian_pairs import GroupElement, HermitianPair, QuatMatrix, reduced_norm_matrix
from .quaternion import Quaternion, reduced_norm


def rand_scalar(ring, rng, height=4):
    if isinstance(ring, PrimeField):
        return ring.coerce(rng.randrange(ring.p))
    if isinstance(ring, Rationals):
        return ring.coerce(Fraction(rng.randint(-height, height), rng.randint(1, 3)))
    if isinstance(ring, EtaleAlgebra):
        return ring.from_coords([rand_scalar(ring.base, rng, height) for _ in range(ring.degree)])
    raise TypeError(f"no sampler for {ring}")


def rand_unit_scalar(ring, rng, height=4):
    while True:
        s = rand_scalar(ring, rng, height)
        if s.is_unit():
            return s


def rand_quaternion(alg, rng, ring=None, height=3):
    ring = ring or alg.base
    return Quaternion(alg, ring, tuple(rand_scalar(ring, rng, height) for _ in range(4)))


def rand_unit_quaternion(alg, rng, ring=None, height=3):
    while True:
        q = rand_quaternion(alg, rng, ring, height)
        if reduced_norm(q).is_unit():
            return q


def rand_hermitian(alg, n, rng, ring=None, height=3):
    ring = ring or alg.base
    rows = [[alg.zero(ring) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        rows[i][i] = alg.quaternion(rand_scalar(ring, rng, height), ring=ring)
    for i in range(n):
        for j in range(i + 1, n):
            q = rand_quaternion(alg, rng, ring, height)
            rows[i][j] = q
            rows[j][i] = _conj(q)
    return QuatMatrix(alg, ring, rows)


def _conj(q):
    s, x, y, z = q.coords
    return Quaternion(q.alg, q.ring, (s, -x, -y, -z))


def rand_pair(alg, n, rng, ring=None, height=3):
    return HermitianPair(rand_hermitian(alg, n, rng, ring, height),
                         rand_hermitian(alg, n, rng, ring, height))


def rand_semistable_pair(alg, n, rng, ring=None, height=3):
    from .hermitian_pairs import is_semistable

    while True:
        pair = rand_pair(alg, n, rng, ring, height)
        if is_semistable(pair):
            return pair


def rand_invertible_quat_matrix(alg, n, rng, ring=None, height=2):
    ring = ring or alg.base
    while True:
        m = QuatMatrix(alg, ring,
                       [[rand_quaternion(alg, rng, ring, height) for _ in range(n)] for _ in range(n)])
        if reduced_norm_matrix(m).is_unit():
            return m


def rand_invertible_2x2(ring, rng, height=3):
    while True:
        g2 = [[rand_scalar(ring, rng, height) for _ in range(2)] for _ in range(2)]
        if (g2[0][0] * g2[1][1] - g2[0][1] * g2[1][0]).is_unit():
            return g2


def rand_group_element(alg, n, rng, ring=None, height=2):
    ring = ring or alg.base
    return GroupElement(rand_invertible_quat_matrix(alg, n, rng, ring, height),
                        rand_invertible_2x2(ring, rng, height))
