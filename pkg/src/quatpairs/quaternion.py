"""Quaternion algebra B = (a,b | k): arithmetic over any etale coefficient
algebra R, the canonical involution, reduced norm/trace, and the splitting
embedding into 2x2 matrices that serves as the Pfaffian oracle downstream.

Coordinates are (s, x, y, z) in the basis 1, i, j, ij with i^2 = a,
j^2 = b, ij = -ji.
"""

from .errors import NoSquareRoot, NotAUnit
from .exact_algebra import (
    EtaleAlgebra,
    first_root_in,
    is_square_scalar,
    sqrt_scalar,
)


class QuaternionAlgebra:
    """B = (a, b | k) with a, b nonzero elements of the base field k."""

    def __init__(self, base_field, a, b):
        self.base = base_field
        self.a = base_field.coerce(a)
        self.b = base_field.coerce(b)
        if self.a.is_zero() or self.b.is_zero():
            raise ValueError("structure constants a, b must be nonzero")
        self._split_cache = {}

    def __eq__(self, other):
        return (
            isinstance(other, QuaternionAlgebra)
            and self.base == other.base
            and self.a == other.a
            and self.b == other.b
        )

    def __hash__(self):
        return hash(("quat", self.base.descriptor_key(), self.a.data, self.b.data))

    def __repr__(self):
        return f"({self.a.data},{self.b.data}|{self.base})"

    def quaternion(self, s, x=0, y=0, z=0, ring=None):
        ring = ring or self.base
        return Quaternion(self, ring, (ring.coerce(s), ring.coerce(x), ring.coerce(y), ring.coerce(z)))

    def zero(self, ring=None):
        return self.quaternion(0, 0, 0, 0, ring=ring)

    def one(self, ring=None):
        return self.quaternion(1, 0, 0, 0, ring=ring)

    def i(self, ring=None):
        return self.quaternion(0, 1, 0, 0, ring=ring)

    def j(self, ring=None):
        return self.quaternion(0, 0, 1, 0, ring=ring)

    def ij(self, ring=None):
        return self.quaternion(0, 0, 0, 1, ring=ring)

    def basis(self, ring=None):
        return [self.one(ring), self.i(ring), self.j(ring), self.ij(ring)]


class Quaternion:
    __slots__ = ("alg", "ring", "coords")

    def __init__(self, alg, ring, coords):
        self.alg = alg
        self.ring = ring
        self.coords = coords

    def _coerce(self, other):
        if isinstance(other, Quaternion):
            if other.ring is self.ring or other.ring == self.ring:
                return other
            return Quaternion(self.alg, self.ring, tuple(self.ring.coerce(c) for c in other.coords))
        # scalars embed on the 1-component
        s = self.ring.coerce(other)
        z = self.ring.zero()
        return Quaternion(self.alg, self.ring, (s, z, z, z))

    def __add__(self, other):
        other = self._coerce(other)
        return Quaternion(self.alg, self.ring, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return Quaternion(self.alg, self.ring, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return Quaternion(self.alg, self.ring, tuple(-c for c in self.coords))

    def __mul__(self, other):
        other = self._coerce(other)
        s1, x1, y1, z1 = self.coords
        s2, x2, y2, z2 = other.coords
        a = self.ring.coerce(self.alg.a)
        b = self.ring.coerce(self.alg.b)
        s = s1 * s2 + a * x1 * x2 + b * y1 * y2 - a * b * z1 * z2
        x = s1 * x2 + x1 * s2 - b * y1 * z2 + b * z1 * y2
        y = s1 * y2 + y1 * s2 + a * x1 * z2 - a * z1 * x2
        z = s1 * z2 + z1 * s2 + x1 * y2 - y1 * x2
        return Quaternion(self.alg, self.ring, (s, x, y, z))

    def __rmul__(self, other):
        return self._coerce(other) * self

    def __eq__(self, other):
        if not isinstance(other, Quaternion):
            try:
                other = self._coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        else:
            other = self._coerce(other)
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"Quat{tuple(c.data for c in self.coords)}"

    def is_zero(self):
        return all(c.is_zero() for c in self.coords)

    def is_scalar(self):
        return all(c.is_zero() for c in self.coords[1:])

    def scalar_part(self):
        return self.coords[0]

    def map_coeffs(self, fn, ring=None):
        coords = tuple(fn(c) for c in self.coords)
        return Quaternion(self.alg, ring or coords[0].ring, coords)


def conj(q):
    """Canonical involution q* = T(q) - q."""
    s, x, y, z = q.coords
    return Quaternion(q.alg, q.ring, (s, -x, -y, -z))


def reduced_norm(q):
    """N(q) = q q* = s^2 - a x^2 - b y^2 + ab z^2, an element of R."""
    s, x, y, z = q.coords
    a = q.ring.coerce(q.alg.a)
    b = q.ring.coerce(q.alg.b)
    return s * s - a * x * x - b * y * y + a * b * z * z


def reduced_trace(q):
    return 2 * q.coords[0]


def invert(q):
    """Inverse q* / N(q); raises NotAUnit when N(q) is not invertible in R."""
    n = reduced_norm(q)
    if not n.is_unit():
        raise NotAUnit(f"reduced norm {n!r} is not a unit")
    ninv = n.inv()
    return conj(q).map_coeffs(lambda c: c * ninv)


class SplitEmbedding:
    """Embedding of B into 2x2 matrices over an algebra containing sqrt(a).

    1 -> identity, i -> diag(r, -r), j -> [[0,1],[b,0]], ij -> [[0,r],[-br,0]].
    For a quaternion with coefficients in R the image matrix lives over the
    pushout ext_ring = R adjoined r (R itself when r already lies in R).
    """

    def __init__(self, alg, coeff_ring, ext_ring, root):
        self.alg = alg
        self.coeff_ring = coeff_ring
        self.ext_ring = ext_ring
        self.root = root
        self.needs_descent = ext_ring != coeff_ring

    def apply(self, q):
        R = self.ext_ring
        s, x, y, z = (R.coerce(c) for c in q.coords)
        r = self.root
        b = R.coerce(self.alg.b)
        return [
            [s + x * r, y + z * r],
            [b * (y - z * r), s - x * r],
        ]

    def descend(self, value, context=""):
        """Pull an ext_ring scalar known to lie in R back down to R."""
        from .errors import DescentFailure

        if not self.needs_descent:
            return value
        const, top = value.data[0], value.data[1]
        if not top.is_zero():
            raise DescentFailure(f"{context}: sqrt(a)-component {top!r} is nonzero")
        return const


def split_embed(alg, K):
    """Embedding handle for B over K; K must contain a square root of a.

    Raises NoSquareRoot if no root of t^2 - a is found in K.
    """
    r = _find_sqrt(alg, K)
    if r is None:
        raise NoSquareRoot(f"{K} contains no square root of {alg.a.data}")
    return SplitEmbedding(alg, K, K, r)


def _find_sqrt(alg, K):
    a = alg.a
    base = alg.base
    if K == base:
        if is_square_scalar(a):
            return sqrt_scalar(a)
        return None
    if isinstance(K, EtaleAlgebra):
        # generator of base[t]/(t^2 - a) is a root by construction
        if K.base == base and K.degree == 2:
            mod = K.modulus
            if mod[1].is_zero() and mod[0] == -a:
                return K.gen()
        if is_square_scalar(a):
            return K.coerce(sqrt_scalar(a))
        if hasattr(K.base, "size"):
            root = first_root_in(K, [-K.coerce(a), K.zero(), K.one()])
            return root
    return None


def splitting_context(alg, coeff_ring):
    """Split embedding over coeff_ring, adjoining sqrt(a) when necessary.

    The extension coeff_ring[t]/(t^2-a) is etale (char != 2, a != 0) even if
    t^2-a is reducible over coeff_ring; arithmetic downstream never divides
    by non-units without a fallback.
    """
    key = coeff_ring.descriptor_key()
    cached = alg._split_cache.get(key)
    if cached is not None:
        return cached
    if is_square_scalar(alg.a):
        r = coeff_ring.coerce(sqrt_scalar(alg.a))
        ctx = SplitEmbedding(alg, coeff_ring, coeff_ring, r)
    else:
        ext = EtaleAlgebra(coeff_ring, [-alg.a, 0, 1], _internal=True)
        ctx = SplitEmbedding(alg, coeff_ring, ext, ext.gen())
    alg._split_cache[key] = ctx
    return ctx


def adjugate2(m):
    return [[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]]
