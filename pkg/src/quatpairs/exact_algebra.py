"""Exact arithmetic over Q, F_p (p an odd prime) and etale extensions.

Rings form towers: PrimeField/Rationals at the bottom, EtaleAlgebra layers
(degree 2 or 3 each) on top.  Elements are immutable and carry their ring.
Towers of height 2 cover normal closures of non-Galois cubics; internal
machinery (splitting extensions for reduced norms) may stack one more layer
through the private constructor.

Characteristic 2 is excluded throughout: the structure-constant quaternion
model used downstream (i^2=a, j^2=b, ij=-ji) degenerates there.
"""

from fractions import Fraction
from math import isqrt

from .errors import (
    InseparableModulus,
    NonMonic,
    NotAUnit,
    ReducibleModulus,
)

MAX_TOWER_DEGREE = 6
MAX_TOWER_HEIGHT = 2


# ---------------------------------------------------------------------------
# elements


class Element:
    """A value tagged with the ring it lives in.

    data is an int (prime field), a Fraction (rationals), or a tuple of
    base-ring Elements (etale algebra, power-basis coordinates).
    """

    __slots__ = ("ring", "data")

    def __init__(self, ring, data):
        self.ring = ring
        self.data = data

    def __add__(self, other):
        if not (isinstance(other, Element) and other.ring is self.ring):
            other = self.ring.coerce(other)
        return Element(self.ring, self.ring._add(self.data, other.data))

    __radd__ = __add__

    def __sub__(self, other):
        if not (isinstance(other, Element) and other.ring is self.ring):
            other = self.ring.coerce(other)
        return Element(self.ring, self.ring._sub(self.data, other.data))

    def __rsub__(self, other):
        return self.ring.coerce(other) - self

    def __mul__(self, other):
        if not (isinstance(other, Element) and other.ring is self.ring):
            other = self.ring.coerce(other)
        return Element(self.ring, self.ring._mul(self.data, other.data))

    __rmul__ = __mul__

    def __neg__(self):
        return Element(self.ring, self.ring._neg(self.data))

    def __truediv__(self, other):
        if not (isinstance(other, Element) and other.ring is self.ring):
            other = self.ring.coerce(other)
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.ring.coerce(other) / self

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Element):
            if not (other.ring is self.ring or other.ring == self.ring):
                try:
                    other = self.ring.coerce(other)
                except (TypeError, ValueError):
                    return NotImplemented
            return self.data == other.data
        if isinstance(other, (int, Fraction)):
            return self.data == self.ring.coerce(other).data
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.descriptor_key(), self.data))

    def __repr__(self):
        return f"El({self.data!r})"

    def is_zero(self):
        return self.ring._is_zero(self.data)

    def is_unit(self):
        return self.ring.is_unit(self)

    def inv(self):
        return self.ring.inv(self)


class Ring:
    """Common interface for Rationals, PrimeField and EtaleAlgebra."""

    is_field = False

    def coerce(self, x):
        raise NotImplementedError

    def zero(self):
        cached = getattr(self, "_zero", None)
        if cached is None:
            cached = self.coerce(0)
            self._zero = cached
        return cached

    def one(self):
        cached = getattr(self, "_one", None)
        if cached is None:
            cached = self.coerce(1)
            self._one = cached
        return cached

    def descriptor_key(self):
        cached = getattr(self, "_key", None)
        if cached is None:
            cached = self._descriptor_key()
            self._key = cached
        return cached

    def _descriptor_key(self):
        raise NotImplementedError

    def __eq__(self, other):
        if other is self:
            return True
        return isinstance(other, Ring) and self.descriptor_key() == other.descriptor_key()

    def __hash__(self):
        return hash(self.descriptor_key())


class Rationals(Ring):
    is_field = True
    characteristic = 0
    degree_over_prime = 1

    def _descriptor_key(self):
        return ("Q",)

    def _is_zero(self, data):
        return data == 0

    def __repr__(self):
        return "Q"

    def coerce(self, x):
        if isinstance(x, Element):
            if x.ring is self or x.ring == self:
                return x
            raise TypeError(f"cannot coerce element of {x.ring} into Q")
        if isinstance(x, (int, Fraction)):
            return Element(self, Fraction(x))
        raise TypeError(f"cannot coerce {x!r} into Q")

    def _add(self, a, b):
        return a + b

    def _sub(self, a, b):
        return a - b

    def _mul(self, a, b):
        return a * b

    def _neg(self, a):
        return -a

    def is_unit(self, x):
        return x.data != 0

    def inv(self, x):
        if x.data == 0:
            raise NotAUnit("0 is not invertible in Q")
        return Element(self, 1 / x.data)

    def prime_base(self):
        return self

    def to_kvec(self, x):
        return [x.data]

    def from_kvec(self, vec):
        return self.coerce(vec[0])


class PrimeField(Ring):
    is_field = True
    degree_over_prime = 1

    def __init__(self, p):
        if p < 3 or not _is_prime(p):
            raise ValueError(f"prime field characteristic must be an odd prime, got {p}")
        self.p = p
        self.characteristic = p

    def _descriptor_key(self):
        return ("Fp", self.p)

    def _is_zero(self, data):
        return data == 0

    def __repr__(self):
        return f"F{self.p}"

    def coerce(self, x):
        if isinstance(x, Element):
            if x.ring is self or x.ring == self:
                return x
            raise TypeError(f"cannot coerce element of {x.ring} into {self}")
        if isinstance(x, int):
            return Element(self, x % self.p)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ValueError(f"denominator not invertible mod {self.p}")
            return Element(self, x.numerator * pow(x.denominator, -1, self.p) % self.p)
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def _add(self, a, b):
        return (a + b) % self.p

    def _sub(self, a, b):
        return (a - b) % self.p

    def _mul(self, a, b):
        return (a * b) % self.p

    def _neg(self, a):
        return (-a) % self.p

    def is_unit(self, x):
        return x.data != 0

    def inv(self, x):
        if x.data == 0:
            raise NotAUnit(f"0 is not invertible in {self}")
        return Element(self, pow(x.data, -1, self.p))

    def prime_base(self):
        return self

    def to_kvec(self, x):
        return [x.data]

    def from_kvec(self, vec):
        return self.coerce(vec[0])

    def elements(self):
        for v in range(self.p):
            yield Element(self, v)

    def size(self):
        return self.p


class EtaleAlgebra(Ring):
    """Quotient base[t]/(modulus) with modulus monic separable of degree 2 or 3.

    Elements are coordinate tuples in the power basis 1, t, ..., t^(d-1).
    The algebra need not be a field (split moduli give products of fields).
    """

    def __init__(self, base, modulus, _internal=False):
        coeffs = [base.coerce(c) for c in modulus]
        deg = len(coeffs) - 1
        if deg not in (2, 3):
            raise ValueError(f"modulus degree must be 2 or 3, got {deg}")
        if coeffs[-1] != base.one():
            raise NonMonic("modulus must be monic")
        d = poly_discriminant(coeffs)
        if d.is_zero():
            raise InseparableModulus("modulus has vanishing discriminant")
        if not _internal:
            height = 1 + tower_height(base)
            if height > MAX_TOWER_HEIGHT:
                raise ValueError(f"tower height {height} exceeds {MAX_TOWER_HEIGHT}")
            if deg * base_total_degree(base) > MAX_TOWER_DEGREE:
                raise ValueError("tower total degree exceeds %d" % MAX_TOWER_DEGREE)
        self.base = base
        self.modulus = tuple(coeffs)
        self.degree = deg
        self.characteristic = base.characteristic
        self._is_field = None
        self.degree_over_prime = deg * base.degree_over_prime

    def _descriptor_key(self):
        return ("ext", self.base.descriptor_key(), tuple(c.data for c in self.modulus))

    def _is_zero(self, data):
        return all(c.is_zero() for c in data)

    def __repr__(self):
        return f"{self.base}[t]/({[c.data for c in self.modulus]})"

    @property
    def is_field(self):
        if self._is_field is None:
            self._is_field = self.base.is_field and not roots_in_base(self.base, list(self.modulus))
        return self._is_field

    def gen(self):
        coords = [self.base.zero()] * self.degree
        coords[1] = self.base.one()
        return Element(self, tuple(coords))

    def from_coords(self, coords):
        coords = [self.base.coerce(c) for c in coords]
        if len(coords) > self.degree:
            raise ValueError("too many coordinates")
        while len(coords) < self.degree:
            coords.append(self.base.zero())
        return Element(self, tuple(coords))

    def coerce(self, x):
        if isinstance(x, Element):
            if x.ring is self or x.ring == self:
                return x
            if x.ring is self.base or x.ring == self.base:
                return self.from_coords([x])
            # climb: element of a deeper layer embeds as a constant
            try:
                return self.from_coords([self.base.coerce(x)])
            except TypeError:
                raise TypeError(f"cannot coerce element of {x.ring} into {self}")
        if isinstance(x, (int, Fraction)):
            return self.from_coords([self.base.coerce(x)])
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def _add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def _sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def _neg(self, a):
        return tuple(-x for x in a)

    def _mul(self, a, b):
        prod = [self.base.zero()] * (2 * self.degree - 1)
        for i, x in enumerate(a):
            if x.is_zero():
                continue
            for j, y in enumerate(b):
                prod[i + j] = prod[i + j] + x * y
        return tuple(self._reduce(prod))

    def _reduce(self, coeffs):
        # reduce a coefficient list modulo the monic modulus
        coeffs = list(coeffs)
        d = self.degree
        for i in range(len(coeffs) - 1, d - 1, -1):
            lead = coeffs[i]
            if not lead.is_zero():
                for j in range(d):
                    coeffs[i - d + j] = coeffs[i - d + j] - lead * self.modulus[j]
            coeffs.pop()
        while len(coeffs) < d:
            coeffs.append(self.base.zero())
        return coeffs

    def prime_base(self):
        return self.base.prime_base()

    def to_kvec(self, x):
        out = []
        for c in x.data:
            out.extend(self.base.to_kvec(c))
        return out

    def from_kvec(self, vec):
        step = len(vec) // self.degree
        coords = [self.base.from_kvec(vec[i * step:(i + 1) * step]) for i in range(self.degree)]
        return Element(self, tuple(coords))

    def k_basis(self):
        """Basis of the algebra as a vector space over the prime base."""
        n = self.degree_over_prime
        out = []
        for i in range(n):
            vec = [0] * n
            vec[i] = 1
            out.append(self.from_kvec(vec))
        return out

    def is_unit(self, x):
        try:
            self.inv(x)
            return True
        except NotAUnit:
            return False

    def inv(self, x):
        # solve x*y = 1 as a linear system over the prime base
        from .linalg import solve_prime_vec

        k = self.prime_base()
        basis = self.k_basis()
        cols = [self.to_kvec(x * b) for b in basis]
        n = len(basis)
        mat = [[cols[j][i] for j in range(n)] for i in range(n)]
        target = self.to_kvec(self.one())
        sol = solve_prime_vec(k, mat, target)
        if sol is None:
            raise NotAUnit(f"element {x!r} is not invertible in {self}")
        coords = [b * c for b, c in zip(basis, (k.coerce(s) for s in sol))]
        acc = self.zero()
        for term in coords:
            acc = acc + term
        return acc

    def elements(self):
        for coords in _cartesian([list(self.base.elements())] * self.degree):
            yield Element(self, tuple(coords))

    def size(self):
        return self.base.size() ** self.degree

    def mult_matrix(self, x):
        """Matrix of multiplication by x in the power basis, over self.base."""
        d = self.degree
        cols = []
        for i in range(d):
            coords = [self.base.zero()] * d
            coords[i] = self.base.one()
            cols.append((x * Element(self, tuple(coords))).data)
        return [[cols[j][i] for j in range(d)] for i in range(d)]


def _cartesian(pools):
    if not pools:
        yield []
        return
    for head in pools[0]:
        for tail in _cartesian(pools[1:]):
            yield [head] + tail


def _is_prime(n):
    if n < 2:
        return False
    for q in range(2, isqrt(n) + 1):
        if n % q == 0:
            return False
    return True


def tower_height(ring):
    h = 0
    while isinstance(ring, EtaleAlgebra):
        h += 1
        ring = ring.base
    return h


def base_total_degree(ring):
    d = 1
    while isinstance(ring, EtaleAlgebra):
        d *= ring.degree
        ring = ring.base
    return d


# ---------------------------------------------------------------------------
# polynomials (coefficient lists, ascending degree)


def poly_eval(coeffs, x):
    ring = x.ring
    acc = ring.zero()
    for c in reversed(coeffs):
        acc = acc * x + ring.coerce(c)
    return acc


def poly_degree(coeffs):
    d = len(coeffs) - 1
    while d > 0 and coeffs[d].is_zero():
        d -= 1
    return d


def poly_derivative(coeffs):
    if len(coeffs) <= 1:
        return [coeffs[0].ring.zero()] if coeffs else []
    return [coeffs[i] * i for i in range(1, len(coeffs))]


def poly_discriminant(coeffs):
    """Discriminant of a monic polynomial of degree 2 or 3."""
    deg = len(coeffs) - 1
    if deg == 2:
        c0, c1, _ = coeffs
        return c1 * c1 - 4 * c0
    if deg == 3:
        c0, c1, c2, _ = coeffs
        # disc(t^3 + c2 t^2 + c1 t + c0)
        return (
            18 * c2 * c1 * c0
            - 4 * c2 * c2 * c2 * c0
            + c2 * c2 * c1 * c1
            - 4 * c1 * c1 * c1
            - 27 * c0 * c0
        )
    raise ValueError("discriminant implemented for degree 2 and 3 only")


def synthetic_divide(coeffs, root):
    """Divide by the monic linear factor (t - root); returns (quotient, remainder)."""
    ring = root.ring
    coeffs = [ring.coerce(c) for c in coeffs]
    # Horner: quotient coefficients are the partial sums, top degree first
    quot_rev = []
    carry = ring.zero()
    for c in reversed(coeffs[1:]):
        carry = c + carry * root
        quot_rev.append(carry)
    remainder = coeffs[0] + carry * root
    return list(reversed(quot_rev)), remainder


def roots_in_base(ring, coeffs):
    """All roots of the polynomial lying in the ring, with multiplicity.

    Exhaustive over finite rings; rational-root test over Q (complete for
    finding rational roots in any degree).
    """
    coeffs = [ring.coerce(c) for c in coeffs]
    if poly_degree(coeffs) == 0:
        return []
    roots = []
    if isinstance(ring, Rationals):
        candidates = _rational_root_candidates(coeffs)
    elif hasattr(ring, "elements"):
        candidates = list(ring.elements())
    else:
        raise NotImplementedError(f"root finding over {ring} is not supported")
    work = coeffs
    for cand in candidates:
        while poly_degree(work) >= 1 and poly_eval(work, cand).is_zero():
            roots.append(cand)
            work, rem = synthetic_divide(work, cand)
            assert rem.is_zero()
    return roots


def _rational_root_candidates(coeffs):
    ring = coeffs[0].ring
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.data.denominator // _gcd(lcm, c.data.denominator)
    ints = [int(c.data * lcm) for c in coeffs]
    d = poly_degree(coeffs)
    lead = ints[d]
    # strip trailing zero coefficients: factor t^m
    m = 0
    while m <= d and ints[m] == 0:
        m += 1
    out = []
    if m > 0:
        out.append(ring.zero())
    if m > d:
        return out
    const = ints[m]
    for pnum in _divisors(abs(const)):
        for pden in _divisors(abs(lead)):
            for sign in (1, -1):
                out.append(ring.coerce(Fraction(sign * pnum, pden)))
    # dedupe preserving order
    seen = set()
    uniq = []
    for r in out:
        if r.data not in seen:
            seen.add(r.data)
            uniq.append(r)
    return uniq


def _divisors(n):
    if n == 0:
        return [1]
    out = []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
    return sorted(out)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# constructors, norms, traces, conjugates


def etale_make(base, modulus_coeffs):
    """Quotient algebra base[t]/(modulus); modulus monic separable of degree 2 or 3."""
    return EtaleAlgebra(base, modulus_coeffs)


def norm_trace(algebra, x):
    """(norm, trace) of x relative to the algebra's base ring.

    Computed from the multiplication matrix, so no splitting field is needed.
    """
    from .linalg import det as mat_det

    x = algebra.coerce(x)
    m = algebra.mult_matrix(x)
    tr = algebra.base.zero()
    for i in range(algebra.degree):
        tr = tr + m[i][i]
    return mat_det(algebra.base, m), tr


def char_poly_of_element(algebra, x):
    """Characteristic polynomial (monic, ascending coeffs) of mult-by-x over the base."""
    m = algebra.mult_matrix(algebra.coerce(x))
    return _char_poly_matrix(algebra.base, m)


def _char_poly_matrix(ring, m):
    # det(X I - M) via signed sums of principal minors (division-free)
    from .linalg import det as mat_det

    d = len(m)
    coeffs = [ring.zero()] * (d + 1)
    coeffs[d] = ring.one()
    import itertools

    for size in range(1, d + 1):
        acc = ring.zero()
        for subset in itertools.combinations(range(d), size):
            sub = [[m[i][j] for j in subset] for i in subset]
            acc = acc + mat_det(ring, sub)
        sign = -1 if size % 2 else 1
        coeffs[d - size] = sign * acc
    return coeffs


class AlgebraMap:
    """Ring homomorphism of etale towers fixing the prime base.

    layer_images[i] is the image (in dst) of the generator of the i-th
    extension layer of src, counted from the bottom-most EtaleAlgebra up.
    """

    def __init__(self, src, dst, layer_images, check=True):
        self.src = src
        self.dst = dst
        self.layer_images = [dst.coerce(v) for v in layer_images]
        if check:
            layers = _layers(src)
            assert len(layers) == len(self.layer_images)
            for layer, img in zip(layers, self.layer_images):
                coeffs = [self._apply_base(c, layers, layer) for c in layer.modulus]
                if not poly_eval(coeffs, img).is_zero():
                    raise ValueError("generator image is not a root of the layer modulus")

    def _apply_base(self, elt, layers, upto_layer):
        # apply the map to an element living strictly below upto_layer
        idx = layers.index(upto_layer)
        return self._apply_elt(elt, layers[:idx])

    def _apply_elt(self, elt, layers):
        if not layers:
            # prime-base scalar
            return self.dst.coerce(elt.data if isinstance(elt, Element) else elt)
        top = layers[-1]
        img = self.layer_images[len(layers) - 1]
        acc = self.dst.zero()
        power = self.dst.one()
        for c in elt.data:
            acc = acc + self._apply_elt(c, layers[:-1]) * power
            power = power * img
        return acc

    def __call__(self, elt):
        elt = self.src.coerce(elt)
        return self._apply_elt(elt, _layers(self.src))


def _layers(ring):
    layers = []
    while isinstance(ring, EtaleAlgebra):
        layers.append(ring)
        ring = ring.base
    return list(reversed(layers))


def identity_map(ring):
    return AlgebraMap(ring, ring, [layer.gen() for layer in _layers(ring)], check=False)


def quadratic_conjugation(algebra):
    """The nontrivial automorphism of a quadratic extension: t -> -c1 - t."""
    if algebra.degree != 2:
        raise ValueError("quadratic conjugation needs a degree-2 extension")
    c1 = algebra.modulus[1]
    image = algebra.from_coords([-c1, algebra.base.coerce(-1)])
    lower = [algebra.coerce(layer.gen()) for layer in _layers(algebra)[:-1]]
    return AlgebraMap(algebra, algebra, lower + [image])


def frobenius_map(algebra):
    """Relative Frobenius x -> x^|base| of an extension of a finite base."""
    q = algebra.base.size()
    img = algebra.gen() ** q
    lower = [algebra.coerce(layer.gen()) for layer in _layers(algebra)[:-1]]
    return AlgebraMap(algebra, algebra, lower + [img])


def is_square_scalar(x):
    """Square test in a base field (Q or F_p)."""
    ring = x.ring
    if isinstance(ring, Rationals):
        f = x.data
        if f < 0:
            return False
        return isqrt(f.numerator) ** 2 == f.numerator and isqrt(f.denominator) ** 2 == f.denominator
    if isinstance(ring, PrimeField):
        if x.data == 0:
            return True
        return pow(x.data, (ring.p - 1) // 2, ring.p) == 1
    raise NotImplementedError(f"square test over {ring} not supported")


def sqrt_scalar(x):
    """Exact square root in Q or F_p; raises NotAUnit-style ValueError if none."""
    ring = x.ring
    if isinstance(ring, Rationals):
        f = x.data
        if not is_square_scalar(x):
            raise ValueError(f"{f} is not a square in Q")
        return ring.coerce(Fraction(isqrt(f.numerator), isqrt(f.denominator)))
    if isinstance(ring, PrimeField):
        for s in range(ring.p):
            if s * s % ring.p == x.data:
                return ring.coerce(s)
        raise ValueError(f"{x.data} is not a square mod {ring.p}")
    raise NotImplementedError


class SplittingData:
    """Conjugate data for a degree-2 or irreducible degree-3 extension.

    algebra_s : algebra containing all conjugates of the generator
    embed     : AlgebraMap from the extension into algebra_s
    conjugates: generator conjugates in algebra_s (length = degree)
    auts      : named automorphisms of algebra_s, when available:
                'nu' (quadratic), 'theta' (a 3-cycle on the conjugates),
                'tau'/'mu' (the two transpositions fixing the 3rd/2nd
                conjugate; only on the non-Galois tower)
    """

    def __init__(self, algebra_s, embed, conjugates, auts):
        self.algebra_s = algebra_s
        self.embed = embed
        self.conjugates = conjugates
        self.auts = auts


def splitting_data(algebra):
    """Conjugates of the generator together with a splitting algebra.

    Degree 2: the algebra itself with nu.  Degree 3 over a finite base:
    Frobenius orbit, theta = Frobenius.  Degree 3 over Q: within the algebra
    when Galois (square discriminant), else the height-2 tower L[u]/(q) with
    the third root recovered as b1 - t - u.
    """
    if not algebra.is_field:
        raise ReducibleModulus("modulus factors over the base; conjugates need a field extension")
    if algebra.degree == 2:
        nu = quadratic_conjugation(algebra)
        t = algebra.gen()
        return SplittingData(algebra, identity_map(algebra), [t, nu(t)], {"nu": nu})
    if algebra.degree != 3:
        raise ValueError("conjugates implemented for degrees 2 and 3")
    if algebra.characteristic > 0:
        fr = frobenius_map(algebra)
        t = algebra.gen()
        t2 = fr(t)
        t3 = fr(t2)
        return SplittingData(algebra, identity_map(algebra), [t, t2, t3], {"theta": fr})
    # cubic over Q
    disc = poly_discriminant(list(algebra.modulus))
    b1 = -algebra.modulus[2]
    if is_square_scalar(disc):
        s = sqrt_scalar(disc)
        t = algebra.gen()
        fprime = poly_eval(poly_derivative(list(algebra.modulus)), t)
        # beta2,3 = (b1 - t +- s/f'(t)) / 2 ; the + choice fixes theta
        half = algebra.coerce(Fraction(1, 2))
        t2 = (algebra.coerce(b1) - t + algebra.coerce(s) / fprime) * half
        theta = AlgebraMap(algebra, algebra, [t2])
        t3 = theta(t2)
        return SplittingData(algebra, identity_map(algebra), [t, t2, t3], {"theta": theta})
    # non-Galois: tower T = L[u]/(f(u)/(u - t))
    quot, rem = synthetic_divide([algebra.coerce(c) for c in algebra.modulus], algebra.gen())
    assert rem.is_zero()
    tower = EtaleAlgebra(algebra, quot, _internal=True)
    t = tower.coerce(algebra.gen())
    u = tower.gen()
    b1t = tower.coerce(b1)
    third = b1t - t - u
    tau = AlgebraMap(tower, tower, [u, t])
    mu = AlgebraMap(tower, tower, [third, u])
    theta = AlgebraMap(tower, tower, [u, third])  # mu o tau: cycles t -> u -> third
    emb = AlgebraMap(algebra, tower, [t])
    return SplittingData(tower, emb, [t, u, third], {"tau": tau, "mu": mu, "theta": theta})


def conjugates(algebra, x):
    """All conjugates of x, as elements of a splitting algebra.

    For an element written as a polynomial in the generator, the conjugates
    are that polynomial evaluated at each generator conjugate.
    """
    data = splitting_data(algebra)
    x = algebra.coerce(x)
    out = []
    for root in data.conjugates:
        acc = data.algebra_s.zero()
        power = data.algebra_s.one()
        for c in x.data:
            acc = acc + data.algebra_s.coerce(c) * power
            power = power * root
        out.append(acc)
    # sanity: conjugates are exactly the roots of the characteristic polynomial
    cp = char_poly_of_element(algebra, x)
    for c in out:
        val = poly_eval([data.algebra_s.coerce(v) for v in cp], c)
        assert val.is_zero(), "conjugate fails its characteristic polynomial"
    return out


def first_root_in(ring, coeffs):
    """Some root of the polynomial in the ring, or None (finite rings only)."""
    coeffs = [ring.coerce(c) for c in coeffs]
    for cand in ring.elements():
        if poly_eval(coeffs, cand).is_zero():
            return cand
    return None
