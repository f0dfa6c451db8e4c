"""Exact linear algebra over the rings of exact_algebra.

Matrices are lists of lists of Elements.  Determinants use Gaussian
elimination when unit pivots are available (always, over fields) and fall
back to a division-free subset expansion over etale algebras with zero
divisors.  Prime-base solvers work on raw int / Fraction scalars.
"""

from fractions import Fraction

from .errors import NotAUnit
from .exact_algebra import PrimeField, Rationals


def identity_matrix(ring, n):
    return [[ring.one() if i == j else ring.zero() for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    assert len(a[0]) == m
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = a[i][0] * b[0][j]
            for k in range(1, m):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def mat_vec(a, v):
    return [sum_elements([a[i][k] * v[k] for k in range(len(v))]) for i in range(len(a))]


def sum_elements(elts):
    acc = elts[0]
    for e in elts[1:]:
        acc = acc + e
    return acc


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a):
    return [[c * x for x in row] for row in a]


def mat_transpose(a):
    return [list(col) for col in zip(*a)]


def mat_eq(a, b):
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def mat_apply(fn, a):
    return [[fn(x) for x in row] for row in a]


def det(ring, m):
    """Determinant over any supported ring.

    Gaussian elimination with unit pivots; if some column offers only
    non-invertible nonzero pivots (possible over split etale algebras), the
    division-free subset expansion takes over.
    """
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if n == 3:
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )
    a = [row[:] for row in m]
    sign = 1
    acc = ring.one()
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if not a[r][col].is_zero() and a[r][col].is_unit():
                pivot = r
                break
        if pivot is None:
            if all(a[r][col].is_zero() for r in range(col, n)):
                return ring.zero()
            return _det_divfree(ring, m)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            sign = -sign
        p = a[col][col]
        acc = acc * p
        pinv = p.inv()
        for r in range(col + 1, n):
            f = a[r][col] * pinv
            if f.is_zero():
                continue
            for c in range(col, n):
                a[r][c] = a[r][c] - f * a[col][c]
    return acc if sign == 1 else -acc


def _det_divfree(ring, m):
    # dynamic program over column subsets: minors using the first r rows,
    # expanding each step along its last row (sign (-1)^(r+idx))
    import itertools

    n = len(m)
    minors = {frozenset(): ring.one()}
    for r in range(n):
        new = {}
        for cols in itertools.combinations(range(n), r + 1):
            acc = ring.zero()
            cols_set = frozenset(cols)
            for idx, c in enumerate(cols):
                term = m[r][c] * minors[cols_set - {c}]
                acc = acc + term if (r + idx) % 2 == 0 else acc - term
            new[cols_set] = acc
        minors = new
    return minors[frozenset(range(n))]


def solve_field(ring, m, rhs_cols):
    """Solve M X = B over a field; rhs_cols is a list of column vectors.

    Returns the list of solution columns, or None if singular/inconsistent.
    """
    n = len(m)
    k = len(rhs_cols)
    a = [m[i][:] + [rhs_cols[j][i] for j in range(k)] for i in range(n)]
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if not a[r][col].is_zero():
                pivot = r
                break
        if pivot is None:
            return None
        a[col], a[pivot] = a[pivot], a[col]
        pinv = a[col][col].inv()
        a[col] = [x * pinv for x in a[col]]
        for r in range(n):
            if r != col and not a[r][col].is_zero():
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [[a[i][n + j] for i in range(n)] for j in range(k)]


def mat_inv_field(ring, m):
    n = len(m)
    cols = solve_field(ring, m, [[ring.one() if i == j else ring.zero() for i in range(n)] for j in range(n)])
    if cols is None:
        raise NotAUnit("matrix is not invertible")
    return mat_transpose(cols)


def nullspace_field(ring, m):
    """Basis of the right nullspace of M over a field."""
    rows = len(m)
    cols = len(m[0])
    a = [row[:] for row in m]
    pivots = []
    r = 0
    for c in range(cols):
        pr = None
        for i in range(r, rows):
            if not a[i][c].is_zero():
                pr = i
                break
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        pinv = a[r][c].inv()
        a[r] = [x * pinv for x in a[r]]
        for i in range(rows):
            if i != r and not a[i][c].is_zero():
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [ring.zero()] * cols
        v[f] = ring.one()
        for row_idx, pc in enumerate(pivots):
            v[pc] = -a[row_idx][f]
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# prime-base solvers on raw scalars (int mod p, Fraction)


def solve_prime_vec(kring, mat, rhs):
    """Solve mat x = rhs over the prime base; raw scalars; None if unsolvable."""
    n = len(mat)
    if isinstance(kring, PrimeField):
        p = kring.p
        a = [[mat[i][j] % p for j in range(n)] + [rhs[i] % p] for i in range(n)]
        return _gauss_mod(a, n, p)
    assert isinstance(kring, Rationals)
    a = [[Fraction(mat[i][j]) for j in range(n)] + [Fraction(rhs[i])] for i in range(n)]
    return _gauss_frac(a, n)


def _gauss_mod(a, ncols, p):
    rows = len(a)
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, rows) if a[i][c] % p), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [x * inv % p for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] % p:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    for i in range(r, rows):
        if a[i][ncols] % p:
            return None
    sol = [0] * ncols
    for row_idx, c in enumerate(pivots):
        sol[c] = a[row_idx][ncols]
    return sol


def _gauss_frac(a, ncols):
    rows = len(a)
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    for i in range(r, rows):
        if a[i][ncols] != 0:
            return None
    sol = [0] * ncols
    for row_idx, c in enumerate(pivots):
        sol[c] = a[row_idx][ncols]
    return sol
