"""Finite-field censuses: full orbit enumeration for the binary (n=2) pairs
and sampled splitting-type statistics for the ternary (n=3) pairs.

Counting runs over the split algebra B = (1,1|F_q) (every quaternion algebra
over a finite field splits).  States are encoded as base-q integers of the
12 coordinates (alpha, delta, s, x, y, z) per component; the group action is
linear, so each generator becomes a 12x12 matrix mod q and the orbit search
is pure integer linear algebra in the selected backend.

The orbit/stabilizer accounting cross-checks |orbit| * 2|G_x^o(F_q)| against
|G(F_q)| exactly; the factor 2 is the conjectured size of the component
group at F_q-points and the census confirms or refutes it rather than
assuming it.
"""

import numpy as np

from ._accel import get_backend
from .errors import ResourceLimit
from .exact_algebra import PrimeField, is_square_scalar
from .hermitian_pairs import GroupElement, HermitianPair, QuatMatrix, act, quat_identity
from .quaternion import QuaternionAlgebra, reduced_norm
from .representatives import d5_w, d5_x_alpha


def gl_order(m, q):
    order = 1
    for i in range(m):
        order *= q ** m - q ** i
    return order


# ---------------------------------------------------------------------------
# coordinates


def d5_pair_to_vec(pair):
    out = []
    for comp in (pair.x1, pair.x2):
        out.append(comp.rows[0][0].coords[0].data)
        out.append(comp.rows[1][1].coords[0].data)
        out.extend(c.data for c in comp.rows[0][1].coords)
    return out


def d5_vec_to_pair(alg, field, vec):
    comps = []
    for off in (0, 6):
        alpha = alg.quaternion(int(vec[off]))
        delta = alg.quaternion(int(vec[off + 1]))
        q = alg.quaternion(*[int(v) for v in vec[off + 2:off + 6]])
        qc = alg.quaternion(int(vec[off + 2]), -int(vec[off + 3]), -int(vec[off + 4]), -int(vec[off + 5]))
        comps.append(QuatMatrix(alg, field, [[alpha, q], [qc, delta]]))
    return HermitianPair(*comps)


def encode_vec(vec, q):
    acc = 0
    for i, v in enumerate(vec):
        acc += int(v) * q ** i
    return acc


def d5_generators(alg, field):
    """Generators of GL_2(B) x GL_2(F_q): block transvections over the
    quaternion basis, one diagonal unit of non-square norm per factor, and
    the GL_2 transvections.  Completeness is certified downstream by the
    orbit/stabilizer product check."""
    q = field.p
    one = alg.one()
    zero = alg.zero()
    gens = []
    eye2 = [[field.one(), field.zero()], [field.zero(), field.one()]]
    for beta in alg.basis():
        gens.append(GroupElement(QuatMatrix(alg, field, [[one, beta], [zero, one]]), eye2))
        gens.append(GroupElement(QuatMatrix(alg, field, [[one, zero], [beta, one]]), eye2))
    prim = _primitive_root(q)
    bnorm = _quaternion_of_norm(alg, field, prim)
    gens.append(GroupElement(QuatMatrix(alg, field, [[bnorm, zero], [zero, one]]), eye2))
    ident = quat_identity(alg, field, 2)
    gens.append(GroupElement(ident, [[field.one(), field.one()], [field.zero(), field.one()]]))
    gens.append(GroupElement(ident, [[field.one(), field.zero()], [field.one(), field.one()]]))
    gens.append(GroupElement(ident, [[field.coerce(prim), field.zero()], [field.zero(), field.one()]]))
    return gens


def _primitive_root(q):
    for g in range(2, q):
        seen = set()
        v = 1
        for _ in range(q - 1):
            v = v * g % q
            seen.add(v)
        if len(seen) == q - 1:
            return g
    raise ValueError(f"no primitive root mod {q}")


def _quaternion_of_norm(alg, field, target):
    target = field.coerce(target)
    for s in range(field.p):
        for x in range(field.p):
            for y in range(field.p):
                for z in range(field.p):
                    cand = alg.quaternion(s, x, y, z)
                    if reduced_norm(cand) == target:
                        return cand
    raise ValueError("no quaternion of the requested norm")


def generator_matrices(alg, field, gens, to_vec, from_vec, dim):
    """12x12 (or 30x30) integer matrices of the linear maps x -> act(g, x)."""
    mats = []
    for g in gens:
        cols = []
        for i in range(dim):
            basis_vec = [0] * dim
            basis_vec[i] = 1
            pair = from_vec(alg, field, basis_vec)
            cols.append(to_vec(act(g, pair)))
        mat = np.array(cols, dtype=np.int64).T % field.p
        mats.append(mat)
    return np.stack(mats)


def first_irreducible_quadratic_constant(field):
    """Smallest c with t^2 + c irreducible over F_q (i.e. -c a non-square)."""
    for c in range(1, field.p):
        if not is_square_scalar(field.coerce(-c)):
            return c
    raise ValueError("no irreducible t^2 + c (q must be odd)")


DEFAULT_LIMITS = {"max_states": 5 ** 12}


def enumerate_census(q, n=2, backend=None, limits=None):
    """Full census of the binary pairs over F_q: splitting-type counts by
    exhaustive enumeration, orbit reach by closure from the two
    representatives, and exact orbit/stabilizer accounting.

    Resource guard: q in {3, 5} and n = 2 only.
    """
    limits = {**DEFAULT_LIMITS, **(limits or {})}
    if n != 2:
        raise ResourceLimit("full census supports n=2 only")
    if q not in (3, 5):
        raise ResourceLimit("full census supports q in {3, 5} only")
    if q ** 12 > limits["max_states"]:
        raise ResourceLimit(f"state space q^12 = {q ** 12} exceeds max_states")
    bk = get_backend(backend)
    field = PrimeField(q)
    alg = QuaternionAlgebra(field, 1, 1)

    total = q ** 12
    table = None
    if q == 3:
        table = bk.d5_type_table(q)
        counts = np.array([
            int((table == 0).sum()), int((table == 1).sum()), int((table == 2).sum()),
        ], dtype=np.int64)
    else:
        counts = bk.d5_counts(q)
    n_unstable, n_split, n_inert = (int(c) for c in counts)
    semistable = n_split + n_inert

    gens = d5_generators(alg, field)
    gmats = generator_matrices(alg, field, gens, d5_pair_to_vec, d5_vec_to_pair, 12)

    c = first_irreducible_quadratic_constant(field)
    w = d5_w(alg)
    x_alpha = d5_x_alpha(alg, 0, c)

    group_order = gl_order(4, q) * gl_order(2, q)
    orbits = []
    visited_masks = []
    for name, pair, type_code, type_label, stab in (
        ("w", w, 1, "(1,1)", 2 * gl_order(2, q) ** 2),
        ("x_alpha", x_alpha, 2, "(2)", 2 * (q ** 4 - 1) * (q ** 4 - q ** 2)),
    ):
        start = encode_vec(d5_pair_to_vec(pair), q)
        visited = bk.bfs_orbit(q, gmats, start)
        size = int(np.count_nonzero(visited))
        entry = {
            "representative": name,
            "splitting_type": type_label,
            "orbit_size": size,
            "predicted_stabilizer_order": stab,
            "stabilizer_product_ok": size * stab == group_order,
        }
        if table is not None:
            entry["matches_type_class"] = bool((table[visited] == type_code).all()) and (
                size == int((table == type_code).sum()))
        orbits.append(entry)
        visited_masks.append(visited)

    report = {
        "q": q,
        "n": n,
        "algebra": {"a": 1, "b": 1},
        "total_points": total,
        "unstable_points": n_unstable,
        "semistable_points": semistable,
        "counts_by_type": {"(1,1)": n_split, "(2)": n_inert},
        "group_order": group_order,
        "orbit_count": len(orbits),
        "orbits": orbits,
        "orbit_sizes_sum_ok": sum(o["orbit_size"] for o in orbits) == semistable,
        "orbit_sizes_divide_group": all(group_order % o["orbit_size"] == 0 for o in orbits),
    }
    if table is not None:
        both = visited_masks[0] & visited_masks[1]
        report["orbits_disjoint"] = not bool(both.any())
    return report


def sample_census_e7(q, samples, seed=0, backend=None):
    """Splitting-type statistics of `samples` random ternary pairs over F_q.

    The sample stream depends only on (q, samples, seed); classification is
    backend-independent, so reports are reproducible byte for byte.
    """
    if q > 9:
        raise ResourceLimit("sampling census supports q <= 9")
    bk = get_backend(backend)
    rng = np.random.default_rng(seed)
    counts = np.zeros(4, dtype=np.int64)
    remaining = samples
    while remaining > 0:
        chunk = min(remaining, 1 << 18)
        block = rng.integers(0, q, size=(chunk, 30), dtype=np.int64)
        counts += bk.e7_classify(block, q)
        remaining -= chunk
    unstable, t111, t12, t3 = (int(x) for x in counts)
    return {
        "q": q,
        "n": 3,
        "samples": samples,
        "seed": seed,
        "counts_by_type": {"(1,1,1)": t111, "(1,2)": t12, "(3)": t3},
        "unstable": unstable,
        "all_types_observed": t111 > 0 and t12 > 0 and t3 > 0,
    }


def e7_pair_to_vec(pair):
    out = []
    for comp in (pair.x1, pair.x2):
        for i in range(3):
            out.append(comp.rows[i][i].coords[0].data)
        for (i, j) in ((0, 1), (0, 2), (1, 2)):
            out.extend(c.data for c in comp.rows[i][j].coords)
    return out


def classify_vec_e7(vec, q, backend=None):
    bk = get_backend(backend)
    arr = np.array([vec], dtype=np.int64)
    counts = bk.e7_classify(arr, q)
    for label, idx in (("unstable", 0), ("(1,1,1)", 1), ("(1,2)", 2), ("(3)", 3)):
        if counts[idx] == 1:
            return label
    raise AssertionError("unreachable")
