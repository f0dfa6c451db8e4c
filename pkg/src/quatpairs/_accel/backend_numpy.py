"""Pure-numpy implementations of the enumeration kernels.

Same signatures and results as backend_numba; chunked so peak memory stays
bounded for the q=5 state space.
"""

import numpy as np

NAME = "numpy"

_CHUNK = 1 << 20


def _digits(idx, q, ndig):
    out = np.empty((idx.shape[0], ndig), dtype=np.int64)
    rem = idx.copy()
    for i in range(ndig):
        out[:, i] = rem % q
        rem //= q
    return out


def _encode(digits, q):
    ndig = digits.shape[1]
    acc = np.zeros(digits.shape[0], dtype=np.int64)
    mult = 1
    for i in range(ndig):
        acc += digits[:, i] * mult
        mult *= q
    return acc


def _qr_table(q):
    t = np.zeros(q, dtype=bool)
    for s in range(q):
        t[s * s % q] = True
    return t


def _d5_disc(d, q):
    # layout per component: alpha, delta, s, x, y, z (split B, a=b=1)
    def pf(c):
        a, de, s, x, y, z = (c[:, i] for i in range(6))
        return (a * de - (s * s - x * x - y * y + z * z)) % q

    p1 = pf(d[:, 0:6])
    p2 = pf(d[:, 6:12])
    p12 = pf((d[:, 0:6] + d[:, 6:12]) % q)
    b = (p12 - p1 - p2) % q
    return (b * b - 4 * p1 * p2) % q


def d5_type_table(q):
    """uint8 table over all q^12 states: 0 unstable, 1 split type, 2 nonsplit."""
    n = q ** 12
    qr = _qr_table(q)
    out = np.empty(n, dtype=np.uint8)
    for lo in range(0, n, _CHUNK):
        hi = min(lo + _CHUNK, n)
        idx = np.arange(lo, hi, dtype=np.int64)
        disc = _d5_disc(_digits(idx, q, 12), q)
        t = np.where(disc == 0, 0, np.where(qr[disc], 1, 2)).astype(np.uint8)
        out[lo:hi] = t
    return out


def d5_counts(q):
    """(unstable, split, nonsplit) counts over all q^12 states."""
    n = q ** 12
    qr = _qr_table(q)
    counts = np.zeros(3, dtype=np.int64)
    for lo in range(0, n, _CHUNK):
        hi = min(lo + _CHUNK, n)
        idx = np.arange(lo, hi, dtype=np.int64)
        disc = _d5_disc(_digits(idx, q, 12), q)
        z = disc == 0
        counts[0] += int(z.sum())
        counts[1] += int((qr[disc] & ~z).sum())
        counts[2] += int((~qr[disc] & ~z).sum())
    return counts


def bfs_orbit(q, gens, start_idx):
    """Orbit of start under the generator matrices (G,12,12); bool visited array."""
    n = q ** 12
    powers = q ** np.arange(12, dtype=np.int64)
    visited = np.zeros(n, dtype=bool)
    visited[start_idx] = True
    frontier = np.array([start_idx], dtype=np.int64)
    gens_t = [g.T % q for g in gens]
    while frontier.size:
        next_parts = []
        for lo in range(0, frontier.size, _CHUNK):
            d = _digits(frontier[lo:lo + _CHUNK], q, 12)
            for gt in gens_t:
                img = (d @ gt) % q
                cand = img @ powers
                cand = np.unique(cand)
                fresh = cand[~visited[cand]]
                visited[fresh] = True
                if fresh.size:
                    next_parts.append(fresh)
        frontier = np.concatenate(next_parts) if next_parts else np.empty(0, dtype=np.int64)
    return visited


def e7_classify(samples, q):
    """Counts (unstable, t111, t12, t3) for an (N,30) array of pair coordinates.

    Layout per component: a1, a2, a3, p(4), q(4), r(4) for the diagonal and
    the (0,1), (0,2), (1,2) entries; split B with a = b = 1.
    """
    s = samples.astype(np.int64)
    x1, x2 = s[:, :15], s[:, 15:]
    inv2 = pow(2, -1, q)

    a = _pf3(x1, q)
    d = _pf3(x2, q)
    sm = _pf3((x1 + x2) % q, q)
    df = _pf3((x1 - x2) % q, q)
    bc_sum = (sm - a - d) % q
    bc_dif = (df - a + d) % q  # -b + c
    b = ((bc_sum - bc_dif) * inv2) % q
    c = ((bc_sum + bc_dif) * inv2) % q

    disc = (b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d
            - 27 * a * a * d * d + 18 * a * b * c * d) % q

    # count rational projective roots of a z^3 + b z^2 + c z + d (z = v1/v2)
    nroots = np.zeros(s.shape[0], dtype=np.int64)
    for z in range(q):
        val = (((a * z + b) * z + c) * z + d) % q
        nroots += val == 0
    nroots += a == 0  # the point at infinity (1:0)

    unstable = disc == 0
    counts = np.zeros(4, dtype=np.int64)
    counts[0] = int(unstable.sum())
    counts[1] = int((~unstable & (nroots == 3)).sum())
    counts[2] = int((~unstable & (nroots == 1)).sum())
    counts[3] = int((~unstable & (nroots == 0)).sum())
    return counts


def _qmul(u, v, q):
    # quaternion product for a = b = 1 (split), coordinate arrays (..., 4)
    s1, x1, y1, z1 = u[..., 0], u[..., 1], u[..., 2], u[..., 3]
    s2, x2, y2, z2 = v[..., 0], v[..., 1], v[..., 2], v[..., 3]
    return np.stack([
        (s1 * s2 + x1 * x2 + y1 * y2 - z1 * z2) % q,
        (s1 * x2 + x1 * s2 - y1 * z2 + z1 * y2) % q,
        (s1 * y2 + y1 * s2 + x1 * z2 - z1 * x2) % q,
        (s1 * z2 + z1 * s2 + x1 * y2 - y1 * x2) % q,
    ], axis=-1)


def _pf3(h, q):
    # validated closed form: a1 a2 a3 - a1 N(r) - a2 N(q) - a3 N(p) + T(p r q*)
    a1, a2, a3 = h[:, 0], h[:, 1], h[:, 2]
    p, qq, r = h[:, 3:7], h[:, 7:11], h[:, 11:15]

    def nrm(u):
        return (u[:, 0] ** 2 - u[:, 1] ** 2 - u[:, 2] ** 2 + u[:, 3] ** 2) % q

    qconj = np.stack([qq[:, 0], -qq[:, 1] % q, -qq[:, 2] % q, -qq[:, 3] % q], axis=-1)
    prod = _qmul(_qmul(p, r, q), qconj, q)
    return (a1 * a2 % q * a3 - a1 * nrm(r) - a2 * nrm(qq) - a3 * nrm(p) + 2 * prod[:, 0]) % q


def stab_scan_case_a(q, u1, u2, g12s, g2s):
    """All (g11, g12, g2) in GL_3 x GL_3 x GL_2 over F_q stabilizing the
    case-(a) pair (u1, u2); returns int64 array (M, 11): flat g11, i12, i2.

    For each (g12, g2) the condition is linear in g11 with a rank-3 system
    (semistability of u forces full rank), so the solution is unique or
    absent.
    """
    inv_table = np.array([0] + [pow(x, -1, q) for x in range(1, q)], dtype=np.int64)
    results = []
    n12 = g12s.shape[0]
    u1 = u1.astype(np.int64) % q
    u2 = u2.astype(np.int64) % q
    for i2 in range(g2s.shape[0]):
        a, b = g2s[i2, 0, 0], g2s[i2, 0, 1]
        c, d = g2s[i2, 1, 0], g2s[i2, 1, 1]
        c1 = (a * u1 + b * u2) % q
        c2 = (c * u1 + d * u2) % q
        for lo in range(0, n12, 4096):
            g12 = g12s[lo:lo + 4096].astype(np.int64)
            B = g12.shape[0]
            n1 = np.einsum("ik,bjk->bij", c1, g12) % q   # c1 @ g12^T
            n2 = np.einsum("ik,bjk->bij", c2, g12) % q
            # augmented systems: rows = equations (i,j), cols = unknowns + 3 rhs
            lhs = np.concatenate([n1.transpose(0, 2, 1), n2.transpose(0, 2, 1)], axis=1)
            rhs = np.concatenate([
                np.broadcast_to(u1.T[None, :, :], (B, 3, 3)),
                np.broadcast_to(u2.T[None, :, :], (B, 3, 3)),
            ], axis=1)
            aug = np.concatenate([lhs, rhs], axis=2).copy()  # (B, 6, 6)
            ok = np.ones(B, dtype=bool)
            ar = np.arange(B)
            for col in range(3):
                sub = aug[:, col:, col] != 0
                has = sub.any(axis=1)
                ok &= has
                piv = np.argmax(sub, axis=1) + col
                piv[~ok] = col
                rc = aug[ar, col].copy()
                aug[ar, col] = aug[ar, piv]
                aug[ar, piv] = rc
                inv = inv_table[aug[:, col, col]]
                aug[:, col, :] = aug[:, col, :] * inv[:, None] % q
                factors = aug[:, :, col].copy()
                factors[:, col] = 0
                aug = (aug - factors[:, :, None] * aug[:, col:col + 1, :]) % q
            ok &= (aug[:, 3:, 3:] == 0).all(axis=(1, 2))
            if not ok.any():
                continue
            g11 = aug[:, :3, 3:].transpose(0, 2, 1) % q  # row r, col j = aug[j, 3+r]
            dets = (
                g11[:, 0, 0] * (g11[:, 1, 1] * g11[:, 2, 2] - g11[:, 1, 2] * g11[:, 2, 1])
                - g11[:, 0, 1] * (g11[:, 1, 0] * g11[:, 2, 2] - g11[:, 1, 2] * g11[:, 2, 0])
                + g11[:, 0, 2] * (g11[:, 1, 0] * g11[:, 2, 1] - g11[:, 1, 1] * g11[:, 2, 0])
            ) % q
            ok &= dets != 0
            # exact recheck of the action
            y1 = np.einsum("brk,kl,bjl->brj", g11, c1, g12) % q
            y2 = np.einsum("brk,kl,bjl->brj", g11, c2, g12) % q
            ok &= (y1 == u1[None, :, :]).all(axis=(1, 2)) & (y2 == u2[None, :, :]).all(axis=(1, 2))
            for bidx in np.nonzero(ok)[0]:
                results.append(np.concatenate([
                    g11[bidx].reshape(9), [lo + bidx, i2]]).astype(np.int64))
    if not results:
        return np.empty((0, 11), dtype=np.int64)
    return np.stack(results)
