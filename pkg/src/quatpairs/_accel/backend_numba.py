"""Numba JIT implementations of the enumeration kernels.

Results are bit-identical with backend_numpy; the orbit search runs as a
depth-first worklist so a single int32 stack bounds memory even at q = 5.
"""

import numpy as np
from numba import njit

NAME = "numba"


@njit(cache=True)
def _pf2_digits(d, off, q):
    a = d[off + 0]
    de = d[off + 1]
    s = d[off + 2]
    x = d[off + 3]
    y = d[off + 4]
    z = d[off + 5]
    return (a * de - (s * s - x * x - y * y + z * z)) % q


@njit(cache=True)
def _d5_disc_one(d, q):
    p1 = _pf2_digits(d, 0, q)
    p2 = _pf2_digits(d, 6, q)
    tmp = np.empty(6, dtype=np.int64)
    for i in range(6):
        tmp[i] = (d[i] + d[6 + i]) % q
    p12 = _pf2_digits(tmp, 0, q)
    b = (p12 - p1 - p2) % q
    return (b * b - 4 * p1 * p2) % q


@njit(cache=True)
def _d5_table_kernel(q, qr):
    n = q ** 12
    out = np.empty(n, dtype=np.uint8)
    d = np.zeros(12, dtype=np.int64)
    for idx in range(n):
        disc = _d5_disc_one(d, q)
        if disc == 0:
            out[idx] = 0
        elif qr[disc]:
            out[idx] = 1
        else:
            out[idx] = 2
        # odometer increment
        for pos in range(12):
            d[pos] += 1
            if d[pos] < q:
                break
            d[pos] = 0
    return out


@njit(cache=True)
def _d5_counts_kernel(q, qr):
    n = q ** 12
    counts = np.zeros(3, dtype=np.int64)
    d = np.zeros(12, dtype=np.int64)
    for idx in range(n):
        disc = _d5_disc_one(d, q)
        if disc == 0:
            counts[0] += 1
        elif qr[disc]:
            counts[1] += 1
        else:
            counts[2] += 1
        for pos in range(12):
            d[pos] += 1
            if d[pos] < q:
                break
            d[pos] = 0
    return counts


def _qr_table(q):
    t = np.zeros(q, dtype=np.bool_)
    for s in range(q):
        t[s * s % q] = True
    return t


def d5_type_table(q):
    return _d5_table_kernel(q, _qr_table(q))


def d5_counts(q):
    return _d5_counts_kernel(q, _qr_table(q))


@njit(cache=True)
def _orbit_kernel(q, gens, start):
    n = q ** 12
    visited = np.zeros(n, dtype=np.bool_)
    stack = np.empty(n, dtype=np.int32)
    stack[0] = start
    visited[start] = True
    top = 1
    ngen = gens.shape[0]
    d = np.empty(12, dtype=np.int64)
    nd = np.empty(12, dtype=np.int64)
    while top > 0:
        top -= 1
        cur = np.int64(stack[top])
        rem = cur
        for i in range(12):
            d[i] = rem % q
            rem //= q
        for g in range(ngen):
            for i in range(12):
                acc = 0
                for j in range(12):
                    acc += gens[g, i, j] * d[j]
                nd[i] = acc % q
            enc = np.int64(0)
            mult = np.int64(1)
            for i in range(12):
                enc += nd[i] * mult
                mult *= q
            if not visited[enc]:
                visited[enc] = True
                stack[top] = np.int32(enc)
                top += 1
    return visited


def bfs_orbit(q, gens, start_idx):
    return _orbit_kernel(q, np.ascontiguousarray(gens.astype(np.int64)), np.int64(start_idx))


@njit(cache=True)
def _qmul_flat(u, v, out, q):
    s1, x1, y1, z1 = u[0], u[1], u[2], u[3]
    s2, x2, y2, z2 = v[0], v[1], v[2], v[3]
    out[0] = (s1 * s2 + x1 * x2 + y1 * y2 - z1 * z2) % q
    out[1] = (s1 * x2 + x1 * s2 - y1 * z2 + z1 * y2) % q
    out[2] = (s1 * y2 + y1 * s2 + x1 * z2 - z1 * x2) % q
    out[3] = (s1 * z2 + z1 * s2 + x1 * y2 - y1 * x2) % q


@njit(cache=True)
def _pf3_flat(h, q):
    a1, a2, a3 = h[0], h[1], h[2]
    p = h[3:7]
    qq = h[7:11]
    r = h[11:15]
    np_r = (r[0] * r[0] - r[1] * r[1] - r[2] * r[2] + r[3] * r[3]) % q
    np_q = (qq[0] * qq[0] - qq[1] * qq[1] - qq[2] * qq[2] + qq[3] * qq[3]) % q
    np_p = (p[0] * p[0] - p[1] * p[1] - p[2] * p[2] + p[3] * p[3]) % q
    t1 = np.empty(4, dtype=np.int64)
    t2 = np.empty(4, dtype=np.int64)
    qc = np.empty(4, dtype=np.int64)
    qc[0] = qq[0]
    qc[1] = (-qq[1]) % q
    qc[2] = (-qq[2]) % q
    qc[3] = (-qq[3]) % q
    _qmul_flat(p, r, t1, q)
    _qmul_flat(t1, qc, t2, q)
    return (a1 * a2 % q * a3 - a1 * np_r - a2 * np_q - a3 * np_p + 2 * t2[0]) % q


@njit(cache=True)
def _e7_classify_kernel(samples, q, inv2):
    counts = np.zeros(4, dtype=np.int64)
    n = samples.shape[0]
    h = np.empty(15, dtype=np.int64)
    for row in range(n):
        x1 = samples[row, :15].astype(np.int64)
        x2 = samples[row, 15:].astype(np.int64)
        a = _pf3_flat(x1, q)
        dd = _pf3_flat(x2, q)
        for i in range(15):
            h[i] = (x1[i] + x2[i]) % q
        sm = _pf3_flat(h, q)
        for i in range(15):
            h[i] = (x1[i] - x2[i]) % q
        df = _pf3_flat(h, q)
        bc_sum = (sm - a - dd) % q
        bc_dif = (df - a + dd) % q
        b = (bc_sum - bc_dif) * inv2 % q
        c = (bc_sum + bc_dif) * inv2 % q
        disc = (b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * dd
                - 27 * a * a * dd * dd + 18 * a * b * c * dd) % q
        if disc == 0:
            counts[0] += 1
            continue
        nroots = 0
        for z in range(q):
            if (((a * z + b) * z + c) * z + dd) % q == 0:
                nroots += 1
        if a == 0:
            nroots += 1
        if nroots == 3:
            counts[1] += 1
        elif nroots == 1:
            counts[2] += 1
        else:
            counts[3] += 1
    return counts


def e7_classify(samples, q):
    return _e7_classify_kernel(np.ascontiguousarray(samples), q, pow(2, -1, q))


@njit(cache=True)
def _stab_scan_kernel(q, u1, u2, g12s, g2s, inv_table, out):
    n12 = g12s.shape[0]
    n2 = g2s.shape[0]
    count = 0
    aug = np.empty((6, 6), dtype=np.int64)
    c1 = np.empty((3, 3), dtype=np.int64)
    c2 = np.empty((3, 3), dtype=np.int64)
    g11 = np.empty((3, 3), dtype=np.int64)
    for i2 in range(n2):
        a, b = g2s[i2, 0, 0], g2s[i2, 0, 1]
        c, d = g2s[i2, 1, 0], g2s[i2, 1, 1]
        for i in range(3):
            for j in range(3):
                c1[i, j] = (a * u1[i, j] + b * u2[i, j]) % q
                c2[i, j] = (c * u1[i, j] + d * u2[i, j]) % q
        for i12 in range(n12):
            # build augmented system: unknown row vector r of g11 satisfies
            # r . (ci @ g12^T) column j = ui[r_idx, j]
            for jj in range(3):
                for kk in range(3):
                    acc1 = 0
                    acc2 = 0
                    for ll in range(3):
                        acc1 += c1[kk, ll] * g12s[i12, jj, ll]
                        acc2 += c2[kk, ll] * g12s[i12, jj, ll]
                    aug[jj, kk] = acc1 % q
                    aug[3 + jj, kk] = acc2 % q
                for rr in range(3):
                    aug[jj, 3 + rr] = u1[rr, jj]
                    aug[3 + jj, 3 + rr] = u2[rr, jj]
            ok = True
            for col in range(3):
                piv = -1
                for r in range(col, 6):
                    if aug[r, col] != 0:
                        piv = r
                        break
                if piv < 0:
                    ok = False
                    break
                if piv != col:
                    for cc in range(6):
                        tmp = aug[col, cc]
                        aug[col, cc] = aug[piv, cc]
                        aug[piv, cc] = tmp
                inv = inv_table[aug[col, col]]
                for cc in range(6):
                    aug[col, cc] = aug[col, cc] * inv % q
                for r in range(6):
                    if r != col and aug[r, col] != 0:
                        f = aug[r, col]
                        for cc in range(6):
                            aug[r, cc] = (aug[r, cc] - f * aug[col, cc]) % q
            if not ok:
                continue
            consistent = True
            for r in range(3, 6):
                for cc in range(3, 6):
                    if aug[r, cc] != 0:
                        consistent = False
            if not consistent:
                continue
            for rr in range(3):
                for jj in range(3):
                    g11[rr, jj] = aug[jj, 3 + rr]
            det = (
                g11[0, 0] * (g11[1, 1] * g11[2, 2] - g11[1, 2] * g11[2, 1])
                - g11[0, 1] * (g11[1, 0] * g11[2, 2] - g11[1, 2] * g11[2, 0])
                + g11[0, 2] * (g11[1, 0] * g11[2, 1] - g11[1, 1] * g11[2, 0])
            ) % q
            if det == 0:
                continue
            good = True
            for rr in range(3):
                for jj in range(3):
                    acc1 = 0
                    acc2 = 0
                    for kk in range(3):
                        for ll in range(3):
                            acc1 += g11[rr, kk] * c1[kk, ll] * g12s[i12, jj, ll]
                            acc2 += g11[rr, kk] * c2[kk, ll] * g12s[i12, jj, ll]
                    if acc1 % q != u1[rr, jj] or acc2 % q != u2[rr, jj]:
                        good = False
            if not good:
                continue
            if count < out.shape[0]:
                for rr in range(3):
                    for jj in range(3):
                        out[count, rr * 3 + jj] = g11[rr, jj]
                out[count, 9] = i12
                out[count, 10] = i2
            count += 1
    return count


def stab_scan_case_a(q, u1, u2, g12s, g2s):
    inv_table = np.array([0] + [pow(x, -1, q) for x in range(1, q)], dtype=np.int64)
    out = np.empty((4096, 11), dtype=np.int64)
    count = _stab_scan_kernel(
        q,
        np.ascontiguousarray(u1.astype(np.int64) % q),
        np.ascontiguousarray(u2.astype(np.int64) % q),
        np.ascontiguousarray(g12s.astype(np.int64)),
        np.ascontiguousarray(g2s.astype(np.int64)),
        inv_table,
        out,
    )
    assert count <= out.shape[0], "stabilizer buffer overflow"
    return out[:count].copy()


def warmup():
    """Trigger a tiny compile so backend selection fails fast without numba."""
    _pf3_flat(np.zeros(15, dtype=np.int64), 3)
