"""Hot numeric kernels, each with a numba path and a pure-numpy path.

Finite-field values inside the determinant kernels are discrete logs with
``-1`` standing for zero; addition goes through a Zech table
(``zech[n] = log(1 + g**n)``).
"""

from __future__ import annotations

import numpy as np

from weylbrauer._accel import njit, use_numba

ZERO = -1


# --------------------------------------------------------------------------
# determinants of polynomial matrices evaluated on a grid of GF(q) points
# --------------------------------------------------------------------------


@njit
def _zadd(a, b, zech, qm1):
    if a < 0:
        return b
    if b < 0:
        return a
    n = b - a
    if n < 0:
        n += qm1
    z = zech[n]
    if z < 0:
        return -1
    s = a + z
    if s >= qm1:
        s -= qm1
    return s


@njit
def _det_grid_numba(entry_ptr, coef_log, exps, point_logs, n, zech, qm1, neg1):
    npts = point_logs.shape[0]
    m = point_logs.shape[1]
    out = np.empty(npts, dtype=np.int64)
    mat = np.empty((n, n), dtype=np.int64)
    for b in range(npts):
        for ij in range(n * n):
            v = -1
            for t in range(entry_ptr[ij], entry_ptr[ij + 1]):
                lg = coef_log[t]
                for k in range(m):
                    lg += exps[t, k] * point_logs[b, k]
                v = _zadd(v, lg % qm1, zech, qm1)
            mat[ij // n, ij % n] = v
        det = 0
        dead = False
        for c in range(n):
            piv = -1
            for r in range(c, n):
                if mat[r, c] >= 0:
                    piv = r
                    break
            if piv < 0:
                dead = True
                break
            if piv != c:
                for j in range(c, n):
                    tmp = mat[c, j]
                    mat[c, j] = mat[piv, j]
                    mat[piv, j] = tmp
                det += neg1
            pl = mat[c, c]
            det += pl
            for r in range(c + 1, n):
                a = mat[r, c]
                if a < 0:
                    continue
                negf = (a - pl + neg1) % qm1
                if negf < 0:
                    negf += qm1
                for j in range(c + 1, n):
                    x = mat[c, j]
                    if x < 0:
                        continue
                    mat[r, j] = _zadd(mat[r, j], (negf + x) % qm1, zech, qm1)
        out[b] = -1 if dead else det % qm1
    return out


def _zadd_np(a, b, zech, qm1):
    both = (a >= 0) & (b >= 0)
    n = np.where(both, (b - a) % qm1, 0)
    z = zech[n]
    s = np.where(z < 0, -1, (a + z) % qm1)
    return np.where(both, s, np.where(a < 0, b, a))


def _det_grid_numpy(entry_ptr, coef_log, exps, point_logs, n, zech, qm1, neg1, chunk=None):
    npts = point_logs.shape[0]
    if chunk is None:
        chunk = max(1, min(npts, 2_000_000 // max(1, n * n)))
    out = np.empty(npts, dtype=np.int64)
    for start in range(0, npts, chunk):
        pts = point_logs[start : start + chunk]
        B = pts.shape[0]
        mats = np.full((B, n * n), -1, dtype=np.int64)
        # monomial logs for every term at every point: (B, T)
        if exps.shape[0]:
            mono = (pts @ exps.T + coef_log[None, :]) % qm1
        for ij in range(n * n):
            acc = np.full(B, -1, dtype=np.int64)
            for t in range(entry_ptr[ij], entry_ptr[ij + 1]):
                acc = _zadd_np(acc, mono[:, t], zech, qm1)
            mats[:, ij] = acc
        mats = mats.reshape(B, n, n)
        det = np.zeros(B, dtype=np.int64)
        dead = np.zeros(B, dtype=bool)
        idx = np.arange(B)
        for c in range(n):
            nz = mats[:, c:, c] >= 0
            has = nz.any(axis=1)
            dead |= ~has
            piv = np.argmax(nz, axis=1) + c
            swap = (piv != c) & has
            if swap.any():
                rows_c = mats[idx, c].copy()
                rows_p = mats[idx, piv].copy()
                mats[idx[swap], c] = rows_p[swap]
                mats[idx[swap], piv[swap]] = rows_c[swap]
                det = det + np.where(swap, neg1, 0)
            pl = np.where(has, mats[:, c, c], 0)
            det = det + pl
            if c + 1 == n:
                break
            below = mats[:, c + 1 :, c]
            negf = np.where(below >= 0, (below - pl[:, None] + neg1) % qm1, -1)
            rowc = mats[:, c, c + 1 :]
            prod = np.where(
                (negf[:, :, None] >= 0) & (rowc[:, None, :] >= 0),
                (negf[:, :, None] + rowc[:, None, :]) % qm1,
                -1,
            )
            mats[:, c + 1 :, c + 1 :] = _zadd_np(mats[:, c + 1 :, c + 1 :], prod, zech, qm1)
        out[start : start + B] = np.where(dead, -1, det % qm1)
    return out


def det_grid(entry_ptr, coef_log, exps, point_logs, n, zech, qm1, neg1, backend=None):
    """Log-determinants of a polynomial matrix at each grid point.

    ``entry_ptr`` (length n*n+1, row-major) slices ``coef_log`` / ``exps``
    into the terms of each entry; ``point_logs[b, v]`` is the discrete log
    of coordinate v of grid point b (grid points avoid zero coordinates).
    """
    args = (
        np.ascontiguousarray(entry_ptr, dtype=np.int64),
        np.ascontiguousarray(coef_log, dtype=np.int64),
        np.ascontiguousarray(exps, dtype=np.int64).reshape(len(coef_log), point_logs.shape[1]),
        np.ascontiguousarray(point_logs, dtype=np.int64),
        int(n),
        np.ascontiguousarray(zech, dtype=np.int64),
        int(qm1),
        int(neg1),
    )
    backend = backend or ("numba" if use_numba() else "numpy")
    if backend == "numba":
        return _det_grid_numba(*args)
    return _det_grid_numpy(*args)


# --------------------------------------------------------------------------
# associativity sweep over sparse structure constants in F_p[z]
# --------------------------------------------------------------------------


@njit
def _assoc_numba(rows, r, p, ptr, out_idx, codes, coef, zout, limit):
    scratch = np.zeros(r * zout, dtype=np.int64)
    touched = np.empty(r * zout, dtype=np.int64)
    bad = np.zeros((limit, 3), dtype=np.int64)
    nbad = 0
    for ii in range(rows.shape[0]):
        i = rows[ii]
        for j in range(r):
            for k in range(r):
                nt = 0
                # (b_i b_j) b_k
                ij = i * r + j
                for t in range(ptr[ij], ptr[ij + 1]):
                    l = out_idx[t]
                    lk = l * r + k
                    for s in range(ptr[lk], ptr[lk + 1]):
                        key = out_idx[s] * zout + codes[t] + codes[s]
                        if scratch[key] == 0:
                            touched[nt] = key
                            nt += 1
                        scratch[key] = (scratch[key] + coef[t] * coef[s]) % p
                        if scratch[key] == 0:
                            scratch[key] = p  # keep 'touched' bookkeeping
                # b_i (b_j b_k)
                jk = j * r + k
                for t in range(ptr[jk], ptr[jk + 1]):
                    l = out_idx[t]
                    il = i * r + l
                    for s in range(ptr[il], ptr[il + 1]):
                        key = out_idx[s] * zout + codes[t] + codes[s]
                        if scratch[key] == 0:
                            touched[nt] = key
                            nt += 1
                        scratch[key] = (scratch[key] - coef[t] * coef[s]) % p
                        if scratch[key] == 0:
                            scratch[key] = p
                ok = True
                for u in range(nt):
                    if scratch[touched[u]] % p != 0:
                        ok = False
                    scratch[touched[u]] = 0
                if not ok:
                    if nbad < limit:
                        bad[nbad, 0] = i
                        bad[nbad, 1] = j
                        bad[nbad, 2] = k
                    nbad += 1
    return nbad, bad


def _assoc_numpy(rows, r, p, ptr, out_idx, codes, coef, zout, limit):
    counts = np.diff(ptr)
    term_pair = np.repeat(np.arange(r * r, dtype=np.int64), counts)
    nbad = 0
    bad = np.zeros((limit, 3), dtype=np.int64)

    def expand(first_terms, partner_pairs):
        # for each first term t (paired with partner pair index), list all terms s of partner pair
        cnt = counts[partner_pairs]
        rep_t = np.repeat(first_terms, cnt)
        starts = np.repeat(ptr[partner_pairs], cnt)
        offs = np.arange(cnt.sum(), dtype=np.int64) - np.repeat(np.cumsum(cnt) - cnt, cnt)
        return rep_t, starts + offs, cnt

    for i in rows:
        # lhs: terms t of (i, j), then terms s of (l_t, k) for every k
        t_idx = np.arange(ptr[i * r], ptr[i * r + r], dtype=np.int64)
        j_of_t = term_pair[t_idx] - i * r
        t_rep = np.repeat(t_idx, r)
        k_rep = np.tile(np.arange(r, dtype=np.int64), len(t_idx))
        partner = out_idx[t_rep] * r + k_rep
        lt, ls, cnt = expand(np.arange(len(t_rep), dtype=np.int64), partner)
        tt = t_rep[lt]
        jj = np.repeat(j_of_t, r)[lt]
        kk = k_rep[lt]
        lkey = ((jj * r + kk) * r + out_idx[ls]) * zout + codes[tt] + codes[ls]
        lval = (coef[tt] * coef[ls]) % p
        # rhs: terms t of (j, k) for all j, k, then terms s of (i, l_t)
        all_t = np.arange(len(out_idx), dtype=np.int64)
        partner = i * r + out_idx[all_t]
        rt, rs, _ = expand(all_t, partner)
        jk = term_pair[rt]
        rkey = (jk * r + out_idx[rs]) * zout + codes[rt] + codes[rs]
        rval = (-(coef[rt] * coef[rs])) % p
        keys = np.concatenate([lkey, rkey])
        vals = np.concatenate([lval, rval])
        if not len(keys):
            continue
        uniq, inv = np.unique(keys, return_inverse=True)
        sums = np.bincount(inv, weights=vals).astype(np.int64) % p
        badkeys = uniq[sums != 0]
        if len(badkeys):
            triples = np.unique(badkeys // (r * zout))
            for jkk in triples:
                if nbad < limit:
                    bad[nbad] = (i, jkk // r, jkk % r)
                nbad += 1
    return nbad, bad


def associativity_defects(rows, r, p, ptr, out_idx, codes, coef, zout, limit=8, backend=None):
    """Count triples (i, j, k), i in ``rows``, with (b_i b_j) b_k != b_i (b_j b_k).

    Structure constants are CSR over pairs ``i*r + j``: term t has output
    basis index ``out_idx[t]``, coefficient ``coef[t]`` (mod p) and an
    encoded z-monomial ``codes[t]``; encodings must add without carries and
    stay below ``zout``.  Returns ``(count, first_bad_triples)``.
    """
    args = (
        np.ascontiguousarray(rows, dtype=np.int64),
        int(r),
        int(p),
        np.ascontiguousarray(ptr, dtype=np.int64),
        np.ascontiguousarray(out_idx, dtype=np.int64),
        np.ascontiguousarray(codes, dtype=np.int64),
        np.ascontiguousarray(coef, dtype=np.int64) % p,
        int(zout),
        int(limit),
    )
    backend = backend or ("numba" if use_numba() else "numpy")
    if backend == "numba":
        nbad, bad = _assoc_numba(*args)
    else:
        nbad, bad = _assoc_numpy(*args)
    nbad = int(nbad)
    return nbad, [tuple(int(x) for x in row) for row in bad[: min(nbad, limit)]]
