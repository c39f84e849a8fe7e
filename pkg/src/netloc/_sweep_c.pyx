# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of netloc._sweep_py.

Same algorithm, same integer lattice, same outputs. Works on int64; the
engine wrapper only dispatches here when the scaled inputs are small enough,
and falls back to the Python reference if this kernel reports an
inconsistency (ok == False).
"""

from libc.stdlib cimport free, malloc

cdef long long INF = (<long long>1) << 59


cdef inline long long _minll(long long a, long long b) noexcept nogil:
    return a if a < b else b


cdef long long _ev2(long long t8, long long al1, long long al2,
                    long long be1, long long be2,
                    long long p, long long q, long long wp,
                    long long sigma) noexcept nogil:
    cdef long long ca, cb, w8, x, lo, hi
    ca = _minll(al1 * 8 + t8 if al1 < INF else INF * 8,
                al2 * 8 - t8 if al2 < INF else INF * 8)
    cb = _minll(be1 * 8 + t8 if be1 < INF else INF * 8,
                be2 * 8 - t8 if be2 < INF else INF * 8)
    if sigma > 0:
        w8 = 8 * (wp - p)
        if ca < w8:
            return 16 * (q - p)
        x = cb - w8
        lo = 16 * p
        hi = 16 * q
        if x < lo:
            x = lo
        elif x > hi:
            x = hi
        return hi - x
    w8 = 8 * (wp + p)
    if cb < w8:
        return 16 * (q - p)
    x = w8 - ca
    lo = 16 * p
    hi = 16 * q
    if x < lo:
        x = lo
    elif x > hi:
        x = hi
    return x - lo


cdef long long _ev_home(long long t8, long long ell, long long duv,
                        long long p, long long q, long long wp,
                        long long sigma) noexcept nogil:
    cdef long long ca, cb, w8, x, lo, hi
    if sigma > 0:
        w8 = 8 * (wp - p)
        ca = _minll(t8, 8 * (ell + duv) - t8)
        if ca < w8:
            return 16 * (q - p)
        x = t8 - w8
        lo = 16 * p
        hi = 16 * q
        if x < lo:
            x = lo
        elif x > hi:
            x = hi
        return hi - x
    w8 = 8 * (wp + p)
    cb = _minll(t8 + 8 * duv, 8 * ell - t8) + 8 * ell
    if cb < w8:
        return 16 * (q - p)
    x = t8 + w8
    lo = 16 * p
    hi = 16 * q
    if x < lo:
        x = lo
    elif x > hi:
        x = hi
    return x - lo


cdef void _sort_ll(long long* a, long long n) noexcept nogil:
    # insertion sort; candidate/event lists are short
    cdef long long i, j, v
    for i in range(1, n):
        v = a[i]
        j = i - 1
        while j >= 0 and a[j] > v:
            a[j + 1] = a[j]
            j -= 1
        a[j + 1] = v


cdef bint _emit(long long* seg_a, long long* seg_b, long long* seg_v,
                long long* seg_s, long long* nseg,
                long long* cands, long long ncands,
                long long t0_8, long long t1_8, int mode,
                long long al1, long long al2, long long be1, long long be2,
                long long ell, long long duv,
                long long p, long long q, long long wp,
                long long sigma) noexcept nogil:
    cdef long long buf[40]
    cdef long long m = 0, i, c, a, b, v1, v2, v3, s, va
    for i in range(ncands):
        c = cands[i]
        if t0_8 < c < t1_8:
            buf[m] = c
            m += 1
    buf[m] = t0_8
    m += 1
    buf[m] = t1_8
    m += 1
    _sort_ll(buf, m)
    cdef long long w = 0, last = 0
    # dedupe in place
    cdef long long uniq[42]
    for i in range(m):
        if w == 0 or buf[i] != last:
            uniq[w] = buf[i]
            last = buf[i]
            w += 1
    for i in range(w - 1):
        a = uniq[i]
        b = uniq[i + 1]
        if b - a < 4 or a % 4 != 0 or b % 4 != 0:
            return False
        if mode == 0:
            v1 = _ev2(a + 1, al1, al2, be1, be2, p, q, wp, sigma)
            v2 = _ev2(a + 2, al1, al2, be1, be2, p, q, wp, sigma)
            v3 = _ev2(a + 3, al1, al2, be1, be2, p, q, wp, sigma)
        else:
            v1 = _ev_home(a + 1, ell, duv, p, q, wp, sigma)
            v2 = _ev_home(a + 2, ell, duv, p, q, wp, sigma)
            v3 = _ev_home(a + 3, ell, duv, p, q, wp, sigma)
        s = v2 - v1
        if v3 - v2 != s:
            return False
        va = v1 - s
        seg_a[nseg[0]] = a
        seg_b[nseg[0]] = b
        seg_v[nseg[0]] = va
        seg_s[nseg[0]] = s
        nseg[0] += 1
    return True


cdef bint _emit_twoline(long long* seg_a, long long* seg_b, long long* seg_v,
                        long long* seg_s, long long* nseg,
                        long long t0, long long t1,
                        long long al1, long long al2,
                        long long be1, long long be2,
                        long long p, long long q, long long wp,
                        long long sigma) noexcept nogil:
    if t0 >= t1:
        return True
    cdef long long cands[12]
    cdef long long n = 0, wh, wc, target
    cdef int ti
    if al1 < INF and al2 < INF:
        cands[n] = 4 * (al2 - al1); n += 1
    if be1 < INF and be2 < INF:
        cands[n] = 4 * (be2 - be1); n += 1
    if sigma > 0:
        wh = wp - p
        if al1 < INF:
            cands[n] = 8 * (wh - al1); n += 1
        if al2 < INF:
            cands[n] = 8 * (al2 - wh); n += 1
        for ti in range(2):
            target = 2 * p + wh if ti == 0 else 2 * q + wh
            if be1 < INF:
                cands[n] = 8 * (target - be1); n += 1
            if be2 < INF:
                cands[n] = 8 * (be2 - target); n += 1
    else:
        wc = wp + p
        if be1 < INF:
            cands[n] = 8 * (wc - be1); n += 1
        if be2 < INF:
            cands[n] = 8 * (be2 - wc); n += 1
        for ti in range(2):
            target = wc - 2 * p if ti == 0 else wc - 2 * q
            if al1 < INF:
                cands[n] = 8 * (target - al1); n += 1
            if al2 < INF:
                cands[n] = 8 * (al2 - target); n += 1
    return _emit(seg_a, seg_b, seg_v, seg_s, nseg, cands, n,
                 8 * t0, 8 * t1, 0, al1, al2, be1, be2, 0, 0, p, q, wp, sigma)


cdef bint _emit_home(long long* seg_a, long long* seg_b, long long* seg_v,
                     long long* seg_s, long long* nseg,
                     long long ell, long long duv,
                     long long p, long long q, long long wp,
                     long long sigma) noexcept nogil:
    if p >= q:
        return True
    cdef long long cands[8]
    cdef long long n = 0, wh, wc
    cands[n] = 4 * (ell + duv); n += 1
    cands[n] = 4 * (ell - duv); n += 1
    if sigma > 0:
        wh = wp - p
        cands[n] = 8 * wh; n += 1
        cands[n] = 8 * (ell + duv - wh); n += 1
        cands[n] = 8 * (2 * p + wh); n += 1
        cands[n] = 8 * (2 * q + wh); n += 1
    else:
        wc = wp + p
        cands[n] = 8 * (wc - duv - ell); n += 1
        cands[n] = 8 * (2 * ell - wc); n += 1
        cands[n] = 8 * (2 * p - wc); n += 1
        cands[n] = 8 * (2 * q - wc); n += 1
    return _emit(seg_a, seg_b, seg_v, seg_s, nseg, cands, n,
                 8 * p, 8 * q, 1, 0, 0, 0, 0, ell, duv, p, q, wp, sigma)


def sweep_edge(edge_meta_obj, n_vertices, dist_obj, pieces_obj, e_obj):
    cdef long long[::1] edge_meta = edge_meta_obj
    cdef long long[::1] dist = dist_obj
    cdef long long[::1] pieces = pieces_obj
    cdef long long e = e_obj
    cdef long long nv = n_vertices
    cdef long long ue = edge_meta[3 * e]
    cdef long long ve = edge_meta[3 * e + 1]
    cdef long long ell = edge_meta[3 * e + 2]
    cdef long long duv = dist[ue * nv + ve]
    cdef long long npieces = pieces.shape[0] // 5
    cdef long long cap = 40 * (npieces + 2) + 16
    cdef long long* seg_a = <long long*>malloc(cap * sizeof(long long))
    cdef long long* seg_b = <long long*>malloc(cap * sizeof(long long))
    cdef long long* seg_v = <long long*>malloc(cap * sizeof(long long))
    cdef long long* seg_s = <long long*>malloc(cap * sizeof(long long))
    cdef long long nseg = 0
    cdef long long k, g, p, q, wp, sigma, ag, bg, lg
    cdef long long al1, al2, be1, be2, wmax, reach
    cdef bint ok = True
    if seg_a == NULL or seg_b == NULL or seg_v == NULL or seg_s == NULL:
        ok = False
    if ok:
        for k in range(npieces):
            g = pieces[5 * k]
            p = pieces[5 * k + 1]
            q = pieces[5 * k + 2]
            wp = pieces[5 * k + 3]
            sigma = pieces[5 * k + 4]
            if p >= q:
                continue
            if nseg + 120 > cap:
                ok = False
                break
            if g == e:
                if not _emit_twoline(seg_a, seg_b, seg_v, seg_s, &nseg,
                                     0, p, INF, 0, duv + ell, 2 * ell,
                                     p, q, wp, sigma):
                    ok = False
                    break
                if not _emit_home(seg_a, seg_b, seg_v, seg_s, &nseg,
                                  ell, duv, p, q, wp, sigma):
                    ok = False
                    break
                if not _emit_twoline(seg_a, seg_b, seg_v, seg_s, &nseg,
                                     q, ell, 0, ell + duv, 0, INF,
                                     p, q, wp, sigma):
                    ok = False
                    break
            else:
                ag = edge_meta[3 * g]
                bg = edge_meta[3 * g + 1]
                lg = edge_meta[3 * g + 2]
                al1 = dist[ue * nv + ag]
                al2 = ell + dist[ve * nv + ag]
                be1 = dist[ue * nv + bg] + lg
                be2 = ell + dist[ve * nv + bg] + lg
                wmax = wp if sigma < 0 else wp + (q - p)
                reach = _minll(_minll(al1, al2 - ell) + p,
                               _minll(be1, be2 - ell) - q)
                if reach >= wmax:
                    continue
                if not _emit_twoline(seg_a, seg_b, seg_v, seg_s, &nseg,
                                     0, ell, al1, al2, be1, be2,
                                     p, q, wp, sigma):
                    ok = False
                    break

    # assemble and sweep events
    cdef long long ell8 = 8 * ell
    cdef long long nev = 0
    cdef long long* ev_t = NULL
    cdef long long* ev_v = NULL
    cdef long long* ev_s = NULL
    cdef long long* order = NULL
    cdef long long i, j, t, vb, best_v, best_t, best_side, max_slope
    cdef long long f, slope, prev, left, dv, ds
    best_v = -1
    best_t = 0
    best_side = 0
    max_slope = 0
    if ok:
        ev_t = <long long*>malloc(2 * nseg * sizeof(long long) + 8)
        ev_v = <long long*>malloc(2 * nseg * sizeof(long long) + 8)
        ev_s = <long long*>malloc(2 * nseg * sizeof(long long) + 8)
        if ev_t == NULL or ev_v == NULL or ev_s == NULL:
            ok = False
    if ok:
        for i in range(nseg):
            ev_t[nev] = seg_a[i]
            ev_v[nev] = seg_v[i]
            ev_s[nev] = seg_s[i]
            nev += 1
            vb = seg_v[i] + seg_s[i] * (seg_b[i] - seg_a[i])
            ev_t[nev] = seg_b[i]
            ev_v[nev] = -vb
            ev_s[nev] = -seg_s[i]
            nev += 1
        # sort events by time (insertion sort on parallel arrays)
        for i in range(1, nev):
            t = ev_t[i]
            dv = ev_v[i]
            ds = ev_s[i]
            j = i - 1
            while j >= 0 and ev_t[j] > t:
                ev_t[j + 1] = ev_t[j]
                ev_v[j + 1] = ev_v[j]
                ev_s[j + 1] = ev_s[j]
                j -= 1
            ev_t[j + 1] = t
            ev_v[j + 1] = dv
            ev_s[j + 1] = ds
        f = 0
        slope = 0
        prev = 0
        i = 0
        while i < nev:
            t = ev_t[i]
            dv = 0
            ds = 0
            while i < nev and ev_t[i] == t:
                dv += ev_v[i]
                ds += ev_s[i]
                i += 1
            left = f + slope * (t - prev)
            if t > 0 and left > best_v:
                best_v = left
                best_t = t
                best_side = 1
            f = left + dv
            slope += ds
            if slope > max_slope:
                max_slope = slope
            elif -slope > max_slope:
                max_slope = -slope
            if t < ell8 and f > best_v:
                best_v = f
                best_t = t
                best_side = 0
            prev = t
        if f != 0 or slope != 0 or (nev > 0 and prev != ell8):
            ok = False
    if seg_a != NULL:
        free(seg_a)
    if seg_b != NULL:
        free(seg_b)
    if seg_v != NULL:
        free(seg_v)
    if seg_s != NULL:
        free(seg_s)
    if ev_t != NULL:
        free(ev_t)
    if ev_v != NULL:
        free(ev_v)
    if ev_s != NULL:
        free(ev_s)
    if not ok:
        return (False, 0, 0, 0, 0)
    return (True, best_v, best_t, best_side, max_slope)
