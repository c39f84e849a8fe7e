"""Scaled-integer sweep for best-deviation analysis (pure Python).

Given the residual nearest-distance envelope (all players except the deviator)
as per-edge affine pieces, this module computes, for one probe edge, the exact
piecewise-linear function of the deviator's position

    t  |->  measure of consumers strictly closer to the deviator than to the
            residual profile,

and returns its best one-sided limit. Tie regions (equality on positive
measure) only ever lower the value at isolated positions, so the supremum of
the deviation payoff over the open edge is the best one-sided limit of the
strict-capture function; co-located and vertex placements are evaluated
separately by the caller.

Unit conventions: all inputs are integers at a common scale (positions,
lengths, distances). Internally positions along the probe edge use an 8x
lattice (so every structural breakpoint lands on a multiple of 4) and measures
use a 16x lattice (so slopes per 8x-step are integers). A compiled Cython
twin of this module implements the same algorithm; outputs are identical.

The same-module entry point is ``sweep_edge``; see engine.py for dispatch.
"""

from __future__ import annotations

INF = 1 << 59


def _ev2(t8, al1, al2, be1, be2, p, q, wp, sigma):
    """Strict-capture measure (x16) on one piece for deviator position t8 (x8).

    The deviator's distance restricted to the piece's edge is
    min(Ca + tau, CbL - tau) where Ca/CbL are min-of-two-affine functions of t.
    The residual distance is wp + sigma*(tau - p). Probe positions are never
    structural breakpoints, so all comparisons below are strict.
    """
    ca = min(al1 * 8 + t8 if al1 < INF else INF * 8, al2 * 8 - t8 if al2 < INF else INF * 8)
    cb = min(be1 * 8 + t8 if be1 < INF else INF * 8, be2 * 8 - t8 if be2 < INF else INF * 8)
    if sigma > 0:
        w8 = 8 * (wp - p)
        if ca < w8:
            return 16 * (q - p)
        x = cb - w8  # capture tau > x/2 (8x units: boundary at x in 16x coords)
        lo, hi = 16 * p, 16 * q
        if x < lo:
            x = lo
        elif x > hi:
            x = hi
        return hi - x
    w8 = 8 * (wp + p)
    if cb < w8:
        return 16 * (q - p)
    x = w8 - ca  # capture tau < x/2
    lo, hi = 16 * p, 16 * q
    if x < lo:
        x = lo
    elif x > hi:
        x = hi
    return x - lo


def _ev_home(t8, ell, duv, p, q, wp, sigma):
    """Strict-capture measure (x16) on the deviator's own piece, p < t < q."""
    if sigma > 0:
        w8 = 8 * (wp - p)
        ca = min(t8, 8 * (ell + duv) - t8)
        if ca < w8:
            return 16 * (q - p)
        x = t8 - w8  # capture tau > (t - w_hat)/2
        lo, hi = 16 * p, 16 * q
        if x < lo:
            x = lo
        elif x > hi:
            x = hi
        return hi - x
    w8 = 8 * (wp + p)
    cb = min(t8 + 8 * duv, 8 * ell - t8) + 8 * ell
    if cb < w8:
        return 16 * (q - p)
    x = t8 + w8  # capture tau < (t + w_check)/2
    lo, hi = 16 * p, 16 * q
    if x < lo:
        x = lo
    elif x > hi:
        x = hi
    return x - lo


def _emit(segs, cands8, t0_8, t1_8, evaluate):
    """Probe each lattice cell between candidate breakpoints, confirm the
    function is affine there, and append (A, B, value_at_A, slope) segments."""
    cs = sorted(c for c in set(cands8) if t0_8 <= c <= t1_8)
    if not cs or cs[0] != t0_8:
        cs.insert(0, t0_8)
    if cs[-1] != t1_8:
        cs.append(t1_8)
    for i in range(len(cs) - 1):
        a, b = cs[i], cs[i + 1]
        if b - a < 4 or a % 4 or b % 4:
            return False
        v1 = evaluate(a + 1)
        v2 = evaluate(a + 2)
        v3 = evaluate(a + 3)
        s = v2 - v1
        if v3 - v2 != s:
            return False
        va = v1 - s
        segs.append((a, b, va, s))
    return True


def _emit_twoline(segs, t0, t1, al1, al2, be1, be2, p, q, wp, sigma):
    if t0 >= t1:
        return True
    cands = []
    if al1 < INF and al2 < INF:
        cands.append(4 * (al2 - al1))
    if be1 < INF and be2 < INF:
        cands.append(4 * (be2 - be1))
    if sigma > 0:
        wh = wp - p
        if al1 < INF:
            cands.append(8 * (wh - al1))
        if al2 < INF:
            cands.append(8 * (al2 - wh))
        for target in (2 * p + wh, 2 * q + wh):
            if be1 < INF:
                cands.append(8 * (target - be1))
            if be2 < INF:
                cands.append(8 * (be2 - target))
    else:
        wc = wp + p
        if be1 < INF:
            cands.append(8 * (wc - be1))
        if be2 < INF:
            cands.append(8 * (be2 - wc))
        for target in (wc - 2 * p, wc - 2 * q):
            if al1 < INF:
                cands.append(8 * (target - al1))
            if al2 < INF:
                cands.append(8 * (al2 - target))
    return _emit(
        segs,
        cands,
        8 * t0,
        8 * t1,
        lambda t8: _ev2(t8, al1, al2, be1, be2, p, q, wp, sigma),
    )


def _emit_home(segs, ell, duv, p, q, wp, sigma):
    if p >= q:
        return True
    cands = [4 * (ell + duv), 4 * (ell - duv)]
    if sigma > 0:
        wh = wp - p
        cands += [8 * wh, 8 * (ell + duv - wh), 8 * (2 * p + wh), 8 * (2 * q + wh)]
    else:
        wc = wp + p
        cands += [8 * (wc - duv - ell), 8 * (2 * ell - wc), 8 * (2 * p - wc), 8 * (2 * q - wc)]
    return _emit(
        segs,
        cands,
        8 * p,
        8 * q,
        lambda t8: _ev_home(t8, ell, duv, p, q, wp, sigma),
    )


def sweep_edge(edge_meta, n_vertices, dist, pieces, e):
    """Best one-sided limit of the strict capture measure over probe edge e.

    edge_meta: flat [a, b, length] per edge (base-scale ints)
    dist:      flat vertex distance matrix (base-scale ints)
    pieces:    flat [edge, lo, hi, value_at_lo, sigma] per piece
    returns (ok, best_value_x16, best_t_x8, best_side, max_abs_slope)
      best_side: 0 = limit from the right of best_t, 1 = from the left
      max_abs_slope: max |d value_x16 / d t_x8| over the edge (for oracle bounds)
    """
    ue = edge_meta[3 * e]
    ve = edge_meta[3 * e + 1]
    ell = edge_meta[3 * e + 2]
    nv = n_vertices
    duv = dist[ue * nv + ve]
    segs = []
    npieces = len(pieces) // 5
    for k in range(npieces):
        g, p, q, wp, sigma = pieces[5 * k : 5 * k + 5]
        if p >= q:
            continue
        if g == e:
            ok = _emit_twoline(
                segs, 0, p, INF, 0, duv + ell, 2 * ell, p, q, wp, sigma
            )
            if not ok:
                return (False, 0, 0, 0, 0)
            ok = _emit_home(segs, ell, duv, p, q, wp, sigma)
            if not ok:
                return (False, 0, 0, 0, 0)
            ok = _emit_twoline(
                segs, q, ell, 0, ell + duv, 0, INF, p, q, wp, sigma
            )
            if not ok:
                return (False, 0, 0, 0, 0)
        else:
            ag = edge_meta[3 * g]
            bg = edge_meta[3 * g + 1]
            lg = edge_meta[3 * g + 2]
            al1 = dist[ue * nv + ag]
            al2 = ell + dist[ve * nv + ag]
            be1 = dist[ue * nv + bg] + lg
            be2 = ell + dist[ve * nv + bg] + lg
            # unreachable pieces contribute nothing for any t
            wmax = wp if sigma < 0 else wp + (q - p)
            reach = min(min(al1, al2 - ell) + p, min(be1, be2 - ell) - q)
            if reach >= wmax:
                continue
            ok = _emit_twoline(segs, 0, ell, al1, al2, be1, be2, p, q, wp, sigma)
            if not ok:
                return (False, 0, 0, 0, 0)

    ell8 = 8 * ell
    events = {}
    for a, b, va, s in segs:
        ev = events.get(a)
        if ev is None:
            events[a] = [va, s]
        else:
            ev[0] += va
            ev[1] += s
        vb = va + s * (b - a)
        ev = events.get(b)
        if ev is None:
            events[b] = [-vb, -s]
        else:
            ev[0] -= vb
            ev[1] -= s
    best_v = -1
    best_t = 0
    best_side = 0
    max_slope = 0
    f = 0
    slope = 0
    prev = 0
    for t in sorted(events):
        left = f + slope * (t - prev)
        if t > 0 and left > best_v:
            best_v, best_t, best_side = left, t, 1
        dv, ds = events[t]
        f = left + dv
        slope += ds
        if slope > max_slope:
            max_slope = slope
        elif -slope > max_slope:
            max_slope = -slope
        if t < ell8 and f > best_v:
            best_v, best_t, best_side = f, t, 0
        prev = t
    if f != 0 or slope != 0 or (events and prev != ell8):
        return (False, 0, 0, 0, 0)
    return (True, best_v, best_t, best_side, max_slope)
