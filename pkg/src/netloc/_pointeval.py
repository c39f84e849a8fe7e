"""Exact deviation value at a fixed point, including tie shares.

Complements the sweep: the sweep yields one-sided limits of the strict-capture
measure over open edge positions, while this evaluator computes the actual
payoff of a deviator placed at a specific point (vertex or interior, not
co-located with a residual shop), splitting every positive-measure tie region
with its residual winners.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Tuple


def _clamp(x, lo, hi):
    return lo if x < lo else (hi if x > hi else x)


def point_value(
    edge_meta: List[int],
    n_vertices: int,
    dist: List[int],
    pieces: List[Tuple[int, Fraction, Fraction, Fraction, int, int]],
    e: int,
    t: Fraction,
) -> Fraction:
    """Deviator payoff at position t on edge e (base-scale units).

    pieces entries are (edge, lo, hi, value_at_lo, sigma, winner_count).
    The caller guarantees the point is not a residual shop location.
    """
    nv = n_vertices
    ue, ve, ell = edge_meta[3 * e], edge_meta[3 * e + 1], edge_meta[3 * e + 2]
    duv = dist[ue * nv + ve]
    total = Fraction(0)
    for g, p, q, wp, sigma, k in pieces:
        if p >= q:
            continue
        strict = Fraction(0)
        tie = Fraction(0)
        if g == e and p <= t <= q:
            # the piece containing the deviator
            w_here = wp + sigma * (t - p)
            if w_here <= 0:
                raise ValueError("point evaluator called at a residual shop")
            if sigma > 0:
                wh = wp - p
                ca = min(t, ell - t + duv)
                bound = _clamp(Fraction(t - wh, 2), p, q)
                if ca < wh:
                    strict = q - p
                elif ca == wh:
                    strict = q - bound
                    tie = bound - p
                else:
                    strict = q - bound
            else:
                wc = wp + p
                cb = min(t + duv, ell - t) + ell
                bound = _clamp(Fraction(t + wc, 2), p, q)
                if cb < wc:
                    strict = q - p
                elif cb == wc:
                    strict = bound - p
                    tie = q - bound
                else:
                    strict = bound - p
        else:
            if g == e:
                if t < p:
                    ca = -t
                    cb = min(t + duv, ell - t) + ell
                else:  # t > q
                    ca = min(t, ell - t + duv)
                    cb = t
            else:
                ag, bg, lg = edge_meta[3 * g], edge_meta[3 * g + 1], edge_meta[3 * g + 2]
                ca = min(dist[ue * nv + ag] + t, (ell - t) + dist[ve * nv + ag])
                cb = min(dist[ue * nv + bg] + t, (ell - t) + dist[ve * nv + bg]) + lg
            if sigma > 0:
                wh = wp - p
                bound = _clamp(Fraction(cb - wh, 2), p, q)
                if ca < wh:
                    strict = q - p
                elif ca == wh:
                    strict = q - bound
                    tie = bound - p
                else:
                    strict = q - bound
            else:
                wc = wp + p
                bound = _clamp(Fraction(wc - ca, 2), p, q)
                if cb < wc:
                    strict = q - p
                elif cb == wc:
                    strict = bound - p
                    tie = q - bound
                else:
                    strict = bound - p
        total += strict
        if tie:
            total += Fraction(tie, k + 1)
    return total
