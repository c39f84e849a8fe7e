"""Per-edge nearest-shop decomposition (internal).

For a fixed multiset of occupied locations, every edge splits into maximal
sub-intervals on which the distance to the nearest occupied location is affine
with slope +1 or -1 and the set of nearest locations is constant. This module
builds that decomposition exactly.

On the sub-segment between two consecutive interior shops (or a shop and an
edge endpoint), the nearest-distance function is the minimum of one rising
line (direct route to the left shop, or the best route through the first
vertex) and one falling line (mirrored). Routes through a vertex that
immediately re-enter the edge are never strictly optimal, so the winner sets
recorded here carry no phantom entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InvalidProfileError
from .network import LocKey, Network, Point


@dataclass(frozen=True)
class Loc:
    """One occupied location: canonical key, a representative point, and the
    number of co-located shops."""

    key: LocKey
    point: Point
    count: int
    players: Tuple[int, ...]


# One maximal affine piece of the nearest-distance function on an edge:
# (lo, hi) are arc-length offsets, value at lo, slope in {+1, -1}, and the
# frozenset of indices (into the scene's location list) attaining the minimum.
Piece = Tuple[Fraction, Fraction, Fraction, int, frozenset]


class Scene:
    """Envelope of nearest-shop distances for one location multiset."""

    def __init__(self, net: Network, locs: List[Loc]):
        self.net = net
        self.locs = locs
        self.key_index = {loc.key: i for i, loc in enumerate(locs)}
        self.d1, self.win = _nearest_from_vertices(net, locs)
        self.pieces: List[List[Piece]] = [
            _edge_envelope(net, locs, self.d1, self.win, eid)
            for eid in range(net.n_edges)
        ]

    def loc_masses(self) -> List[Fraction]:
        """Measure attracted by each location (ties split equally)."""
        masses = [Fraction(0)] * len(self.locs)
        for eps in self.pieces:
            for lo, hi, _, _, winners in eps:
                mu = hi - lo
                if mu == 0:
                    continue
                share = Fraction(mu, len(winners))
                for wi in winners:
                    masses[wi] += share
        return masses

    def social_cost(self) -> Fraction:
        total = Fraction(0)
        for eps in self.pieces:
            for lo, hi, vlo, sigma, _ in eps:
                mu = hi - lo
                total += mu * (2 * vlo + sigma * mu) / 2
        return total

    def eccentricity(self) -> Fraction:
        """max over consumers of the distance to the nearest location."""
        best = Fraction(0)
        for eps in self.pieces:
            for lo, hi, vlo, sigma, _ in eps:
                best = max(best, vlo, vlo + sigma * (hi - lo))
        return best


def group_locations(net: Network, points: Sequence[Point]) -> List[Loc]:
    """Group a profile into distinct occupied locations (deterministic order)."""
    if not points:
        raise InvalidProfileError("a profile needs at least one player")
    by_key: Dict[LocKey, List[int]] = {}
    for i, p in enumerate(points):
        net.check_point(p)
        by_key.setdefault(net.locate(p), []).append(i)
    locs = []
    for key in sorted(by_key):
        players = tuple(by_key[key])
        locs.append(Loc(key, net.point_of(key), len(players), players))
    return locs


def scene_for(net: Network, points: Sequence[Point]) -> Scene:
    return Scene(net, group_locations(net, points))


def _nearest_from_vertices(net: Network, locs: List[Loc]):
    """For every vertex: distance to the nearest location and the argmin set."""
    nv = net.n_vertices
    d1: List[Optional[Fraction]] = [None] * nv
    win: List[frozenset] = [frozenset()] * nv
    for v in range(nv):
        best = None
        winners = []
        for i, loc in enumerate(locs):
            d = net.dist_vertex_point(v, loc.point)
            if best is None or d < best:
                best, winners = d, [i]
            elif d == best:
                winners.append(i)
        d1[v] = best
        win[v] = frozenset(winners)
    return d1, win


def _edge_envelope(net: Network, locs: List[Loc], d1, win, eid: int) -> List[Piece]:
    a, b, length = net.edges[eid]
    anchors = []
    for i, loc in enumerate(locs):
        if loc.key[0] == "e" and loc.key[1] == eid:
            anchors.append((loc.key[2] * length, i))
    anchors.sort()
    bounds: List[Tuple[Fraction, Optional[int]]] = (
        [(Fraction(0), None)] + anchors + [(length, None)]
    )
    pieces: List[Piece] = []
    for j in range(len(bounds) - 1):
        x, left_anchor = bounds[j]
        y, right_anchor = bounds[j + 1]
        if x == y:
            continue
        if left_anchor is not None:
            ux, ku = Fraction(0), frozenset([left_anchor])
        else:
            ux, ku = d1[a], win[a]
        if right_anchor is not None:
            wy, kw = Fraction(0), frozenset([right_anchor])
        else:
            wy, kw = d1[b], win[b]
        # U(tau) = ux + (tau - x) rising; W(tau) = wy + (y - tau) falling
        cross = (x + y + wy - ux) / 2
        if cross <= x:
            pieces.append((x, y, wy + (y - x), -1, kw))
        elif cross >= y:
            pieces.append((x, y, ux, +1, ku))
        else:
            mid_val = ux + (cross - x)
            pieces.append((x, cross, ux, +1, ku))
            pieces.append((cross, y, mid_val, -1, kw))
    return pieces
