"""Strategy profiles, attraction decomposition, payoffs, and consumer cost.

Consumers shop at the nearest occupied location; a region equidistant from k
locations sends 1/k of its mass to each, and a location hosting h shops splits
its mass equally among them. All quantities are exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import cells
from .errors import (
    InvalidArgumentError,
    InvalidProfileError,
    VertexCoverageError,
)
from .exact import rat_str
from .network import Interval, LocKey, Network, Point


@dataclass(frozen=True)
class Profile:
    """An ordered tuple of player locations."""

    locations: Tuple[Point, ...]

    def __init__(self, locations):
        object.__setattr__(self, "locations", tuple(locations))
        if not self.locations:
            raise InvalidProfileError("a profile needs at least one player")

    @property
    def n(self) -> int:
        return len(self.locations)

    def __iter__(self):
        return iter(self.locations)

    def __len__(self):
        return len(self.locations)

    def __getitem__(self, i):
        return self.locations[i]

    def replace(self, i: int, p: Point) -> "Profile":
        pts = list(self.locations)
        pts[i] = p
        return Profile(pts)

    def to_json(self):
        return [p.to_json() for p in self.locations]

    @staticmethod
    def from_json(obj) -> "Profile":
        return Profile([Point.from_json(p) for p in obj])


ProfileLike = Union[Profile, Sequence[Point]]


def as_points(profile: ProfileLike) -> Tuple[Point, ...]:
    if isinstance(profile, Profile):
        return profile.locations
    return tuple(profile)


def key_str(key: LocKey) -> str:
    if key[0] == "v":
        return f"v:{key[1]}"
    return f"e:{key[1]}:{rat_str(key[2])}"


@dataclass
class AttractionReport:
    """Exact decomposition of the network into attraction cells."""

    payoffs: Tuple[Fraction, ...]
    cells: Dict[LocKey, List[Tuple[Interval, Fraction]]]
    tie_regions: List[Tuple[Interval, frozenset]]
    loc_masses: Dict[LocKey, Fraction]
    multiplicities: Dict[LocKey, int]

    def to_json(self):
        return {
            "payoffs": [rat_str(p) for p in self.payoffs],
            "cells": {
                key_str(k): [
                    {"interval": iv.to_json(), "weight": rat_str(w)} for iv, w in items
                ]
                for k, items in self.cells.items()
            },
            "tie_regions": [
                {"interval": iv.to_json(), "locations": sorted(key_str(k) for k in ks)}
                for iv, ks in self.tie_regions
            ],
            "masses": {key_str(k): rat_str(m) for k, m in self.loc_masses.items()},
        }


def attraction(net: Network, profile: ProfileLike) -> AttractionReport:
    """Compute attraction cells, tie regions, and all player payoffs."""
    points = as_points(profile)
    scene = cells.scene_for(net, points)
    masses = scene.loc_masses()
    loc_of_player: Dict[int, int] = {}
    for li, loc in enumerate(scene.locs):
        for pi in loc.players:
            loc_of_player[pi] = li
    payoffs = tuple(
        masses[loc_of_player[i]] / scene.locs[loc_of_player[i]].count
        for i in range(len(points))
    )
    cell_map: Dict[LocKey, List[Tuple[Interval, Fraction]]] = {
        loc.key: [] for loc in scene.locs
    }
    ties: List[Tuple[Interval, frozenset]] = []
    for eid, eps in enumerate(scene.pieces):
        length = net.edge_length(eid)
        for lo, hi, _, _, winners in eps:
            if hi == lo:
                continue
            iv = Interval(eid, lo / length, hi / length)
            share = Fraction(1, len(winners))
            for wi in winners:
                cell_map[scene.locs[wi].key].append((iv, share))
            if len(winners) >= 2:
                ties.append((iv, frozenset(scene.locs[wi].key for wi in winners)))
    return AttractionReport(
        payoffs=payoffs,
        cells=cell_map,
        tie_regions=ties,
        loc_masses={loc.key: masses[i] for i, loc in enumerate(scene.locs)},
        multiplicities={loc.key: loc.count for loc in scene.locs},
    )


def social_cost(net: Network, profile: ProfileLike) -> Fraction:
    """Total distance from consumers to their nearest shop (exact integral)."""
    return cells.scene_for(net, as_points(profile)).social_cost()


def consumer_eccentricity(net: Network, profile: ProfileLike) -> Fraction:
    """Largest distance any consumer travels to the nearest shop."""
    return cells.scene_for(net, as_points(profile)).eccentricity()


def has_vertex_coverage(net: Network, profile: ProfileLike) -> bool:
    """True when every vertex of degree >= 3 hosts at least one player."""
    points = as_points(profile)
    occupied = {net.locate(p) for p in points}
    return all(("v", v) in occupied for v in net.junction_vertices())


@dataclass(frozen=True)
class HalfInterval:
    """Span from an occupied location to a leaf or to the midpoint toward the
    next occupied location (possibly across degree-2 vertices)."""

    a: Point
    b: Point
    owner: LocKey
    length: Fraction

    def to_json(self):
        return {
            "a": self.a.to_json(),
            "b": self.b.to_json(),
            "owner": key_str(self.owner),
            "length": rat_str(self.length),
        }


@dataclass
class HalfIntervalSet:
    entries: List[HalfInterval]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def total_measure(self) -> Fraction:
        return sum((h.length for h in self.entries), Fraction(0))

    def cost(self) -> Fraction:
        """sum of length^2 / 2 — equals the social cost of the profile."""
        return sum((h.length * h.length / 2 for h in self.entries), Fraction(0))

    def max_length(self) -> Fraction:
        return max(h.length for h in self.entries)

    def to_json(self):
        return [h.to_json() for h in self.entries]


def half_intervals(net: Network, profile: ProfileLike) -> HalfIntervalSet:
    """Cover the network by half intervals.

    Requires every vertex of degree >= 3 to be occupied; unoccupied degree-2
    vertices (the circle case) are walked through. m co-located players
    contribute 2(m-1) zero-length entries.
    """
    points = as_points(profile)
    locs = cells.group_locations(net, points)
    occupied_vertices = {loc.key[1] for loc in locs if loc.key[0] == "v"}
    for v in net.junction_vertices():
        if v not in occupied_vertices:
            raise VertexCoverageError(
                f"vertex {net.vertices[v]!r} (degree >= 3) hosts no player"
            )

    loc_by_key = {loc.key: loc for loc in locs}
    # segments per edge, split at interior occupied positions
    seg_list = []  # (edge, lo_pos, hi_pos, left_terminal, right_terminal)
    seg_at_slot = {}  # (edge, vertex_index) -> segment index touching it
    for eid, (a, b, length) in enumerate(net.edges):
        anchors = sorted(
            (loc.key[2] * length, loc.key)
            for loc in locs
            if loc.key[0] == "e" and loc.key[1] == eid
        )
        bounds = [(Fraction(0), ("vert", a))] + [
            (pos, ("loc", key)) for pos, key in anchors
        ] + [(length, ("vert", b))]
        for j in range(len(bounds) - 1):
            (x, lt), (y, rt) = bounds[j], bounds[j + 1]
            idx = len(seg_list)
            seg_list.append((eid, x, y, lt, rt))
            if lt[0] == "vert":
                seg_at_slot.setdefault((eid, "lo"), idx)
            if rt[0] == "vert":
                seg_at_slot[(eid, "hi")] = idx

    def resolve(term, eid):
        """Terminal of a walk: occupied location, leaf, or continue through."""
        if term[0] == "loc":
            return ("loc", term[1])
        vid = term[1]
        if vid in occupied_vertices:
            return ("loc", ("v", vid))
        if net.vertex_degree(vid) == 1:
            return ("leaf", vid)
        return ("through", vid)

    visited = [False] * len(seg_list)
    entries: List[HalfInterval] = []

    def chain_point(chain, dist: Fraction) -> Point:
        """Point at arc distance `dist` from the chain start."""
        acc = Fraction(0)
        for eid, start, end in chain:
            seg_len = abs(end - start)
            if acc + seg_len >= dist:
                off = dist - acc
                pos = start + off if end >= start else start - off
                return net.point_at(eid, pos)
            acc += seg_len
        eid, start, end = chain[-1]
        return net.point_at(eid, end)

    def walk(start_idx):
        """Expand segment start_idx into a maximal unoccupied component."""
        chain = []  # (edge, start_pos, end_pos) in traversal order
        # walk right from the segment, then left, then join
        def extend(idx, direction):
            out = []
            cur, cur_dir = idx, direction
            while True:
                eid, x, y, lt, rt = seg_list[cur]
                visited[cur] = True
                if cur_dir == "right":
                    out.append((eid, x, y))
                    term = resolve(rt, eid)
                else:
                    out.append((eid, y, x))
                    term = resolve(lt, eid)
                if term[0] != "through":
                    return out, term
                vid = term[1]
                # continue through the degree-2 vertex onto the other edge
                slots = []
                for e2, other in net.adjacency[vid]:
                    u2, v2, _ = net.edges[e2]
                    if u2 == vid:
                        slots.append((e2, "lo"))
                    if v2 == vid:
                        slots.append((e2, "hi"))
                here = (eid, "hi" if cur_dir == "right" else "lo")
                nxt = [s for s in slots if s != here]
                if not nxt:
                    # both ends of the same edge at this vertex (parallel pair)
                    nxt = [s for s in slots if s[1] != here[1]]
                e2, side = nxt[0]
                cur = seg_at_slot[(e2, side)]
                cur_dir = "right" if side == "lo" else "left"
                if visited[cur]:
                    # closed a loop back to the start: treat as terminal-free;
                    # cannot happen when some location exists on the walk
                    raise InvalidProfileError("unoccupied cycle in profile walk")

        right_chain, right_term = extend(start_idx, "right")
        eid, x, y, lt, rt = seg_list[start_idx]
        left_term = resolve(lt, eid)
        if left_term[0] == "through":
            visited[start_idx] = False  # allow re-walk leftwards
            left_chain, left_term = extend(start_idx, "left")
            left_chain = left_chain[1:]  # drop the duplicated start segment
            chain = [(e, b2, a2) for e, a2, b2 in reversed(left_chain)] + right_chain
        else:
            chain = right_chain
        total = sum(abs(e2 - s2) for _, s2, e2 in chain)
        lt_, rt_ = left_term, right_term
        if lt_[0] == "leaf" and rt_[0] == "leaf":
            raise InvalidProfileError("component with no occupied terminal")
        a_pt = chain_point(chain, Fraction(0))
        b_pt = chain_point(chain, total)
        if lt_[0] == "loc" and rt_[0] == "loc":
            mid = chain_point(chain, total / 2)
            entries.append(HalfInterval(a_pt, mid, lt_[1], total / 2))
            entries.append(HalfInterval(b_pt, mid, rt_[1], total / 2))
        elif lt_[0] == "loc":
            entries.append(HalfInterval(a_pt, b_pt, lt_[1], total))
        else:
            entries.append(HalfInterval(b_pt, a_pt, rt_[1], total))

    for idx in range(len(seg_list)):
        if not visited[idx]:
            walk(idx)

    for loc in locs:
        for _ in range(2 * (loc.count - 1)):
            entries.append(HalfInterval(loc.point, loc.point, loc.key, Fraction(0)))
    return HalfIntervalSet(entries)


def direction_mass(
    net: Network,
    profile: ProfileLike,
    w: Point,
    edge: int,
    toward: Optional[Union[int, str]] = None,
) -> Fraction:
    """Mass of consumers along one edge direction who shop at location ``w``.

    Half the along-edge gap to the next player in that direction, or the full
    remaining stretch when the direction ends at an unoccupied leaf with no
    player in between. For an interior ``w`` the direction must be named via
    ``toward`` (a vertex of the edge).
    """
    points = as_points(profile)
    wkey = net.locate(w)
    occupied = {net.locate(p) for p in points}
    if wkey not in occupied:
        raise InvalidArgumentError("w is not an occupied location")
    if not (0 <= edge < net.n_edges):
        raise InvalidArgumentError(f"unknown edge {edge}")
    u, v, length = net.edges[edge]

    if wkey[0] == "v":
        wv = wkey[1]
        if wv not in (u, v):
            raise InvalidArgumentError("edge is not incident to w")
        start = Fraction(0) if wv == u else length
        far = v if wv == u else u
    else:
        if wkey[1] != edge:
            raise InvalidArgumentError("edge is not incident to w")
        if toward is None:
            raise InvalidArgumentError("interior location: pass toward=<vertex>")
        tv = net.vertex_index(toward) if isinstance(toward, str) else int(toward)
        if tv not in (u, v):
            raise InvalidArgumentError("toward must be an endpoint of the edge")
        start = wkey[2] * length
        far = tv

    sign = 1 if far == v else -1
    far_pos = length if far == v else Fraction(0)
    candidates = []
    for key in occupied:
        if key[0] == "e" and key[1] == edge:
            pos = key[2] * length
            if sign * (pos - start) > 0:
                candidates.append(sign * (pos - start))
    if ("v", far) in occupied:
        candidates.append(sign * (far_pos - start))
    if candidates:
        return min(candidates) / 2
    if net.vertex_degree(far) == 1:
        return abs(far_pos - start)
    raise VertexCoverageError(
        "direction ends at an unoccupied non-leaf vertex; mass is undefined"
    )
