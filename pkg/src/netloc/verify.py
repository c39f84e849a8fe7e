"""Exact Nash-equilibrium verification via best-response analysis.

For each player the verifier computes the exact supremum of her deviation
payoff over the whole network: co-located placements and vertices are
evaluated directly (with tie sharing), and open edge positions are covered by
an integer-lattice sweep that returns the best one-sided limit of the
strict-capture measure. A profile is a Nash equilibrium iff no player's
supremum strictly exceeds her payoff; unattained suprema equal to the payoff
do not refute equilibrium.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from . import _pointeval, cells, engine
from .errors import InvalidArgumentError, NetlocError, VertexCoverageError
from .exact import lcm_denominators, rat_str
from .network import Network, Point
from .payoff import (
    ProfileLike,
    as_points,
    attraction,
    consumer_eccentricity,
    half_intervals,
    has_vertex_coverage,
    key_str,
)


@dataclass
class PlayerCheck:
    payoff: Fraction
    best_response: Fraction
    attained: bool
    witness: Optional[dict]

    @property
    def profitable(self) -> bool:
        return self.best_response > self.payoff

    def to_json(self):
        return {
            "payoff": rat_str(self.payoff),
            "best_response": rat_str(self.best_response),
            "attained": self.attained,
            "witness": self.witness,
        }


@dataclass
class EquilibriumCertificate:
    is_nash: bool
    per_player: List[PlayerCheck]

    def to_json(self):
        return {
            "is_nash": self.is_nash,
            "per_player": [c.to_json() for c in self.per_player],
        }


def deviation_payoff(net: Network, profile: ProfileLike, i: int, y: Point) -> Fraction:
    """Payoff of player i after unilaterally relocating to y."""
    points = list(as_points(profile))
    if not (0 <= i < len(points)):
        raise InvalidArgumentError(f"no player {i}")
    net.check_point(y)
    points[i] = y
    return attraction(net, points).payoffs[i]


class _Verifier:
    """Shared state for best-response computations over one profile."""

    def __init__(self, net: Network, points: Tuple[Point, ...]):
        self.net = net
        self.points = points
        self.locs = cells.group_locations(net, points)
        self.loc_of_player: Dict[int, int] = {}
        for li, loc in enumerate(self.locs):
            for pi in loc.players:
                self.loc_of_player[pi] = li
        full = cells.Scene(net, self.locs)
        masses = full.loc_masses()
        self.payoffs = [
            masses[self.loc_of_player[i]] / self.locs[self.loc_of_player[i]].count
            for i in range(len(points))
        ]
        # integer scale for the sweep
        denoms = [net.edge_length(e) for e in range(net.n_edges)]
        for loc in self.locs:
            if loc.key[0] == "e":
                denoms.append(loc.key[2] * net.edge_length(loc.key[1]))
        self.scale = lcm_denominators(denoms)
        L = self.scale
        em = []
        for u, v, length in net.edges:
            em.extend((u, v, int(length * L)))
        self.edge_meta = array("q", em)
        D = net.vertex_distances()
        nv = net.n_vertices
        flat = []
        maxd = 0
        for i in range(nv):
            for j in range(nv):
                d = int(D[i][j] * L)
                flat.append(d)
                maxd = max(maxd, d)
        self.dist = array("q", flat)
        self.max_abs = maxd + 4 * max(em[2::3] or [1])
        self._br_cache: Dict[int, Tuple[Fraction, bool, Optional[dict]]] = {}

    # -- helpers -------------------------------------------------------------

    def _iv(self, fr: Fraction) -> int:
        v = fr * self.scale
        if v.denominator != 1:
            raise AssertionError("scale does not clear a denominator")
        return v.numerator

    def _residual_locs(self, li: int) -> List[cells.Loc]:
        out = []
        for j, loc in enumerate(self.locs):
            if j == li:
                if loc.count > 1:
                    out.append(
                        cells.Loc(loc.key, loc.point, loc.count - 1, loc.players[1:])
                    )
            else:
                out.append(loc)
        return out

    def _int_pieces(self, scene: cells.Scene):
        flat = []
        rich = []
        for eid, eps in enumerate(scene.pieces):
            for lo, hi, vlo, sigma, winners in eps:
                p, q, wp = self._iv(lo), self._iv(hi), self._iv(vlo)
                flat.extend((eid, p, q, wp, sigma))
                rich.append((eid, p, q, wp, sigma, len(winners)))
        return array("q", flat), rich

    # -- core ----------------------------------------------------------------

    def location_br(self, li: int) -> Tuple[Fraction, bool, Optional[dict]]:
        if li in self._br_cache:
            return self._br_cache[li]
        net = self.net
        L = self.scale
        res_locs = self._residual_locs(li)
        if not res_locs:
            # single player: she owns the whole network wherever she stands
            total = net.total_measure()
            result = (
                total,
                True,
                {"type": "point", "point": self.locs[li].point.to_json()},
            )
            self._br_cache[li] = result
            return result
        res_scene = cells.Scene(net, res_locs)
        res_masses = res_scene.loc_masses()
        flat_pieces, rich_pieces = self._int_pieces(res_scene)

        closed: List[Tuple[Fraction, Point]] = []
        for j, loc in enumerate(res_locs):
            closed.append((res_masses[j] / (loc.count + 1), loc.point))
        res_vertices = {loc.key[1] for loc in res_locs if loc.key[0] == "v"}
        for v in range(net.n_vertices):
            if v in res_vertices:
                continue
            pt = net.vertex_point(v)
            eid = pt.edge
            t = self._iv(Fraction(0)) if pt.alpha == 0 else self._iv(net.edge_length(eid))
            val = _pointeval.point_value(
                self.edge_meta, net.n_vertices, self.dist, rich_pieces, eid, Fraction(t)
            )
            closed.append((val / L, pt))

        limits: List[Tuple[Fraction, int, Fraction, int]] = []
        for e in range(net.n_edges):
            ok, v16, t8, side, _slope = engine.sweep_edge(
                self.edge_meta, net.n_vertices, self.dist, flat_pieces, e, self.max_abs
            )
            limits.append((Fraction(v16, 16 * L), e, Fraction(t8, 8), side))

        best_closed = max(closed, key=lambda c: c[0])
        best_limit = max(limits, key=lambda c: c[0])
        if best_closed[0] >= best_limit[0]:
            value = best_closed[0]
            result = (value, True, {"type": "point", "point": best_closed[1].to_json()})
        else:
            value, e, tpos, side = best_limit
            pos = tpos / L  # arc offset on edge e, network units
            anchor_positions = {
                loc.key[2] * net.edge_length(e)
                for loc in res_locs
                if loc.key[0] == "e" and loc.key[1] == e
            }
            at_point = net.point_at(e, pos)
            descriptor = {
                "type": "limit",
                "edge": e,
                "at": at_point.to_json(),
                "from": "left" if side == 1 else "right",
            }
            attained = False
            witness = descriptor
            if pos not in anchor_positions and 0 < pos < net.edge_length(e):
                exact = _pointeval.point_value(
                    self.edge_meta, net.n_vertices, self.dist, rich_pieces, e, tpos
                ) / L
                if exact == value:
                    attained = True
                    witness = {"type": "point", "point": at_point.to_json()}
            result = (value, attained, witness)
        self._br_cache[li] = result
        return result


def best_response_value(
    net: Network, profile: ProfileLike, i: int
) -> Tuple[Fraction, bool, Optional[dict]]:
    """Supremum of player i's deviation payoff over the whole network."""
    points = as_points(profile)
    if not (0 <= i < len(points)):
        raise InvalidArgumentError(f"no player {i}")
    ver = _Verifier(net, points)
    return ver.location_br(ver.loc_of_player[i])


def is_nash(net: Network, profile: ProfileLike) -> EquilibriumCertificate:
    """Exact equilibrium certificate for a profile."""
    points = as_points(profile)
    ver = _Verifier(net, points)
    checks = []
    nash = True
    for i in range(len(points)):
        value, attained, witness = ver.location_br(ver.loc_of_player[i])
        check = PlayerCheck(ver.payoffs[i], value, attained, witness)
        nash = nash and not check.profitable
        checks.append(check)
    return EquilibriumCertificate(nash, checks)


class ConsistencyError(NetlocError):
    """A structural property failed on a verified equilibrium."""


def check_structural_lemmas(net: Network, profile: ProfileLike, cert) -> dict:
    """Structural sanity checks for a profile certified as an equilibrium.

    Checks: location multiplicity never exceeds point degree; all players at
    saturated locations earn one common (and minimal) payoff; consumer
    eccentricity is at most 2*measure/n; when every junction is occupied, no
    half interval exceeds measure/n, and the player nearest each leaf, if
    interior to the leaf's edge, is not alone.
    """
    if not cert.is_nash:
        raise InvalidArgumentError("profile is not a certified equilibrium")
    points = as_points(profile)
    n = len(points)
    total = net.total_measure()
    locs = cells.group_locations(net, points)
    report = {"saturated_payoff": None, "vertex_coverage": has_vertex_coverage(net, profile)}

    rep = attraction(net, profile)
    for loc in locs:
        from .network import degree as point_degree

        if loc.count > point_degree(net, loc.point):
            raise ConsistencyError(f"multiplicity above degree at {key_str(loc.key)}")

    saturated_payoffs = set()
    for loc in locs:
        from .network import degree as point_degree

        if loc.count == point_degree(net, loc.point):
            saturated_payoffs.add(rep.loc_masses[loc.key] / loc.count)
    if saturated_payoffs:
        if len(saturated_payoffs) != 1:
            raise ConsistencyError("saturated locations earn different payoffs")
        common = saturated_payoffs.pop()
        if common > min(rep.payoffs):
            raise ConsistencyError("a saturated player earns above the minimum")
        report["saturated_payoff"] = common

    ecc = consumer_eccentricity(net, profile)
    if ecc > 2 * total / n:
        raise ConsistencyError("consumer eccentricity exceeds 2*measure/n")
    report["eccentricity"] = ecc

    if report["vertex_coverage"]:
        halves = half_intervals(net, profile)
        if halves.max_length() > total / n:
            raise ConsistencyError("a half interval exceeds measure/n")
        report["max_half_interval"] = halves.max_length()

        # the player closest to a leaf, when interior to its edge, is paired
        occupied = {loc.key: loc for loc in locs}
        for leaf in net.leaf_vertices():
            lp = net.vertex_point(leaf)
            best = None
            arg = []
            for loc in locs:
                d = net.distance(lp, loc.point)
                if best is None or d < best:
                    best, arg = d, [loc]
                elif d == best:
                    arg.append(loc)
            eid, _ = net.adjacency[leaf][0]
            for loc in arg:
                if loc.key[0] == "e" and loc.key[1] == eid and loc.count < 2:
                    raise ConsistencyError(
                        f"lone player nearest leaf {net.vertices[leaf]!r}"
                    )
    return report
