"""Constructive pure Nash equilibria for large player counts.

For any normalized network there is a player threshold above which a pure
Nash equilibrium exists and can be written down explicitly: every junction
vertex receives as many players as its degree, and each edge carries an
explicit pattern of pairs and singles whose gaps are multiples of a common
spacing unit. The spacing is chosen so that the implied player count lands
within card(E) of the requested n; the surplus is then removed one player per
edge at designated paired positions, which leaves all gaps (and hence the
equilibrium property) untouched.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from .errors import BelowThresholdError, NormalizationRequiredError
from .exact import ceil_frac, rat_str
from .network import Network, Point
from .payoff import Profile


def player_threshold(net: Network) -> int:
    """Smallest n for which the constructive equilibrium is guaranteed."""
    lengths = [net.edge_length(e) for e in range(net.n_edges)]
    m = min(lengths)
    return 3 * net.n_edges + sum(ceil_frac(5 * l / m) for l in lengths)


def players_required(net: Network, spacing: Fraction) -> int:
    """Players the construction places when the gap unit is ``spacing``."""
    if spacing <= 0:
        raise ValueError("spacing must be positive")
    return 3 * net.n_edges + sum(
        ceil_frac(net.edge_length(e) / (2 * spacing)) for e in range(net.n_edges)
    )


def spacing_breakpoints(net: Network, n: int) -> List[Fraction]:
    """Candidate spacings: every point where players_required can jump,
    sorted from largest to smallest."""
    total = net.total_measure()
    out = set()
    for e in range(net.n_edges):
        length = net.edge_length(e)
        kmax = ceil_frac(length * n / total) + net.n_edges + 1
        for k in range(1, kmax + 1):
            out.add(length / (2 * k))
    return sorted(out, reverse=True)


def choose_spacing(net: Network, n: int) -> Tuple[Fraction, int]:
    """Largest spacing whose implied player count reaches n.

    Returns (spacing, total) where total = players_required(spacing) is the
    smallest attained count >= n; it never exceeds n + card(E).
    """
    if n < player_threshold(net):
        raise BelowThresholdError(
            f"n={n} below the construction threshold {player_threshold(net)}"
        )
    for z in spacing_breakpoints(net, n):
        total = players_required(net, z)
        if total >= n:
            if total > n + net.n_edges:
                raise AssertionError("spacing search overshot the admissible band")
            return z, total
    raise AssertionError("spacing search exhausted its candidate list")


@dataclass
class ConstructionPlan:
    n: int
    spacing: Fraction
    total_players: int
    orientation: Dict[int, Tuple[int, int]]  # edge -> (from-vertex, to-vertex)
    stretch: Dict[int, Fraction]  # per-edge interior gap factor, in [1, 2]
    layout: Dict[int, List[Tuple[Fraction, int]]]  # edge -> [(offset, count)]
    removed: List[Tuple[int, Fraction]]  # (edge, offset of the removed player)
    edge_classes: Tuple[List[int], List[int], List[int]]
    edge_lengths: Dict[int, Fraction]
    full_profile: Profile  # the total_players-player profile before removal
    profile: Profile  # the requested n-player profile

    def to_json(self):
        return {
            "n": self.n,
            "spacing": rat_str(self.spacing),
            "total_players": self.total_players,
            "stretch": {str(e): rat_str(a) for e, a in self.stretch.items()},
            "layout": {
                str(e): [{"offset": rat_str(o), "count": c} for o, c in items]
                for e, items in self.layout.items()
            },
            "removed": [{"edge": e, "offset": rat_str(o)} for e, o in self.removed],
        }


def _edge_layout(kind: str, length: Fraction, xi: Fraction):
    """Interior placements (offset from the oriented start, count) plus the
    stretch factor and the offset of the removable paired player."""
    m = ceil_frac(length / (2 * xi))
    if kind == "jl":  # junction-to-leaf
        stretch = (length - 7 * xi) / (xi * (m - 3))
        spots = [(2 * xi, 2)]
        spots += [(4 * xi + j * stretch * xi, 1) for j in range(m - 2)]
        spots += [(length - xi, 2)]
        removable = 2 * xi
    elif kind == "jj":  # junction-to-junction
        stretch = (length - 6 * xi) / (xi * (m - 2))
        spots = [(2 * xi + j * stretch * xi, 1) for j in range(m - 1)]
        spots += [(length - 2 * xi, 2)]
        removable = length - 2 * xi
    else:  # leaf-to-leaf
        stretch = (length - 8 * xi) / (xi * (m - 4))
        spots = [(xi, 2)]
        spots += [(3 * xi + j * stretch * xi, 1) for j in range(m - 3)]
        spots += [(length - 3 * xi, 2), (length - xi, 2)]
        removable = length - 3 * xi
    return spots, stretch, removable


def build_equilibrium(net: Network, n: int) -> Tuple[Profile, ConstructionPlan]:
    """Build the explicit n-player equilibrium (n >= player_threshold)."""
    if net.degree2_allowed:
        raise NormalizationRequiredError(
            "the construction needs a normalized non-circle network; "
            "use the circle generators for equilibria on the circle"
        )
    e_ii, e_il, e_ll = net.classify_edges()  # raises on stray degree-2 vertices
    return _build_with_spacing(net, n, *choose_spacing(net, n))


def _build_with_spacing(
    net: Network, n: int, xi: Fraction, total: int
) -> Tuple[Profile, ConstructionPlan]:
    e_ii, e_il, e_ll = net.classify_edges()
    points: List[Point] = []
    slot_index: Dict[Tuple[int, Fraction], List[int]] = {}
    for v in net.junction_vertices():
        pt = net.vertex_point(v)
        for _ in range(net.vertex_degree(v)):
            points.append(pt)

    orientation: Dict[int, Tuple[int, int]] = {}
    stretch: Dict[int, Fraction] = {}
    layout: Dict[int, List[Tuple[Fraction, int]]] = {}
    removable: Dict[int, Fraction] = {}
    for eid in range(net.n_edges):
        u, v, length = net.edges[eid]
        if eid in e_il:
            kind = "jl"
            start, end = (u, v) if net.vertex_degree(u) >= 3 else (v, u)
        else:
            kind = "jj" if eid in e_ii else "ll"
            start, end = (u, v) if u <= v else (v, u)
        orientation[eid] = (start, end)
        spots, alpha, rem = _edge_layout(kind, length, xi)
        if not (1 <= alpha <= 2):
            raise AssertionError(f"edge {eid}: stretch {alpha} outside [1, 2]")
        stretch[eid] = alpha
        layout[eid] = spots
        removable[eid] = rem
        for off, count in spots:
            a = off / length if start == u else 1 - off / length
            pt = Point(eid, a)
            for _ in range(count):
                slot_index.setdefault((eid, off), []).append(len(points))
                points.append(pt)

    if len(points) != total:
        raise AssertionError("construction produced a wrong player count")

    removed: List[Tuple[int, Fraction]] = []
    to_drop = set()
    for eid in range(total - n):
        off = removable[eid]
        to_drop.add(slot_index[(eid, off)][0])
        removed.append((eid, off))
    full_profile = Profile(points)
    profile = Profile([p for i, p in enumerate(points) if i not in to_drop])

    plan = ConstructionPlan(
        n=n,
        spacing=xi,
        total_players=total,
        orientation=orientation,
        stretch=stretch,
        layout=layout,
        removed=removed,
        edge_classes=(e_ii, e_il, e_ll),
        edge_lengths={e: net.edge_length(e) for e in range(net.n_edges)},
        full_profile=full_profile,
        profile=profile,
    )
    return profile, plan


def constructed_cost(plan: ConstructionPlan) -> Fraction:
    """Closed-form consumer cost of the constructed layout.

    Removing the designated paired players changes no gap, so the value also
    equals the cost of the final n-player profile.
    """
    xi = plan.spacing
    e_ii, e_il, e_ll = plan.edge_classes
    xi2 = xi * xi
    total = Fraction(0)
    for eid, alpha in sorted(plan.stretch.items()):
        m = ceil_frac(plan.edge_lengths[eid] / (2 * xi))
        run = alpha * alpha * xi2 / 4
        if eid in e_il:
            total += 7 * xi2 / 2 + (m - 3) * run
        elif eid in e_ii:
            total += 6 * xi2 / 2 + (m - 2) * run
        else:
            total += 8 * xi2 / 2 + (m - 4) * run
    return total
