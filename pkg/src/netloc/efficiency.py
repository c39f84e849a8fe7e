"""Efficiency of equilibria: bounds, optimum search, anarchy/stability report.

The anarchy and stability ratios over all equilibria are not computable in
general, so the report returns estimates built from verified equilibria
(constructed layouts, closed forms on recognized shapes, and alternate-spacing
variants) together with a certified bracket: the worst-found ratio from below
and the closed-form bound from above.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import examples as ex
from .construct import (
    _build_with_spacing,
    build_equilibrium,
    choose_spacing,
    player_threshold,
    players_required,
    spacing_breakpoints,
)
from .errors import BelowThresholdError, InvalidArgumentError, NetlocError
from .exact import rat_str
from .network import Network, Point
from .payoff import Profile, ProfileLike, as_points, attraction, social_cost
from .verify import is_nash


def _junction_edge_counts(net: Network) -> Tuple[int, int]:
    if net.degree2_allowed:
        return 0, 0
    e_ii, e_il, _ = net.classify_edges()
    return len(e_ii), len(e_il)


def anarchy_bound(net: Network, n: int) -> Fraction:
    """Closed-form upper bound on the anarchy ratio; tends to 2."""
    if n < 1:
        raise InvalidArgumentError("n >= 1 required")
    n_ii, n_il = _junction_edge_counts(net)
    return Fraction(4 * n + 4 * n_ii + 2 * n_il, 2 * n)


def opt_lower_bound(net: Network, n: int) -> Fraction:
    """Certified lower bound on the optimal consumer cost."""
    if n < 1:
        raise InvalidArgumentError("n >= 1 required")
    n_ii, n_il = _junction_edge_counts(net)
    total = net.total_measure()
    return total * total / (2 * (2 * n + 2 * n_ii + n_il))


def equilibrium_cost_bound(net: Network, n: int) -> Fraction:
    """Upper bound on the cost of any junction-covering equilibrium."""
    if n < 1:
        raise InvalidArgumentError("n >= 1 required")
    total = net.total_measure()
    return total * total / (2 * n)


def majorizes(a: Sequence[Fraction], b: Sequence[Fraction]) -> bool:
    """True when a is majorized by b (prefix sums of the decreasing
    rearrangements dominate). Shorter vectors are zero-padded."""
    aa = sorted((Fraction(x) for x in a), reverse=True)
    bb = sorted((Fraction(x) for x in b), reverse=True)
    size = max(len(aa), len(bb))
    aa += [Fraction(0)] * (size - len(aa))
    bb += [Fraction(0)] * (size - len(bb))
    if sum(aa) != sum(bb):
        raise InvalidArgumentError("majorization needs equal sums")
    pa, pb = Fraction(0), Fraction(0)
    for x, y in zip(aa, bb):
        pa += x
        pb += y
        if pa > pb:
            return False
    return True


# -- social optimum search ---------------------------------------------------


def _dist_integral(net: Network, y: Point, eid: int, lo: Fraction, hi: Fraction) -> Fraction:
    """Exact integral of z -> d(y, z) over a sub-interval of one edge."""
    if hi <= lo:
        return Fraction(0)
    u, v, length = net.edges[eid]
    D = net.vertex_distances()
    yv = net.point_vertex(y)
    cuts = {lo, hi}
    # distance-to-y on this edge is a min of a few +/-1-slope lines; its kinks
    # lie at pairwise crossings of those lines
    c_plus = [net.dist_vertex_point(u, y)]
    c_minus = [net.dist_vertex_point(v, y)]
    lines = [(c, 1) for c in c_plus] + [(length + c, -1) for c in c_minus]
    if y.edge == eid and yv is None:
        t = net.position(y)
        lines += [(-t, 1), (t, -1)]
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            (c1, s1), (c2, s2) = lines[i], lines[j]
            if s1 == s2:
                continue
            cross = Fraction(c2 - c1, s1 - s2)
            if lo < cross < hi:
                cuts.add(cross)
    pts = sorted(cuts)
    total = Fraction(0)
    for a, b in zip(pts, pts[1:]):
        da = net.distance(y, net.point_at(eid, a))
        db = net.distance(y, net.point_at(eid, b))
        total += (da + db) * (b - a) / 2
    return total


def _own_cell_cost(net: Network, rep, key, y: Point) -> Fraction:
    total = Fraction(0)
    for iv, w in rep.cells[key]:
        length = net.edge_length(iv.edge)
        total += w * _dist_integral(net, y, iv.edge, iv.lo * length, iv.hi * length)
    return total


def _quantile_start(net: Network, n: int) -> Profile:
    total = net.total_measure()
    pts = []
    cum = []
    acc = Fraction(0)
    for e in range(net.n_edges):
        cum.append(acc)
        acc += net.edge_length(e)
    for i in range(1, n + 1):
        target = Fraction(2 * i - 1, 2 * n) * total
        eid = 0
        for e in range(net.n_edges):
            if cum[e] <= target and (e == net.n_edges - 1 or cum[e + 1] > target):
                eid = e
                break
        pts.append(net.point_at(eid, target - cum[eid]))
    return Profile(pts)


def _random_start(net: Network, n: int, rng: random.Random) -> Profile:
    weights = [float(net.edge_length(e)) for e in range(net.n_edges)]
    pts = []
    for _ in range(n):
        eid = rng.choices(range(net.n_edges), weights=weights)[0]
        alpha = Fraction(rng.randrange(1, 48), 48)
        pts.append(Point(eid, alpha))
    return Profile(pts)


def _descend(net: Network, profile: Profile, iters: int) -> Tuple[Profile, Fraction]:
    """Coordinate descent: relocate each player to the best candidate inside
    her own attraction cell (endpoints, midpoints, vertices, current spot)."""
    points = list(as_points(profile))
    for _ in range(iters):
        moved = False
        for i in range(len(points)):
            rep = attraction(net, points)
            key = net.locate(points[i])
            cands: List[Point] = [points[i]]
            for iv, _w in rep.cells[key]:
                length = net.edge_length(iv.edge)
                for pos in (iv.lo, iv.hi, (iv.lo + iv.hi) / 2):
                    cands.append(Point(iv.edge, pos))
            for v in range(net.n_vertices):
                cands.append(net.vertex_point(v))
            best_y = points[i]
            best_f = _own_cell_cost(net, rep, key, points[i])
            for y in cands:
                f = _own_cell_cost(net, rep, key, y)
                if f < best_f:
                    best_f, best_y = f, y
            if not net.points_equal(best_y, points[i]):
                points[i] = best_y
                moved = True
        if not moved:
            break
    return Profile(points), social_cost(net, points)


def empirical_optimum(
    net: Network,
    n: int,
    seed: int = 0,
    starts: int = 4,
    iters: int = 60,
    threads: int = 1,
) -> Tuple[Profile, Fraction]:
    """Best profile found by multistart coordinate descent (deterministic
    under the seed). The first start places players at arc-length quantiles,
    which is already optimal on the segment and the circle. Starts are
    independent; `threads` caps how many run concurrently."""
    if n < 1:
        raise InvalidArgumentError("n >= 1 required")
    rng = random.Random(seed)
    initial = []
    for s in range(max(1, starts)):
        initial.append(_quantile_start(net, n) if s == 0 else _random_start(net, n, rng))
    if threads > 1 and len(initial) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda p: _descend(net, p, iters), initial))
    else:
        results = [_descend(net, p, iters) for p in initial]
    best: Optional[Tuple[Fraction, str, Profile]] = None
    for prof, cost in results:
        tag = repr(prof.to_json())
        if best is None or (cost, tag) < (best[0], best[1]):
            best = (cost, tag, prof)
    return best[2], best[0]


# -- equilibrium candidates ---------------------------------------------------


def _as_cycle(net: Network):
    if not (net.degree2_allowed and net.n_vertices == 2 and net.n_edges == 2):
        return None
    return net


def _cycle_arc_point(net: Network, arc: Fraction) -> Point:
    per = net.total_measure()
    arc = arc % per
    u0, v0, l0 = net.edges[0]
    if arc <= l0:
        return net.point_at(0, arc)
    u1, v1, l1 = net.edges[1]
    rem = arc - l0  # distance from v0 along the return edge
    return net.point_at(1, rem if u1 == v0 else l1 - rem)


def _cycle_candidates(net: Network, n: int) -> List[Tuple[str, Profile]]:
    per = net.total_measure()
    out = []
    tilde = [_cycle_arc_point(net, Fraction(i, n) * per) for i in range(1, n + 1)]
    out.append(("cycle-even-singles", Profile(tilde)))
    if n % 2 == 0:
        pts = []
        for i in range(1, n // 2 + 1):
            pt = _cycle_arc_point(net, Fraction(2 * i, n) * per)
            pts += [pt, pt]
        out.append(("cycle-pairs", Profile(pts)))
    elif n >= 3:
        pts = []
        for i in range(1, (n - 1) // 2 + 1):
            pt = _cycle_arc_point(net, Fraction(2 * i, n + 1) * per)
            pts += [pt, pt]
        pts.append(_cycle_arc_point(net, per))
        out.append(("cycle-pairs-one-single", Profile(pts)))
    return out


def _segment_candidates(net: Network, n: int) -> List[Tuple[str, Profile]]:
    if not (net.n_edges == 1 and net.vertex_degree(0) == 1 and net.vertex_degree(1) == 1):
        return []
    profs = ex.segment_profiles(n)
    out = []
    for name in ("tilde", "hat", "hat_ell"):
        if name in profs:
            out.append((f"segment-{name}", Profile(list(profs[name]["profile"]))))
    if n == 2:
        out.append(("segment-center-pair", Profile([Point(0, Fraction(1, 2))] * 2)))
    return out


def _star_shape(net: Network):
    junctions = net.junction_vertices()
    if len(junctions) != 1:
        return None
    c = junctions[0]
    if net.vertex_degree(c) != net.n_edges:
        return None
    lengths = {net.edge_length(e) for e in range(net.n_edges)}
    if len(lengths) != 1:
        return None
    for u, v, _ in net.edges:
        if c not in (u, v):
            return None
        other = v if u == c else u
        if net.vertex_degree(other) != 1:
            return None
    return c


def _remap_star(net: Network, center: int, canonical: Profile) -> Profile:
    pts = []
    for p in canonical:
        u, v, _ = net.edges[p.edge]
        dist = p.alpha  # canonical stars measure alpha from the center
        pts.append(Point(p.edge, dist if u == center else 1 - dist))
    return Profile(pts)


def _star_candidates(net: Network, n: int) -> List[Tuple[str, Profile]]:
    center = _star_shape(net)
    if center is None:
        return []
    k = net.n_edges
    out = []
    res = ex.star_equilibrium(k, n)
    if isinstance(res, ex.StarEquilibrium):
        out.append((f"star-{res.kind}", _remap_star(net, center, res.profile)))
        if res.kind == "family" and res.xi_lo != res.xi_hi:
            for tag, xi in (("lo", res.xi_lo), ("hi", res.xi_hi)):
                fam = ex.star_family_profile(k, n, xi)
                out.append((f"star-family-{tag}", _remap_star(net, center, fam.profile)))
    if k == 3 and n >= 9 and n % 6 == 3:
        b = (n // 3 - 1) // 2
        if b >= 1:
            rem = ex.star_remark_profiles(b)
            out.append(("star-paired-worst", _remap_star(net, center, rem["worst_eq"]["profile"])))
    if k == 3 and n >= 7 and n % 6 == 1:
        b = (n - 1) // 6
        if b >= 1:
            rem = ex.star_remark_profiles(b)
            out.append(("star-paired-worst-odd", _remap_star(net, center, rem["worst_eq_2"]["profile"])))
    return out


def _construction_candidates(net: Network, n: int) -> List[Tuple[str, Profile]]:
    if net.degree2_allowed or n < player_threshold(net):
        return []
    out = []
    seen_totals = set()
    for z in spacing_breakpoints(net, n):
        total = players_required(net, z)
        if total < n:
            continue
        if total > n + net.n_edges:
            break
        if total in seen_totals:
            continue
        seen_totals.add(total)
        try:
            prof, _plan = _build_with_spacing(net, n, z, total)
        except AssertionError:
            continue
        out.append((f"construction-{total}", prof))
    return out


@dataclass
class EfficiencyReport:
    n: int
    lambda_total: Fraction
    opt_lower_bound: Fraction
    eq_cost_upper_bound: Fraction
    phi_n: Fraction
    empirical_opt_cost: Fraction
    empirical_opt_profile: Profile
    poa_estimate: Fraction
    pos_estimate: Fraction
    seed: int
    equilibria: List[Tuple[str, Fraction]]
    worst_equilibrium: Profile
    best_equilibrium: Profile

    def to_json(self):
        return {
            "n": self.n,
            "lambda_total": rat_str(self.lambda_total),
            "opt_lower_bound": rat_str(self.opt_lower_bound),
            "eq_cost_upper_bound": rat_str(self.eq_cost_upper_bound),
            "phi_n": rat_str(self.phi_n),
            "empirical_opt_cost": rat_str(self.empirical_opt_cost),
            "empirical_opt_profile": self.empirical_opt_profile.to_json(),
            "poa_estimate": rat_str(self.poa_estimate),
            "pos_estimate": rat_str(self.pos_estimate),
            "poa_certified_upper": rat_str(self.phi_n),
            "seed": self.seed,
            "equilibria": [
                {"name": name, "cost": rat_str(c)} for name, c in self.equilibria
            ],
        }


def efficiency_report(
    net: Network,
    n: int,
    seed: int = 0,
    starts: int = 4,
    iters: int = 60,
    threads: int = 1,
) -> EfficiencyReport:
    """Anarchy/stability estimates from verified equilibria.

    poa_estimate = worst verified equilibrium cost / best profile found; it is
    a certified lower bound on the true anarchy ratio, with phi_n the
    certified upper companion. pos_estimate mirrors it with the best verified
    equilibrium.
    """
    candidates: List[Tuple[str, Profile]] = []
    if _as_cycle(net) is not None:
        candidates += _cycle_candidates(net, n)
    candidates += _segment_candidates(net, n)
    candidates += _star_candidates(net, n)
    candidates += _construction_candidates(net, n)

    verified: List[Tuple[str, Profile, Fraction]] = []
    seen = set()
    for name, prof in candidates:
        tag = tuple(sorted((p.edge, p.alpha) for p in prof))
        if tag in seen:
            continue
        seen.add(tag)
        if len(prof) != n:
            continue
        if is_nash(net, prof).is_nash:
            verified.append((name, prof, social_cost(net, prof)))
    if not verified:
        raise BelowThresholdError(
            f"no verified equilibrium available for n={n} on this network"
        )

    opt_prof, opt_cost = empirical_optimum(
        net, n, seed=seed, starts=starts, iters=iters, threads=threads
    )
    for _name, prof, cost in verified:
        if cost < opt_cost:
            opt_prof, opt_cost = prof, cost

    worst = max(verified, key=lambda t: t[2])
    best = min(verified, key=lambda t: t[2])
    return EfficiencyReport(
        n=n,
        lambda_total=net.total_measure(),
        opt_lower_bound=opt_lower_bound(net, n),
        eq_cost_upper_bound=equilibrium_cost_bound(net, n),
        phi_n=anarchy_bound(net, n),
        empirical_opt_cost=opt_cost,
        empirical_opt_profile=opt_prof,
        poa_estimate=worst[2] / opt_cost,
        pos_estimate=best[2] / opt_cost,
        seed=seed,
        equilibria=[(name, cost) for name, _p, cost in verified],
        worst_equilibrium=worst[1],
        best_equilibrium=best[1],
    )
