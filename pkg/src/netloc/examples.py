"""Canonical networks (segment, circle, star) and their closed-form profiles.

Profiles returned here come with exact closed-form costs; the test suite
checks both the costs (against the exact integrator) and the equilibrium
property (against the verifier).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .errors import InvalidArgumentError
from .exact import rat, rat_str
from .network import Network, Point
from .payoff import Profile


def make_segment() -> Network:
    """The unit segment: one edge joining two leaves."""
    return Network(["a", "b"], [("a", "b", 1)])


def make_circle(perimeter=1) -> Network:
    """A circle of given perimeter: two parallel half-perimeter edges."""
    per = rat(perimeter)
    if per <= 0:
        raise InvalidArgumentError("perimeter must be positive")
    half = per / 2
    return Network(
        ["a", "b"], [("a", "b", half), ("a", "b", half)], degree2_allowed=True
    )


def make_star(k: int) -> Network:
    """A star with k unit-length rays around a central vertex."""
    if k < 3:
        raise InvalidArgumentError("a star needs k >= 3 rays")
    names = ["c"] + [f"l{i}" for i in range(1, k + 1)]
    edges = [("c", f"l{i}", 1) for i in range(1, k + 1)]
    return Network(names, edges)


def circle_point(net: Network, arc) -> Point:
    """Point at a given arc position on a circle built by make_circle.

    Arc 0 sits at vertex "a"; edge 0 covers the first half of the perimeter,
    edge 1 the way back.
    """
    per = net.total_measure()
    arc = rat(arc) % per
    half = per / 2
    if arc <= half:
        return Point(0, arc / half)
    return Point(1, (per - arc) / half)


def circle_profiles(n: int, perimeter=1) -> Dict[str, dict]:
    """Named equilibrium profiles on the circle.

    tilde: n evenly spaced singles (best equilibrium and social optimum).
    hat (n even): n/2 evenly spaced pairs (worst equilibrium).
    breve (n odd): (n-1)/2 pairs plus one single, evenly spaced (worst).
    """
    if n < 1:
        raise InvalidArgumentError("n must be positive")
    net = make_circle(perimeter)
    per = net.total_measure()
    out: Dict[str, dict] = {"network": net}
    tilde = [circle_point(net, Fraction(i, n) * per) for i in range(1, n + 1)]
    out["tilde"] = {"profile": Profile(tilde), "cost": per * per / (4 * n)}
    if n % 2 == 0:
        pts = []
        for i in range(1, n // 2 + 1):
            pt = circle_point(net, Fraction(2 * i, n) * per)
            pts += [pt, pt]
        out["hat"] = {"profile": Profile(pts), "cost": per * per / (2 * n)}
    elif n >= 3:
        pts = []
        for i in range(1, (n - 1) // 2 + 1):
            pt = circle_point(net, Fraction(2 * i, n + 1) * per)
            pts += [pt, pt]
        pts.append(circle_point(net, per))
        out["breve"] = {"profile": Profile(pts), "cost": per * per / (2 * (n + 1))}
    return out


def _seg_pt(x) -> Point:
    return Point(0, Fraction(x))


def segment_profiles(n: int, ell: Optional[int] = None) -> Dict[str, dict]:
    """Named profiles on the unit segment.

    opt: the social optimum (not an equilibrium for n >= 3).
    tilde (n >= 4): best equilibrium, paired at both ends.
    hat (n even): worst equilibrium, all players paired.
    hat_ell (n odd >= 5): worst equilibrium with one unpaired player; the
    parameter picks which run hosts the single (default 2 when possible).
    """
    if n < 1:
        raise InvalidArgumentError("n must be positive")
    out: Dict[str, dict] = {"network": make_segment()}
    out["opt"] = {
        "profile": Profile(
            [_seg_pt(Fraction(2 * i - 1, 2 * n)) for i in range(1, n + 1)]
        ),
        "cost": Fraction(1, 4 * n),
    }
    if n >= 4:
        pts = [_seg_pt(Fraction(1, 2 * n - 4))] * 2
        pts += [_seg_pt(Fraction(2 * i - 3, 2 * n - 4)) for i in range(3, n - 1)]
        pts += [_seg_pt(Fraction(2 * n - 5, 2 * n - 4))] * 2
        out["tilde"] = {"profile": Profile(pts), "cost": Fraction(1, 4 * (n - 2))}
    if n % 2 == 0:
        pts = []
        for i in range(1, n // 2 + 1):
            pts += [_seg_pt(Fraction(2 * i - 1, n))] * 2
        out["hat"] = {"profile": Profile(pts), "cost": Fraction(1, 2 * n)}
    if n % 2 == 1 and n >= 5:
        lmax = (n - 3) // 2
        pick = min(2, lmax) if ell is None else int(ell)
        if not (1 <= pick <= lmax):
            raise InvalidArgumentError(f"ell must lie in [1, {lmax}] for n={n}")
        pts = []
        for i in range(1, pick + 1):
            pts += [_seg_pt(Fraction(2 * i - 1, n + 1))] * 2
        pts.append(_seg_pt(Fraction(2 * pick + 1, n + 1)))
        for i in range(pick + 1, (n - 1) // 2 + 1):
            pts += [_seg_pt(Fraction(2 * i + 1, n + 1))] * 2
        out["hat_ell"] = {
            "profile": Profile(pts),
            "cost": Fraction(1, 2 * (n + 1)),
            "ell": pick,
        }
    return out


@dataclass
class StarEquilibrium:
    """An equilibrium on the star, with the family parameters when relevant.

    Family profiles use the shifted division n = m*k + r with r in [1, k]:
    r players at the center, and on every ray a pair one spacing unit from
    the leaf followed by m-2 singles two units apart, the innermost at
    distance y = 1 - (2m-3)*xi from the center.
    """

    kind: str  # "all-center" | "unique-3k" | "family"
    profile: Profile
    xi: Optional[Fraction] = None
    m: Optional[int] = None
    r: Optional[int] = None
    y: Optional[Fraction] = None
    xi_lo: Optional[Fraction] = None
    xi_hi: Optional[Fraction] = None

    def to_json(self):
        out = {"kind": self.kind, "profile": self.profile.to_json()}
        for name in ("xi", "y", "xi_lo", "xi_hi"):
            v = getattr(self, name)
            if v is not None:
                out[name] = rat_str(v)
        for name in ("m", "r"):
            v = getattr(self, name)
            if v is not None:
                out[name] = v
        return out


@dataclass
class NoEquilibrium:
    """Marker result: the game on this star has no pure equilibrium."""

    k: int
    n: int

    def to_json(self):
        return {"kind": "none", "k": self.k, "n": self.n}


def star_center(net: Network) -> Point:
    return net.vertex_point(0)


def _ray_pt(net: Network, ray: int, dist_from_center) -> Point:
    # make_star orients every edge from the center, so alpha = distance
    return Point(ray, Fraction(dist_from_center))


def _star_shifted_division(k: int, n: int) -> Tuple[int, int]:
    m, r = divmod(n, k)
    if r == 0:
        m, r = m - 1, k
    return m, r


def star_family_interval(k: int, m: int, r: int) -> Tuple[Fraction, Fraction]:
    """Admissible spacing range for the m-per-ray, r-at-center family."""
    if r == k:
        x = Fraction(1, 2 * m - 1)
        return x, x
    lo = Fraction(k, 2 * (r + 1) + 2 * k * m - 3 * k)
    hi = Fraction(k, 2 * r + 2 * k * m - 3 * k)
    return lo, hi


def star_family_profile(k: int, n: int, xi: Fraction) -> StarEquilibrium:
    """The spacing-parameterized star profile (n >= 3k+1)."""
    net = make_star(k)
    m, r = _star_shifted_division(k, n)
    xi = Fraction(xi)
    y = 1 - (2 * m - 3) * xi
    if y <= 0 or xi <= 0 or 1 - xi <= y + 2 * (m - 3) * xi:
        raise InvalidArgumentError(f"spacing {xi} breaks the ray layout for n={n}")
    pts: List[Point] = [star_center(net)] * r
    for ray in range(k):
        pts += [_ray_pt(net, ray, 1 - xi)] * 2
        for t in range(m - 2):
            pts.append(_ray_pt(net, ray, y + 2 * t * xi))
    lo, hi = star_family_interval(k, m, r)
    return StarEquilibrium(
        kind="family",
        profile=Profile(pts),
        xi=xi,
        m=m,
        r=r,
        y=y,
        xi_lo=lo,
        xi_hi=hi,
    )


def star_equilibrium(k: int, n: int, xi: Optional[Fraction] = None):
    """Equilibria of the star game, by player-count regime.

    n <= k: all players at the center (the unique equilibrium).
    k < n < 3k-1: no pure equilibrium exists (a NoEquilibrium marker).
    3k-1 <= n <= 3k: the unique profile: a pair two-thirds out on every ray,
    the rest central.
    n >= 3k+1: a one-parameter family; pass xi or get the midpoint of the
    admissible range.
    """
    if k < 3:
        raise InvalidArgumentError("k >= 3 required")
    if n < 2:
        raise InvalidArgumentError("n >= 2 required")
    net = make_star(k)
    center = star_center(net)
    if n <= k:
        return StarEquilibrium(kind="all-center", profile=Profile([center] * n))
    if n < 3 * k - 1:
        return NoEquilibrium(k=k, n=n)
    if n <= 3 * k:
        pts = [center] * (n - 2 * k)
        for ray in range(k):
            pts += [_ray_pt(net, ray, Fraction(2, 3))] * 2
        return StarEquilibrium(kind="unique-3k", profile=Profile(pts))
    m, r = _star_shifted_division(k, n)
    lo, hi = star_family_interval(k, m, r)
    if xi is None:
        xi = (lo + hi) / 2
    return star_family_profile(k, n, Fraction(xi))


def star_remark_profiles(b: int) -> Dict[str, dict]:
    """Star profiles showing the anarchy ratio straddling 2 on S_3.

    For n = 3(2b+1): the worst equilibrium (b pairs per ray, 3 central) and a
    good non-equilibrium configuration; their cost ratio exceeds 2 for b > 2.
    For n = 6b+1: the worst equilibrium and the optimum; the ratio is
    (4b+1)/(2b+1) < 2.
    """
    if b < 1:
        raise InvalidArgumentError("b >= 1 required")
    net = make_star(3)
    center = star_center(net)
    out: Dict[str, dict] = {"network": net, "b": b}

    n1 = 3 * (2 * b + 1)
    pts = [center] * 3
    for ray in range(3):
        for j in range(1, b + 1):
            pts += [_ray_pt(net, ray, Fraction(2 * j, 2 * b + 1))] * 2
    out["worst_eq"] = {"profile": Profile(pts), "cost": Fraction(3, 4 * b + 2), "n": n1}

    pts = [center]
    for ray in range(2):
        for j in range(1, 2 * b + 2):
            pts.append(_ray_pt(net, ray, Fraction(2 * j, 4 * b + 3)))
    for j in range(1, 2 * b + 1):
        pts.append(_ray_pt(net, 2, Fraction(2 * j, 4 * b + 1)))
    out["good_cfg"] = {
        "profile": Profile(pts),
        "cost": Fraction(1, 4 * b + 3) + Fraction(1, 8 * b + 2),
        "n": n1,
    }
    out["poa_lower_bound"] = out["worst_eq"]["cost"] / out["good_cfg"]["cost"]

    n2 = 6 * b + 1
    pts = [center] * 2
    for ray in range(2):
        for j in range(1, b + 1):
            pts += [_ray_pt(net, ray, Fraction(2 * j, 2 * b + 1))] * 2
    for j in range(1, b):
        pts += [_ray_pt(net, 2, Fraction(2 * j, 2 * b + 1))] * 2
    pts.append(_ray_pt(net, 2, Fraction(2 * b, 2 * b + 1)))
    out["worst_eq_2"] = {
        "profile": Profile(pts),
        "cost": Fraction(3, 2 * (2 * b + 1)),
        "n": n2,
    }

    pts = [center]
    for ray in range(3):
        for j in range(1, 2 * b + 1):
            pts.append(_ray_pt(net, ray, Fraction(2 * j, 4 * b + 1)))
    out["opt_2"] = {
        "profile": Profile(pts),
        "cost": Fraction(3, 2 * (4 * b + 1)),
        "n": n2,
    }
    out["poa_2"] = out["worst_eq_2"]["cost"] / out["opt_2"]["cost"]
    return out
