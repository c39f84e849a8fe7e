"""Metric measurable networks built from weighted multigraphs.

A network is a finite connected multigraph with positive rational edge
lengths. Each edge is treated as a segment of its length; the union carries
the shortest-path metric and the arc-length measure. Points are addressed as
(edge, alpha) with alpha in [0, 1] measured from the edge's first endpoint,
so (edge, 0) is the first endpoint and (edge, 1) the second. A point with
alpha in {0, 1} is resolved to its vertex before any comparison, which makes
equality across parallel edges structural rather than numeric.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple, Union

from .errors import (
    InvalidNetworkError,
    InvalidPointError,
    NormalizationRequiredError,
)
from .exact import rat, rat_str

# Canonical location key: ("v", vertex_index) or ("e", edge_index, alpha).
LocKey = Union[Tuple[str, int], Tuple[str, int, Fraction]]


@dataclass(frozen=True, order=True)
class Point:
    """A location on a network: edge index plus barycentric coordinate."""

    edge: int
    alpha: Fraction

    def to_json(self):
        return {"edge": self.edge, "alpha": rat_str(self.alpha)}

    @staticmethod
    def from_json(obj) -> "Point":
        return Point(int(obj["edge"]), rat(obj["alpha"]))


@dataclass(frozen=True, order=True)
class Interval:
    """A sub-interval of one edge, in barycentric coordinates."""

    edge: int
    lo: Fraction
    hi: Fraction

    def to_json(self):
        return {"edge": self.edge, "lo": rat_str(self.lo), "hi": rat_str(self.hi)}


class Network:
    """Immutable weighted multigraph with exact metric and measure.

    Parallel edges are permitted, self-loops are not (pre-split them by
    inserting a vertex). ``degree2_allowed`` marks the two-vertex cycle used
    to represent a circle, where degree-2 suppression is deliberately skipped.
    """

    def __init__(self, vertices: Sequence[str], edges: Iterable, degree2_allowed: bool = False):
        self.vertices: Tuple[str, ...] = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise InvalidNetworkError("duplicate vertex ids")
        self._vindex = {v: i for i, v in enumerate(self.vertices)}
        parsed = []
        for e in edges:
            if isinstance(e, dict):
                u, v, length = e["u"], e["v"], rat(e["length"])
            else:
                u, v, length = e[0], e[1], rat(e[2])
            if u not in self._vindex or v not in self._vindex:
                raise InvalidNetworkError(f"edge ({u},{v}) references unknown vertex")
            if u == v:
                raise InvalidNetworkError(
                    f"self-loop at {u!r} not supported; pre-split it with an extra vertex"
                )
            if length <= 0:
                raise InvalidNetworkError(f"edge ({u},{v}) has non-positive length")
            parsed.append((self._vindex[u], self._vindex[v], length))
        self.edges: Tuple[Tuple[int, int, Fraction], ...] = tuple(parsed)
        self.degree2_allowed = bool(degree2_allowed)
        if not self.vertices:
            raise InvalidNetworkError("empty network")
        self.adjacency = tuple(
            tuple(
                (eid, (v if u == i else u))
                for eid, (u, v, _) in enumerate(self.edges)
                if i in (u, v)
            )
            for i in range(len(self.vertices))
        )
        self._check_connected()
        self._dist = None  # vertex distance matrix, computed lazily

    # -- basic structure ----------------------------------------------------

    def _check_connected(self):
        if len(self.vertices) == 1:
            if not self.edges:
                raise InvalidNetworkError("a network needs at least one edge")
            return
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for _, w in self.adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(self.vertices):
            raise InvalidNetworkError("network is not connected")

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def vertex_index(self, name: str) -> int:
        try:
            return self._vindex[name]
        except KeyError:
            raise InvalidPointError(f"unknown vertex {name!r}") from None

    def edge_length(self, eid: int) -> Fraction:
        return self.edges[eid][2]

    def vertex_degree(self, vid: int) -> int:
        return len(self.adjacency[vid])

    def total_measure(self) -> Fraction:
        return sum((length for _, _, length in self.edges), Fraction(0))

    # -- points -------------------------------------------------------------

    def check_point(self, p: Point) -> None:
        if not (0 <= p.edge < len(self.edges)):
            raise InvalidPointError(f"point on unknown edge {p.edge}")
        if not (0 <= p.alpha <= 1):
            raise InvalidPointError(f"alpha {p.alpha} outside [0, 1]")

    def point_vertex(self, p: Point) -> Optional[int]:
        """Vertex index if the point sits on a vertex, else None."""
        self.check_point(p)
        u, v, _ = self.edges[p.edge]
        if p.alpha == 0:
            return u
        if p.alpha == 1:
            return v
        return None

    def locate(self, p: Point) -> LocKey:
        """Canonical location key; all representations of a vertex coincide."""
        vid = self.point_vertex(p)
        if vid is not None:
            return ("v", vid)
        return ("e", p.edge, p.alpha)

    def point_of(self, key: LocKey) -> Point:
        if key[0] == "v":
            return self.vertex_point(key[1])
        return Point(key[1], key[2])

    def vertex_point(self, vid: int) -> Point:
        eid, _ = self.adjacency[vid][0]
        u, v, _ = self.edges[eid]
        return Point(eid, Fraction(0) if u == vid else Fraction(1))

    def points_equal(self, p: Point, q: Point) -> bool:
        return self.locate(p) == self.locate(q)

    def position(self, p: Point) -> Fraction:
        """Arc-length offset of the point from the edge's first endpoint."""
        self.check_point(p)
        return p.alpha * self.edge_length(p.edge)

    def point_at(self, eid: int, pos: Fraction) -> Point:
        length = self.edge_length(eid)
        if not (0 <= pos <= length):
            raise InvalidPointError(f"offset {pos} outside edge {eid} of length {length}")
        return Point(eid, Fraction(pos) / length)

    # -- metric -------------------------------------------------------------

    def vertex_distances(self):
        """All-pairs shortest-path distances between vertices (exact)."""
        if self._dist is not None:
            return self._dist
        n = len(self.vertices)
        inf = None
        dist = [[inf] * n for _ in range(n)]
        for i in range(n):
            dist[i][i] = Fraction(0)
        for u, v, length in self.edges:
            if dist[u][v] is None or length < dist[u][v]:
                dist[u][v] = length
                dist[v][u] = length
        for k in range(n):
            dk = dist[k]
            for i in range(n):
                dik = dist[i][k]
                if dik is None:
                    continue
                di = dist[i]
                for j in range(n):
                    dkj = dk[j]
                    if dkj is None:
                        continue
                    alt = dik + dkj
                    if di[j] is None or alt < di[j]:
                        di[j] = alt
        self._dist = dist
        return dist

    def dist_vertex_point(self, vid: int, p: Point) -> Fraction:
        pv = self.point_vertex(p)
        D = self.vertex_distances()
        if pv is not None:
            return D[vid][pv]
        u, v, length = self.edges[p.edge]
        s = self.position(p)
        return min(D[vid][u] + s, D[vid][v] + (length - s))

    def distance(self, p: Point, q: Point) -> Fraction:
        """Length of the shortest path joining two points."""
        self.check_point(p)
        self.check_point(q)
        pv, qv = self.point_vertex(p), self.point_vertex(q)
        D = self.vertex_distances()
        if pv is not None:
            return self.dist_vertex_point(pv, q)
        if qv is not None:
            return self.dist_vertex_point(qv, p)
        ue, ve, le = self.edges[p.edge]
        uf, vf, lf = self.edges[q.edge]
        s, t = self.position(p), self.position(q)
        best = min(
            s + D[ue][uf] + t,
            s + D[ue][vf] + (lf - t),
            (le - s) + D[ve][uf] + t,
            (le - s) + D[ve][vf] + (lf - t),
        )
        if p.edge == q.edge:
            best = min(best, abs(s - t))
        return best

    # -- classification -----------------------------------------------------

    def junction_vertices(self):
        """Vertices of degree >= 3."""
        return [i for i in range(self.n_vertices) if self.vertex_degree(i) >= 3]

    def leaf_vertices(self):
        return [i for i in range(self.n_vertices) if self.vertex_degree(i) == 1]

    def classify_edges(self):
        """Partition edges by endpoint type: (junction-junction, junction-leaf,
        leaf-leaf). Requires a normalized network; the two-vertex circle is the
        one degree-2 case allowed through, and it has no edges of any class."""
        has_deg2 = any(self.vertex_degree(i) == 2 for i in range(self.n_vertices))
        if has_deg2 and not self.degree2_allowed:
            raise NormalizationRequiredError(
                "network has degree-2 vertices; call normalize() first"
            )
        e_ii, e_il, e_ll = [], [], []
        for eid, (u, v, _) in enumerate(self.edges):
            du, dv = self.vertex_degree(u), self.vertex_degree(v)
            if du >= 3 and dv >= 3:
                e_ii.append(eid)
            elif du == 1 and dv == 1:
                e_ll.append(eid)
            elif (du >= 3 and dv == 1) or (du == 1 and dv >= 3):
                e_il.append(eid)
            # circle edges (degree-2 endpoints) belong to no class
        return e_ii, e_il, e_ll

    # -- serialization ------------------------------------------------------

    def to_json(self):
        return {
            "vertices": list(self.vertices),
            "edges": [
                {"u": self.vertices[u], "v": self.vertices[v], "length": rat_str(l)}
                for u, v, l in self.edges
            ],
            "degree2_allowed": self.degree2_allowed,
        }

    @staticmethod
    def from_json(obj) -> "Network":
        return Network(
            obj["vertices"],
            obj["edges"],
            degree2_allowed=obj.get("degree2_allowed", False),
        )

    def __repr__(self):
        return f"Network({len(self.vertices)} vertices, {len(self.edges)} edges)"


def degree(net: Network, p: Point) -> int:
    """Degree of a point: the vertex degree at vertices, 2 elsewhere."""
    vid = net.point_vertex(p)
    if vid is None:
        return 2
    return net.vertex_degree(vid)


def total_measure(net: Network) -> Fraction:
    return net.total_measure()


def distance(net: Network, p: Point, q: Point) -> Fraction:
    return net.distance(p, q)


def classify_edges(net: Network):
    return net.classify_edges()


def normalize(net: Network) -> Network:
    """Suppress all degree-2 vertices, merging their incident edges.

    The total measure and all distances between surviving vertices are
    preserved. When suppression collapses the graph to a two-vertex cycle
    (the circle), both vertices are kept and ``degree2_allowed`` is set. A
    two-vertex cycle hanging off a larger graph cannot be normalized without
    creating a self-loop and is rejected.
    """
    if net.degree2_allowed:
        return net
    names = list(net.vertices)
    edges = [(net.vertices[u], net.vertices[v], l) for u, v, l in net.edges]

    def deg(name):
        return sum(1 for u, v, _ in edges for x in (u, v) if x == name)

    while True:
        candidates = [n for n in names if deg(n) == 2]
        if not candidates:
            return Network(names, edges, degree2_allowed=False)
        progressed = False
        for name in candidates:
            incident = [i for i, (u, v, _) in enumerate(edges) if name in (u, v)]
            if len(incident) == 1:
                # both endpoints of a parallel pair... cannot happen: deg 2
                # with one incident edge would need a self-loop.
                raise InvalidNetworkError("inconsistent degree computation")
            i1, i2 = incident
            u1, v1, l1 = edges[i1]
            u2, v2, l2 = edges[i2]
            a = v1 if u1 == name else u1
            b = v2 if u2 == name else u2
            if a == b:
                if len(names) == 2 and len(edges) == 2:
                    # two-vertex cycle: this is the circle special case
                    return Network(names, edges, degree2_allowed=True)
                # suppression would create a self-loop at `a`; try another
                continue
            merged = (a, b, l1 + l2)
            edges = [e for i, e in enumerate(edges) if i not in (i1, i2)]
            edges.append(merged)
            names.remove(name)
            progressed = True
            break
        if not progressed:
            raise InvalidNetworkError(
                "cannot normalize: a two-vertex cycle is attached at a single "
                "vertex (suppression would create a self-loop); pre-split it"
            )
