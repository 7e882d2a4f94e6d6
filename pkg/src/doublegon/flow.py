"""Exact straight-line flow on polygon surfaces and separatrix tests.

A separatrix through a nonsingular point p in direction d exists exactly when
the ray leaving p in direction -d runs into a singularity.  If d is a
hyperbolic direction of the Veech group it carries no saddle connection, so
such a separatrix never extends to one and p is not a connection point.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .expansion import (
    DEFAULT_MAX_STEPS,
    DirectionK,
    Hyperbolic,
    OrbitResult,
    certify,
    classify,
    normalize_direction,
    result_json,
    word_matrix,
)
from .field import ExtContext
from .linalg import Vec2, cross, dot
from .model import PolygonSurface, StaircaseModel, TransitionMaps, vertex_classes

log = logging.getLogger(__name__)

DEFAULT_MAX_CROSSINGS = 5000


class FlowError(ValueError):
    pass


@dataclass(frozen=True)
class SurfacePoint:
    polygon: int
    pos: Vec2

    def __str__(self):
        return f"P{self.polygon}{self.pos}"


@dataclass
class Segment:
    polygon: int
    start: Vec2
    end: Vec2


@dataclass
class TraceOutcome:
    """Result of following a ray: either it reaches a vertex or it is truncated."""

    hit: bool
    crossings: int
    parameter: object  # total flow time t; the ray covers t * direction
    squared_length: object
    vertex: Optional[tuple] = None  # (polygon, vertex index) on arrival
    vertex_class: Optional[int] = None
    segments: list = field(default_factory=list)
    edges: list = field(default_factory=list)  # (polygon, edge) crossed, in order

    @property
    def kind(self) -> str:
        return "vertex" if self.hit else "truncated"

    def to_json(self) -> dict:
        out = {"kind": self.kind, "crossings": self.crossings}
        if self.hit:
            out["vertex"] = list(self.vertex)
            out["vertex_class"] = self.vertex_class
            out["parameter"] = str(self.parameter)
            out["squared_length"] = str(self.squared_length)
        return out


def _coerce_vec(surface: PolygonSurface, v) -> Vec2:
    ctx = surface.ctx
    return Vec2(ctx(v[0]), ctx(v[1]))


def _class_index(surface: PolygonSurface):
    cached = surface.meta.get("_corner_class")
    if cached is None:
        cached = {}
        for idx, vc in enumerate(vertex_classes(surface)):
            for corner in vc.corners:
                cached[corner] = idx
        surface.meta["_corner_class"] = cached
    return cached


def _locate(surface: PolygonSurface, p: SurfacePoint):
    """Classify p within its polygon: ('vertex', k), ('edge', k) or ('interior', None)."""
    poly = surface.polygons[p.polygon]
    on_edges = []
    for k in range(len(poly)):
        s = cross(surface.edge(p.polygon, k), p.pos - poly[k]).sign()
        if s < 0:
            raise FlowError(f"point {p} lies outside polygon {p.polygon}")
        if s == 0:
            on_edges.append(k)
    for k, v in enumerate(poly):
        if v == p.pos:
            return "vertex", k
    if on_edges:
        return "edge", on_edges[0]
    return "interior", None


def _exit_inverses(surface: PolygonSurface, d: Vec2) -> dict:
    """1 / (-cross(edge, d)) for every edge the direction leaves through."""
    out = {}
    for p, poly in enumerate(surface.polygons):
        for k in range(len(poly)):
            c = cross(surface.edge(p, k), d)
            if c.sign() < 0:
                out[(p, k)] = 1 / (-c)
    return out


def trace_ray(
    surface: PolygonSurface,
    p: SurfacePoint,
    direction,
    max_crossings: int = DEFAULT_MAX_CROSSINGS,
    keep_segments: bool = True,
) -> TraceOutcome:
    """Follow the straight ray from p in ``direction`` until it meets a vertex."""
    d = _coerce_vec(surface, direction)
    if d.x.is_zero() and d.y.is_zero():
        raise FlowError("zero direction")
    ctx = surface.ctx
    zero = ctx.zero
    norm2 = d.norm2()
    classes = _class_index(surface)
    P = p.polygon
    X = _coerce_vec(surface, p.pos)
    total = zero
    segments = []
    edges = []

    def done(hit_poly, hit_k, t_total, crossings):
        return TraceOutcome(
            hit=True,
            crossings=crossings,
            parameter=t_total,
            squared_length=norm2 * t_total * t_total,
            vertex=(hit_poly, hit_k),
            vertex_class=classes[(hit_poly, hit_k % len(surface.polygons[hit_poly]))],
            segments=segments,
            edges=edges,
        )

    where, k0 = _locate(surface, SurfacePoint(P, X))
    skip = set()
    if where == "vertex":
        poly = surface.polygons[P]
        m = len(poly)
        e1 = surface.edge(P, k0)
        e2 = poly[(k0 - 1) % m] - poly[k0]
        c1, c2 = cross(e1, d).sign(), cross(d, e2).sign()
        if c1 == 0 and dot(e1, d).sign() > 0:
            t = e1.x / d.x if not d.x.is_zero() else e1.y / d.y
            segments.append(Segment(P, X, poly[(k0 + 1) % m]))
            return done(P, (k0 + 1) % m, t, 0)
        if c2 == 0 and dot(e2, d).sign() > 0:
            t = e2.x / d.x if not d.x.is_zero() else e2.y / d.y
            segments.append(Segment(P, X, poly[(k0 - 1) % m]))
            return done(P, (k0 - 1) % m, t, 0)
        if c1 <= 0 or c2 <= 0:
            raise FlowError(f"direction does not enter polygon {P} at corner {k0}")
        skip = {k0, (k0 - 1) % m}
    elif where == "edge":
        e = surface.edge(P, k0)
        s = cross(e, d).sign()
        if s == 0:
            poly = surface.polygons[P]
            m = len(poly)
            end = (k0 + 1) % m if dot(e, d).sign() > 0 else k0
            delta = poly[end] - X
            t = delta.x / d.x if not d.x.is_zero() else delta.y / d.y
            segments.append(Segment(P, X, poly[end]))
            return done(P, end, t, 0)
        if s < 0:
            q, f, tau = surface.gluings[(P, k0)]
            P, X = q, X + tau
            skip = {f}
        else:
            skip = {k0}

    inv = surface.meta.get("_exit_cache")
    if inv is None or inv[0] != d:
        inv = (d, _exit_inverses(surface, d))
        surface.meta["_exit_cache"] = inv
    inv = inv[1]

    crossings = 0
    while True:
        poly = surface.polygons[P]
        m = len(poly)
        best = None
        ties = []
        for k in range(m):
            if k in skip:
                continue
            c = inv.get((P, k))
            if c is None:
                continue
            t = cross(surface.edge(P, k), X - poly[k]) * c
            if t.sign() <= 0:
                continue
            if best is None:
                best, ties = t, [k]
                continue
            s = (t - best).sign()
            if s < 0:
                best, ties = t, [k]
            elif s == 0:
                ties.append(k)
        if best is None:
            raise FlowError(f"ray cannot leave polygon {P}; inconsistent state")
        Y = X + d.scale(best)
        total = total + best
        if keep_segments:
            segments.append(Segment(P, X, Y))
        k = ties[0]
        for j in ties:
            for cand in (j, (j + 1) % m):
                if poly[cand] == Y:
                    return done(P, cand, total, crossings)
        if len(ties) > 1:
            raise FlowError("tied exits without a vertex; inconsistent geometry")
        if crossings >= max_crossings:
            return TraceOutcome(
                hit=False,
                crossings=crossings,
                parameter=total,
                squared_length=norm2 * total * total,
                segments=segments,
                edges=edges,
            )
        q, f, tau = surface.gluings[(P, k)]
        edges.append((P, k))
        crossings += 1
        P, X = q, Y + tau
        skip = {f}


# ---------------------------------------------------------------------------


def central_points(surface: PolygonSurface) -> list:
    """Centres of the two heptagons (nonsingular points)."""
    if surface.meta.get("kind") != "double_heptagon":
        raise FlowError("central points are defined for the double heptagon")
    c1, c2 = surface.meta["centers"]
    return [SurfacePoint(0, c1), SurfacePoint(1, c2)]


@dataclass
class SeparatrixProbe:
    exists: bool
    forward: TraceOutcome  # ray from p along +d
    backward: TraceOutcome  # ray from p along -d

    @property
    def hit(self) -> Optional[TraceOutcome]:
        if self.backward.hit:
            return self.backward
        if self.forward.hit:
            return self.forward
        return None


def separatrix_through(
    surface: PolygonSurface, p: SurfacePoint, direction, max_crossings: int = DEFAULT_MAX_CROSSINGS
) -> SeparatrixProbe:
    """Is there a separatrix through p parallel to ``direction``?

    Both orientations are traced from p; a vertex hit along -d means a
    separatrix from that singularity passes through p in direction d.
    """
    where, _ = _locate(surface, p)
    if where == "vertex":
        raise FlowError("point is a singularity, not a regular point")
    d = _coerce_vec(surface, direction)
    back = trace_ray(surface, p, -d, max_crossings)
    fwd = trace_ray(surface, p, d, max_crossings)
    return SeparatrixProbe(exists=back.hit or fwd.hit, forward=fwd, backward=back)


def corner_for_direction(surface: PolygonSurface, direction) -> tuple:
    """First corner (polygon, vertex) from which ``direction`` leaves into the polygon.

    Directions along an outgoing edge count; the search order is polygon, then vertex.
    """
    d = _coerce_vec(surface, direction)
    for p, poly in enumerate(surface.polygons):
        m = len(poly)
        for k in range(m):
            e1 = surface.edge(p, k)
            e2 = poly[(k - 1) % m] - poly[k]
            c1 = cross(e1, d).sign()
            if c1 == 0 and dot(e1, d).sign() > 0:
                return p, k
            if c1 > 0 and cross(d, e2).sign() > 0:
                return p, k
    raise FlowError("no corner admits this direction")


def separatrix_from_singularity(
    surface: PolygonSurface, direction, max_crossings: int = DEFAULT_MAX_CROSSINGS
) -> TraceOutcome:
    """Trace the separatrix leaving the first admissible corner in ``direction``."""
    p, k = corner_for_direction(surface, direction)
    return trace_ray(surface, SurfacePoint(p, surface.polygons[p][k]), direction, max_crossings)


# ---------------------------------------------------------------------------
# straight segments from a point to the singularity


@dataclass
class VisibleVertex:
    """A straight segment from a point to a polygon vertex, via unfolding."""

    holonomy: Vec2  # vertex position minus point, in the point's polygon frame
    depth: int  # number of edges crossed
    polygon: int
    vertex: int
    path: tuple


def segments_to_vertices(surface: PolygonSurface, p: SurfacePoint, max_depth: int) -> Iterator[VisibleVertex]:
    """Enumerate saddle-to-point segments from an interior point, breadth first.

    Each polygon copy entered through an edge is unfolded into the frame of
    p's polygon; the wedge of directions that reach it is narrowed at every
    step, and vertices strictly inside the wedge are visible from p.
    """
    where, _ = _locate(surface, p)
    if where != "interior":
        raise FlowError("segment enumeration starts from an interior point")
    c = _coerce_vec(surface, p.pos)
    P0 = p.polygon
    poly0 = surface.polygons[P0]
    zero = Vec2(surface.ctx.zero, surface.ctx.zero)
    level = []
    for k, v in enumerate(poly0):
        yield VisibleVertex(v - c, 0, P0, k, ())
    for k in range(len(poly0)):
        q, f, tau = surface.gluings[(P0, k)]
        level.append((q, zero - tau, f, poly0[k] - c, poly0[(k + 1) % len(poly0)] - c, ((P0, k),)))
    depth = 1
    while level and depth <= max_depth:
        nxt = []
        for q, off, f, lo, hi, path in level:
            poly = surface.polygons[q]
            m = len(poly)
            rel = [w + off - c for w in poly]
            for j in range(m):
                if j in (f, (f + 1) % m):
                    continue
                W = rel[j]
                if cross(lo, W).sign() > 0 and cross(W, hi).sign() > 0:
                    yield VisibleVertex(W, depth, q, j, path)
            if depth == max_depth:
                continue
            for j in range(m):
                if j == f:
                    continue
                A, B = rel[j], rel[(j + 1) % m]
                if cross(A, B).sign() <= 0:
                    continue
                new_lo = A if cross(lo, A).sign() > 0 else lo
                new_hi = B if cross(B, hi).sign() > 0 else hi
                if cross(new_lo, new_hi).sign() <= 0:
                    continue
                q2, f2, tau2 = surface.gluings[(q, j)]
                nxt.append((q2, off - tau2, f2, new_lo, new_hi, path + ((q, j),)))
        level = nxt
        depth += 1


# ---------------------------------------------------------------------------
# certified reports


@dataclass
class SeparatrixReport:
    point: SurfacePoint
    point_label: str
    heptagon_direction: Vec2
    staircase_direction: DirectionK
    classification: OrbitResult
    backward: TraceOutcome
    verdict: bool
    candidate_index: int
    strategy: str
    segment_depth: Optional[int] = None

    def to_json(self) -> dict:
        N = self.staircase_direction.ctx.N
        cls = result_json(self.staircase_direction, self.classification, N)
        return {
            "point": self.point_label,
            "point_coords": [str(self.point.pos.x), str(self.point.pos.y)],
            "heptagon_direction": [str(self.heptagon_direction.x), str(self.heptagon_direction.y)],
            "heptagon_slope": float(self.heptagon_direction.y) / float(self.heptagon_direction.x)
            if not self.heptagon_direction.x.is_zero()
            else None,
            "staircase_direction": [str(self.staircase_direction.x), str(self.staircase_direction.y)],
            "classification": cls,
            "backward_trace": self.backward.to_json(),
            "candidate_index": self.candidate_index,
            "strategy": self.strategy,
            "segment_depth": self.segment_depth,
            "verdict": self.verdict,
        }


@dataclass
class SearchResult:
    report: Optional[SeparatrixReport]
    status: str  # "certified" | "exhausted" | "empty"
    tried: int
    transcript: list = field(default_factory=list)


def _to_heptagon(tm: TransitionMaps, d: DirectionK) -> Vec2:
    return tm.dir_to_heptagon(d.vec())


def search_hyperbolic_separatrix(
    surface: PolygonSurface,
    point: SurfacePoint,
    candidates: Iterable,
    tm: TransitionMaps,
    model: StaircaseModel,
    max_crossings: int = DEFAULT_MAX_CROSSINGS,
    max_steps: int = DEFAULT_MAX_STEPS,
    label: str = "",
    strategy: str = "words",
) -> SearchResult:
    """First candidate direction giving a certified non-extendable separatrix through ``point``.

    ``candidates`` yields staircase directions (optionally paired with their
    classification).  A report is certified when the direction classifies
    hyperbolic and the ray from the point along -d (or +d) hits a vertex.
    """
    tried = 0
    transcript = []
    for idx, cand in enumerate(candidates):
        if isinstance(cand, tuple):
            d, res = cand
        else:
            d, res = cand, None
        d = normalize_direction(d)
        if res is None:
            res = classify(d, model, max_steps)
        tried += 1
        if not isinstance(res, Hyperbolic):
            transcript.append({"index": idx, "direction": str(d), "class": res.kind})
            continue
        dh = _to_heptagon(tm, d)
        probe = separatrix_through(surface, point, dh, max_crossings)
        hit = probe.hit
        transcript.append(
            {
                "index": idx,
                "direction": str(d),
                "class": res.kind,
                "backward": probe.backward.kind,
                "forward": probe.forward.kind,
            }
        )
        if hit is not None:
            if hit is probe.forward:
                dh = -dh
            report = SeparatrixReport(
                point=point,
                point_label=label,
                heptagon_direction=dh,
                staircase_direction=d,
                classification=res,
                backward=hit,
                verdict=True,
                candidate_index=idx,
                strategy=strategy,
            )
            return SearchResult(report, "certified", tried, transcript)
    return SearchResult(None, "exhausted" if tried else "empty", tried, transcript)


def word_candidates(model: StaircaseModel, seeds: Iterable[DirectionK], depth: int) -> Iterator[DirectionK]:
    """Images M_w v of seed directions for sector words w of length <= depth, deduplicated."""
    seen = set()
    seeds = [normalize_direction(s) for s in seeds]
    letters = range(len(model.sectors))
    for length in range(depth + 1):
        for w in itertools.product(letters, repeat=length):
            M = word_matrix(w, model)
            for s in seeds:
                d = normalize_direction(M @ s.vec())
                key = (d.x, d.y)
                if key in seen:
                    continue
                seen.add(key)
                yield d


def segment_candidates(
    surface: PolygonSurface,
    point: SurfacePoint,
    tm: TransitionMaps,
    model: StaircaseModel,
    depth: int,
    max_steps: int = DEFAULT_MAX_STEPS,
    stats: Optional[dict] = None,
) -> Iterator[tuple]:
    """Directions of point-to-singularity segments, classified on the staircase.

    Only hyperbolic ones are yielded; ``stats`` (if given) counts every class.
    """
    seen = set()
    for vis in segments_to_vertices(surface, point, depth):
        vec, graded = tm.dir_to_staircase(vis.holonomy)
        if not graded:
            continue
        d = normalize_direction(vec)
        key = (d.x, d.y)
        if key in seen:
            continue
        seen.add(key)
        res = classify(d, model, max_steps)
        if stats is not None:
            stats[res.kind] = stats.get(res.kind, 0) + 1
        if isinstance(res, Hyperbolic):
            yield d, res


def recheck_report(report: SeparatrixReport, surface: PolygonSurface, model: StaircaseModel, max_crossings: int) -> bool:
    """Re-run classification and tracing from scratch for a certified report."""
    res = classify(report.staircase_direction, model)
    if not isinstance(res, Hyperbolic) or not certify(report.staircase_direction, res, model):
        return False
    if res.period != report.classification.period or res.preperiod != report.classification.preperiod:
        return False
    again = trace_ray(surface, report.point, -report.heptagon_direction, max_crossings)
    return again.hit and again.squared_length == report.backward.squared_length
