"""Staircase and double-heptagon models of the double (2n+1)-gon.

The staircase is built from rectangles R_1..R_{2n-1} whose sides are the
normalized sines u_k = sin(k pi/N) / sin(pi/N).  Directions on the staircase
are cut into 2n cones by the diagonals D_0..D_{2n}; the sector matrix M_i maps
the first quadrant onto the cone between D_i and D_{i+1}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .field import ExtContext, FieldContext, FieldError, make_ext, make_field
from .linalg import Mat2, Vec2, cross, dot


class SurfaceError(ValueError):
    """A polygon surface is inconsistent (bad gluing, wrong model...)."""


# ---------------------------------------------------------------------------
# lengths, diagonals, sectors


def chebyshev_lengths(ctx: FieldContext) -> list:
    """[u_1, ..., u_{2n}] with u_1 = 1, u_2 = a, u_{k+1} = a u_k - u_{k-1}."""
    a = ctx.gen
    u = [ctx.zero, ctx.one]
    for _ in range(ctx.N - 2):
        u.append(a * u[-1] - u[-2])
    return u[1:]


def _u_ext(ctx):
    # u_0 = 0 and u_{2n+1} = 0 close the recurrence at both ends
    return [ctx.zero] + chebyshev_lengths(ctx) + [ctx.zero]


def diagonals(ctx: FieldContext) -> list:
    """D_i = (u_{i+1}, u_i) for 0 <= i <= 2n, so D_0 = (1, 0) and D_{2n} = (0, 1)."""
    u = _u_ext(ctx)
    return [Vec2(u[i + 1], u[i]) for i in range(ctx.N)]


def sector_matrices(ctx: FieldContext) -> list:
    """M_i with columns D_i and D_{i+1}, i = 0..2n-1."""
    D = diagonals(ctx)
    return [Mat2.from_columns(D[i], D[i + 1]) for i in range(ctx.N - 1)]


@dataclass(frozen=True, eq=False)
class StaircaseModel:
    ctx: FieldContext
    u: list
    diagonals: list
    sectors: list
    inverses: list

    @property
    def n(self) -> int:
        return (self.ctx.N - 1) // 2

    @property
    def N(self) -> int:
        return self.ctx.N

    def __reduce__(self):
        return staircase_model, (self.ctx.N,)


@lru_cache(maxsize=None)
def staircase_model(N: int) -> StaircaseModel:
    ctx = make_field(N)
    sectors = sector_matrices(ctx)
    return StaircaseModel(
        ctx=ctx,
        u=chebyshev_lengths(ctx),
        diagonals=diagonals(ctx),
        sectors=sectors,
        inverses=[m.inverse() for m in sectors],
    )


def model_invariants(model: StaircaseModel) -> dict:
    """Exact checks of the staircase data; maps check name -> bool."""
    ctx = model.ctx
    one = ctx.one
    J = Mat2(ctx.zero, one, one, ctx.zero)
    M, D, u = model.sectors, model.diagonals, model.u
    last = len(M) - 1
    checks = {
        "det_one": all(m.det() == 1 for m in M),
        "j_symmetry": all(J @ M[i] @ J == M[last - i] for i in range(len(M))),
        "slopes_increase": all(cross(D[i], D[i + 1]).sign() > 0 for i in range(len(D) - 1)),
        "interior_norm_gt_one": all((D[i].norm2() - 1).sign() > 0 for i in range(1, len(D) - 1)),
        "end_norms_one": D[0].norm2() == 1 and D[-1].norm2() == 1,
        "lengths_palindromic": all(u[k] == u[len(u) - 1 - k] for k in range(len(u))),
        "lengths_positive": all(x.sign() > 0 for x in u),
        "shears": M[0] == Mat2(one, ctx.gen, ctx.zero, one) and M[-1] == Mat2(one, ctx.zero, ctx.gen, one),
    }
    return checks


# ---------------------------------------------------------------------------
# polygon surfaces


@dataclass
class VertexClass:
    corners: list
    angle: Fraction  # cone angle as a multiple of pi

    @property
    def singular(self) -> bool:
        return self.angle > 2


@dataclass(eq=False)
class PolygonSurface:
    """Convex polygons (counterclockwise vertex lists) glued along edges by translations.

    ``gluings[(p, e)] = (q, f, tau)`` means edge e of polygon p is glued to
    edge f of polygon q, and a point X on edge e corresponds to X + tau on f.
    """

    name: str
    ctx: object  # FieldContext or ExtContext, the field of the coordinates
    polygons: list
    gluings: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    def vertex(self, p: int, k: int) -> Vec2:
        poly = self.polygons[p]
        return poly[k % len(poly)]

    def edge(self, p: int, k: int) -> Vec2:
        return self.vertex(p, k + 1) - self.vertex(p, k)

    def glue(self, p: int, e: int, q: int, f: int) -> None:
        """Glue edge e of p to edge f of q (opposite orientations)."""
        tau = self.vertex(q, f + 1) - self.vertex(p, e)
        if self.vertex(p, e + 1) + tau != self.vertex(q, f):
            raise SurfaceError(f"edges ({p},{e}) and ({q},{f}) are not translates")
        self.gluings[(p, e)] = (q, f, tau)
        self.gluings[(q, f)] = (p, e, -tau)

    def check(self) -> None:
        for p, poly in enumerate(self.polygons):
            for k in range(len(poly)):
                if cross(self.edge(p, k), self.edge(p, k + 1)).sign() <= 0:
                    raise SurfaceError(f"polygon {p} is not strictly convex at vertex {k + 1}")
                if (p, k) not in self.gluings:
                    raise SurfaceError(f"edge ({p},{k}) is unglued")
        for (p, e), (q, f, tau) in self.gluings.items():
            back = self.gluings.get((q, f))
            if back is None or back[:2] != (p, e):
                raise SurfaceError(f"gluing of ({p},{e}) is not symmetric")
            if self.edge(p, e) != -self.edge(q, f):
                raise SurfaceError(f"glued edges ({p},{e}), ({q},{f}) are not parallel translates")
            if self.vertex(p, e) + tau != self.vertex(q, f + 1):
                raise SurfaceError(f"bad translation on ({p},{e})")

    def area(self):
        total = None
        for poly in self.polygons:
            s = sum((cross(poly[k], poly[(k + 1) % len(poly)]) for k in range(len(poly))), start=0 * poly[0].x)
            total = s if total is None else total + s
        return total / 2

    def vertex_classes(self) -> list:
        return vertex_classes(self)

    def genus(self) -> int:
        excess = sum((vc.angle - 2 for vc in self.vertex_classes()), Fraction(0))
        g = 1 + excess / 4
        if g.denominator != 1:
            raise SurfaceError(f"cone angles give non-integral genus {g}")
        return int(g)


def _half_step_rotation(ext: ExtContext) -> Mat2:
    """Rotation by pi/(2N), exact over L = K(b)."""
    K = ext.base
    N = K.N
    n = (N - 1) // 2
    u = _u_ext(K)
    # cos(pi/2N) = sin(n pi/N) = u_n b ;  sin(pi/2N) = cos(n pi/N)
    alpha = K.gen / 2
    c_prev, c_cur = K.one, alpha
    for _ in range(n - 1):
        c_prev, c_cur = c_cur, K.gen * c_cur - c_prev
    cos_half = u[n] * ext.beta
    sin_half = ext(c_cur if n >= 1 else K.one)
    return Mat2(cos_half, -sin_half, sin_half, cos_half)


def corner_angle(surface: PolygonSurface, p: int, k: int, rotation=None) -> Fraction:
    """Interior angle at vertex k of polygon p, as an exact multiple of pi.

    The angle is guessed numerically on the grid of multiples of pi/(2N) and
    then certified exactly by rotating one edge onto the other.
    """
    ctx = surface.ctx
    ext = ctx if isinstance(ctx, ExtContext) else make_ext(ctx)
    N = ext.base.N
    R = rotation if rotation is not None else _half_step_rotation(ext)
    e1 = surface.edge(p, k)
    e2 = surface.vertex(p, k - 1) - surface.vertex(p, k)
    e1 = Vec2(ext(e1.x), ext(e1.y))
    e2 = Vec2(ext(e2.x), ext(e2.y))
    theta = math.atan2(float(cross(e1, e2)), float(dot(e1, e2)))
    if theta < 0:
        theta += 2 * math.pi
    guess = round(theta / (math.pi / (2 * N)))
    for m in (guess, guess - 1, guess + 1):
        if m <= 0:
            continue
        v = e1
        for _ in range(m):
            v = R @ v
        if cross(v, e2).is_zero() and dot(v, e2).sign() > 0:
            return Fraction(m, 2 * N)
    raise SurfaceError(f"corner ({p},{k}) angle is not a multiple of pi/{2 * N}")


def vertex_classes(surface: PolygonSurface) -> list:
    """Identification classes of polygon corners and their cone angles."""
    ctx = surface.ctx
    ext = ctx if isinstance(ctx, ExtContext) else make_ext(ctx)
    R = _half_step_rotation(ext)
    seen = set()
    classes = []
    corners = [(p, k) for p, poly in enumerate(surface.polygons) for k in range(len(poly))]
    for start in corners:
        if start in seen:
            continue
        orbit = []
        angle = Fraction(0)
        cur = start
        while cur not in seen:
            seen.add(cur)
            orbit.append(cur)
            angle += corner_angle(surface, *cur, rotation=R)
            p, k = cur
            m = len(surface.polygons[p])
            glued = surface.gluings.get((p, (k - 1) % m))
            if glued is None:
                raise SurfaceError(f"corner walk left the surface at ({p},{k})")
            cur = (glued[0], glued[1])
        if cur != start:
            raise SurfaceError(f"corner walk from {start} did not close up")
        classes.append(VertexClass(corners=orbit, angle=angle))
    return classes


# ---------------------------------------------------------------------------
# staircase


def build_staircase(ctx: FieldContext) -> PolygonSurface:
    """The 2n-1 rectangle staircase, laid out as a staircase in the plane.

    Odd R_i are u_i wide and u_{i+1} tall, even R_i are u_{i+1} wide and u_i
    tall.  Rectangle vertices run (lower left, lower right, upper right,
    upper left), so edges are 0 bottom, 1 right, 2 top, 3 left.
    """
    u = _u_ext(ctx)
    count = ctx.N - 2
    zero = ctx.zero
    polys = []
    dims = []
    x0, y0 = zero, zero
    for i in range(1, count + 1):
        w, h = (u[i], u[i + 1]) if i % 2 else (u[i + 1], u[i])
        polys.append([Vec2(x0, y0), Vec2(x0 + w, y0), Vec2(x0 + w, y0 + h), Vec2(x0, y0 + h)])
        dims.append((w, h))
        if i % 2:
            x0 = x0 + w
        else:
            y0 = y0 + h
    surf = PolygonSurface(name=f"staircase N={ctx.N}", ctx=ctx, polygons=polys)
    surf.meta.update(kind="staircase", N=ctx.N, dims=dims)
    for j in range(count - 1):
        i = j + 1
        if i % 2:
            # R_i, R_{i+1} form a horizontal cylinder: crosswise vertical edges
            surf.glue(j, 1, j + 1, 3)
            surf.glue(j, 3, j + 1, 1)
        else:
            surf.glue(j, 2, j + 1, 0)
            surf.glue(j, 0, j + 1, 2)
    surf.glue(0, 2, 0, 0)
    surf.glue(count - 1, 1, count - 1, 3)
    surf.check()
    return surf


@dataclass
class Cylinder:
    axis: str
    members: list
    circumference: object
    height: object

    @property
    def modulus(self):
        return self.circumference / self.height


def cylinder_decomposition(surface: PolygonSurface, axis: str) -> list:
    """Horizontal or vertical cylinders of a staircase, from its gluings."""
    if surface.meta.get("kind") != "staircase":
        raise SurfaceError("cylinder decomposition is only implemented for staircase surfaces")
    if axis not in ("horizontal", "vertical"):
        raise ValueError("axis must be 'horizontal' or 'vertical'")
    dims = surface.meta["dims"]
    side_edges = (1, 3) if axis == "horizontal" else (0, 2)
    seen = set()
    cylinders = []
    for start in range(len(surface.polygons)):
        if start in seen:
            continue
        members = []
        stack = [start]
        while stack:
            p = stack.pop()
            if p in seen:
                continue
            seen.add(p)
            members.append(p)
            for e in side_edges:
                stack.append(surface.gluings[(p, e)][0])
        members.sort()
        if axis == "horizontal":
            heights = {dims[p][1] for p in members}
            circ = sum((dims[p][0] for p in members), start=surface.ctx.zero)
        else:
            heights = {dims[p][0] for p in members}
            circ = sum((dims[p][1] for p in members), start=surface.ctx.zero)
        if len(heights) != 1:
            raise SurfaceError(f"{axis} cylinder {members} has unequal heights")
        cylinders.append(Cylinder(axis, [p + 1 for p in members], circ, heights.pop()))
    return cylinders


# ---------------------------------------------------------------------------
# double heptagon and the transition map


def build_double_heptagon(ext: ExtContext) -> PolygonSurface:
    """Two regular heptagons of circumradius a^2 - 1, opposite sides glued.

    H1 is centred at the origin with vertices at angles 2k pi/7, so that
    every edge and diagonal points in an odd multiple of pi/14.  H2 is the
    point reflection of H1 through the midpoint of edge 0; edge j of H1 is
    glued to edge j of H2 (edge 0 is shared).
    """
    K = ext.base
    if K.N != 7:
        raise FieldError("the double heptagon model needs N = 7")
    a = K.gen
    R = a * a - 1
    cos2 = ext((a * a - 2) / 2)
    sin2 = ext.beta * a
    rot = Mat2(cos2, -sin2, sin2, cos2)
    v = Vec2(ext(R), ext.zero)
    h1 = []
    for _ in range(7):
        h1.append(v)
        v = rot @ v
    if v != h1[0]:
        raise SurfaceError("heptagon rotation did not close up")
    m2 = h1[0] + h1[1]  # twice the midpoint of the shared edge
    h2 = [m2 - w for w in h1]
    surf = PolygonSurface(name="double heptagon", ctx=ext, polygons=[h1, h2])
    surf.meta.update(kind="double_heptagon", N=7, circumradius=R, centers=[Vec2(ext.zero, ext.zero), m2])
    for j in range(7):
        surf.glue(0, j, 1, j)
    surf.check()
    return surf


@dataclass(frozen=True, eq=False)
class TransitionMaps:
    """T takes staircase coordinates to double-heptagon coordinates."""

    ext: ExtContext
    T: Mat2
    T_inv: Mat2

    def dir_to_heptagon(self, d) -> Vec2:
        """T (x, y) for a K-vector; the result is graded: (K, b K)."""
        K = self.ext.base
        x, y = K(d[0]), K(d[1])
        alpha1 = K.gen / 2 + 1
        return Vec2(self.ext(alpha1 * (x + y)), self.ext(K.zero, y - x))

    def dir_to_staircase(self, d):
        """Staircase direction for a heptagon-model direction.

        Returns ``(vector, graded)``.  For graded input (x, y b) with x, y in K
        the vector is the K-pair (x - (alpha+1) y, x + (alpha+1) y), a positive
        multiple of T^{-1} d.  Otherwise the exact L-vector T^{-1} d is
        returned with ``graded = False``.
        """
        ext = self.ext
        x, y = ext(d[0]), ext(d[1])
        if x.v.is_zero() and y.u.is_zero():
            alpha1 = ext.base.gen / 2 + 1
            return Vec2(x.u - alpha1 * y.v, x.u + alpha1 * y.v), True
        return self.T_inv @ Vec2(x, y), False


def transition_maps(ext: ExtContext) -> TransitionMaps:
    K = ext.base
    if K.N != 7:
        raise FieldError("the transition map is defined for N = 7")
    alpha1 = ext(K.gen / 2 + 1)
    T = Mat2(alpha1, alpha1, -ext.beta, ext.beta)
    return TransitionMaps(ext=ext, T=T, T_inv=T.inverse())


# ---------------------------------------------------------------------------


def model_json(model: StaircaseModel) -> dict:
    return {
        "N": model.N,
        "u": [str(x) for x in model.u],
        "diagonals": [[str(c) for c in d] for d in model.diagonals],
        "sectors": [[[str(c) for c in row] for row in m.rows()] for m in model.sectors],
    }
