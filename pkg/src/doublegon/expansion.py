"""The sector (gcd) expansion of staircase directions.

A first-quadrant direction lying in the cone between D_i and D_{i+1} is
pulled back by M_i^{-1}; the expansion stops when it reaches the horizontal or
the vertical (a parabolic direction) or when a direction repeats (an
eigendirection of the product of sector matrices over the period, which is
hyperbolic).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Union

from .field import FieldContext, FieldElement
from .linalg import Mat2, Vec2, cross
from .model import StaircaseModel, staircase_model

HORIZONTAL = "horizontal"
VERTICAL = "vertical"

DEFAULT_MAX_STEPS = 10_000


class ExpansionError(ValueError):
    pass


@dataclass(frozen=True)
class DirectionK:
    """Projective direction in the closed first quadrant: (1, s) or (0, 1)."""

    x: FieldElement
    y: FieldElement

    @property
    def ctx(self) -> FieldContext:
        return self.x.ctx

    def vec(self) -> Vec2:
        return Vec2(self.x, self.y)

    def is_horizontal(self) -> bool:
        return self.y.is_zero()

    def is_vertical(self) -> bool:
        return self.x.is_zero()

    def __iter__(self):
        return iter((self.x, self.y))

    def __getitem__(self, i):
        return (self.x, self.y)[i]

    def __str__(self):
        return f"({self.x}, {self.y})"


def normalize_direction(x, y=None) -> DirectionK:
    """Canonical first-quadrant representative of the line through (x, y).

    Negation and the quarter rotation (x, y) -> (-y, x) are both used; the
    rotation lies in the Hecke group, so the class of the direction is kept.
    """
    if isinstance(x, DirectionK):
        return x
    if y is None:
        x, y = x
    if not isinstance(x, FieldElement) and not isinstance(y, FieldElement):
        raise ExpansionError("cannot infer the field from two plain numbers; pass field elements")
    if not isinstance(x, FieldElement):
        x = y.ctx(x)
    if not isinstance(y, FieldElement):
        y = x.ctx(y)
    if x.is_zero() and y.is_zero():
        raise ExpansionError("zero vector has no direction")
    sx = x.sign()
    if sx < 0 or (sx == 0 and y.sign() < 0):
        x, y = -x, -y
    if y.sign() < 0:
        x, y = -y, x
    ctx = x.ctx
    if x.is_zero():
        return DirectionK(ctx.zero, ctx.one)
    return DirectionK(ctx.one, y / x)


def _primitive(v: Vec2) -> Vec2:
    """Positive rational multiple of v with coprime integer coefficients."""
    x, y = v
    ctx = x.ctx
    den = x.den * y.den // gcd(x.den, y.den)
    nx = [c * (den // x.den) for c in x.num]
    ny = [c * (den // y.den) for c in y.num]
    g = 0
    for c in nx:
        g = gcd(g, c)
    for c in ny:
        g = gcd(g, c)
    if g > 1:
        nx = [c // g for c in nx]
        ny = [c // g for c in ny]
    return Vec2(FieldElement(ctx, tuple(nx), 1), FieldElement(ctx, tuple(ny), 1))


def _diagonal_fixed(model: StaircaseModel, prec: int) -> list:
    cache = model.__dict__.setdefault("_fixed_diagonals", {})
    out = cache.get(prec)
    if out is None:
        out = []
        for D in model.diagonals:
            (sx, ex), (sy, ey) = D.x.fixed(prec), D.y.fixed(prec)
            # rescale so both coordinates share the denominator D.x.den * D.y.den
            out.append((sx * D.y.den, ex * D.y.den, sy * D.x.den, ey * D.x.den))
        cache[prec] = out
    return out


_GOOD_BITS = 80


def _enclose(x: FieldElement, prec: int):
    """Fixed-point (S, E, prec) for x with at least _GOOD_BITS correct leading bits.

    ``prec`` is returned as actually used: fixed() rounds it up to a multiple of 64.
    """
    while True:
        prec = max(64, -(-prec // 64) * 64)
        S, E = x.fixed(prec)
        deficit = E.bit_length() + _GOOD_BITS - S.bit_length()
        if deficit <= 0 and abs(S) > E:
            return S, E, prec
        prec += max(deficit, 64)


def locate_sector(v, model: StaircaseModel, hint: list | None = None) -> Union[int, str]:
    """Sector index i with D_i <= v < D_{i+1} (by slope), or a terminal tag.

    Both coordinates of v are enclosed in fixed point with enough precision
    for their leading bits to be certain; the comparisons cross(D_i, v) >= 0
    are then decided on short integers, with an exact sign as the fallback
    near a boundary.  ``hint`` (a one-element list) carries the working
    precision from one call to the next.
    """
    x, y = v[0], v[1]
    if y.is_zero():
        return HORIZONTAL
    if x.is_zero():
        return VERTICAL
    D = model.diagonals
    start = hint[0] if hint else 128
    X, EX, px = _enclose(x, start)
    Y, EY, py = _enclose(y, start)
    if hint is not None:
        # keep what worked; step down only when both have bits to spare
        spare = min(X.bit_length() - EX.bit_length(), Y.bit_length() - EY.bit_length()) - _GOOD_BITS
        hint[:] = [max(px, py) - 64 if spare > 96 else max(px, py)]
    # bring both to the same scale 2^p
    p = max(px, py)
    X, EX = X << (p - px), EX << (p - px)
    Y, EY = Y << (p - py), EY << (p - py)
    # common denominator: multiply by the other coordinate's den
    X, EX, Y, EY = X * y.den, EX * y.den, Y * x.den, EY * x.den
    # keep about 256 significant bits; truncation adds at most 1 to each error
    shift = max(max(abs(X), abs(Y)).bit_length() - 256, 0)
    if shift:
        X, Y = X >> shift, Y >> shift
        EX, EY = (EX >> shift) + 2, (EY >> shift) + 2
    aX, aY = abs(X), abs(Y)
    fd = _diagonal_fixed(model, 128)

    def nonneg(i):
        dx, edx, dy, edy = fd[i]
        c = dx * Y - dy * X
        err = abs(dx) * EY + edx * (aY + EY) + abs(dy) * EX + edy * (aX + EX)
        if c > err:
            return True
        if c < -err:
            return False
        d = D[i]
        return (d[0] * y - d[1] * x).sign() >= 0

    # largest i in [0, 2n-1] with cross(D_i, v) >= 0; i = 0 always qualifies
    lo, hi = 0, len(D) - 2
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if nonneg(mid):
            lo = mid
        else:
            hi = mid - 1
    return lo


def _in_model(v, model: StaircaseModel) -> DirectionK:
    if isinstance(v, DirectionK):
        d = v
    else:
        x, y = v
        for c in (x, y):
            if isinstance(c, FieldElement) and c.ctx is not model.ctx:
                raise ExpansionError(f"direction lives in N={c.ctx.N}, model is N={model.N}")
        d = normalize_direction(model.ctx(x), model.ctx(y))
    if d.ctx is not model.ctx:
        raise ExpansionError(f"direction lives in N={d.ctx.N}, model is N={model.N}")
    return d


def gcd_step(v, model: StaircaseModel) -> tuple:
    """One expansion step: (i, normalize(M_i^{-1} v))."""
    v = _in_model(v, model)
    i = locate_sector(v, model)
    if isinstance(i, str):
        raise ExpansionError(f"{i} direction is terminal")
    w = model.inverses[i] @ v.vec()
    return i, normalize_direction(w)


def word_matrix(word, model: StaircaseModel) -> Mat2:
    """Ordered product M_{w_0} M_{w_1} ... of sector matrices."""
    ctx = model.ctx
    out = Mat2.identity(ctx.one)
    for i in word:
        if not 0 <= i < len(model.sectors):
            raise ExpansionError(f"sector index {i} out of range 0..{len(model.sectors) - 1}")
        out = out @ model.sectors[i]
    return out


@dataclass
class StabilizerCheck:
    is_fixed: bool
    eigenvalue: FieldElement | None
    trace: FieldElement
    hyperbolic: bool


def verify_stabilizer(M: Mat2, v) -> StabilizerCheck:
    v = v.vec() if isinstance(v, DirectionK) else Vec2(*v)
    w = M @ v
    fixed = cross(w, v).is_zero()
    eig = None
    if fixed:
        eig = w.x / v.x if not v.x.is_zero() else w.y / v.y
    tr = M.trace()
    return StabilizerCheck(fixed, eig, tr, (tr * tr - 4).sign() > 0)


# ---------------------------------------------------------------------------
# outcomes


@dataclass
class Parabolic:
    sector_word: list
    steps: int
    terminal: str = HORIZONTAL
    kind = "parabolic"


@dataclass
class Hyperbolic:
    preperiod: list
    period: list
    periodic_direction: DirectionK
    stabilizer: Mat2
    eigenvalue: FieldElement
    kind = "hyperbolic"

    @property
    def steps(self) -> int:
        return len(self.preperiod) + len(self.period)

    @property
    def trace(self) -> FieldElement:
        return self.stabilizer.trace()

    def full_stabilizer(self, model: StaircaseModel) -> Mat2:
        """Stabilizer of the input direction: P S P^{-1} with P the preperiod product."""
        P = word_matrix(self.preperiod, model)
        return P @ self.stabilizer @ P.inverse()


@dataclass
class Unresolved:
    steps: int
    last_direction: DirectionK
    sector_word: list = field(default_factory=list)
    kind = "unresolved"


OrbitResult = Union[Parabolic, Hyperbolic, Unresolved]


# ---------------------------------------------------------------------------
# exact modular hashing of projective directions


def _is_prime(n: int) -> bool:
    from sympy import isprime

    return isprime(n)


@lru_cache(maxsize=None)
def _residue_data(N: int):
    """A prime p and an image r of a under a ring map Z[a] -> F_p."""
    ctx = staircase_model(N).ctx
    m = 2 * N
    p = ((1 << 61) // m) * m + 1
    while not _is_prime(p):
        p += m
    rng = random.Random(N)
    while True:
        g = rng.randrange(2, p - 1)
        z = pow(g, (p - 1) // m, p)
        if pow(z, N, p) == p - 1:
            break
    r = (z + pow(z, p - 2, p)) % p
    if sum(c * pow(r, j, p) for j, c in enumerate(ctx.minpoly)) % p:
        raise ExpansionError("residue map construction failed")
    return p, r


def _residue(x: FieldElement, p: int, r: int) -> int:
    acc = 0
    for c in reversed(x.num):
        acc = (acc * r + c) % p
    return acc * pow(x.den, p - 2, p) % p


def direction_key(v, N: int):
    """Hash key invariant under positive (indeed any nonzero) scaling of v."""
    p, r = _residue_data(N)
    rx, ry = _residue(v[0], p, r), _residue(v[1], p, r)
    if rx == 0:
        return ("inf", ry == 0)
    return ry * pow(rx, p - 2, p) % p


# ---------------------------------------------------------------------------


def classify(v, model: StaircaseModel, max_steps: int = DEFAULT_MAX_STEPS) -> OrbitResult:
    """Run the gcd expansion with exact cycle detection."""
    if max_steps < 1:
        raise ExpansionError("max_steps must be >= 1")
    d = _in_model(v, model)
    N = model.N
    cur = _primitive(d.vec())
    word = []
    seen = {}
    hint = [128]
    for step in range(max_steps + 1):
        i = locate_sector(cur, model, hint)
        if isinstance(i, str):
            return Parabolic(sector_word=word, steps=step, terminal=i)
        key = direction_key(cur, N)
        for s, prev in seen.get(key, ()):
            if cross(prev, cur).is_zero():
                period = word[s:]
                periodic = normalize_direction(prev)
                S = word_matrix(period, model)
                check = verify_stabilizer(S, periodic)
                if not check.is_fixed:
                    raise ExpansionError("cycle found but its product does not fix the direction")
                return Hyperbolic(
                    preperiod=word[:s],
                    period=period,
                    periodic_direction=periodic,
                    stabilizer=S,
                    eigenvalue=check.eigenvalue,
                )
        if step == max_steps:
            break
        seen.setdefault(key, []).append((step, cur))
        word.append(i)
        cur = _primitive(model.inverses[i] @ cur)
    return Unresolved(steps=max_steps, last_direction=normalize_direction(cur), sector_word=word)


def replay_word(v, word, model: StaircaseModel) -> DirectionK:
    """Apply M_{w_0}^{-1}, M_{w_1}^{-1}, ... in turn."""
    cur = _in_model(v, model).vec()
    for i in word:
        cur = _primitive(model.inverses[i] @ cur)
    return normalize_direction(cur)


def _replay_in_quadrant(v: DirectionK, word, model: StaircaseModel):
    """Like replay_word, but None as soon as a pull-back leaves the closed first quadrant."""
    cur = v.vec()
    for i in word:
        cur = _primitive(model.inverses[i] @ cur)
        if cur.x.sign() < 0 or cur.y.sign() < 0:
            return None
    return normalize_direction(cur)


def certify(v, result: OrbitResult, model: StaircaseModel) -> bool:
    """Independent re-check of a classification outcome.

    Every pull-back along the recorded word must stay in the first quadrant,
    i.e. each letter names a sector that really contains the direction.
    """
    v = _in_model(v, model)
    if isinstance(result, Parabolic):
        end = _replay_in_quadrant(v, result.sector_word, model)
        if end is None:
            return False
        return end.is_horizontal() if result.terminal == HORIZONTAL else end.is_vertical()
    if isinstance(result, Hyperbolic):
        mid = _replay_in_quadrant(v, result.preperiod, model)
        if mid is None or mid != result.periodic_direction:
            return False
        if _replay_in_quadrant(mid, result.period, model) != mid:
            return False
        check = verify_stabilizer(result.stabilizer, result.periodic_direction)
        full = verify_stabilizer(result.full_stabilizer(model), v)
        return (
            check.is_fixed
            and check.hyperbolic
            and (check.eigenvalue - 1).sign() > 0
            and full.is_fixed
            and result.stabilizer.det() == 1
        )
    return True


def result_json(v, result: OrbitResult, N: int) -> dict:
    d = _in_model(v, staircase_model(N))
    out = {"N": N, "x": str(d.x), "y": str(d.y), "class": result.kind, "steps": result.steps}
    if isinstance(result, Parabolic):
        out["word"] = list(result.sector_word)
        out["terminal"] = result.terminal
    elif isinstance(result, Hyperbolic):
        out["preperiod"] = list(result.preperiod)
        out["period"] = list(result.period)
        out["periodic_direction"] = [str(result.periodic_direction.x), str(result.periodic_direction.y)]
        out["stabilizer"] = [[str(c) for c in row] for row in result.stabilizer.rows()]
        out["eigenvalue"] = str(result.eigenvalue)
        out["trace"] = str(result.trace)
    else:
        out["last_direction"] = [str(result.last_direction.x), str(result.last_direction.y)]
    return out
