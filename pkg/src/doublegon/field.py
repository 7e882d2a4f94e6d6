"""Exact arithmetic in K = Q(a), a = 2cos(pi/N), and in L = K(b), b = sin(pi/N).

Elements of K are stored as integer numerator vectors over a common positive
denominator, always reduced modulo the (monic, integral) minimal polynomial of
``a`` and kept in lowest terms.  Signs are decided at the real embedding that
sends ``a`` to ``2cos(pi/N)`` by interval evaluation on a rigorously bracketed
fixed-point approximation of that root.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational

import mpmath


class FieldError(ValueError):
    """Raised on invalid field construction or arithmetic."""


# ---------------------------------------------------------------------------
# integer polynomials, coefficient lists low -> high


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if x:
            for j, y in enumerate(q):
                out[i + j] += x * y
    return out


def _poly_exact_div(num, den):
    """Exact division of integer polynomials with monic or unit-leading divisor."""
    num = _trim(num)
    den = _trim(den)
    lead = den[-1]
    quot = [0] * max(len(num) - len(den) + 1, 0)
    for k in range(len(num) - len(den), -1, -1):
        c, r = divmod(num[k + len(den) - 1], lead)
        if r:
            raise FieldError("polynomial division is not exact")
        quot[k] = c
        for j, y in enumerate(den):
            num[k + j] -= c * y
    if any(num):
        raise FieldError("polynomial division is not exact")
    return quot


@lru_cache(maxsize=None)
def cyclotomic(m: int) -> tuple:
    """Coefficients (low to high) of the m-th cyclotomic polynomial."""
    if m < 1:
        raise FieldError("cyclotomic index must be positive")
    num = [-1] + [0] * (m - 1) + [1]
    for k in range(1, m):
        if m % k == 0:
            num = _poly_exact_div(num, cyclotomic(k))
    return tuple(num)


def _palindromic_reduction(phi):
    """Minimal polynomial of z + 1/z from a palindromic polynomial in z.

    With ``phi`` of degree 2d and coefficients e_j, returns
    e_d + sum_k e_{d-k} V_k(w) where V_0 = 2, V_1 = w, V_k = w V_{k-1} - V_{k-2}.
    """
    deg = len(phi) - 1
    if deg % 2:
        raise FieldError("expected an even-degree palindromic polynomial")
    d = deg // 2
    if any(phi[j] != phi[deg - j] for j in range(deg + 1)):
        raise FieldError("polynomial is not palindromic")
    out = [0] * (d + 1)
    out[0] = phi[d]
    v_prev, v_cur = [2], [0, 1]
    for k in range(1, d + 1):
        e = phi[d - k]
        for i, c in enumerate(v_cur):
            out[i] += e * c
        v_next = [0] + v_cur
        for i, c in enumerate(v_prev):
            v_next[i] -= c
        v_prev, v_cur = v_cur, v_next
    return _trim(out)


def _sign_at(poly, x: Fraction) -> int:
    p, q = x.numerator, x.denominator
    deg = len(poly) - 1
    acc = 0
    for j in range(deg, -1, -1):
        acc = acc * p + poly[j] * q ** (deg - j)
    return (acc > 0) - (acc < 0)


def _format_poly(coeffs, var="x", star=False):
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = Fraction(coeffs[k])
        if c == 0:
            continue
        terms.append((c, k))
    if not terms:
        return "0"
    out = ""
    for idx, (c, k) in enumerate(terms):
        neg = c < 0
        mag = -c if neg else c
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            if mag == 1:
                body = mono
            elif mag.denominator == 1:
                body = f"{mag}*{mono}" if star else f"{mag}{mono}"
            else:
                body = f"({mag})*{mono}" if star else f"({mag}){mono}"
        if idx == 0:
            out = ("-" if neg else "") + body
        else:
            out += (" - " if neg else " + ") + body
    return out


# ---------------------------------------------------------------------------


class FieldContext:
    """The real cyclotomic field Q(2cos(pi/N)) with its distinguished embedding.

    Use :func:`make_field` rather than instantiating directly, so that
    contexts are shared.
    """

    generator_name = "a"

    def __init__(self, N: int):
        if not isinstance(N, int) or N % 2 == 0 or N < 5:
            raise FieldError(f"N must be an odd integer >= 5, got {N!r}")
        self.N = N
        self.minpoly = tuple(_palindromic_reduction(cyclotomic(2 * N)))
        self.degree = len(self.minpoly) - 1
        self.embedding = self._isolate_largest_root()
        self._brackets = {}
        self._powers = {}
        self._prec_ratio = 1.0
        self.zero = FieldElement(self, (0,) * self.degree, 1)
        self.one = self.rational(1)
        self.gen = self.from_coeffs([0, 1]) if self.degree > 1 else None

    def __reduce__(self):
        return make_field, (self.N,)

    def __repr__(self):
        return f"FieldContext(N={self.N})"

    # -- embedding -------------------------------------------------------

    def _isolate_largest_root(self):
        poly = self.minpoly
        step = Fraction(1, 8 * self.N * self.N)
        while True:
            roots = []
            x = Fraction(-2)
            s = _sign_at(poly, x)
            while x < 2:
                y = min(x + step, Fraction(2))
                t = _sign_at(poly, y)
                if t == 0:
                    raise FieldError("rational root found; minpoly is reducible")
                if s != t and s != 0:
                    roots.append((x, y))
                x, s = y, t
            if len(roots) == self.degree:
                break
            step /= 2
        lo, hi = roots[-1]
        slo = _sign_at(poly, lo)
        # tighten to width 2^-32 so the fixed-point brackets below start inside
        while hi - lo > Fraction(1, 1 << 32):
            mid = (lo + hi) / 2
            if _sign_at(poly, mid) == slo:
                lo = mid
            else:
                hi = mid
        return (lo, hi)

    def bracket(self, prec: int) -> int:
        """Integer A with the root of minpoly inside [(A-1)/2^prec, (A+1)/2^prec]."""
        prec = max(64, -(-prec // 64) * 64)
        A = self._brackets.get(prec)
        if A is not None:
            return A
        lo, hi = self.embedding
        with mpmath.workprec(prec + 32):
            A = int(mpmath.floor(2 * mpmath.cos(mpmath.pi / self.N) * mpmath.mpf(2) ** prec))
        left, right = Fraction(A - 1, 1 << prec), Fraction(A + 1, 1 << prec)
        ok = (
            lo <= left
            and right <= hi
            and _sign_at(self.minpoly, left) * _sign_at(self.minpoly, right) < 0
        )
        if not ok:
            # bisection from the isolating interval
            s_lo = _sign_at(self.minpoly, lo)
            while hi - lo > Fraction(1, 1 << (prec + 1)):
                mid = (lo + hi) / 2
                if _sign_at(self.minpoly, mid) == s_lo:
                    lo = mid
                else:
                    hi = mid
            A = (lo.numerator << prec) // lo.denominator
        self._brackets[prec] = A
        return A

    def power_approx(self, prec: int):
        """Integers P_j and bounds E_j with |a^j 2^prec - P_j| <= E_j, j < degree."""
        prec = max(64, -(-prec // 64) * 64)
        cached = self._powers.get(prec)
        if cached is not None:
            return cached
        d = self.degree
        q = prec + 4 * d + 8
        A = self.bracket(q)
        q = max(64, -(-q // 64) * 64)
        powers, errs = [], []
        lo = hi = 1
        for j in range(d):
            shift = q * j - prec
            if shift >= 0:
                plo, phi = lo >> shift, -((-hi) >> shift)
            else:
                plo, phi = lo << -shift, hi << -shift
            powers.append(plo)
            errs.append(phi - plo + 1)
            lo *= A - 1
            hi *= A + 1
        self._powers[prec] = (powers, errs)
        return powers, errs

    def _sign_prec_hint(self, bits: int) -> int:
        # extra precision needed scales with coefficient size; learn the ratio
        return max(64, int(bits * self._prec_ratio) + 64)

    def _record_prec(self, bits: int, prec: int) -> None:
        if bits > 256:
            ratio = (prec - 64) / bits
            if ratio > self._prec_ratio:
                self._prec_ratio = min(ratio, 8.0)

    def approx_root(self) -> float:
        return self.bracket(64) / 2.0**64

    # -- element construction -------------------------------------------

    def from_coeffs(self, coeffs) -> "FieldElement":
        """Element c_0 + c_1 a + ... from rational coefficients (any length)."""
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // gcd(den, c.denominator)
        num = [int(c * den) for c in fr]
        return self._make(num, den)

    def rational(self, q) -> "FieldElement":
        q = Fraction(q)
        return FieldElement(self, (q.numerator,) + (0,) * (self.degree - 1), q.denominator)

    def _reduce(self, num):
        """Reduce an integer coefficient list modulo the monic minpoly."""
        d = self.degree
        m = self.minpoly
        num = list(num)
        for k in range(len(num) - 1, d - 1, -1):
            c = num[k]
            if c:
                base = k - d
                for j in range(d):
                    num[base + j] -= c * m[j]
            num[k] = 0
        num = num[:d]
        if len(num) < d:
            num += [0] * (d - len(num))
        return num

    def _make(self, num, den) -> "FieldElement":
        num = self._reduce(num)
        if den < 0:
            num = [-c for c in num]
            den = -den
        g = den
        for c in num:
            if c:
                g = gcd(g, c)
                if g == 1:
                    break
        if not any(num):
            return FieldElement(self, (0,) * self.degree, 1)
        if g != 1:
            num = [c // g for c in num]
            den //= g
        return FieldElement(self, tuple(num), den)

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.ctx is not self:
                raise FieldError("context mismatch")
            return value
        if isinstance(value, (int, Rational)):
            return self.rational(value)
        if isinstance(value, str):
            from .parse import parse_element

            return parse_element(value, self)
        raise TypeError(f"cannot convert {type(value).__name__} to a field element")

    def minpoly_str(self) -> str:
        return _format_poly(self.minpoly, "x")

    @property
    def trace_field_note(self) -> str | None:
        n = (self.N - 1) // 2
        if n != self.degree:
            return (
                f"degree {self.degree} = phi(2N)/2 differs from n = {n}; "
                f"{self.N} is not prime"
            )
        return None


@lru_cache(maxsize=None)
def make_field(N: int) -> FieldContext:
    """Shared context for Q(2cos(pi/N)), N odd and at least 5."""
    return FieldContext(N)


class FieldElement:
    """An element of Q(a) in lowest terms: (num[0] + num[1] a + ...) / den."""

    __slots__ = ("ctx", "num", "den")

    def __init__(self, ctx: FieldContext, num: tuple, den: int):
        self.ctx = ctx
        self.num = num
        self.den = den

    def __reduce__(self):
        return FieldElement, (self.ctx, self.num, self.den)

    # -- coercion --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx:
                raise FieldError("context mismatch")
            return other
        if isinstance(other, (int, Rational)):
            return self.ctx.rational(other)
        return NotImplemented

    @property
    def coeffs(self) -> tuple:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise FieldError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d1, d2 = self.den, other.den
        if d1 == d2:
            return self.ctx._make([x + y for x, y in zip(self.num, other.num)], d1)
        return self.ctx._make([x * d2 + y * d1 for x, y in zip(self.num, other.num)], d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.ctx, tuple(-c for c in self.num), self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.ctx._make([c * other for c in self.num], self.den)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.ctx._make(_poly_mul(self.num, other.num), self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        if self.is_rational():
            return self.ctx.rational(Fraction(self.den, self.num[0]))
        # extended Euclid over Q: find s with s*x + t*m = 1
        m = [Fraction(c) for c in self.ctx.minpoly]
        x = [Fraction(c) for c in _trim(self.num)]
        r0, r1 = m, x
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1 or (len(r1) == 1 and r1[0] == 0):
            q, r = _frac_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _frac_sub(s0, _frac_mul(q, s1))
            if not r1:
                raise FieldError("minimal polynomial is not irreducible")
        # r1 is a nonzero constant
        c = r1[0]
        inv = [v / c for v in s1]
        return self.ctx.from_coeffs(inv) * self.den

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("division by zero field element")
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = self.ctx.one
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- comparison ------------------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self.is_rational():
            return hash(Fraction(self.num[0], self.den))
        return hash((self.ctx.N, self.num, self.den))

    def sign(self) -> int:
        """Sign at the distinguished embedding a -> 2cos(pi/N)."""
        num = self.num
        if not any(num):
            return 0
        if not any(num[1:]):
            return 1 if num[0] > 0 else -1
        ctx = self.ctx
        bits = max(abs(c).bit_length() for c in num)
        # a cheap pass first: most values do not cancel much
        s, e = self.fixed(128)
        if s > e:
            return 1
        if s < -e:
            return -1
        prec = ctx._sign_prec_hint(bits)
        while True:
            powers, errs = ctx.power_approx(prec)
            s = 0
            e = 0
            for c, p, err in zip(num, powers, errs):
                if c:
                    s += c * p
                    e += abs(c) * err
            if s > e:
                ctx._record_prec(bits, prec)
                return 1
            if s < -e:
                ctx._record_prec(bits, prec)
                return -1
            prec *= 2

    def fixed(self, prec: int) -> tuple:
        """(S, E) with |den * value * 2^prec - S| <= E, at the rounded-up precision."""
        powers, errs = self.ctx.power_approx(prec)
        s = e = 0
        for c, p, err in zip(self.num, powers, errs):
            if c:
                s += c * p
                e += abs(c) * err
        return s, e

    def _cmp(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return (self - other).sign()

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- numerics and display --------------------------------------------

    def interval(self, prec: int) -> tuple:
        """Rational enclosure of the embedded value; width shrinks like 2^-prec."""
        ctx = self.ctx
        d = ctx.degree
        A = ctx.bracket(prec)
        prec = max(64, -(-prec // 64) * 64)
        lo = hi = 0
        plo = phi = 1
        for j in range(d):
            c = self.num[j]
            if c:
                scale = 1 << (prec * (d - 1 - j))
                if c > 0:
                    lo += c * plo * scale
                    hi += c * phi * scale
                else:
                    lo += c * phi * scale
                    hi += c * plo * scale
            plo *= A - 1
            phi *= A + 1
        denom = self.den << (prec * (d - 1))
        return Fraction(lo, denom), Fraction(hi, denom)

    def __float__(self):
        if self.is_rational():
            return self.num[0] / self.den
        bits = max(abs(c).bit_length() for c in self.num) + self.den.bit_length()
        lo, hi = self.interval(64 + bits)
        return float((lo + hi) / 2)

    def approx(self, digits: int) -> str:
        """Decimal string with ``digits`` places after the point, correctly rounded."""
        if digits < 1:
            raise FieldError("digits must be >= 1")
        scale = 10**digits
        if self.is_rational():
            return _fixed(round(self.to_fraction() * scale), digits)
        prec = int(digits * 3.33) + 64
        while True:
            lo, hi = self.interval(prec)
            rlo, rhi = round(lo * scale), round(hi * scale)
            if rlo == rhi:
                return _fixed(rlo, digits)
            prec *= 2

    def __str__(self):
        return _format_poly(self.coeffs, self.ctx.generator_name, star=True)

    def __repr__(self):
        return f"FieldElement(N={self.ctx.N}, {self})"


def _fixed(n: int, digits: int) -> str:
    sign = "-" if n < 0 else ""
    s = str(abs(n)).rjust(digits + 1, "0")
    return f"{sign}{s[:-digits]}.{s[-digits:]}"


def _frac_trim(p):
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def _frac_sub(p, q):
    n = max(len(p), len(q))
    p = p + [Fraction(0)] * (n - len(p))
    q = q + [Fraction(0)] * (n - len(q))
    return _frac_trim([x - y for x, y in zip(p, q)]) or [Fraction(0)]


def _frac_mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if x:
            for j, y in enumerate(q):
                out[i + j] += x * y
    return _frac_trim(out) or [Fraction(0)]


def _frac_divmod(num, den):
    num = list(num)
    den = _frac_trim(list(den))
    quot = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    lead = den[-1]
    for k in range(len(num) - len(den), -1, -1):
        c = num[k + len(den) - 1] / lead
        quot[k] = c
        if c:
            for j, y in enumerate(den):
                num[k + j] -= c * y
    rem = _frac_trim(num[: len(den) - 1])
    return _frac_trim(quot) or [Fraction(0)], rem


# ---------------------------------------------------------------------------
# quadratic extension L = K(b), b^2 = (4 - a^2)/4, b > 0


class ExtContext:
    """K(b) with b = sin(pi/N) = +sqrt(1 - a^2/4)."""

    def __init__(self, base: FieldContext):
        self.base = base
        a = base.gen
        self.beta_squared = (4 - a * a) / 4
        self.zero = ExtElement(self, base.zero, base.zero)
        self.one = ExtElement(self, base.one, base.zero)
        self.beta = ExtElement(self, base.zero, base.one)

    def __reduce__(self):
        return make_ext, (self.base,)

    def __repr__(self):
        return f"ExtContext(N={self.base.N})"

    def __call__(self, u, v=0) -> "ExtElement":
        if isinstance(u, ExtElement):
            return u
        return ExtElement(self, self.base(u), self.base(v))


@lru_cache(maxsize=None)
def make_ext(base: FieldContext) -> ExtContext:
    return ExtContext(base)


class ExtElement:
    """u + v*b with u, v in K."""

    __slots__ = ("ctx", "u", "v")

    def __init__(self, ctx: ExtContext, u: FieldElement, v: FieldElement):
        self.ctx = ctx
        self.u = u
        self.v = v

    def __reduce__(self):
        return ExtElement, (self.ctx, self.u, self.v)

    def _coerce(self, other):
        if isinstance(other, ExtElement):
            if other.ctx is not self.ctx:
                raise FieldError("context mismatch")
            return other
        if isinstance(other, (FieldElement, int, Rational)):
            base = self.ctx.base
            return ExtElement(self.ctx, base(other), base.zero)
        return NotImplemented

    def is_zero(self) -> bool:
        return self.u.is_zero() and self.v.is_zero()

    def in_base(self) -> bool:
        return self.v.is_zero()

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ExtElement(self.ctx, self.u + other.u, self.v + other.v)

    __radd__ = __add__

    def __neg__(self):
        return ExtElement(self.ctx, -self.u, -self.v)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ExtElement(self.ctx, self.u - other.u, self.v - other.v)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        u1, v1, u2, v2 = self.u, self.v, other.u, other.v
        zero = self.ctx.base.zero
        if v1.is_zero() and v2.is_zero():
            return ExtElement(self.ctx, u1 * u2, zero)
        if u1.is_zero() and u2.is_zero():
            return ExtElement(self.ctx, v1 * v2 * self.ctx.beta_squared, zero)
        if v1.is_zero():
            return ExtElement(self.ctx, u1 * u2, u1 * v2)
        if v2.is_zero():
            return ExtElement(self.ctx, u1 * u2, v1 * u2)
        return ExtElement(
            self.ctx,
            u1 * u2 + v1 * v2 * self.ctx.beta_squared,
            u1 * v2 + u2 * v1,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "ExtElement":
        return ExtElement(self.ctx, self.u, -self.v)

    def norm(self) -> FieldElement:
        """u^2 - v^2 b^2, the relative norm down to K."""
        return self.u * self.u - self.v * self.v * self.ctx.beta_squared

    def inverse(self) -> "ExtElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero extension element")
        if self.v.is_zero():
            return ExtElement(self.ctx, self.u.inverse(), self.v)
        if self.u.is_zero():
            w = (self.v * self.ctx.beta_squared).inverse()
            return ExtElement(self.ctx, self.u, w)
        n = self.norm().inverse()
        return ExtElement(self.ctx, self.u * n, -self.v * n)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.ctx.one
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.u == other.u and self.v == other.v

    def __hash__(self):
        if self.v.is_zero():
            return hash(self.u)
        return hash((self.u, self.v))

    def sign(self) -> int:
        su, sv = self.u.sign(), self.v.sign()
        if sv == 0:
            return su
        if su == 0 or su == sv:
            return sv
        # opposite signs: the larger of |u| and |v| b wins
        s = self.norm().sign()
        if s == 0:
            raise FieldError("b lies in K; extension is degenerate")
        return su if s > 0 else sv

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __float__(self):
        b = (1 - float(self.ctx.base.gen) ** 2 / 4) ** 0.5
        return float(self.u) + float(self.v) * b

    def __str__(self):
        if self.v.is_zero():
            return str(self.u)
        v = self.v
        neg = v.is_rational() and v.sign() < 0
        if neg:
            v = -v
        if v == 1:
            vs = "b"
        elif v.is_rational() and v.den == 1:
            vs = f"{v}*b"
        else:
            vs = f"({v})*b"
        if self.u.is_zero():
            return f"-{vs}" if neg else vs
        return f"{self.u} {'-' if neg else '+'} {vs}"

    def __repr__(self):
        return f"ExtElement(N={self.ctx.base.N}, {self})"
