"""2x2 matrices and plane vectors over an exact field."""

from __future__ import annotations

from typing import Any, NamedTuple


class Vec2(NamedTuple):
    x: Any
    y: Any

    def __add__(self, other):
        return Vec2(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Vec2(self.x - other[0], self.y - other[1])

    def __neg__(self):
        return Vec2(-self.x, -self.y)

    def scale(self, c):
        return Vec2(c * self.x, c * self.y)

    def __mul__(self, c):  # type: ignore[override]
        return self.scale(c)

    __rmul__ = __mul__  # type: ignore[assignment]

    def norm2(self):
        return self.x * self.x + self.y * self.y

    def __str__(self):
        return f"({self.x}, {self.y})"


def cross(p, q):
    """p.x * q.y - p.y * q.x"""
    return p[0] * q[1] - p[1] * q[0]


def dot(p, q):
    return p[0] * q[0] + p[1] * q[1]


class Mat2(NamedTuple):
    """Acts on column vectors: M (x, y) = (m11 x + m12 y, m21 x + m22 y)."""

    m11: Any
    m12: Any
    m21: Any
    m22: Any

    @classmethod
    def from_columns(cls, c1, c2) -> "Mat2":
        return cls(c1[0], c2[0], c1[1], c2[1])

    @classmethod
    def identity(cls, one) -> "Mat2":
        zero = one - one
        return cls(one, zero, zero, one)

    def det(self):
        return self.m11 * self.m22 - self.m12 * self.m21

    def trace(self):
        return self.m11 + self.m22

    def inverse(self) -> "Mat2":
        d = self.det()
        if d == 1:
            return Mat2(self.m22, -self.m12, -self.m21, self.m11)
        inv = 1 / d
        return Mat2(self.m22 * inv, -self.m12 * inv, -self.m21 * inv, self.m11 * inv)

    def apply(self, v) -> Vec2:
        x, y = v
        return Vec2(self.m11 * x + self.m12 * y, self.m21 * x + self.m22 * y)

    def __matmul__(self, other):
        if isinstance(other, Mat2):
            a, b, c, d = self
            e, f, g, h = other
            return Mat2(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
        return self.apply(other)

    def rows(self):
        return ((self.m11, self.m12), (self.m21, self.m22))

    def map(self, fn) -> "Mat2":
        return Mat2(*(fn(x) for x in self))

    def __str__(self):
        return f"[[{self.m11}, {self.m12}], [{self.m21}, {self.m22}]]"
