"""Quaternion scalars: Hamilton product, conjugation, real part, norm.

The ground ring for quaternionic matrices.  Everything is double
precision; equality in tests is tolerance-based (1e-10 absolute for
integer-entried constructions, 1e-8 relative elsewhere).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Quaternion",
    "ONE",
    "I",
    "J",
    "K",
    "MUL_TABLE",
    "CONJ_SIGNS",
    "qvec_dot",
    "qscale_right",
]


@dataclass(frozen=True)
class Quaternion:
    """w + x*i + y*j + z*k with real components."""

    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    @staticmethod
    def from_array(a) -> "Quaternion":
        w, x, y, z = (float(t) for t in a)
        return Quaternion(w, x, y, z)

    def to_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z], dtype=np.float64)

    @property
    def re(self) -> float:
        return self.w

    @property
    def imag(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=np.float64)

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm_sq(self) -> float:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def norm(self) -> float:
        return math.sqrt(self.norm_sq())

    def __add__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.w + other.w, self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.w - other.w, self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            a, b = self, other
            return Quaternion(
                a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
                a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
                a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
                a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
            )
        if isinstance(other, (int, float)):
            s = float(other)
            return Quaternion(self.w * s, self.x * s, self.y * s, self.z * s)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return self.__mul__(other)
        return NotImplemented

    def isclose(self, other: "Quaternion", tol: float = 1e-12) -> bool:
        return (self - other).norm() <= tol

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Quaternion({self.w}, {self.x}, {self.y}, {self.z})"


ONE = Quaternion(1.0, 0.0, 0.0, 0.0)
I = Quaternion(0.0, 1.0, 0.0, 0.0)
J = Quaternion(0.0, 0.0, 1.0, 0.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def _mul_table() -> np.ndarray:
    """Structure constants T[p, q, c] with e_p * e_q = sum_c T[p,q,c] e_c."""
    basis = (ONE, I, J, K)
    t = np.zeros((4, 4, 4))
    for pi, p in enumerate(basis):
        for qi, q in enumerate(basis):
            t[pi, qi] = (p * q).to_array()
    t.setflags(write=False)
    return t


MUL_TABLE = _mul_table()

CONJ_SIGNS = np.array([1.0, -1.0, -1.0, -1.0])
CONJ_SIGNS.setflags(write=False)


def qvec_dot(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Hermitian product sum_t conj(u_t) v_t of quaternion vectors (n, 4) -> (4,)."""
    return np.einsum("tp,tq,pqc->c", u * CONJ_SIGNS, v, MUL_TABLE)


def qscale_right(u: np.ndarray, s: np.ndarray) -> np.ndarray:
    """Entrywise right multiplication of a (..., 4) quaternion array by the scalar s (4,)."""
    return np.einsum("...p,q,pqc->...c", u, s, MUL_TABLE)
