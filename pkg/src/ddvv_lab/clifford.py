"""Clifford frames: tuples of anticommuting orthogonal generators.

A *system* frame is (P_0, ..., P_m), symmetric orthogonal on R^{2l} with
P_i P_j + P_j P_i = 2 delta_ij I.  An *algebra* frame is
(E_1, ..., E_{m-1}), skew-symmetric orthogonal on R^l with
E_i E_j + E_j E_i = -2 delta_ij I.  Here l = k * delta(m) with delta the
irreducible representation dimension.

Irreducible models are integer-entried so every frame satisfies its
defining relations with zero floating error:

* one generator on R^2 (the rotation generator),
* left multiplications by the imaginary quaternion units on R^4,
* left multiplications by imaginary octonion units on R^8, where the
  octonions are realized by Cayley-Dickson doubling of the quaternions
  (this yields signed permutation matrices),
* eight generators on R^16 derived from the m=8 system blocks,
* a tensor doubling step for the period-8 extension: the dimension-16
  frame padded by identity, plus base generators tensored with the
  symmetric involution formed by the product of all eight of its
  generators.

Reducible frames (k > 1) are block-diagonal direct sums of k copies of
the irreducible model, so frames are canonical and deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .matrix import Matrix, MatrixClass, MatrixTuple, ScalarKind, Structure
from .quaternion import I as QI
from .quaternion import J as QJ
from .quaternion import K as QK
from .quaternion import ONE as QONE
from .quaternion import Quaternion

__all__ = [
    "irreducible_dimension",
    "CliffordFrame",
    "FrameValidation",
    "build_algebra",
    "build_system",
    "validate_frame",
    "span_tuple",
    "coefficient_vectors",
]

_DELTA_BASE = (1, 2, 4, 4, 8, 8, 8, 8)


def irreducible_dimension(m: int) -> int:
    """delta(m): size of the irreducible representation, with delta(m+8) = 16 delta(m)."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    scale = 1
    while m > 8:
        m -= 8
        scale *= 16
    return scale * _DELTA_BASE[m - 1]


# ---------------------------------------------------------------------------
# integer-entried irreducible models
# ---------------------------------------------------------------------------

_QUAT_BASIS = (QONE, QI, QJ, QK)


def _quaternion_left_mult(q: Quaternion) -> np.ndarray:
    """Matrix of x -> q*x on H = R^4 in the basis (1, i, j, k)."""
    cols = [(q * e).to_array() for e in _QUAT_BASIS]
    return np.stack(cols, axis=1)


def _oct_mul(a, b):
    # Cayley-Dickson doubling: (p, q)(r, s) = (pr - conj(s) q, s p + q conj(r))
    p, q = a
    r, s = b
    return (p * r - s.conjugate() * q, s * p + q * r.conjugate())


_OCT_BASIS = tuple(
    [(e, Quaternion()) for e in _QUAT_BASIS] + [(Quaternion(), e) for e in _QUAT_BASIS]
)


def _oct_coords(o) -> np.ndarray:
    return np.concatenate([o[0].to_array(), o[1].to_array()])


def _octonion_left_mult(index: int) -> np.ndarray:
    """Matrix of x -> e_index * x on O = R^8 (index 1..7 are imaginary units)."""
    e = _OCT_BASIS[index]
    cols = [_oct_coords(_oct_mul(e, b)) for b in _OCT_BASIS]
    return np.stack(cols, axis=1)


@lru_cache(maxsize=None)
def _irreducible_algebra(m: int) -> tuple[np.ndarray, ...]:
    """The m-1 generators of the canonical irreducible algebra frame on R^{delta(m)}."""
    if m == 1:
        return ()
    if m == 2:
        return (np.array([[0.0, 1.0], [-1.0, 0.0]]),)
    if m in (3, 4):
        units = (QI, QJ, QK)[: m - 1]
        return tuple(_quaternion_left_mult(q) for q in units)
    if 5 <= m <= 8:
        return tuple(_octonion_left_mult(a) for a in range(1, m))
    if m == 9:
        p = _irreducible_system(8)
        return tuple(p[0] @ pj for pj in p[1:])
    base = _irreducible_algebra(m - 8)
    sixteen = _irreducible_algebra(9)
    omega = sixteen[0]
    for f in sixteen[1:]:
        omega = omega @ f
    d = irreducible_dimension(m - 8)
    eye = np.eye(d)
    gens = [np.kron(eye, f) for f in sixteen]
    gens += [np.kron(e, omega) for e in base]
    return tuple(gens)


@lru_cache(maxsize=None)
def _irreducible_system(m: int) -> tuple[np.ndarray, ...]:
    """The m+1 generators of the canonical irreducible system frame on R^{2 delta(m)}."""
    es = _irreducible_algebra(m)
    l = irreducible_dimension(m)
    eye = np.eye(l)
    zero = np.zeros((l, l))
    gens = [
        np.block([[eye, zero], [zero, -eye]]),
        np.block([[zero, eye], [eye, zero]]),
    ]
    gens += [np.block([[zero, e], [-e, zero]]) for e in es]
    return tuple(gens)


# ---------------------------------------------------------------------------
# frames
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CliffordFrame:
    """A validated-by-construction tuple of Clifford generators plus metadata."""

    kind: str  # "system" | "algebra"
    m: int
    k: int
    generators: tuple[Matrix, ...]

    def __post_init__(self) -> None:
        if self.kind not in ("system", "algebra"):
            raise ValueError(f"frame kind must be 'system' or 'algebra', got {self.kind!r}")
        object.__setattr__(self, "generators", tuple(self.generators))

    @property
    def delta(self) -> int:
        return irreducible_dimension(self.m)

    @property
    def l(self) -> int:
        return self.k * self.delta

    @property
    def dim(self) -> int:
        return 2 * self.l if self.kind == "system" else self.l

    @property
    def count(self) -> int:
        return len(self.generators)

    @property
    def generator_norm_sq(self) -> int:
        # orthogonal generators: ||G||^2 = tr(I) = dim
        return self.dim

    @property
    def matrix_class(self) -> MatrixClass:
        structure = (
            Structure.CLIFFORD_SYSTEM if self.kind == "system" else Structure.CLIFFORD_ALGEBRA
        )
        return MatrixClass(ScalarKind.REAL, structure)


def build_algebra(m: int, k: int = 1) -> CliffordFrame:
    """The canonical algebra frame: m-1 skew orthogonal generators on R^{k delta(m)}."""
    if m < 2:
        raise ValueError(f"algebra frames need m >= 2, got {m}")
    if k < 1:
        raise ValueError(f"multiplicity k must be >= 1, got {k}")
    eye = np.eye(k)
    gens = tuple(Matrix.real(np.kron(eye, e)) for e in _irreducible_algebra(m))
    return CliffordFrame("algebra", m, k, gens)


def build_system(m: int, k: int = 1) -> CliffordFrame:
    """The canonical system frame: m+1 symmetric orthogonal generators on R^{2 k delta(m)}."""
    if m < 1:
        raise ValueError(f"system frames need m >= 1, got {m}")
    if k < 1:
        raise ValueError(f"multiplicity k must be >= 1, got {k}")
    eye = np.eye(k)
    gens = tuple(Matrix.real(np.kron(eye, p)) for p in _irreducible_system(m))
    return CliffordFrame("system", m, k, gens)


@dataclass(frozen=True)
class FrameValidation:
    """Residuals of the defining relations; all zeros for built frames."""

    anticommutator: np.ndarray  # (g, g): ||G_i G_j + G_j G_i -/+ 2 delta_ij I||
    structure: np.ndarray  # (g,): symmetry (system) or skewness (algebra) defect
    orthogonality: np.ndarray  # (g,): ||G^t G - I||
    norm: np.ndarray  # (g,): | ||G||^2 - dim |
    cross_inner: np.ndarray  # (g, g): |<G_i, G_j>| off the diagonal

    @property
    def max_residual(self) -> float:
        return max(
            float(self.anticommutator.max(initial=0.0)),
            float(self.structure.max(initial=0.0)),
            float(self.orthogonality.max(initial=0.0)),
            float(self.norm.max(initial=0.0)),
            float(self.cross_inner.max(initial=0.0)),
        )

    def ok(self, tol: float = 1e-10) -> bool:
        return self.max_residual <= tol


def validate_frame(frame: CliffordFrame) -> FrameValidation:
    """Recompute every defining relation of the frame and report the defects."""
    g = frame.count
    dim = frame.dim
    sign = 1.0 if frame.kind == "system" else -1.0
    struct = Structure.SYMMETRIC if frame.kind == "system" else Structure.SKEW_SYMMETRIC
    eye = np.eye(dim)
    data = [gen.data for gen in frame.generators]

    anti = np.zeros((g, g))
    cross = np.zeros((g, g))
    structure = np.zeros(g)
    orth = np.zeros(g)
    norm = np.zeros(g)
    for i in range(g):
        a = data[i]
        flip = a.T if frame.kind == "system" else -a.T
        structure[i] = float(np.linalg.norm(a - flip))
        orth[i] = float(np.linalg.norm(a.T @ a - eye))
        norm[i] = abs(float(np.vdot(a, a)) - dim)
        for j in range(i, g):
            b = data[j]
            target = sign * 2.0 * eye if i == j else 0.0
            r = float(np.linalg.norm(a @ b + b @ a - target))
            anti[i, j] = anti[j, i] = r
            if i != j:
                c = abs(float(np.vdot(a, b)))
                cross[i, j] = cross[j, i] = c
    return FrameValidation(anti, structure, orth, norm, cross)


def span_tuple(frame: CliffordFrame, coeffs: np.ndarray) -> MatrixTuple:
    """The tuple B_r = sum_i coeffs[r, i] G_i, tagged with the span's matrix class."""
    coeffs = np.asarray(coeffs, dtype=np.float64)
    if coeffs.ndim != 2 or coeffs.shape[1] != frame.count:
        raise ValueError(
            f"coefficients must be (M, {frame.count}), got {coeffs.shape}"
        )
    if coeffs.shape[0] < 1:
        raise ValueError("need at least one coefficient row")
    stack = np.stack([gen.data for gen in frame.generators])
    mats = np.tensordot(coeffs, stack, axes=(1, 0))
    cls = frame.matrix_class
    return MatrixTuple(cls, tuple(Matrix.real(m) for m in mats))


def coefficient_vectors(
    frame: CliffordFrame, tup: MatrixTuple, tol: float = 1e-8
) -> np.ndarray:
    """Recover coefficients b[r, i] = <G_i, B_r> / ||G_i||^2 for an in-span tuple.

    Raises if any member sits further than ``tol * (1 + ||B_r||)`` from the span.
    """
    mats = tup.matrices
    scale = float(frame.generator_norm_sq)
    coeffs = np.empty((len(mats), frame.count))
    for r, b in enumerate(mats):
        if b.shape != (frame.dim, frame.dim):
            raise ValueError("tuple member size does not match the frame")
        for i, gen in enumerate(frame.generators):
            coeffs[r, i] = gen.frob_inner(b) / scale
    rebuilt = span_tuple(frame, coeffs)
    for r, b in enumerate(mats):
        res = (b - rebuilt.matrices[r]).norm()
        if res > tol * (1.0 + b.norm()):
            raise ValueError(
                f"tuple member {r} lies outside the span (residual {res:.3e})"
            )
    return coeffs
