"""Dense matrices over real, complex and quaternionic scalars.

Matrices are immutable values; every operation allocates a fresh result,
so they can be shared freely across concurrent workers.  All inner
products route through the real part of the trace: for quaternionic
matrices tr(AB) != tr(BA) in general, but Re tr is cyclic, which is what
makes the Frobenius geometry behave.

Storage: real (n, p) float64, complex (n, p) complex128, quaternion
(n, p, 4) float64 with components ordered (w, x, y, z).
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .quaternion import CONJ_SIGNS, Quaternion

__all__ = [
    "ScalarKind",
    "Structure",
    "MatrixClass",
    "Matrix",
    "MatrixTuple",
    "commutator",
    "frob_inner",
    "hermitian_split",
    "classify",
    "structure_residual",
    "project_structure",
    "quaternion_matmul",
    "quaternion_conj",
    "quaternion_adjoint",
]


class ScalarKind(str, Enum):
    REAL = "real"
    COMPLEX = "complex"
    QUATERNION = "quaternion"


class Structure(str, Enum):
    GENERAL = "general"
    SYMMETRIC = "symmetric"
    SKEW_SYMMETRIC = "skew-symmetric"
    HERMITIAN = "hermitian"
    SKEW_HERMITIAN = "skew-hermitian"
    CLIFFORD_SYSTEM = "clifford-system-span"
    CLIFFORD_ALGEBRA = "clifford-algebra-span"


_KIND_STRUCTURES = {
    ScalarKind.REAL: frozenset(
        {
            Structure.GENERAL,
            Structure.SYMMETRIC,
            Structure.SKEW_SYMMETRIC,
            Structure.CLIFFORD_SYSTEM,
            Structure.CLIFFORD_ALGEBRA,
        }
    ),
    ScalarKind.COMPLEX: frozenset(
        {
            Structure.GENERAL,
            Structure.SYMMETRIC,
            Structure.SKEW_SYMMETRIC,
            Structure.HERMITIAN,
            Structure.SKEW_HERMITIAN,
        }
    ),
    ScalarKind.QUATERNION: frozenset(
        {Structure.GENERAL, Structure.HERMITIAN, Structure.SKEW_HERMITIAN}
    ),
}

_STRUCTURE_SHORT = {
    Structure.GENERAL: "general",
    Structure.SYMMETRIC: "symmetric",
    Structure.SKEW_SYMMETRIC: "skew",
    Structure.HERMITIAN: "hermitian",
    Structure.SKEW_HERMITIAN: "skew-hermitian",
}


@dataclass(frozen=True)
class MatrixClass:
    """A matrix category: scalar kind plus structural tag."""

    kind: ScalarKind
    structure: Structure

    def __post_init__(self) -> None:
        if self.structure not in _KIND_STRUCTURES[self.kind]:
            raise ValueError(
                f"structure {self.structure.value!r} is not meaningful over "
                f"{self.kind.value} scalars"
            )

    @property
    def is_clifford(self) -> bool:
        return self.structure in (Structure.CLIFFORD_SYSTEM, Structure.CLIFFORD_ALGEBRA)

    @property
    def name(self) -> str:
        if self.structure is Structure.CLIFFORD_SYSTEM:
            return "clifford-system"
        if self.structure is Structure.CLIFFORD_ALGEBRA:
            return "clifford-algebra"
        return f"{self.kind.value}-{_STRUCTURE_SHORT[self.structure]}"

    @classmethod
    def parse(cls, name: str) -> "MatrixClass":
        try:
            return _CLASSES_BY_NAME[name]
        except KeyError:
            raise ValueError(f"unknown matrix class {name!r}") from None


def _all_classes() -> dict[str, MatrixClass]:
    table: dict[str, MatrixClass] = {}
    for kind, structures in _KIND_STRUCTURES.items():
        for structure in structures:
            mc = MatrixClass(kind, structure)
            table[mc.name] = mc
    return table


_CLASSES_BY_NAME = _all_classes()


# ---------------------------------------------------------------------------
# raw quaternion-array kernels (shared by Matrix and the batched evaluators)
# ---------------------------------------------------------------------------


def quaternion_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Hamilton-product matmul of (..., n, k, 4) by (..., k, p, 4) arrays."""
    aw, ax, ay, az = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    bw, bx, by, bz = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    return np.stack(
        (
            aw @ bw - ax @ bx - ay @ by - az @ bz,
            aw @ bx + ax @ bw + ay @ bz - az @ by,
            aw @ by - ax @ bz + ay @ bw + az @ bx,
            aw @ bz + ax @ by - ay @ bx + az @ bw,
        ),
        axis=-1,
    )


def quaternion_conj(a: np.ndarray) -> np.ndarray:
    return a * CONJ_SIGNS


def quaternion_adjoint(a: np.ndarray) -> np.ndarray:
    return quaternion_conj(np.swapaxes(a, -3, -2))


# ---------------------------------------------------------------------------
# Matrix
# ---------------------------------------------------------------------------


def _coerce(kind: ScalarKind, values) -> np.ndarray:
    if kind is ScalarKind.REAL:
        arr = np.array(values, dtype=np.float64)
        if arr.ndim != 2:
            raise ValueError("real matrix data must be 2-dimensional")
    elif kind is ScalarKind.COMPLEX:
        arr = np.array(values, dtype=np.complex128)
        if arr.ndim != 2:
            raise ValueError("complex matrix data must be 2-dimensional")
    else:
        arr = np.array(values, dtype=np.float64)
        if arr.ndim != 3 or arr.shape[-1] != 4:
            raise ValueError("quaternion matrix data must have shape (n, p, 4)")
    return arr


class Matrix:
    """Immutable dense matrix over one of the three scalar kinds."""

    __slots__ = ("kind", "data")

    def __init__(self, kind: ScalarKind | str, values) -> None:
        kind = ScalarKind(kind)
        arr = _coerce(kind, values)
        arr.setflags(write=False)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "data", arr)

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("Matrix is immutable")

    @classmethod
    def _wrap(cls, kind: ScalarKind, arr: np.ndarray) -> "Matrix":
        out = object.__new__(cls)
        arr.setflags(write=False)
        object.__setattr__(out, "kind", kind)
        object.__setattr__(out, "data", arr)
        return out

    # -- constructors ------------------------------------------------------

    @classmethod
    def real(cls, values) -> "Matrix":
        return cls(ScalarKind.REAL, values)

    @classmethod
    def complex(cls, values) -> "Matrix":
        return cls(ScalarKind.COMPLEX, values)

    @classmethod
    def quaternion(cls, values) -> "Matrix":
        return cls(ScalarKind.QUATERNION, values)

    @classmethod
    def of_quaternions(cls, rows: Sequence[Sequence[Quaternion]]) -> "Matrix":
        arr = np.array([[q.to_array() for q in row] for row in rows], dtype=np.float64)
        return cls(ScalarKind.QUATERNION, arr)

    @classmethod
    def zeros(cls, kind: ScalarKind | str, n: int, p: int | None = None) -> "Matrix":
        kind = ScalarKind(kind)
        p = n if p is None else p
        if kind is ScalarKind.REAL:
            return cls._wrap(kind, np.zeros((n, p)))
        if kind is ScalarKind.COMPLEX:
            return cls._wrap(kind, np.zeros((n, p), dtype=np.complex128))
        return cls._wrap(kind, np.zeros((n, p, 4)))

    @classmethod
    def eye(cls, kind: ScalarKind | str, n: int) -> "Matrix":
        kind = ScalarKind(kind)
        if kind is ScalarKind.REAL:
            return cls._wrap(kind, np.eye(n))
        if kind is ScalarKind.COMPLEX:
            return cls._wrap(kind, np.eye(n, dtype=np.complex128))
        arr = np.zeros((n, n, 4))
        arr[..., 0] = np.eye(n)
        return cls._wrap(kind, arr)

    # -- shape -------------------------------------------------------------

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape[0], self.data.shape[1]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    # -- arithmetic ---------------------------------------------------------

    def _check_same(self, other: "Matrix") -> None:
        if not isinstance(other, Matrix):
            raise TypeError("expected a Matrix")
        if self.kind is not other.kind:
            raise ValueError(f"scalar kind mismatch: {self.kind.value} vs {other.kind.value}")
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._wrap(self.kind, self.data + other.data)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._wrap(self.kind, self.data - other.data)

    def __neg__(self) -> "Matrix":
        return Matrix._wrap(self.kind, -self.data)

    def __mul__(self, s):
        if isinstance(s, (int, float)):
            return Matrix._wrap(self.kind, self.data * float(s))
        if isinstance(s, complex):
            if self.kind is not ScalarKind.COMPLEX:
                raise ValueError("complex scaling only applies to complex matrices")
            return Matrix._wrap(self.kind, self.data * s)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, s):
        return self.__mul__(1.0 / s)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            raise TypeError("expected a Matrix")
        if self.kind is not other.kind:
            raise ValueError(f"scalar kind mismatch: {self.kind.value} vs {other.kind.value}")
        if self.cols != other.rows:
            raise ValueError(f"dimension mismatch: {self.shape} @ {other.shape}")
        if self.kind is ScalarKind.QUATERNION:
            return Matrix._wrap(self.kind, quaternion_matmul(self.data, other.data))
        return Matrix._wrap(self.kind, self.data @ other.data)

    # -- involutions ---------------------------------------------------------

    def conj(self) -> "Matrix":
        if self.kind is ScalarKind.REAL:
            return self
        if self.kind is ScalarKind.COMPLEX:
            return Matrix._wrap(self.kind, self.data.conj())
        return Matrix._wrap(self.kind, quaternion_conj(self.data))

    def transpose(self) -> "Matrix":
        if self.kind is ScalarKind.QUATERNION:
            return Matrix._wrap(self.kind, np.swapaxes(self.data, 0, 1))
        return Matrix._wrap(self.kind, self.data.T)

    def adjoint(self) -> "Matrix":
        """Conjugate transpose."""
        if self.kind is ScalarKind.REAL:
            return Matrix._wrap(self.kind, self.data.T)
        if self.kind is ScalarKind.COMPLEX:
            return Matrix._wrap(self.kind, self.data.conj().T)
        return Matrix._wrap(self.kind, quaternion_adjoint(self.data))

    # -- Frobenius geometry ---------------------------------------------------

    def norm_sq(self) -> float:
        if self.kind is ScalarKind.COMPLEX:
            return float(np.vdot(self.data, self.data).real)
        return float(np.vdot(self.data, self.data))

    def norm(self) -> float:
        return float(np.sqrt(self.norm_sq()))

    def frob_inner(self, other: "Matrix") -> float:
        self._check_same(other)
        if self.kind is ScalarKind.COMPLEX:
            return float(np.vdot(other.data, self.data).real)
        return float(np.vdot(self.data, other.data))

    def re_trace(self) -> float:
        if not self.is_square:
            raise ValueError("trace of a non-square matrix")
        if self.kind is ScalarKind.REAL:
            return float(np.trace(self.data))
        if self.kind is ScalarKind.COMPLEX:
            return float(np.trace(self.data).real)
        return float(np.trace(self.data[..., 0]))

    # -- misc ------------------------------------------------------------------

    def __getitem__(self, idx):
        i, j = idx
        if self.kind is ScalarKind.REAL:
            return float(self.data[i, j])
        if self.kind is ScalarKind.COMPLEX:
            return complex(self.data[i, j])
        return Quaternion.from_array(self.data[i, j])

    def allclose(self, other: "Matrix", atol: float = 1e-12) -> bool:
        self._check_same(other)
        return bool(np.allclose(self.data, other.data, rtol=0.0, atol=atol))

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Matrix<{self.kind.value}>({self.rows}x{self.cols})"


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def commutator(x: Matrix, y: Matrix) -> Matrix:
    """[X, Y] = XY - YX for square matrices of equal size and kind."""
    if not (x.is_square and y.is_square):
        raise ValueError("commutator requires square matrices")
    return x @ y - y @ x


def frob_inner(a: Matrix, b: Matrix) -> float:
    """Re tr(A B*), the real Frobenius inner product."""
    return a.frob_inner(b)


def hermitian_split(b: Matrix) -> tuple[Matrix, Matrix]:
    """Split B into its Hermitian part (B+B*)/2 and skew-Hermitian part (B-B*)/2."""
    if not b.is_square:
        raise ValueError("hermitian_split requires a square matrix")
    adj = b.adjoint()
    return (b + adj) * 0.5, (b - adj) * 0.5


def structure_residual(a: Matrix, structure: Structure) -> float:
    """Defect of the structural predicate: 0 exactly when the tag holds."""
    structure = Structure(structure)
    if structure not in _KIND_STRUCTURES[a.kind]:
        raise ValueError(
            f"structure {structure.value!r} is not meaningful over {a.kind.value} scalars"
        )
    if structure in (Structure.CLIFFORD_SYSTEM, Structure.CLIFFORD_ALGEBRA):
        raise ValueError("span membership is checked against a Clifford frame, not pointwise")
    if not a.is_square:
        raise ValueError("structural tags apply to square matrices")
    if structure is Structure.GENERAL:
        return 0.0
    if structure is Structure.SYMMETRIC:
        return (a - a.transpose()).norm()
    if structure is Structure.SKEW_SYMMETRIC:
        return (a + a.transpose()).norm()
    if structure is Structure.HERMITIAN:
        return (a - a.adjoint()).norm()
    return (a + a.adjoint()).norm()


def classify(a: Matrix, structure: Structure, tol: float = 1e-10) -> tuple[bool, float]:
    """Whether the matrix satisfies the structural tag, plus the residual."""
    res = structure_residual(a, structure)
    return res <= tol, res


def project_structure(a: Matrix, structure: Structure) -> Matrix:
    """Orthogonal projection onto the structure subspace (general is a no-op)."""
    structure = Structure(structure)
    if structure not in _KIND_STRUCTURES[a.kind]:
        raise ValueError(
            f"structure {structure.value!r} is not meaningful over {a.kind.value} scalars"
        )
    if structure is Structure.GENERAL:
        return a
    if structure is Structure.SYMMETRIC:
        return (a + a.transpose()) * 0.5
    if structure is Structure.SKEW_SYMMETRIC:
        return (a - a.transpose()) * 0.5
    if structure is Structure.HERMITIAN:
        return (a + a.adjoint()) * 0.5
    if structure is Structure.SKEW_HERMITIAN:
        return (a - a.adjoint()) * 0.5
    raise ValueError("cannot project onto a Clifford span without its frame")


# ---------------------------------------------------------------------------
# tuples
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MatrixTuple:
    """An ordered tuple of equal-size square matrices in one matrix class."""

    cls: MatrixClass
    matrices: tuple[Matrix, ...]

    def __post_init__(self) -> None:
        mats = tuple(self.matrices)
        object.__setattr__(self, "matrices", mats)
        if not mats:
            raise ValueError("empty tuple")
        n = mats[0].rows
        for m in mats:
            if m.kind is not self.cls.kind:
                raise ValueError(
                    f"member kind {m.kind.value} does not match class {self.cls.name}"
                )
            if not m.is_square or m.rows != n:
                raise ValueError("tuple members must be square and of equal size")

    @property
    def n(self) -> int:
        return self.matrices[0].rows

    @property
    def count(self) -> int:
        return len(self.matrices)

    def max_structure_residual(self) -> float:
        """Largest pointwise structural defect (0 for general and Clifford tags)."""
        if self.cls.is_clifford or self.cls.structure is Structure.GENERAL:
            return 0.0
        return max(structure_residual(m, self.cls.structure) for m in self.matrices)

    def total_norm_sq(self) -> float:
        return sum(m.norm_sq() for m in self.matrices)

    def scaled(self, t: float) -> "MatrixTuple":
        return MatrixTuple(self.cls, tuple(m * t for m in self.matrices))

    def normalized(self) -> "MatrixTuple":
        s = self.total_norm_sq()
        if s <= 0.0:
            raise ValueError("cannot normalize a zero tuple")
        return self.scaled(1.0 / np.sqrt(s))
