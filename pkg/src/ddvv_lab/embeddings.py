"""Field-reduction embeddings.

``realify`` maps complex n x n matrices to real 2n x 2n matrices,
``complexify`` maps quaternionic n x n matrices to complex 2n x 2n
matrices.  Both double the squared Frobenius norm.  ``realify`` twists
products (realify(X) realify(Y) = realify(-i XY)), so it carries
commutators to commutators of -i[X, Y]; ``complexify`` is a genuine
real-algebra homomorphism.

A quaternion entry w + x*i + y*j + z*k is split as (w + x*i) + (y + z*i)*j
with the j coefficient on the right; the block formulas below are only
consistent with right coefficients.
"""
from __future__ import annotations

import numpy as np

from .matrix import Matrix, ScalarKind, commutator

__all__ = [
    "realify",
    "complexify",
    "complex_parts",
    "from_complex_parts",
    "realify_commutator_residual",
    "complexify_commutator_residual",
]


def _require(m: Matrix, kind: ScalarKind, what: str) -> None:
    if m.kind is not kind:
        raise ValueError(f"{what} expects a {kind.value} matrix, got {m.kind.value}")
    if not m.is_square:
        raise ValueError(f"{what} expects a square matrix")


def realify(x: Matrix) -> Matrix:
    """Embed a complex matrix X = X1 + X2*i as [[X2, X1], [-X1, X2]]."""
    _require(x, ScalarKind.COMPLEX, "realify")
    x1 = x.data.real
    x2 = x.data.imag
    return Matrix.real(np.block([[x2, x1], [-x1, x2]]))


def complex_parts(x: Matrix) -> tuple[Matrix, Matrix]:
    """The complex pair (X1, X2) of a quaternionic matrix X = X1 + X2*j."""
    if x.kind is not ScalarKind.QUATERNION:
        raise ValueError("complex_parts expects a quaternionic matrix")
    d = x.data
    return (
        Matrix.complex(d[..., 0] + 1j * d[..., 1]),
        Matrix.complex(d[..., 2] + 1j * d[..., 3]),
    )


def from_complex_parts(x1: Matrix, x2: Matrix) -> Matrix:
    """Reassemble X = X1 + X2*j from its complex pair."""
    if x1.kind is not ScalarKind.COMPLEX or x2.kind is not ScalarKind.COMPLEX:
        raise ValueError("from_complex_parts expects complex matrices")
    if x1.shape != x2.shape:
        raise ValueError("complex parts must have equal shapes")
    arr = np.stack(
        (x1.data.real, x1.data.imag, x2.data.real, x2.data.imag),
        axis=-1,
    )
    return Matrix.quaternion(arr)


def complexify(x: Matrix) -> Matrix:
    """Embed a quaternionic matrix X = X1 + X2*j as [[X1, X2], [-conj(X2), conj(X1)]]."""
    _require(x, ScalarKind.QUATERNION, "complexify")
    d = x.data
    x1 = d[..., 0] + 1j * d[..., 1]
    x2 = d[..., 2] + 1j * d[..., 3]
    return Matrix.complex(np.block([[x1, x2], [-x2.conj(), x1.conj()]]))


def realify_commutator_residual(x: Matrix, y: Matrix) -> float:
    """Defect of [realify(X), realify(Y)] = realify(-i [X, Y])."""
    lhs = commutator(realify(x), realify(y))
    rhs = realify(commutator(x, y) * (-1j))
    return (lhs - rhs).norm()


def complexify_commutator_residual(x: Matrix, y: Matrix) -> float:
    """Defect of [complexify(X), complexify(Y)] = complexify([X, Y])."""
    lhs = commutator(complexify(x), complexify(y))
    rhs = complexify(commutator(x, y))
    return (lhs - rhs).norm()
