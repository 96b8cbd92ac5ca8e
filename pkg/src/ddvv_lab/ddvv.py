"""The inequality engine.

For a tuple (B_1, ..., B_m) the DDVV-type functional compares

    lhs = sum over ordered pairs (r, s) of ||[B_r, B_s]||^2
    rhs = (sum_r ||B_r||^2)^2

against the class constant c: lhs <= c * rhs, with equality exactly on
the maximal configurations.  The ordered-pair convention (diagonal terms
vanish, each unordered pair counts twice) is fixed once here; every
table constant assumes it.

Slack c*rhs - lhs is evaluated in exact rational arithmetic over the
(binary-exact) floats so that integer-entried maximizers report slack
exactly 0.0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import embeddings
from .clifford import CliffordFrame, coefficient_vectors
from .matrix import (
    Matrix,
    MatrixClass,
    MatrixTuple,
    ScalarKind,
    Structure,
    commutator,
    quaternion_matmul,
)

__all__ = [
    "ConstantQuery",
    "optimal_constant",
    "bw_constant",
    "ddvv_lhs",
    "ddvv_rhs",
    "BwReport",
    "bw_report",
    "gram_bound",
    "conjugate_mix",
    "equality_residuals",
    "DdvvReport",
    "evaluate",
    "exact_slack",
    "jacobi_split_sides",
    "span_lhs_closed",
    "span_norms_sq_closed",
    "ddvv_lhs_batch",
    "ddvv_rhs_batch",
    "constant_classes",
]


# ---------------------------------------------------------------------------
# optimal constants
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConstantQuery:
    """Parameters needed to resolve one table/theorem constant."""

    cls: MatrixClass
    n: int | None = None  # matrix size (needed by skew classes)
    count: int | None = None  # tuple length (m, or M for spans)
    k: int | None = None  # Clifford multiplicity
    clifford_m: int | None = None  # Clifford parameter m


def _span_constant(base: int, q: ConstantQuery) -> Fraction:
    from .clifford import irreducible_dimension

    if q.k is None or q.clifford_m is None or q.count is None:
        raise ValueError("Clifford span constants need k, clifford_m and the tuple length")
    if q.k < 1:
        raise ValueError("k must be >= 1")
    m = q.clifford_m
    gens = m + 1 if base == 2 else m - 1
    if gens < 1:
        raise ValueError(f"no generators for clifford m={m}")
    if q.count < 1:
        raise ValueError("tuple length must be >= 1")
    l = q.k * irreducible_dimension(m)
    n_eff = min(gens, q.count)
    return Fraction(base, l) * (1 - Fraction(1, n_eff))


def optimal_constant(q: ConstantQuery) -> Fraction:
    """The class constant c as an exact fraction.

    Resolution follows the published tables: symmetric -> 1; skew ->
    1/3 (n=3) or 2/3 (n>=4); complex (skew-)Hermitian -> 4/3; general
    real/complex -> 4/3 (m>=3) or 1 (m=2); quaternionic general and
    skew-Hermitian -> 8/3 (m>=3) or 2 (m=2); Clifford system spans ->
    (2/l)(1-1/N) with N=min(m+1, M); algebra spans -> (4/l)(1-1/N) with
    N=min(m-1, M).  The table constants for structured classes are
    stated for m>=3; they remain valid bounds for m=2 and are used as
    such.  Raises on under-specified or uncovered queries.
    """
    cls = q.cls
    s = cls.structure
    if s is Structure.CLIFFORD_SYSTEM:
        return _span_constant(2, q)
    if s is Structure.CLIFFORD_ALGEBRA:
        return _span_constant(4, q)
    if s is Structure.SYMMETRIC:
        return Fraction(1)
    if s is Structure.SKEW_SYMMETRIC:
        if q.n is None:
            raise ValueError("skew-symmetric constant depends on the matrix size n")
        if q.n == 3:
            return Fraction(1, 3)
        if q.n >= 4:
            return Fraction(2, 3)
        raise ValueError(f"no stated skew-symmetric constant for n={q.n}")
    if s in (Structure.HERMITIAN, Structure.SKEW_HERMITIAN):
        if cls.kind is ScalarKind.COMPLEX:
            return Fraction(4, 3)
        if cls.kind is ScalarKind.QUATERNION and s is Structure.SKEW_HERMITIAN:
            return _general_constant(q, Fraction(8, 3), Fraction(2))
        raise ValueError(f"no stated constant for class {cls.name}")
    # general
    if cls.kind is ScalarKind.QUATERNION:
        return _general_constant(q, Fraction(8, 3), Fraction(2))
    return _general_constant(q, Fraction(4, 3), Fraction(1))


def _general_constant(q: ConstantQuery, big: Fraction, pair: Fraction) -> Fraction:
    if q.count is None:
        raise ValueError("general-class constant depends on the tuple length")
    if q.count >= 3:
        return big
    if q.count == 2:
        return pair
    raise ValueError(f"no DDVV constant for a tuple of length {q.count}")


def bw_constant(kind: ScalarKind) -> Fraction:
    """Optimal constant of ||[X,Y]||^2 <= c ||X||^2 ||Y||^2 for one pair."""
    return Fraction(4) if kind is ScalarKind.QUATERNION else Fraction(2)


def constant_classes() -> tuple[MatrixClass, ...]:
    """Every matrix class whose constant the tables state (Clifford spans included)."""
    names = (
        "real-general",
        "real-symmetric",
        "real-skew",
        "complex-general",
        "complex-symmetric",
        "complex-skew",
        "complex-hermitian",
        "complex-skew-hermitian",
        "quaternion-general",
        "quaternion-skew-hermitian",
        "clifford-system",
        "clifford-algebra",
    )
    return tuple(MatrixClass.parse(n) for n in names)


# ---------------------------------------------------------------------------
# functionals
# ---------------------------------------------------------------------------


def _members(tup) -> tuple[Matrix, ...]:
    if isinstance(tup, MatrixTuple):
        return tup.matrices
    return tuple(tup)


def ddvv_lhs(tup) -> float:
    """Sum over ordered pairs (r, s) of ||[B_r, B_s]||^2."""
    mats = _members(tup)
    if not mats:
        raise ValueError("empty tuple")
    total = 0.0
    for r in range(len(mats)):
        for s in range(r + 1, len(mats)):
            total += commutator(mats[r], mats[s]).norm_sq()
    return 2.0 * total


def ddvv_rhs(tup) -> float:
    """(sum_r ||B_r||^2)^2."""
    mats = _members(tup)
    if not mats:
        raise ValueError("empty tuple")
    return float(sum(m.norm_sq() for m in mats)) ** 2


@dataclass(frozen=True)
class BwReport:
    """One commutator-pair bound: lhs = ||[X,Y]||^2 against c ||X||^2 ||Y||^2."""

    lhs: float
    bound: float
    constant: Fraction


def bw_report(x: Matrix, y: Matrix) -> BwReport:
    c = bw_constant(x.kind)
    lhs = commutator(x, y).norm_sq()
    bound = float(c) * x.norm_sq() * y.norm_sq()
    return BwReport(lhs, bound, c)


def gram_bound(b: np.ndarray) -> tuple[float, float]:
    """(||B B^t||^2, ||B||^4 / N) with N = min(rows, cols); lhs >= bound always."""
    b = np.asarray(b, dtype=np.float64)
    if b.ndim != 2 or b.size == 0:
        raise ValueError("expected a nonempty 2-d real array")
    g = b @ b.T
    lhs = float(np.vdot(g, g))
    n_eff = min(b.shape)
    bound = float(np.vdot(b, b)) ** 2 / n_eff
    return lhs, bound


def conjugate_mix(
    p: Matrix, rot: np.ndarray, tup: MatrixTuple, tol: float = 1e-8
) -> MatrixTuple:
    """Conjugate every member by the unitary p and mix members by the orthogonal rot.

    Member k of the result is sum_j rot[j, k] p* B_j p.  Both sides of
    the inequality are invariant under this action.
    """
    mats = tup.matrices
    rot = np.asarray(rot, dtype=np.float64)
    if rot.shape != (len(mats), len(mats)):
        raise ValueError(f"rotation must be {len(mats)}x{len(mats)}, got {rot.shape}")
    if np.linalg.norm(rot.T @ rot - np.eye(len(mats))) > tol:
        raise ValueError("rotation matrix is not orthogonal within tolerance")
    if p.kind is not tup.cls.kind or p.shape != (tup.n, tup.n):
        raise ValueError("conjugating matrix must match the tuple's kind and size")
    padj = p.adjoint()
    if ((padj @ p) - Matrix.eye(p.kind, p.rows)).norm() > tol:
        raise ValueError("conjugating matrix is not unitary within tolerance")
    conjugated = [padj @ b @ p for b in mats]
    mixed = []
    for k in range(len(mats)):
        acc = conjugated[0] * float(rot[0, k])
        for j in range(1, len(mats)):
            acc = acc + conjugated[j] * float(rot[j, k])
        mixed.append(acc)
    return MatrixTuple(tup.cls, tuple(mixed))


# ---------------------------------------------------------------------------
# equality diagnostics and reports
# ---------------------------------------------------------------------------


def exact_slack(c: Fraction, lhs: float, rhs: float) -> float:
    """c*rhs - lhs computed in exact rational arithmetic over the floats."""
    return float(c * Fraction(rhs) - Fraction(lhs))


def _sum_commutator(mats, partner) -> float:
    acc = None
    for b, other in zip(mats, partner):
        term = commutator(b, other)
        acc = term if acc is None else acc + term
    return acc.norm()


def equality_residuals(
    tup: MatrixTuple, frame: CliffordFrame | None = None, c: Fraction | None = None
) -> dict[str, float]:
    """Computable necessary conditions for equality, as named defect magnitudes.

    Always contains ``slack``.  General real/complex tuples add
    ``sum_adjoint_commutator`` (|| sum [B_r, B_r*] ||); complex
    symmetric/skew tuples add ``sum_conj_commutator``; quaternionic
    tuples add the same sum evaluated through the complex embedding;
    Clifford spans add Gram defects of the coefficient vectors and of
    the members themselves (whichever side the equality case calls for).
    """
    mats = tup.matrices
    cls = tup.cls
    out: dict[str, float] = {}

    if c is None:
        try:
            c = optimal_constant(_query_for(tup, frame))
        except ValueError:
            c = None
    if c is not None:
        out["slack"] = exact_slack(c, ddvv_lhs(mats), ddvv_rhs(mats))

    s = cls.structure
    if cls.kind is ScalarKind.QUATERNION:
        embedded = [embeddings.complexify(b) for b in mats]
        out["sum_adjoint_commutator"] = _sum_commutator(
            embedded, [e.adjoint() for e in embedded]
        )
    elif s in (Structure.GENERAL, Structure.HERMITIAN, Structure.SKEW_HERMITIAN):
        out["sum_adjoint_commutator"] = _sum_commutator(mats, [b.adjoint() for b in mats])
    elif s in (Structure.SYMMETRIC, Structure.SKEW_SYMMETRIC):
        out["sum_conj_commutator"] = _sum_commutator(mats, [b.conj() for b in mats])

    if cls.is_clifford:
        if frame is None:
            raise ValueError("Clifford span residuals need the frame")
        coeffs = coefficient_vectors(frame, tup)
        gens = frame.count
        m_count = len(mats)
        if gens <= m_count:
            # coefficient vectors p_i (columns scaled by the generator norm)
            p = coeffs.T * float(frame.generator_norm_sq)
            gram = p @ p.T
            out["coeff_gram_offdiag"] = _max_offdiag(gram)
            out["coeff_gram_spread"] = float(np.ptp(np.diag(gram)))
        if m_count <= gens:
            gram = np.array(
                [[a.frob_inner(b) for b in mats] for a in mats], dtype=np.float64
            )
            out["tuple_gram_offdiag"] = _max_offdiag(gram)
            out["tuple_gram_spread"] = float(np.ptp(np.diag(gram)))
    return out


def _max_offdiag(g: np.ndarray) -> float:
    if g.shape[0] < 2:
        return 0.0
    mask = ~np.eye(g.shape[0], dtype=bool)
    return float(np.abs(g[mask]).max())


def _query_for(tup: MatrixTuple, frame: CliffordFrame | None) -> ConstantQuery:
    if tup.cls.is_clifford:
        if frame is None:
            raise ValueError("Clifford span constants need the frame")
        return ConstantQuery(
            tup.cls, n=tup.n, count=tup.count, k=frame.k, clifford_m=frame.m
        )
    return ConstantQuery(tup.cls, n=tup.n, count=tup.count)


@dataclass(frozen=True)
class DdvvReport:
    """One tuple evaluation: both sides, ratio, constant, slack, defects."""

    lhs: float
    rhs: float
    ratio: float
    c: float
    slack: float
    equality_residuals: dict[str, float] = field(default_factory=dict)
    provenance: dict[str, object] = field(default_factory=dict)


def evaluate(
    tup: MatrixTuple,
    frame: CliffordFrame | None = None,
    c: Fraction | None = None,
    include_residuals: bool = True,
    provenance: dict[str, object] | None = None,
) -> DdvvReport:
    """Full report for a tuple; the constant is resolved from the class if not given."""
    if c is None:
        c = optimal_constant(_query_for(tup, frame))
    lhs = ddvv_lhs(tup)
    rhs = ddvv_rhs(tup)
    ratio = lhs / rhs if rhs > 0.0 else 0.0
    slack = exact_slack(c, lhs, rhs)
    residuals = (
        equality_residuals(tup, frame=frame, c=c) if include_residuals else {}
    )
    return DdvvReport(
        lhs=lhs,
        rhs=rhs,
        ratio=ratio,
        c=float(c),
        slack=slack,
        equality_residuals=residuals,
        provenance=dict(provenance or {}),
    )


# ---------------------------------------------------------------------------
# identities
# ---------------------------------------------------------------------------


def jacobi_split_sides(tup) -> tuple[float, float]:
    """Both sides of the Hermitian/skew-Hermitian splitting identity.

    Splitting each member as B = B1 + B2 (Hermitian plus skew-Hermitian),
    the ordered-pair commutator sum equals the same sum over all split
    parts minus twice || sum_r [B_r^1, B_r^2] ||^2.
    """
    from .matrix import hermitian_split

    mats = _members(tup)
    direct = ddvv_lhs(mats)
    herm = []
    skew = []
    for b in mats:
        h, s = hermitian_split(b)
        herm.append(h)
        skew.append(s)
    parts = herm + skew
    cross = ddvv_lhs(parts)
    acc = None
    for h, s in zip(herm, skew):
        term = commutator(h, s)
        acc = term if acc is None else acc + term
    decomposed = cross - 2.0 * acc.norm_sq()
    return direct, decomposed


def span_lhs_closed(frame: CliffordFrame, coeffs: np.ndarray) -> float:
    """Closed-form ordered-pair commutator sum for an in-span tuple.

    For systems: sum_{r,s} 8l [ (sum_i b_ri^2)(sum_j b_sj^2) - (sum_i b_ri b_si)^2 ],
    which collapses to 8l (||C||_F^4 - ||C C^t||^2); algebras use 4l.
    """
    coeffs = np.asarray(coeffs, dtype=np.float64)
    gram = coeffs @ coeffs.T
    total = float(np.vdot(coeffs, coeffs))
    scale = 8.0 if frame.kind == "system" else 4.0
    return scale * frame.l * (total * total - float(np.vdot(gram, gram)))


def span_norms_sq_closed(frame: CliffordFrame, coeffs: np.ndarray) -> np.ndarray:
    """Member norms ||B_r||^2 = (2l or l) * sum_i b_ri^2 for an in-span tuple."""
    coeffs = np.asarray(coeffs, dtype=np.float64)
    return float(frame.generator_norm_sq) * (coeffs**2).sum(axis=1)


# ---------------------------------------------------------------------------
# batched evaluation (used by the sampling sweeps; must agree with the
# per-tuple path, which the tests check)
# ---------------------------------------------------------------------------


def _batch_norm_sq(kind: ScalarKind, arr: np.ndarray) -> np.ndarray:
    if kind is ScalarKind.COMPLEX:
        mags = arr.real**2 + arr.imag**2
    else:
        mags = arr**2
    axes = tuple(range(1, mags.ndim))
    return mags.sum(axis=axes)


def ddvv_lhs_batch(kind: ScalarKind, batch: np.ndarray) -> np.ndarray:
    """Ordered-pair commutator sums for a stacked batch of tuples.

    ``batch`` has shape (S, m, n, n) for real/complex kinds and
    (S, m, n, n, 4) for quaternions.
    """
    m = batch.shape[1]
    out = np.zeros(batch.shape[0])
    for r in range(m):
        for s in range(r + 1, m):
            x = batch[:, r]
            y = batch[:, s]
            if kind is ScalarKind.QUATERNION:
                comm = quaternion_matmul(x, y) - quaternion_matmul(y, x)
            else:
                comm = x @ y - y @ x
            out += _batch_norm_sq(kind, comm)
    return 2.0 * out


def ddvv_rhs_batch(kind: ScalarKind, batch: np.ndarray) -> np.ndarray:
    s = batch.shape[0]
    totals = np.zeros(s)
    for r in range(batch.shape[1]):
        totals += _batch_norm_sq(kind, batch[:, r])
    return totals**2
