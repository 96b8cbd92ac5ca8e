"""Maximal configurations, gradients, stochastic search, triangle demo.

Canonical maximizers reproduce the published equality tuples for every
class; the search climbs the ratio lhs/rhs by projected gradient ascent
on the sphere sum ||B_r||^2 = 1, with structure kept by projection after
every step.  Clifford spans are searched in coefficient space, where the
closed forms make the objective exact and cheap.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import ddvv
from .clifford import CliffordFrame, build_algebra, build_system, span_tuple
from .matrix import (
    Matrix,
    MatrixClass,
    MatrixTuple,
    ScalarKind,
    Structure,
    commutator,
    project_structure,
    quaternion_adjoint,
)
from .quaternion import CONJ_SIGNS, Quaternion, qscale_right, qvec_dot

__all__ = [
    "random_matrix",
    "random_tuple",
    "random_structured_batch",
    "random_unitary",
    "random_unit_quaternion_vector",
    "canonical_maximizer",
    "lhs_gradient",
    "ratio_gradient",
    "SearchConfig",
    "RestartTrace",
    "SearchResult",
    "search_max_ratio",
    "TriangleReport",
    "erdos_mordell_demo",
    "random_triangle_with_interior_point",
]


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------


def random_matrix(rng: np.random.Generator, kind: ScalarKind, n: int, p: int | None = None) -> Matrix:
    """Standard normal entries (componentwise for complex and quaternion kinds)."""
    p = n if p is None else p
    if kind is ScalarKind.REAL:
        return Matrix.real(rng.standard_normal((n, p)))
    if kind is ScalarKind.COMPLEX:
        return Matrix.complex(rng.standard_normal((n, p)) + 1j * rng.standard_normal((n, p)))
    return Matrix.quaternion(rng.standard_normal((n, p, 4)))


def random_tuple(
    rng: np.random.Generator,
    cls: MatrixClass,
    n: int,
    m: int,
    frame: CliffordFrame | None = None,
) -> MatrixTuple:
    """A random tuple in the class: Gaussian entries projected to the structure."""
    if cls.is_clifford:
        if frame is None:
            raise ValueError("sampling a Clifford span needs the frame")
        coeffs = rng.standard_normal((m, frame.count))
        return span_tuple(frame, coeffs)
    mats = tuple(
        project_structure(random_matrix(rng, cls.kind, n), cls.structure) for _ in range(m)
    )
    return MatrixTuple(cls, mats)


def random_structured_batch(
    rng: np.random.Generator, cls: MatrixClass, n: int, m: int, size: int
) -> np.ndarray:
    """Stacked random class tuples as raw arrays, for the batched evaluators."""
    kind = cls.kind
    if kind is ScalarKind.REAL:
        batch = rng.standard_normal((size, m, n, n))
    elif kind is ScalarKind.COMPLEX:
        batch = rng.standard_normal((size, m, n, n)) + 1j * rng.standard_normal((size, m, n, n))
    else:
        batch = rng.standard_normal((size, m, n, n, 4))

    s = cls.structure
    if s is Structure.GENERAL:
        return batch
    if kind is ScalarKind.QUATERNION:
        adj = np.swapaxes(batch, -3, -2) * CONJ_SIGNS
        return (batch + adj) / 2.0 if s is Structure.HERMITIAN else (batch - adj) / 2.0
    swapped = np.swapaxes(batch, -2, -1)
    if s is Structure.SYMMETRIC:
        return (batch + swapped) / 2.0
    if s is Structure.SKEW_SYMMETRIC:
        return (batch - swapped) / 2.0
    if s is Structure.HERMITIAN:
        return (batch + swapped.conj()) / 2.0
    if s is Structure.SKEW_HERMITIAN:
        return (batch - swapped.conj()) / 2.0
    raise ValueError(f"cannot batch-sample class {cls.name} without a frame")


def random_unitary(rng: np.random.Generator, kind: ScalarKind, n: int) -> Matrix:
    """Haar-ish unitary of the requested kind (QR with sign fix; Gram-Schmidt over H)."""
    if kind is ScalarKind.REAL:
        q, r = np.linalg.qr(rng.standard_normal((n, n)))
        return Matrix.real(q * np.sign(np.diag(r)))
    if kind is ScalarKind.COMPLEX:
        a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        q, r = np.linalg.qr(a)
        d = np.diag(r)
        return Matrix.complex(q * (d / np.abs(d)))
    cols: list[np.ndarray] = []
    while len(cols) < n:
        v = rng.standard_normal((n, 4))
        for u in cols:
            v = v - qscale_right(u, qvec_dot(u, v))
        norm = math.sqrt(float((v**2).sum()))
        if norm < 1e-8:
            continue
        cols.append(v / norm)
    return Matrix.quaternion(np.stack(cols, axis=1))


def random_unit_quaternion_vector(rng: np.random.Generator, n: int) -> np.ndarray:
    """A quaternion column u in H^n with u* u = 1, as an (n, 4) array."""
    v = rng.standard_normal((n, 4))
    return v / math.sqrt(float((v**2).sum()))


# ---------------------------------------------------------------------------
# canonical maximizers
# ---------------------------------------------------------------------------

_H1 = np.array([[1.0, 0.0], [0.0, -1.0]])
_H2 = np.array([[0.0, 1.0], [1.0, 0.0]])
_H3 = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_ROT2 = np.array([[0.0, -1.0], [1.0, 0.0]])


def _skew3_triple() -> list[np.ndarray]:
    # basis of o(3): equality triple for n = 3
    c1 = np.array([[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
    c2 = np.array([[0.0, 0.0, 1.0], [0.0, 0.0, 0.0], [-1.0, 0.0, 0.0]])
    c3 = np.array([[0.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, -1.0, 0.0]])
    return [c1, c2, c3]


def _skew4_triple() -> list[np.ndarray]:
    # anticommuting quaternion-like triple: equality for n >= 4
    d1 = np.array(
        [
            [0.0, 1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, -1.0, 0.0],
        ]
    )
    d2 = np.array(
        [
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, -1.0],
            [-1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
        ]
    )
    d3 = np.array(
        [
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, -1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0, 0.0],
        ]
    )
    return [d1, d2, d3]


def _embed_block(kind: ScalarKind, block: np.ndarray, n: int) -> Matrix:
    b = block.shape[0]
    if n < b:
        raise ValueError(f"size n={n} is too small for the {b}x{b} equality block")
    if kind is ScalarKind.REAL:
        out = np.zeros((n, n))
    else:
        out = np.zeros((n, n), dtype=np.complex128)
    out[:b, :b] = block
    return Matrix(kind, out)


def _pad(mats: list[Matrix], cls: MatrixClass, m: int) -> MatrixTuple:
    if m < len(mats):
        raise ValueError(f"class {cls.name} needs at least m={len(mats)} members for equality")
    n = mats[0].rows
    zeros = [Matrix.zeros(cls.kind, n) for _ in range(m - len(mats))]
    return MatrixTuple(cls, tuple(mats + zeros))


def canonical_maximizer(
    cls: MatrixClass,
    n: int,
    m: int,
    frame: CliffordFrame | None = None,
    u: np.ndarray | None = None,
) -> MatrixTuple:
    """A tuple achieving equality for the class, or ValueError if none is listed.

    Quaternionic classes accept a unit column ``u`` in H^n (shape (n, 4));
    the members are then u q u* over orthogonal imaginary units q.
    Clifford spans take the first min(m, generator count) generators,
    padded with zeros.
    """
    kind = cls.kind
    s = cls.structure

    if cls.is_clifford:
        if frame is None:
            raise ValueError("Clifford span maximizers need the frame")
        take = min(m, frame.count)
        coeffs = np.zeros((m, frame.count))
        coeffs[:take, :take] = np.eye(take)
        return span_tuple(frame, coeffs)

    if kind is ScalarKind.QUATERNION:
        if n < 1:
            raise ValueError("need n >= 1")
        if m < 2:
            raise ValueError("quaternionic equality needs at least two members")
        units = (
            Quaternion(0, 1, 0, 0),
            Quaternion(0, 0, 1, 0),
            Quaternion(0, 0, 0, 1),
        )[: min(m, 3)]
        if u is None:
            uvec = np.zeros((n, 4))
            uvec[0, 0] = 1.0
        else:
            uvec = np.asarray(u, dtype=np.float64)
            if uvec.shape != (n, 4):
                raise ValueError(f"u must have shape ({n}, 4)")
        col = Matrix.quaternion(uvec.reshape(n, 1, 4))
        row = col.adjoint()
        mats = [col @ Matrix.of_quaternions([[q]]) @ row for q in units]
        return _pad(mats, cls, m)

    if s is Structure.SYMMETRIC:
        if m < 2:
            raise ValueError("symmetric equality needs at least two members")
        blocks = [_H1, _H2]
    elif s is Structure.SKEW_SYMMETRIC:
        if m < 3:
            raise ValueError("skew-symmetric equality needs at least three members")
        if n == 3:
            blocks = _skew3_triple()
        elif n >= 4:
            blocks = _skew4_triple()
        else:
            raise ValueError(f"no skew-symmetric equality tuple for n={n}")
    elif s in (Structure.HERMITIAN, Structure.SKEW_HERMITIAN):
        if m < 3:
            raise ValueError(
                "the 4/3 Hermitian constant is attained only with at least three members"
            )
        blocks = [_H1, _H2, _H3]
        if s is Structure.SKEW_HERMITIAN:
            blocks = [1j * b for b in blocks]
    elif s is Structure.GENERAL:
        if m < 2:
            raise ValueError("general equality needs at least two members")
        if m == 2:
            blocks = [_H1, _H2]
        elif kind is ScalarKind.COMPLEX:
            blocks = [_H1, _H2, _H3]
        else:
            blocks = [_H1, _H2, _ROT2]
    else:  # pragma: no cover - exhaustive above
        raise ValueError(f"no canonical maximizer for class {cls.name}")

    mats = [_embed_block(kind, np.asarray(b), n) for b in blocks]
    return _pad(mats, cls, m)


# ---------------------------------------------------------------------------
# gradients
# ---------------------------------------------------------------------------


def lhs_gradient(tup) -> list[Matrix]:
    """Euclidean gradient of the ordered-pair commutator sum: 4 sum_s [[B_t,B_s], B_s*]."""
    mats = tup.matrices if isinstance(tup, MatrixTuple) else tuple(tup)
    m = len(mats)
    adjoints = [b.adjoint() for b in mats]
    comms = [[None] * m for _ in range(m)]
    for r in range(m):
        for s in range(r + 1, m):
            c = commutator(mats[r], mats[s])
            comms[r][s] = c
            comms[s][r] = -c
    grads = []
    for t in range(m):
        acc = Matrix.zeros(mats[t].kind, mats[t].rows)
        for s in range(m):
            if s == t:
                continue
            acc = acc + commutator(comms[t][s], adjoints[s])
        grads.append(acc * 4.0)
    return grads


def _project_span(g: Matrix, frame: CliffordFrame) -> Matrix:
    scale = float(frame.generator_norm_sq)
    acc = Matrix.zeros(ScalarKind.REAL, g.rows)
    for gen in frame.generators:
        acc = acc + gen * (gen.frob_inner(g) / scale)
    return acc


def ratio_gradient(
    tup: MatrixTuple, frame: CliffordFrame | None = None
) -> tuple[Matrix, ...]:
    """Gradient of the ratio at the tuple's normalization, projected onto the
    class structure subspace and the tangent space of the sphere sum||B||^2 = 1."""
    total = tup.total_norm_sq()
    if total <= 0.0:
        raise ValueError("ratio gradient is undefined at the zero tuple")
    point = tup.scaled(1.0 / math.sqrt(total))
    grads = lhs_gradient(point)
    if tup.cls.is_clifford:
        if frame is None:
            raise ValueError("Clifford span gradients need the frame")
        grads = [_project_span(g, frame) for g in grads]
    elif tup.cls.structure is not Structure.GENERAL:
        grads = [project_structure(g, tup.cls.structure) for g in grads]
    radial = sum(g.frob_inner(b) for g, b in zip(grads, point.matrices))
    return tuple(g - b * radial for g, b in zip(grads, point.matrices))


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SearchConfig:
    """Reproducible search setup; per-restart streams derive from the seed."""

    cls: MatrixClass
    n: int
    m: int
    restarts: int = 64
    max_iters: int = 500
    step: float = 0.5
    tol: float = 1e-8
    seed: int = 0
    k: int | None = None
    clifford_m: int | None = None

    def __post_init__(self) -> None:
        if self.restarts < 1 or self.max_iters < 1 or self.step <= 0.0:
            raise ValueError("need restarts >= 1, max_iters >= 1, step > 0")


@dataclass(frozen=True)
class RestartTrace:
    iterations: int
    grad_norm: float
    ratio: float


@dataclass(frozen=True)
class SearchResult:
    config: SearchConfig
    best_ratio: float
    best_tuple: MatrixTuple
    traces: tuple[RestartTrace, ...]
    best_coeffs: np.ndarray | None = None
    provenance: dict[str, object] = field(default_factory=dict)


class _MatrixSpace:
    """Ascent space for structured matrix tuples on the norm sphere."""

    def __init__(self, cls: MatrixClass, n: int, m: int, frame: CliffordFrame | None):
        self.cls = cls
        self.n = n
        self.m = m
        self.frame = frame

    def random_start(self, rng):
        while True:
            mats = [
                self._project(random_matrix(rng, self.cls.kind, self.n))
                for _ in range(self.m)
            ]
            s = sum(b.norm_sq() for b in mats)
            if s > 1e-12:
                inv = 1.0 / math.sqrt(s)
                return [b * inv for b in mats]

    def _project(self, b: Matrix) -> Matrix:
        if self.cls.is_clifford:
            return _project_span(b, self.frame)
        if self.cls.structure is Structure.GENERAL:
            return b
        return project_structure(b, self.cls.structure)

    def ratio(self, point) -> float:
        lhs = ddvv.ddvv_lhs(point)
        rhs = ddvv.ddvv_rhs(point)
        return lhs / rhs if rhs > 0 else 0.0

    def gradient(self, point):
        grads = lhs_gradient(point)
        grads = [self._project(g) for g in grads]
        radial = sum(g.frob_inner(b) for g, b in zip(grads, point))
        return [g - b * radial for g, b in zip(grads, point)]

    def grad_norm(self, grads) -> float:
        return math.sqrt(sum(g.norm_sq() for g in grads))

    def step_to(self, point, grads, step):
        moved = [self._project(b + g * step) for b, g in zip(point, grads)]
        s = sum(b.norm_sq() for b in moved)
        if s <= 1e-300:
            return None
        inv = 1.0 / math.sqrt(s)
        return [b * inv for b in moved]

    def finish(self, point):
        tup = MatrixTuple(self.cls, tuple(point))
        return tup, None


class _CoeffSpace:
    """Ascent space for Clifford spans in coefficient coordinates.

    The ratio has the exact closed form (a/l)(1 - ||C C^t||^2) on the
    unit coefficient sphere (a = 2 for systems, 4 for algebras).
    """

    def __init__(self, frame: CliffordFrame, m: int):
        self.frame = frame
        self.m = m
        # ratio(C) on ||C||_F = 1: a/l * (1 - ||CC^t||^2)
        self.a_over_l = (2.0 if frame.kind == "system" else 4.0) / frame.l

    def random_start(self, rng):
        while True:
            c = rng.standard_normal((self.m, self.frame.count))
            norm = np.linalg.norm(c)
            if norm > 1e-12:
                return c / norm

    def ratio(self, c) -> float:
        gram = c @ c.T
        total = float(np.vdot(c, c))
        if total <= 0:
            return 0.0
        return self.a_over_l * (1.0 - float(np.vdot(gram, gram)) / total**2)

    def gradient(self, c):
        # on the unit sphere: grad of -(a/l) ||CC^t||^2, tangentially projected
        g = -4.0 * self.a_over_l * (c @ c.T) @ c
        return g - float(np.vdot(g, c)) * c

    def grad_norm(self, g) -> float:
        return float(np.linalg.norm(g))

    def step_to(self, c, g, step):
        moved = c + step * g
        norm = np.linalg.norm(moved)
        if norm <= 1e-300:
            return None
        return moved / norm

    def finish(self, c):
        return span_tuple(self.frame, c), c


def _ascend(space, rng, max_iters: int, step0: float, tol: float):
    point = space.random_start(rng)
    ratio = space.ratio(point)
    step = step0
    iters = 0
    grad_norm = math.inf
    for _ in range(max_iters):
        grads = space.gradient(point)
        grad_norm = space.grad_norm(grads)
        if grad_norm < tol:
            break
        improved = False
        while step >= 1e-14:
            cand = space.step_to(point, grads, step)
            if cand is not None:
                cand_ratio = space.ratio(cand)
                if cand_ratio > ratio:
                    point, ratio = cand, cand_ratio
                    step = min(step * 1.5, 1.0)
                    improved = True
                    break
            step *= 0.5
        iters += 1
        if not improved:
            break
    return point, ratio, RestartTrace(iterations=iters, grad_norm=grad_norm, ratio=ratio)


def search_max_ratio(
    config: SearchConfig,
    frame: CliffordFrame | None = None,
    threads: int = 1,
) -> SearchResult:
    """Multi-restart projected gradient ascent of the ratio over the class.

    Deterministic for a fixed seed: restart r uses the stream spawned at
    index r from the root seed, and ties in the final max are broken by
    restart order.  Restarts are independent and may run concurrently.
    """
    cls = config.cls
    if cls.is_clifford:
        if frame is None:
            if config.k is None or config.clifford_m is None:
                raise ValueError("Clifford search needs a frame or (k, clifford_m)")
            build = build_system if cls.structure is Structure.CLIFFORD_SYSTEM else build_algebra
            frame = build(config.clifford_m, config.k)
        space = _CoeffSpace(frame, config.m)
    else:
        if config.n < 1:
            raise ValueError("matrix search needs n >= 1")
        space = _MatrixSpace(cls, config.n, config.m, frame)

    streams = np.random.SeedSequence(config.seed).spawn(config.restarts)

    def run(idx: int):
        rng = np.random.default_rng(streams[idx])
        return _ascend(space, rng, config.max_iters, config.step, config.tol)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(run, range(config.restarts)))
    else:
        outcomes = [run(i) for i in range(config.restarts)]

    best_idx = 0
    for i in range(1, config.restarts):
        if outcomes[i][1] > outcomes[best_idx][1]:
            best_idx = i
    best_point, best_ratio, _ = outcomes[best_idx]
    best_tuple, best_coeffs = space.finish(best_point)
    traces = tuple(t for _, _, t in outcomes)
    return SearchResult(
        config=config,
        best_ratio=best_ratio,
        best_tuple=best_tuple,
        traces=traces,
        best_coeffs=best_coeffs,
        provenance={"seed": config.seed, "restarts": config.restarts, "best_restart": best_idx},
    )


# ---------------------------------------------------------------------------
# triangle demonstration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TriangleReport:
    """Both inequalities for one (triangle, interior point) instance."""

    vertex_distances: tuple[float, float, float]
    foot_distances: tuple[float, float, float]
    em_lhs: float  # 2 * (sum of distances to the sides)
    em_rhs: float  # sum of distances to the vertices
    em_slack: float
    ddvv_lhs: float
    ddvv_rhs: float
    ddvv_slack: float  # (1/4) rhs - lhs in the planar skew subspace
    angle_residual: float
    matrices: MatrixTuple


def _skew3_of_plane_vector(v: np.ndarray) -> Matrix:
    # image of (v1, v2, 0) under R^3 ~ o(3); spans the fixed 2-dim subspace
    x, y = float(v[0]), float(v[1])
    return Matrix.real(
        np.array(
            [
                [0.0, 0.0, y],
                [0.0, 0.0, -x],
                [-y, x, 0.0],
            ]
        )
    )


def erdos_mordell_demo(vertices, point) -> TriangleReport:
    """Evaluate both the triangle inequality and its matrix strengthening.

    ``vertices`` are three planar points, ``point`` a strictly interior
    point.  Besides the classical comparison of vertex and side
    distances, three skew matrices are built in a fixed 2-dimensional
    subspace of o(3), with norms equal to the vertex distances and
    pairwise Frobenius angles pi/2 + alpha/2 over the opposite vertex
    angles; their commutator sum is checked against 1/4 of the squared
    total norm.
    """
    v = np.asarray(vertices, dtype=np.float64)
    p = np.asarray(point, dtype=np.float64)
    if v.shape != (3, 2) or p.shape != (2,):
        raise ValueError("expected three planar vertices and one planar point")

    def cross(a, b) -> float:
        return float(a[0] * b[1] - a[1] * b[0])

    area2 = cross(v[1] - v[0], v[2] - v[0])
    if abs(area2) < 1e-12:
        raise ValueError("degenerate triangle")
    bary = np.array(
        [
            cross(v[1] - p, v[2] - p),
            cross(v[2] - p, v[0] - p),
            cross(v[0] - p, v[1] - p),
        ]
    ) / area2
    if bary.min() <= 1e-12:
        raise ValueError("point is not strictly inside the triangle")

    vertex_d = tuple(float(np.linalg.norm(p - v[i])) for i in range(3))
    foot_d = []
    for i in range(3):
        a, b = v[(i + 1) % 3], v[(i + 2) % 3]
        foot_d.append(abs(cross(b - a, p - a)) / float(np.linalg.norm(b - a)))
    foot_d = tuple(foot_d)

    em_lhs = 2.0 * sum(foot_d)
    em_rhs = sum(vertex_d)

    angles = []
    for i in range(3):
        e1 = v[(i + 1) % 3] - v[i]
        e2 = v[(i + 2) % 3] - v[i]
        cosang = float(np.dot(e1, e2) / (np.linalg.norm(e1) * np.linalg.norm(e2)))
        angles.append(math.acos(max(-1.0, min(1.0, cosang))))

    # pair (x_r, x_s) gets angle pi/2 + alpha_t / 2 over the omitted vertex t
    theta12 = math.pi / 2 + angles[2] / 2
    theta23 = math.pi / 2 + angles[0] / 2
    theta31 = math.pi / 2 + angles[1] / 2
    headings = [0.0, theta12, theta12 + theta23]
    plane = [
        d * np.array([math.cos(h), math.sin(h)]) for d, h in zip(vertex_d, headings)
    ]
    mats = tuple(_skew3_of_plane_vector(x) for x in plane)
    tup = MatrixTuple(MatrixClass.parse("real-skew"), mats)

    lhs = ddvv.ddvv_lhs(tup)
    rhs = ddvv.ddvv_rhs(tup)
    slack = ddvv.exact_slack(Fraction(1, 4), lhs, rhs)

    targets = {(0, 1): theta12, (1, 2): theta23, (0, 2): theta31}
    angle_residual = 0.0
    for (r, s), target in targets.items():
        cosang = mats[r].frob_inner(mats[s]) / (mats[r].norm() * mats[s].norm())
        angle_residual = max(
            angle_residual, abs(math.acos(max(-1.0, min(1.0, cosang))) - target)
        )

    return TriangleReport(
        vertex_distances=vertex_d,
        foot_distances=foot_d,
        em_lhs=em_lhs,
        em_rhs=em_rhs,
        em_slack=em_rhs - em_lhs,
        ddvv_lhs=lhs,
        ddvv_rhs=rhs,
        ddvv_slack=slack,
        angle_residual=angle_residual,
        matrices=tup,
    )


def random_triangle_with_interior_point(
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray]:
    """A non-degenerate random triangle and a point strictly inside it."""
    while True:
        v = rng.uniform(-1.0, 1.0, size=(3, 2)) * 2.0
        area2 = abs(
            (v[1, 0] - v[0, 0]) * (v[2, 1] - v[0, 1])
            - (v[1, 1] - v[0, 1]) * (v[2, 0] - v[0, 0])
        )
        if area2 > 0.2:
            break
    w = rng.dirichlet((1.0, 1.0, 1.0))
    w = (w + 0.05) / (1.0 + 0.15)  # keep a margin from the boundary
    return v, w @ v
