"""Tuple files and run manifests.

A tuple file is versioned JSON: a header (scalar kind, class tag, size,
count, optional Clifford metadata) followed by nested entry arrays.
Entry encodings: real -> number, complex -> [re, im], quaternion ->
[w, x, y, z].  Floats are serialized with Python's shortest round-trip
repr, so write(read(f)) is byte-identical for files this module wrote.

Manifests record the command, seed, sample counts, tolerances, content
hashes of the inputs and a result summary - enough to replay a run.
They deliberately contain no timestamps so reruns are byte-identical.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .clifford import CliffordFrame, build_algebra, build_system, coefficient_vectors
from .matrix import Matrix, MatrixClass, MatrixTuple, ScalarKind

__all__ = [
    "FORMAT_VERSION",
    "TupleFileError",
    "LoadedTuple",
    "tuple_payload",
    "write_tuple_file",
    "read_tuple_file",
    "RunManifest",
    "write_manifest",
    "sha256_file",
]

FORMAT_VERSION = 1


class TupleFileError(Exception):
    """Malformed or inconsistent tuple file."""


def _encode_matrix(m: Matrix) -> list:
    if m.kind is ScalarKind.REAL:
        return m.data.tolist()
    if m.kind is ScalarKind.COMPLEX:
        return [[[z.real, z.imag] for z in row] for row in m.data.tolist()]
    return m.data.tolist()


def _decode_matrix(kind: ScalarKind, rows, n: int) -> Matrix:
    try:
        arr = np.asarray(rows, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise TupleFileError(f"non-numeric matrix data: {exc}") from None
    if kind is ScalarKind.REAL:
        if arr.shape != (n, n):
            raise TupleFileError(f"expected a {n}x{n} real matrix, got shape {arr.shape}")
        return Matrix.real(arr)
    if kind is ScalarKind.COMPLEX:
        if arr.shape != (n, n, 2):
            raise TupleFileError(f"expected {n}x{n} [re, im] entries, got shape {arr.shape}")
        return Matrix.complex(arr[..., 0] + 1j * arr[..., 1])
    if arr.shape != (n, n, 4):
        raise TupleFileError(f"expected {n}x{n} [w, x, y, z] entries, got shape {arr.shape}")
    return Matrix.quaternion(arr)


def tuple_payload(
    tup: MatrixTuple,
    clifford_meta: dict | None = None,
    tol: float = 1e-10,
) -> dict:
    payload = {
        "format_version": FORMAT_VERSION,
        "scalar": tup.cls.kind.value,
        "class": tup.cls.name,
        "n": tup.n,
        "count": tup.count,
        "tol": tol,
    }
    if clifford_meta is not None:
        payload["clifford"] = dict(clifford_meta)
    payload["matrices"] = [_encode_matrix(m) for m in tup.matrices]
    return payload


def _dumps(payload: dict) -> str:
    return json.dumps(payload, indent=1) + "\n"


def write_tuple_file(
    path: str | Path,
    tup: MatrixTuple,
    clifford_meta: dict | None = None,
    tol: float = 1e-10,
) -> None:
    Path(path).write_text(_dumps(tuple_payload(tup, clifford_meta, tol)))


@dataclass(frozen=True)
class LoadedTuple:
    """A tuple read back from disk, plus the frame its class membership used."""

    tup: MatrixTuple
    tol: float
    frame: CliffordFrame | None = None
    clifford_meta: dict | None = None

    def payload(self) -> dict:
        return tuple_payload(self.tup, self.clifford_meta, self.tol)


def read_tuple_file(path: str | Path) -> LoadedTuple:
    """Parse and validate a tuple file (class predicate checked within its tol)."""
    try:
        payload = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise TupleFileError(f"cannot read tuple file {path}: {exc}") from None
    if not isinstance(payload, dict):
        raise TupleFileError("tuple file must contain a JSON object")
    version = payload.get("format_version")
    if version != FORMAT_VERSION:
        raise TupleFileError(f"unsupported format_version {version!r}")
    try:
        cls = MatrixClass.parse(payload["class"])
        n = int(payload["n"])
        count = int(payload["count"])
        scalar = ScalarKind(payload["scalar"])
        rows = payload["matrices"]
    except (KeyError, ValueError, TypeError) as exc:
        raise TupleFileError(f"bad header: {exc}") from None
    if scalar is not cls.kind:
        raise TupleFileError(
            f"scalar {scalar.value!r} does not match class {cls.name!r}"
        )
    tol = float(payload.get("tol", 1e-10))
    if not isinstance(rows, list) or len(rows) != count:
        raise TupleFileError(f"expected {count} matrices, found {len(rows)}")
    mats = tuple(_decode_matrix(cls.kind, r, n) for r in rows)
    try:
        tup = MatrixTuple(cls, mats)
    except ValueError as exc:
        raise TupleFileError(str(exc)) from None

    frame = None
    meta = payload.get("clifford")
    if cls.is_clifford:
        if not isinstance(meta, dict):
            raise TupleFileError("Clifford span files need clifford metadata {kind, m, k}")
        try:
            kind = meta["kind"]
            cm = int(meta["m"])
            ck = int(meta["k"])
        except (KeyError, ValueError, TypeError) as exc:
            raise TupleFileError(f"bad clifford metadata: {exc}") from None
        build = build_system if kind == "system" else build_algebra
        try:
            frame = build(cm, ck)
        except ValueError as exc:
            raise TupleFileError(f"bad clifford metadata: {exc}") from None
        if frame.dim != n:
            raise TupleFileError(
                f"frame dimension {frame.dim} does not match matrix size {n}"
            )
        try:
            coefficient_vectors(frame, tup, tol=max(tol, 1e-12))
        except ValueError as exc:
            raise TupleFileError(str(exc)) from None
    else:
        residual = tup.max_structure_residual()
        if residual > tol:
            raise TupleFileError(
                f"class predicate {cls.name} fails: residual {residual:.3e} > tol {tol:.3e}"
            )
        meta = dict(meta) if isinstance(meta, dict) else None
    return LoadedTuple(tup=tup, tol=tol, frame=frame, clifford_meta=meta)


# ---------------------------------------------------------------------------
# manifests
# ---------------------------------------------------------------------------


def sha256_file(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


@dataclass(frozen=True)
class RunManifest:
    command: list[str]
    seed: int | None = None
    samples: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    inputs: dict = field(default_factory=dict)  # path -> sha256
    results: dict = field(default_factory=dict)

    def payload(self) -> dict:
        return {
            "command": list(self.command),
            "seed": self.seed,
            "samples": dict(self.samples),
            "tolerances": dict(self.tolerances),
            "inputs": dict(self.inputs),
            "results": dict(self.results),
        }


def write_manifest(path: str | Path, manifest: RunManifest) -> None:
    Path(path).write_text(json.dumps(manifest.payload(), indent=1) + "\n")
