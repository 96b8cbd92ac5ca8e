"""Command-line surface.

Subcommands: verify (random sampling against the class constant or a
single file), search (stochastic ratio maximization), tables (constant
tables as text or CSV), embed (field-reduction of a tuple file),
clifford (frame construction), check-equality, em (triangle sweeps).

Exit codes: 0 success, 2 mathematical violation detected (signals an
implementation bug - the theorems preclude true violations), 64 usage
error, 65 data error.  DDVV_LAB_THREADS caps worker parallelism; results
are deterministic for a fixed seed regardless of the worker count.
"""
from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .clifford import build_algebra, build_system, span_tuple, validate_frame
from .ddvv import (
    ConstantQuery,
    bw_constant,
    ddvv_lhs,
    ddvv_lhs_batch,
    ddvv_rhs,
    ddvv_rhs_batch,
    evaluate,
    optimal_constant,
)
from .embeddings import (
    complexify,
    complexify_commutator_residual,
    realify,
    realify_commutator_residual,
)
from .extremal import (
    SearchConfig,
    erdos_mordell_demo,
    random_structured_batch,
    random_triangle_with_interior_point,
    search_max_ratio,
)
from .matrix import Matrix, MatrixClass, MatrixTuple, ScalarKind, Structure, classify
from .tupleio import (
    LoadedTuple,
    RunManifest,
    TupleFileError,
    read_tuple_file,
    sha256_file,
    write_manifest,
    write_tuple_file,
)

EXIT_OK = 0
EXIT_VIOLATION = 2
EXIT_USAGE = 64
EXIT_DATA = 65

_CLASS_CHOICES = (
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


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # noqa: D102 - argparse hook
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def thread_count() -> int:
    env = os.environ.get("DDVV_LAB_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise SystemExit(EXIT_USAGE)
    return min(4, os.cpu_count() or 1)


def _map_chunks(fn, args_list, threads: int):
    if threads > 1 and len(args_list) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, args_list))
    return [fn(a) for a in args_list]


def _fmt_constant(c: Fraction) -> str:
    return f"{c} ({float(c):.12f})"


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _resolve_query(ns) -> tuple[MatrixClass, ConstantQuery, object]:
    cls = MatrixClass.parse(ns.cls)
    if cls.is_clifford:
        if ns.cm is None or ns.k is None:
            raise SystemExit(_usage_error("Clifford classes need --cm and --k"))
        count = ns.M if ns.M is not None else ns.m
        build = build_system if cls.structure is Structure.CLIFFORD_SYSTEM else build_algebra
        frame = build(ns.cm, ns.k)
        query = ConstantQuery(cls, n=frame.dim, count=count, k=ns.k, clifford_m=ns.cm)
        return cls, query, frame
    query = ConstantQuery(cls, n=ns.n, count=ns.m)
    return cls, query, None


def _usage_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


def cmd_verify(ns, argv) -> int:
    if ns.infile is not None:
        return _verify_file(ns)
    try:
        cls, query, frame = _resolve_query(ns)
        c = optimal_constant(query)
    except (ValueError, SystemExit) as exc:
        if isinstance(exc, SystemExit):
            return int(exc.code)
        return _usage_error(str(exc))

    samples = ns.samples
    count = query.count
    chunk = 512
    chunks = [(i, min(chunk, samples - i * chunk)) for i in range((samples + chunk - 1) // chunk)]
    streams = np.random.SeedSequence(ns.seed).spawn(len(chunks))

    if frame is not None:
        stack = np.stack([g.data for g in frame.generators])

    def work(task):
        idx, size = task
        rng = np.random.default_rng(streams[idx])
        if frame is not None:
            coeffs = rng.standard_normal((size, count, frame.count))
            batch = np.tensordot(coeffs, stack, axes=(2, 0))
            kind = ScalarKind.REAL
        else:
            batch = random_structured_batch(rng, cls, ns.n, count, size)
            kind = cls.kind
        lhs = ddvv_lhs_batch(kind, batch)
        rhs = ddvv_rhs_batch(kind, batch)
        live = rhs > 0
        if not live.any():
            return 0.0, np.inf
        ratio = lhs[live] / rhs[live]
        rel_slack = float(c) - ratio
        return float(ratio.max()), float(rel_slack.min())

    results = _map_chunks(work, chunks, thread_count())
    max_ratio = max(r for r, _ in results)
    min_slack = min(s for _, s in results)

    print(f"class {cls.name}  c = {_fmt_constant(c)}")
    print(f"samples {samples}  max ratio {max_ratio:.12f}  min relative slack {min_slack:.3e}")
    if min_slack < -ns.tol:
        print("VIOLATION: ratio exceeded the class constant beyond tolerance", file=sys.stderr)
        return EXIT_VIOLATION
    print("ok: no violation")
    return EXIT_OK


def _verify_file(ns) -> int:
    loaded = read_tuple_file(ns.infile)
    report = evaluate(loaded.tup, frame=loaded.frame)
    rhs_scale = max(report.rhs, 1.0)
    print(f"class {loaded.tup.cls.name}  c = {report.c:.12f}")
    print(
        f"lhs {report.lhs:.12g}  rhs {report.rhs:.12g}  ratio {report.ratio:.12f}  "
        f"slack {report.slack:.3e}"
    )
    if report.slack < -ns.tol * rhs_scale:
        print("VIOLATION: tuple exceeds the class constant", file=sys.stderr)
        return EXIT_VIOLATION
    print("ok: no violation")
    return EXIT_OK


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------


def cmd_search(ns, argv) -> int:
    try:
        cls, query, frame = _resolve_query(ns)
        c = optimal_constant(query)
    except (ValueError, SystemExit) as exc:
        if isinstance(exc, SystemExit):
            return int(exc.code)
        return _usage_error(str(exc))

    config = SearchConfig(
        cls=cls,
        n=query.n or 0,
        m=query.count,
        restarts=ns.restarts,
        max_iters=ns.iters,
        seed=ns.seed,
        k=ns.k,
        clifford_m=ns.cm,
    )
    result = search_max_ratio(config, frame=frame, threads=thread_count())
    gap = float(c) - result.best_ratio
    print(f"class {cls.name}  c = {_fmt_constant(c)}")
    print(f"best ratio {result.best_ratio:.12f}  gap to c {gap:.3e}")

    if ns.out:
        meta = None
        if frame is not None:
            meta = {"kind": frame.kind, "m": frame.m, "k": frame.k}
        write_tuple_file(ns.out, result.best_tuple, clifford_meta=meta)
        manifest = RunManifest(
            command=argv,
            seed=ns.seed,
            samples={"restarts": ns.restarts, "iters": ns.iters},
            tolerances={"grad_tol": config.tol},
            inputs={},
            results={
                "best_ratio": result.best_ratio,
                "constant": str(c),
                "gap": gap,
                "best_restart": result.provenance.get("best_restart"),
            },
        )
        write_manifest(str(ns.out) + ".manifest.json", manifest)
    return EXIT_OK


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------


def _table1_rows():
    skew = "1/3 (n=3), 2/3 (n>=4)"
    return [
        ("symmetric", "1", "1"),
        ("skew-symmetric", skew, skew),
        ("hermitian", "--", "4/3"),
        ("skew-hermitian", "--", "4/3"),
        ("general", "4/3", "4/3"),
    ]


def _table2_rows():
    rows = []
    for label, count in (("DDVV(m>=3)", 3), ("DDVV(m=2)", 2)):
        cells = [
            optimal_constant(ConstantQuery(MatrixClass.parse(f"{kind}-general"), count=count))
            for kind in ("real", "complex", "quaternion")
        ]
        rows.append((label, *[str(c) for c in cells]))
    rows.append(("BW", *[str(bw_constant(ScalarKind(k))) for k in ("real", "complex", "quaternion")]))
    return rows


def span_constant_cell(kind: str, k: int, m: int) -> Fraction | None:
    """Table 4/5 cell: the span constant in the essential regime M >= generator count."""
    cls = MatrixClass.parse(f"clifford-{kind}")
    gens = m + 1 if kind == "system" else m - 1
    if gens < 1:
        return None
    return optimal_constant(
        ConstantQuery(cls, count=gens, k=k, clifford_m=m)
    )


def cmd_tables(ns, argv) -> int:
    kmax, mmax = ns.max_k, ns.max_m
    out = []
    if ns.format == "csv":
        out.append("table,row,col,fraction,decimal")
        for row in _table1_rows():
            out.append(f'1,{row[0]},real,"{row[1]}",')
            out.append(f'1,{row[0]},complex,"{row[2]}",')
        for row in _table2_rows():
            for kind, cell in zip(("real", "complex", "quaternion"), row[1:]):
                out.append(f'2,{row[0]},{kind},"{cell}",{float(Fraction(cell)):.12f}')
        for table, kind in (("4", "system"), ("5", "algebra")):
            for k in range(1, kmax + 1):
                for m in range(1, mmax + 1):
                    c = span_constant_cell(kind, k, m)
                    if c is None:
                        out.append(f"{table},{k},{m},--,")
                    else:
                        out.append(f'{table},{k},{m},"{c}",{float(c):.12f}')
    else:
        out.append("Table 1: optimal DDVV constants (m >= 3)")
        out.append(f"{'class':<16}{'real':<26}{'complex':<26}")
        for row in _table1_rows():
            out.append(f"{row[0]:<16}{row[1]:<26}{row[2]:<26}")
        out.append("")
        out.append("Table 2: DDVV and BW constants for general matrices")
        out.append(f"{'':<12}{'real':<10}{'complex':<10}{'quaternion':<10}")
        for row in _table2_rows():
            out.append(f"{row[0]:<12}{row[1]:<10}{row[2]:<10}{row[3]:<10}")
        for table, kind in (("4", "system"), ("5", "algebra")):
            out.append("")
            out.append(f"Table {table}: span constants for Clifford {kind} frames (M large)")
            header = "k\\m".ljust(8) + "".join(str(m).ljust(10) for m in range(1, mmax + 1))
            out.append(header)
            for k in range(1, kmax + 1):
                cells = []
                for m in range(1, mmax + 1):
                    c = span_constant_cell(kind, k, m)
                    cells.append("--" if c is None else str(c))
                out.append(str(k).ljust(8) + "".join(c.ljust(10) for c in cells))
    print("\n".join(out))
    return EXIT_OK


# ---------------------------------------------------------------------------
# embed
# ---------------------------------------------------------------------------


def cmd_embed(ns, argv) -> int:
    loaded = read_tuple_file(ns.infile)
    kind = {"phi": "phi", "complex-to-real": "phi", "psi": "psi", "quaternion-to-complex": "psi"}[
        ns.kind
    ]
    tup = loaded.tup
    if kind == "phi":
        if tup.cls.kind is not ScalarKind.COMPLEX:
            raise TupleFileError("the complex-to-real embedding needs a complex tuple")
        embed = realify
        residual_fn = realify_commutator_residual
        out_cls = MatrixClass.parse("real-general")
    else:
        if tup.cls.kind is not ScalarKind.QUATERNION:
            raise TupleFileError("the quaternion-to-complex embedding needs a quaternionic tuple")
        embed = complexify
        residual_fn = complexify_commutator_residual
        out_cls = MatrixClass.parse("complex-general")

    images = tuple(embed(b) for b in tup.matrices)
    out_tup = MatrixTuple(out_cls, images)

    norm_residual = max(
        abs(img.norm_sq() - 2.0 * b.norm_sq()) for img, b in zip(images, tup.matrices)
    )
    comm_residual = 0.0
    for r in range(tup.count):
        for s in range(r + 1, tup.count):
            comm_residual = max(comm_residual, residual_fn(tup.matrices[r], tup.matrices[s]))

    print(f"embedded {tup.count} {tup.cls.kind.value} matrices of size {tup.n}")
    print(f"norm identity residual {norm_residual:.3e}  commutator identity residual {comm_residual:.3e}")

    write_tuple_file(ns.out, out_tup)
    manifest = RunManifest(
        command=argv,
        samples={"count": tup.count},
        tolerances={},
        inputs={str(ns.infile): sha256_file(ns.infile)},
        results={
            "norm_identity_residual": norm_residual,
            "commutator_identity_residual": comm_residual,
        },
    )
    write_manifest(str(ns.out) + ".manifest.json", manifest)
    return EXIT_OK


# ---------------------------------------------------------------------------
# clifford
# ---------------------------------------------------------------------------


def cmd_clifford(ns, argv) -> int:
    try:
        build = build_system if ns.kind == "system" else build_algebra
        frame = build(ns.cm, ns.k)
    except ValueError as exc:
        return _usage_error(str(exc))
    report = validate_frame(frame)
    print(
        f"{ns.kind} frame m={ns.cm} k={ns.k}: {frame.count} generators of size {frame.dim}"
    )
    print(
        "residuals: anticommutator {:.3e}  structure {:.3e}  orthogonality {:.3e}".format(
            float(report.anticommutator.max()),
            float(report.structure.max()),
            float(report.orthogonality.max()),
        )
    )
    if ns.out:
        tup = MatrixTuple(frame.matrix_class, frame.generators)
        meta = {"kind": frame.kind, "m": frame.m, "k": frame.k}
        write_tuple_file(ns.out, tup, clifford_meta=meta)
        manifest = RunManifest(
            command=argv,
            samples={},
            tolerances={},
            inputs={},
            results={"max_residual": report.max_residual},
        )
        write_manifest(str(ns.out) + ".manifest.json", manifest)
    return EXIT_OK if report.ok() else EXIT_VIOLATION


# ---------------------------------------------------------------------------
# check-equality
# ---------------------------------------------------------------------------


def cmd_check_equality(ns, argv) -> int:
    loaded = read_tuple_file(ns.infile)
    try:
        report = evaluate(loaded.tup, frame=loaded.frame)
    except ValueError as exc:
        raise TupleFileError(str(exc)) from None
    print(f"class {loaded.tup.cls.name}  c = {report.c:.12f}")
    print(f"lhs {report.lhs:.12g}  rhs {report.rhs:.12g}  ratio {report.ratio:.12f}")
    print(f"slack {report.slack:.6e}")
    for name, value in report.equality_residuals.items():
        print(f"residual {name}: {value:.6e}")
    rel_slack = report.slack / max(report.rhs, 1.0)
    residual_scale = 1.0 + report.rhs**0.5
    is_equality = rel_slack <= ns.tol and all(
        v <= ns.tol * residual_scale for v in report.equality_residuals.values()
    )
    print("verdict: equality within tol" if is_equality else "verdict: strict")
    return EXIT_OK


# ---------------------------------------------------------------------------
# em
# ---------------------------------------------------------------------------


def cmd_em(ns, argv) -> int:
    rng = np.random.default_rng(ns.seed)
    min_em = np.inf
    min_ddvv = np.inf
    max_angle = 0.0
    violations = 0
    for _ in range(ns.samples):
        vertices, point = random_triangle_with_interior_point(rng)
        rep = erdos_mordell_demo(vertices, point)
        min_em = min(min_em, rep.em_slack)
        min_ddvv = min(min_ddvv, rep.ddvv_slack / max(rep.ddvv_rhs, 1.0))
        max_angle = max(max_angle, rep.angle_residual)
        if rep.em_slack < -1e-10 * max(rep.em_rhs, 1.0) or rep.ddvv_slack < -1e-10 * max(
            rep.ddvv_rhs, 1.0
        ):
            violations += 1
    print(f"samples {ns.samples}")
    print(f"min triangle slack {min_em:.6e}")
    print(f"min relative matrix slack {min_ddvv:.6e}")
    print(f"max prescribed-angle residual {max_angle:.3e}")
    if violations:
        print(f"VIOLATIONS: {violations}", file=sys.stderr)
        return EXIT_VIOLATION
    print("ok: both inequalities hold on every sample")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_class_args(p, with_size=True):
    p.add_argument("--class", dest="cls", choices=_CLASS_CHOICES, required=True)
    if with_size:
        p.add_argument("--n", type=int, default=3, help="matrix size")
        p.add_argument("--m", type=int, default=3, help="tuple length")
        p.add_argument("--M", type=int, default=None, help="tuple length for Clifford spans")
    p.add_argument("--k", type=int, default=None, help="Clifford multiplicity")
    p.add_argument("--cm", type=int, default=None, help="Clifford parameter m")


def build_parser() -> _Parser:
    parser = _Parser(prog="ddvv-lab", description=__doc__)
    parser.add_argument("--version", action="version", version=f"ddvv-lab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", help="sample random tuples against the class constant")
    _add_class_args(p)
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--in", dest="infile", default=None, help="check one tuple file instead")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("search", help="maximize the ratio by projected gradient ascent")
    _add_class_args(p)
    p.add_argument("--restarts", type=int, default=64)
    p.add_argument("--iters", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="write the best tuple here")
    p.set_defaults(fn=cmd_search)

    p = sub.add_parser("tables", help="emit the constant tables")
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.add_argument("--max-k", type=int, default=4)
    p.add_argument("--max-m", type=int, default=16)
    p.set_defaults(fn=cmd_tables)

    p = sub.add_parser("embed", help="apply a field-reduction embedding to a tuple file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument(
        "--kind",
        choices=("phi", "psi", "complex-to-real", "quaternion-to-complex"),
        required=True,
    )
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_embed)

    p = sub.add_parser("clifford", help="build and validate a Clifford frame")
    p.add_argument("--kind", choices=("system", "algebra"), required=True)
    p.add_argument("--cm", type=int, required=True, help="Clifford parameter m")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_clifford)

    p = sub.add_parser("check-equality", help="equality diagnostics for a tuple file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(fn=cmd_check_equality)

    p = sub.add_parser("em", help="random triangle sweeps of both inequalities")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_em)

    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return ns.fn(ns, argv)
    except TupleFileError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except SystemExit as exc:
        return int(exc.code or 0)


def entry() -> None:  # console-script hook
    raise SystemExit(main())


if __name__ == "__main__":  # pragma: no cover
    entry()
