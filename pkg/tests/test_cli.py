"""Command-line surface: files, round-trips, exit codes, determinism."""
import json
from fractions import Fraction

import numpy as np
import pytest

from ddvv_lab.cli import EXIT_DATA, EXIT_OK, EXIT_USAGE, main, span_constant_cell
from ddvv_lab.clifford import build_system
from ddvv_lab.ddvv import ddvv_lhs
from ddvv_lab.extremal import canonical_maximizer, random_tuple
from ddvv_lab.matrix import Matrix, MatrixClass, MatrixTuple, Structure, classify
from ddvv_lab.quaternion import I as QI
from ddvv_lab.quaternion import J as QJ
from ddvv_lab.quaternion import K as QK
from ddvv_lab.tupleio import (
    TupleFileError,
    read_tuple_file,
    tuple_payload,
    write_tuple_file,
)


def _write_ijk(path):
    trip = MatrixTuple(
        MatrixClass.parse("quaternion-general"),
        tuple(Matrix.of_quaternions([[q]]) for q in (QI, QJ, QK)),
    )
    write_tuple_file(path, trip)
    return trip


# ---------------------------------------------------------------------------
# tuple files
# ---------------------------------------------------------------------------


def test_round_trip_is_byte_identical(tmp_path):
    cases = [
        canonical_maximizer(MatrixClass.parse("complex-general"), 3, 3),
        canonical_maximizer(MatrixClass.parse("quaternion-general"), 2, 3),
        random_tuple(np.random.default_rng(0), MatrixClass.parse("complex-hermitian"), 3, 2),
    ]
    for idx, tup in enumerate(cases):
        path = tmp_path / f"case{idx}.json"
        write_tuple_file(path, tup)
        loaded = read_tuple_file(path)
        rewritten = json.dumps(loaded.payload(), indent=1) + "\n"
        assert rewritten == path.read_text()
        for a, b in zip(tup.matrices, loaded.tup.matrices):
            assert np.array_equal(a.data, b.data)


def test_clifford_file_round_trip(tmp_path):
    frame = build_system(2, 1)
    tup = MatrixTuple(frame.matrix_class, frame.generators)
    path = tmp_path / "frame.json"
    write_tuple_file(path, tup, clifford_meta={"kind": "system", "m": 2, "k": 1})
    loaded = read_tuple_file(path)
    assert loaded.frame is not None and loaded.frame.m == 2
    rewritten = json.dumps(loaded.payload(), indent=1) + "\n"
    assert rewritten == path.read_text()


def test_read_rejects_malformed(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("not json")
    with pytest.raises(TupleFileError):
        read_tuple_file(path)

    # class predicate violated
    bad = tuple_payload(
        MatrixTuple(
            MatrixClass.parse("complex-hermitian"),
            (Matrix.complex([[1j, 0.0], [0.0, 0.0]]),),
        )
    )
    path.write_text(json.dumps(bad))
    with pytest.raises(TupleFileError):
        read_tuple_file(path)

    # wrong version
    good = tuple_payload(canonical_maximizer(MatrixClass.parse("real-symmetric"), 2, 2))
    good["format_version"] = 99
    path.write_text(json.dumps(good))
    with pytest.raises(TupleFileError):
        read_tuple_file(path)


def test_write_skips_predicate_but_read_checks(tmp_path):
    # a hermitian-tagged file holding a non-hermitian matrix is a data error
    payload = tuple_payload(canonical_maximizer(MatrixClass.parse("complex-hermitian"), 2, 3))
    payload["matrices"][0][0][1] = [5.0, 5.0]
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(payload))
    with pytest.raises(TupleFileError):
        read_tuple_file(path)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def test_verify_sampling_ok(capsys):
    rc = main(
        [
            "verify",
            "--class",
            "complex-hermitian",
            "--n",
            "3",
            "--m",
            "4",
            "--samples",
            "800",
            "--seed",
            "1",
        ]
    )
    out = capsys.readouterr().out
    assert rc == EXIT_OK
    assert "max ratio" in out and "no violation" in out


def test_verify_clifford_sampling(capsys):
    rc = main(
        [
            "verify",
            "--class",
            "clifford-algebra",
            "--cm",
            "4",
            "--k",
            "1",
            "--M",
            "3",
            "--samples",
            "500",
            "--seed",
            "2",
        ]
    )
    assert rc == EXIT_OK
    assert "2/3" in capsys.readouterr().out


def test_verify_file_mode_equality_with_zero_tol(tmp_path, capsys):
    path = tmp_path / "canon.json"
    write_tuple_file(path, canonical_maximizer(MatrixClass.parse("complex-general"), 2, 3))
    rc = main(["verify", "--class", "complex-general", "--in", str(path), "--tol", "0"])
    out = capsys.readouterr().out
    assert rc == EXIT_OK
    assert "ratio 1.333333333333" in out


def test_verify_usage_errors(capsys):
    assert main(["verify", "--class", "no-such-class"]) == EXIT_USAGE
    # skew with n=2 has no stated constant
    assert main(["verify", "--class", "real-skew", "--n", "2", "--m", "3"]) == EXIT_USAGE
    capsys.readouterr()


def test_verify_missing_file_is_data_error(tmp_path):
    assert main(["verify", "--class", "real-general", "--in", str(tmp_path / "nope.json")]) == EXIT_DATA


def test_search_writes_deterministic_outputs(tmp_path, capsys):
    out = tmp_path / "best.json"
    args = [
        "search",
        "--class",
        "clifford-system",
        "--cm",
        "2",
        "--k",
        "1",
        "--M",
        "3",
        "--restarts",
        "6",
        "--iters",
        "150",
        "--seed",
        "7",
        "--out",
        str(out),
    ]
    assert main(args) == EXIT_OK
    first = out.read_bytes()
    first_manifest = (tmp_path / "best.json.manifest.json").read_bytes()
    assert main(args) == EXIT_OK
    assert out.read_bytes() == first
    assert (tmp_path / "best.json.manifest.json").read_bytes() == first_manifest
    text = capsys.readouterr().out
    assert "best ratio 0.666666" in text
    loaded = read_tuple_file(out)
    assert loaded.frame is not None


def test_tables_csv_matches_constants(capsys):
    assert main(["tables", "--format", "csv", "--max-k", "4", "--max-m", "16"]) == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    header, rows = lines[0], lines[1:]
    assert header == "table,row,col,fraction,decimal"
    seen = 0
    for line in rows:
        table, k, m, frac, dec = line.split(",")
        if table not in ("4", "5"):
            continue
        kind = "system" if table == "4" else "algebra"
        cell = span_constant_cell(kind, int(k), int(m))
        if frac == "--":
            assert cell is None
        else:
            assert Fraction(frac.strip('"')) == cell
            assert float(dec) == pytest.approx(float(cell), abs=1e-12)
        seen += 1
    assert seen == 2 * 4 * 16
    # published spot cells
    assert span_constant_cell("system", 2, 7) == Fraction(7, 64)
    assert span_constant_cell("algebra", 1, 5) == Fraction(3, 8)
    assert span_constant_cell("algebra", 1, 2) == Fraction(0)


def test_tables_text_smoke(capsys):
    assert main(["tables", "--format", "text", "--max-m", "8"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "Table 4" in out and "7/32" in out and "Table 5" in out


def test_embed_psi_doubles_lhs(tmp_path, capsys):
    src = tmp_path / "ijk.json"
    trip = _write_ijk(src)
    out = tmp_path / "ijk_complex.json"
    rc = main(["embed", "--in", str(src), "--kind", "psi", "--out", str(out)])
    assert rc == EXIT_OK
    loaded = read_tuple_file(out)
    assert ddvv_lhs(loaded.tup) == pytest.approx(2.0 * ddvv_lhs(trip), rel=1e-12)
    manifest = json.loads((tmp_path / "ijk_complex.json.manifest.json").read_text())
    assert manifest["results"]["commutator_identity_residual"] < 1e-10
    assert manifest["results"]["norm_identity_residual"] < 1e-10
    capsys.readouterr()


def test_embed_phi_hermitian_gives_skew(tmp_path, capsys):
    src = tmp_path / "herm.json"
    tup = random_tuple(np.random.default_rng(3), MatrixClass.parse("complex-hermitian"), 3, 3)
    write_tuple_file(src, tup)
    out = tmp_path / "herm_real.json"
    assert main(["embed", "--in", str(src), "--kind", "phi", "--out", str(out)]) == EXIT_OK
    loaded = read_tuple_file(out)
    for member in loaded.tup.matrices:
        ok, _ = classify(member, Structure.SKEW_SYMMETRIC, tol=1e-10)
        assert ok
    capsys.readouterr()


def test_embed_zero_tuple(tmp_path, capsys):
    from ddvv_lab.matrix import ScalarKind

    src = tmp_path / "zero.json"
    tup = MatrixTuple(
        MatrixClass.parse("complex-general"),
        (Matrix.zeros(ScalarKind.COMPLEX, 2), Matrix.zeros(ScalarKind.COMPLEX, 2)),
    )
    write_tuple_file(src, tup)
    out = tmp_path / "zero_real.json"
    assert main(["embed", "--in", str(src), "--kind", "phi", "--out", str(out)]) == EXIT_OK
    loaded = read_tuple_file(out)
    assert all(m.norm() == 0.0 for m in loaded.tup.matrices)
    capsys.readouterr()


def test_embed_kind_mismatch_is_data_error(tmp_path, capsys):
    src = tmp_path / "ijk.json"
    _write_ijk(src)
    rc = main(["embed", "--in", str(src), "--kind", "phi", "--out", str(tmp_path / "x.json")])
    assert rc == EXIT_DATA
    capsys.readouterr()


def test_clifford_command(tmp_path, capsys):
    out = tmp_path / "frame.json"
    rc = main(["clifford", "--kind", "algebra", "--cm", "9", "--k", "1", "--out", str(out)])
    text = capsys.readouterr().out
    assert rc == EXIT_OK
    assert "anticommutator 0.000e+00" in text
    loaded = read_tuple_file(out)
    assert loaded.tup.count == 8 and loaded.tup.n == 16
    # determinism
    first = out.read_bytes()
    assert main(["clifford", "--kind", "algebra", "--cm", "9", "--k", "1", "--out", str(out)]) == EXIT_OK
    assert out.read_bytes() == first
    capsys.readouterr()


def test_clifford_invalid_params(capsys):
    assert main(["clifford", "--kind", "algebra", "--cm", "1"]) == EXIT_USAGE
    capsys.readouterr()


def test_check_equality_verdicts(tmp_path, capsys):
    canon = tmp_path / "canon.json"
    write_tuple_file(canon, canonical_maximizer(MatrixClass.parse("quaternion-general"), 2, 3))
    assert main(["check-equality", "--in", str(canon)]) == EXIT_OK
    assert "verdict: equality within tol" in capsys.readouterr().out

    rnd = tmp_path / "rand.json"
    write_tuple_file(rnd, random_tuple(np.random.default_rng(4), MatrixClass.parse("complex-general"), 3, 3))
    assert main(["check-equality", "--in", str(rnd)]) == EXIT_OK
    assert "verdict: strict" in capsys.readouterr().out

    frame = build_system(3, 1)
    span = tmp_path / "span.json"
    coeffs = np.eye(3, frame.count)
    from ddvv_lab.clifford import span_tuple

    write_tuple_file(span, span_tuple(frame, coeffs), clifford_meta={"kind": "system", "m": 3, "k": 1})
    assert main(["check-equality", "--in", str(span)]) == EXIT_OK
    assert "verdict: equality within tol" in capsys.readouterr().out


def test_check_equality_malformed(tmp_path, capsys):
    path = tmp_path / "junk.json"
    path.write_text("{}")
    assert main(["check-equality", "--in", str(path)]) == EXIT_DATA
    capsys.readouterr()


def test_em_command(capsys):
    assert main(["em", "--samples", "100", "--seed", "0"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "both inequalities hold" in out


def test_usage_exit_code_for_unknown_command(capsys):
    assert main(["frobnicate"]) == EXIT_USAGE
    capsys.readouterr()
