"""Clifford frames: construction, validation, spans."""
import numpy as np
import pytest

from ddvv_lab.clifford import (
    build_algebra,
    build_system,
    coefficient_vectors,
    irreducible_dimension,
    span_tuple,
    validate_frame,
)
from ddvv_lab.ddvv import ddvv_lhs
from ddvv_lab.matrix import Matrix


def test_irreducible_dimension_table():
    assert [irreducible_dimension(m) for m in range(1, 9)] == [1, 2, 4, 4, 8, 8, 8, 8]
    assert irreducible_dimension(3) == 4
    assert irreducible_dimension(8) == 8
    assert irreducible_dimension(11) == 16 * irreducible_dimension(3) == 64
    assert irreducible_dimension(17) == 256
    with pytest.raises(ValueError):
        irreducible_dimension(0)


def test_algebra_m2_generator():
    frame = build_algebra(2, 1)
    assert frame.count == 1
    np.testing.assert_array_equal(frame.generators[0].data, [[0.0, 1.0], [-1.0, 0.0]])


def test_algebra_m4_anticommutation_brute_force():
    frame = build_algebra(4, 1)
    assert frame.count == 3
    gens = [g.data for g in frame.generators]
    for i, a in enumerate(gens):
        assert a.shape == (4, 4)
        np.testing.assert_array_equal(a @ a, -np.eye(4))
        for b in gens[i + 1 :]:
            np.testing.assert_array_equal(a @ b + b @ a, np.zeros((4, 4)))


def test_algebra_block_diagonal_multiplicity():
    irr = build_algebra(3, 1)
    dbl = build_algebra(3, 2)
    assert dbl.l == 2 * irr.l
    for g1, g2 in zip(irr.generators, dbl.generators):
        np.testing.assert_array_equal(g2.data, np.kron(np.eye(2), g1.data))


def test_system_m1_blocks():
    frame = build_system(1, 1)
    assert frame.count == 2
    np.testing.assert_array_equal(frame.generators[0].data, [[1.0, 0.0], [0.0, -1.0]])
    np.testing.assert_array_equal(frame.generators[1].data, [[0.0, 1.0], [1.0, 0.0]])


def test_system_m2_third_generator_block_form():
    frame = build_system(2, 1)
    e1 = build_algebra(2, 1).generators[0].data
    expect = np.block([[np.zeros((2, 2)), e1], [-e1, np.zeros((2, 2))]])
    np.testing.assert_array_equal(frame.generators[2].data, expect)


@pytest.mark.parametrize("m", range(1, 10))
@pytest.mark.parametrize("k", (1, 2))
def test_frames_exact_on_grid(m, k):
    frames = [build_system(m, k)]
    if m >= 2:
        frames.append(build_algebra(m, k))
    for frame in frames:
        report = validate_frame(frame)
        assert report.max_residual == 0.0
        expected_dim = (2 if frame.kind == "system" else 1) * k * irreducible_dimension(m)
        assert frame.dim == expected_dim
        assert frame.count == (m + 1 if frame.kind == "system" else m - 1)
        entries = np.unique(np.concatenate([g.data.ravel() for g in frame.generators]))
        assert set(entries.tolist()).issubset({-1.0, 0.0, 1.0})


@pytest.mark.parametrize("m", (10, 12, 17))
def test_period_eight_step(m):
    frame = build_algebra(m, 1)
    assert frame.dim == irreducible_dimension(m)
    assert validate_frame(frame).max_residual == 0.0


def test_nested_frames_where_dimensions_agree():
    # delta(3) = delta(4): the larger frame extends the smaller one
    g3 = build_algebra(3, 1).generators
    g4 = build_algebra(4, 1).generators
    for a, b in zip(g3, g4):
        np.testing.assert_array_equal(a.data, b.data)
    for m in (5, 6, 7):
        small = build_algebra(m, 1).generators
        big = build_algebra(m + 1, 1).generators
        for a, b in zip(small, big):
            np.testing.assert_array_equal(a.data, b.data)
    # one period up: delta(11) = delta(12)
    g11 = build_algebra(11, 1).generators
    g12 = build_algebra(12, 1).generators
    for a, b in zip(g11, g12):
        np.testing.assert_array_equal(a.data, b.data)


def test_validate_frame_detects_violations():
    frame = build_algebra(4, 1)
    scaled = frame.__class__(
        kind=frame.kind,
        m=frame.m,
        k=frame.k,
        generators=(frame.generators[0] * 2.0,) + frame.generators[1:],
    )
    report = validate_frame(scaled)
    assert report.orthogonality[0] > 0.0
    assert report.norm[0] > 0.0

    l = frame.dim
    swapped = frame.__class__(
        kind=frame.kind,
        m=frame.m,
        k=frame.k,
        generators=(Matrix.eye(frame.generators[0].kind, l),) + frame.generators[1:],
    )
    report = validate_frame(swapped)
    # against each honest generator: ||I E + E I|| = 2 ||E|| = 2 sqrt(l) = 2 ||I||
    assert report.anticommutator[0, 1] == pytest.approx(2.0 * np.sqrt(l), rel=1e-12)
    assert report.structure[0] > 0.0  # identity is not skew


def test_span_tuple_identity_coefficients():
    frame = build_system(3, 1)
    coeffs = np.eye(2, frame.count)
    tup = span_tuple(frame, coeffs)
    assert tup.cls.name == "clifford-system"
    for member, gen in zip(tup.matrices, frame.generators):
        assert member.allclose(gen, atol=0.0)
        assert member.norm_sq() == pytest.approx(2 * frame.l, abs=0.0)


def test_span_tuple_zero():
    frame = build_algebra(4, 1)
    tup = span_tuple(frame, np.zeros((2, frame.count)))
    assert all(m.norm() == 0.0 for m in tup.matrices)


def test_span_norm_identity_random():
    rng = np.random.default_rng(0)
    for frame, scale in ((build_system(3, 1), 2), (build_algebra(5, 2), 1)):
        coeffs = rng.standard_normal((4, frame.count))
        tup = span_tuple(frame, coeffs)
        for r, member in enumerate(tup.matrices):
            expect = scale * frame.l * float((coeffs[r] ** 2).sum())
            assert member.norm_sq() == pytest.approx(expect, rel=1e-10)


def test_coefficient_vectors_round_trip():
    frame = build_system(2, 1)
    ident = span_tuple(frame, np.eye(2, frame.count))
    back = coefficient_vectors(frame, ident)
    np.testing.assert_allclose(back, np.eye(2, frame.count), atol=1e-12)

    rng = np.random.default_rng(1)
    coeffs = rng.standard_normal((5, frame.count))
    tup = span_tuple(frame, coeffs)
    np.testing.assert_allclose(coefficient_vectors(frame, tup), coeffs, atol=1e-10)


def test_coefficient_vectors_rejects_off_span():
    frame = build_algebra(4, 1)
    tup = span_tuple(frame, np.ones((1, frame.count)))
    bad = np.array(tup.matrices[0].data)
    bad[0, 0] += 1.0  # symmetric component cannot be in a skew span
    from ddvv_lab.matrix import MatrixTuple

    broken = MatrixTuple(tup.cls, (Matrix.real(bad),))
    with pytest.raises(ValueError):
        coefficient_vectors(frame, broken)


def test_generator_tuple_commutator_energy():
    # full generator tuples: every unordered pair contributes 8l (systems)
    frame = build_system(3, 2)
    tup = span_tuple(frame, np.eye(frame.count))
    g = frame.count
    assert ddvv_lhs(tup) == pytest.approx(8 * frame.l * g * (g - 1), abs=0.0)


def test_build_argument_errors():
    with pytest.raises(ValueError):
        build_algebra(1, 1)
    with pytest.raises(ValueError):
        build_algebra(3, 0)
    with pytest.raises(ValueError):
        build_system(0, 1)
