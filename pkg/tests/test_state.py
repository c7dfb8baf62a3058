import math

import numpy as np
import pytest
from hypothesis import given, settings

from deficitx.entropy import binary_entropy, shannon_bits
from deficitx.state import (
    BlochX,
    EntropySpectrum,
    InvalidStateError,
    XMatrix,
    canonicalize,
    check_valid,
    entropy_spectrum,
    from_matrix,
    parse_state_doc,
    random_state,
    state_from_dict,
    to_matrix,
    validate,
    von_neumann_entropy,
)

from conftest import x_states

REF_STATE = BlochX(0.45, 0.32, 0.43, 0.09, 0.15)


def approx_tuple(values, tol):
    return pytest.approx(tuple(values), abs=tol)


@pytest.mark.parametrize(
    "bloch, matrix",
    [
        ((0, 0, 0, 0, 0), (0.25, 0.25, 0.25, 0.25, 0, 0)),
        ((0, 0, 1, -1, 1), (0.5, 0, 0, 0.5, 0, 0.5)),
        ((0.5, 0.5, -0.5, -0.5, 0), (0.5, 0.25, 0.25, 0, -0.25, 0)),
    ],
)
def test_to_matrix_examples(bloch, matrix):
    assert to_matrix(BlochX(*bloch)).as_tuple() == approx_tuple(matrix, 1e-15)


@pytest.mark.parametrize(
    "matrix, bloch",
    [
        ((0.25, 0.25, 0.25, 0.25, 0, 0), (0, 0, 0, 0, 0)),
        ((0.5, 0, 0, 0.5, 0, 0.5), (0, 0, 1, -1, 1)),
        ((0.4, 0.3, 0.3, 0, -0.3, 0), (0.4, 0.4, -0.6, -0.6, -0.2)),
    ],
)
def test_from_matrix_examples(matrix, bloch):
    assert from_matrix(XMatrix(*matrix)).as_tuple() == approx_tuple(bloch, 1e-15)


def test_round_trip_random(rng):
    for _ in range(1000):
        s = random_state(rng)
        back = from_matrix(to_matrix(s))
        assert back.as_tuple() == approx_tuple(s.as_tuple(), 1e-15)
        assert validate(to_matrix(s)).valid


def test_validate_examples():
    assert validate(XMatrix(0.25, 0.25, 0.25, 0.25, 0, 0)).valid

    report = validate(XMatrix(-0.1, 0.4, 0.4, 0.3, 0, 0))
    assert not report.valid
    assert report.violations[0] == ("nonnegativity", -0.1, 0.0, "a")
    # a*d < 0 also breaks the f^2 <= ad bound
    assert {v.constraint for v in report.violations} == {"nonnegativity", "f^2<=ad"}

    report = validate(XMatrix(0.3, 0.2, 0.2, 0.3, 0.3, 0))
    assert [v.constraint for v in report.violations] == ["e^2<=bc"]
    assert report.violations[0].measured == pytest.approx(0.09)
    assert report.violations[0].bound == pytest.approx(0.04)


def test_validate_trace_and_tolerance():
    report = validate(XMatrix(0.3, 0.2, 0.2, 0.2, 0, 0))
    assert [v.constraint for v in report.violations] == ["trace"]
    assert validate(XMatrix(0.25 + 1e-10, 0.25, 0.25, 0.25, 0, 0)).valid
    assert not validate(XMatrix(0.25 + 1e-10, 0.25, 0.25, 0.25, 0, 0), tol=0.0).valid
    with pytest.raises(ValueError):
        validate(XMatrix(0.25, 0.25, 0.25, 0.25, 0, 0), tol=-1)


def test_check_valid_raises():
    with pytest.raises(InvalidStateError) as info:
        check_valid(BlochX(0, 0, 1, 1, 1))
    assert not info.value.report.valid


def test_canonicalize_examples():
    s, log = canonicalize(BlochX(0.1, 0.2, 0.2, -0.5, 0.3))
    assert s == BlochX(0.1, 0.2, 0.5, -0.2, 0.3)
    assert log == ("swap", "flip")
    bell = BlochX(0, 0, 1, -1, 1)
    assert canonicalize(bell) == (bell, ())


@settings(max_examples=300, deadline=None)
@given(x_states())
def test_canonicalize_preserves_spectrum(s):
    c, _ = canonicalize(s)
    assert abs(c.t1) >= abs(c.t2) and c.t1 >= 0
    assert (c.x, c.y, c.t3) == (s.x, s.y, s.t3)
    assert sorted(entropy_spectrum(c).values()) == pytest.approx(
        sorted(entropy_spectrum(s).values()), abs=1e-12
    )


@settings(max_examples=300, deadline=None)
@given(x_states())
def test_spectrum_normalized(s):
    values = entropy_spectrum(s).values()
    assert min(values) >= -1e-12
    assert sum(values) == pytest.approx(1.0, abs=1e-12)


def test_entropy_spectrum_examples():
    assert entropy_spectrum(BlochX(0, 0, 0, 0, 0)).values() == approx_tuple([0.25] * 4, 1e-15)
    bell = entropy_spectrum(BlochX(0, 0, 1, -1, 1))
    assert sorted(bell.values()) == pytest.approx([0, 0, 0, 1], abs=1e-15)
    # q = 1/2 mixture of |psi-> and |00>: eigenvalues {1/2, 1/2, 0, 0}
    half = entropy_spectrum(BlochX(0.5, 0.5, -0.5, -0.5, 0))
    assert sorted(half.values()) == pytest.approx([0, 0, 0.5, 0.5], abs=1e-15)
    assert von_neumann_entropy(half) == pytest.approx(1.0, abs=1e-15)


def test_spectrum_matches_dense_eigenvalues(rng):
    for _ in range(200):
        s = random_state(rng)
        dense = np.linalg.eigvalsh(to_matrix(s).dense())
        assert sorted(entropy_spectrum(s).values()) == pytest.approx(sorted(dense), abs=1e-12)


@pytest.mark.parametrize(
    "values, expected",
    [((0.25, 0.25, 0.25, 0.25), 2.0), ((1, 0, 0, 0), 0.0), ((0.5, 0.5, 0, 0), 1.0)],
)
def test_von_neumann_entropy(values, expected):
    assert von_neumann_entropy(EntropySpectrum(*values)) == pytest.approx(expected, abs=1e-15)


def test_von_neumann_clamps_and_rejects():
    assert von_neumann_entropy(EntropySpectrum(1.0, -5e-13, 0, 0)) == 0.0
    with pytest.raises(ValueError):
        von_neumann_entropy(EntropySpectrum(1.1, -0.1, 0, 0))
    with pytest.raises(ValueError):
        shannon_bits([1.0, -1e-6])


def test_binary_entropy():
    assert binary_entropy(0.5) == 1.0
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
    # mpmath, 30 digits: 0.811278124459132863909695792039
    assert binary_entropy(0.75) == pytest.approx(0.8112781244591329, abs=1e-15)
    assert binary_entropy(-1e-13) == 0.0
    with pytest.raises(ValueError):
        binary_entropy(1.01)


def test_state_documents():
    assert state_from_dict({"x": 0, "y": 0, "t1": 0, "t2": 0, "t3": 0}) == BlochX(0, 0, 0, 0, 0)
    m = {"a": 0.5, "b": 0, "c": 0, "d": 0.5, "e": 0, "f": 0.5}
    assert state_from_dict(m).as_tuple() == approx_tuple((0, 0, 1, -1, 1), 1e-15)
    assert isinstance(parse_state_doc(m), XMatrix)
    with pytest.raises(ValueError):
        state_from_dict({"x": 0, "y": 0, "t1": 0, "t2": 0, "t3": 0, "a": 1})
    with pytest.raises(ValueError):
        state_from_dict({"x": 0, "y": 0, "t1": 0, "t2": 0})
    with pytest.raises(ValueError):
        state_from_dict({"x": "0", "y": 0, "t1": 0, "t2": 0, "t3": 0})
    with pytest.raises(InvalidStateError):
        state_from_dict({"a": 0.3, "b": 0.2, "c": 0.2, "d": 0.2, "e": 0, "f": 0})


def test_xmatrix_dense_round_trip():
    m = to_matrix(REF_STATE)
    assert XMatrix.from_dense(m.dense()) == m
    with pytest.raises(ValueError):
        XMatrix.from_dense(np.ones((4, 4)))
