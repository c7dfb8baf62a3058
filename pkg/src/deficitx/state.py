"""Two-qubit X states: Bloch and matrix forms, validation, canonical form, spectrum.

An X state has nonzero density-matrix entries only on the diagonal and the
anti-diagonal in the computational basis ``|00>, |01>, |10>, |11>``::

    [[a, 0, 0, f],
     [0, b, e, 0],
     [0, e, c, 0],
     [f, 0, 0, d]]

Equivalently it is ``(I + x Z.I + y I.Z + sum_i t_i s_i.s_i) / 4``.
"""
from __future__ import annotations

import math
import numbers
from dataclasses import astuple, dataclass, field
from typing import Mapping, NamedTuple

import numpy as np

from .entropy import NEG_TOL, shannon_bits

DEFAULT_TOL = 1e-9

BLOCH_KEYS = ("x", "y", "t1", "t2", "t3")
MATRIX_KEYS = ("a", "b", "c", "d", "e", "f")


class InvalidStateError(ValueError):
    """Raised when a state violates the physical X-state constraints."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        names = ", ".join(v.constraint for v in report.violations)
        super().__init__(f"invalid X state: {names}")


@dataclass(frozen=True)
class BlochX:
    x: float
    y: float
    t1: float
    t2: float
    t3: float

    def as_tuple(self) -> tuple[float, ...]:
        return astuple(self)

    def as_dict(self) -> dict[str, float]:
        return dict(zip(BLOCH_KEYS, self.as_tuple()))


@dataclass(frozen=True)
class XMatrix:
    a: float
    b: float
    c: float
    d: float
    e: float
    f: float

    def as_tuple(self) -> tuple[float, ...]:
        return astuple(self)

    def as_dict(self) -> dict[str, float]:
        return dict(zip(MATRIX_KEYS, self.as_tuple()))

    def dense(self) -> np.ndarray:
        """4x4 real density matrix in the computational basis."""
        a, b, c, d, e, f = self.as_tuple()
        return np.array(
            [[a, 0, 0, f], [0, b, e, 0], [0, e, c, 0], [f, 0, 0, d]], dtype=float
        )

    @classmethod
    def from_dense(cls, rho: np.ndarray, tol: float = 1e-12) -> "XMatrix":
        rho = np.asarray(rho)
        mask = np.array(
            [[1, 0, 0, 1], [0, 1, 1, 0], [0, 1, 1, 0], [1, 0, 0, 1]], dtype=bool
        )
        if np.max(np.abs(rho[~mask]), initial=0.0) > tol:
            raise ValueError("matrix is not of X form")
        if np.iscomplexobj(rho) and np.max(np.abs(rho.imag)) > tol:
            raise ValueError("complex X-state entries are not supported")
        r = rho.real
        if abs(r[1, 2] - r[2, 1]) > tol or abs(r[0, 3] - r[3, 0]) > tol:
            raise ValueError("matrix is not symmetric")
        return cls(r[0, 0], r[1, 1], r[2, 2], r[3, 3], r[1, 2], r[0, 3])


@dataclass(frozen=True)
class EntropySpectrum:
    u_plus: float
    u_minus: float
    v_plus: float
    v_minus: float

    def values(self) -> tuple[float, float, float, float]:
        return (self.u_plus, self.u_minus, self.v_plus, self.v_minus)


class Violation(NamedTuple):
    constraint: str
    measured: float
    bound: float
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid


def to_matrix(s: BlochX) -> XMatrix:
    x, y, t1, t2, t3 = s.as_tuple()
    return XMatrix(
        a=(1 + t3 + x + y) / 4,
        b=(1 - t3 + x - y) / 4,
        c=(1 - t3 - x + y) / 4,
        d=(1 + t3 - x - y) / 4,
        e=(t1 + t2) / 4,
        f=(t1 - t2) / 4,
    )


def from_matrix(m: XMatrix) -> BlochX:
    a, b, c, d, e, f = m.as_tuple()
    return BlochX(
        x=a + b - c - d,
        y=a - b + c - d,
        t1=2 * (e + f),
        t2=2 * (e - f),
        t3=a - b - c + d,
    )


def validate(m: XMatrix, tol: float = DEFAULT_TOL) -> ValidationReport:
    """Check nonnegativity, unit trace and the two 2x2 block positivity conditions."""
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    out = []
    for name in ("a", "b", "c", "d"):
        value = getattr(m, name)
        if not math.isfinite(value) or value < -tol:
            out.append(Violation("nonnegativity", value, 0.0, name))
    trace = m.a + m.b + m.c + m.d
    if not abs(trace - 1.0) <= tol:
        out.append(Violation("trace", trace, 1.0))
    for label, coh, p, q in (("e^2<=bc", m.e, m.b, m.c), ("f^2<=ad", m.f, m.a, m.d)):
        if not math.isfinite(coh) or coh * coh > p * q + tol:
            out.append(Violation(label, coh * coh, p * q))
    return ValidationReport(tuple(out))


def check_valid(s: BlochX, tol: float = DEFAULT_TOL) -> BlochX:
    """Return ``s`` unchanged, raising :class:`InvalidStateError` if it is unphysical."""
    report = validate(to_matrix(s), tol)
    if not report.valid:
        raise InvalidStateError(report)
    return s


def canonicalize(s: BlochX) -> tuple[BlochX, tuple[str, ...]]:
    """Locally-unitarily equivalent state with ``|t1| >= |t2|`` and ``t1 >= 0``.

    ``swap`` exchanges t1 and t2 (pi/2 z-rotation on both qubits); ``flip``
    negates both (a Z on one qubit). x, y and t3 are untouched.
    """
    x, y, t1, t2, t3 = s.as_tuple()
    log = []
    if abs(t2) > abs(t1):
        t1, t2 = t2, t1
        log.append("swap")
    if t1 < 0:
        t1, t2 = -t1, -t2
        log.append("flip")
    if not log:
        return s, ()
    return BlochX(x, y, t1, t2, t3), tuple(log)


def entropy_spectrum(s: BlochX) -> EntropySpectrum:
    x, y, t1, t2, t3 = s.as_tuple()
    ru = math.hypot(x + y, t1 - t2)
    rv = math.hypot(x - y, t1 + t2)
    return EntropySpectrum(
        u_plus=(1 + t3 + ru) / 4,
        u_minus=(1 + t3 - ru) / 4,
        v_plus=(1 - t3 + rv) / 4,
        v_minus=(1 - t3 - rv) / 4,
    )


def von_neumann_entropy(sp: EntropySpectrum | BlochX) -> float:
    """Entropy in bits of an X state (or of a precomputed spectrum)."""
    if isinstance(sp, BlochX):
        sp = entropy_spectrum(sp)
    values = np.array(sp.values())
    if np.any(values < -NEG_TOL):
        raise ValueError(f"spectrum has negative eigenvalue {values.min():.3e}")
    return shannon_bits(values)


def random_state(rng: np.random.Generator, tol: float = 0.0) -> BlochX:
    """Rejection-sample a valid state uniformly from the Bloch-parameter cube."""
    while True:
        s = BlochX(*rng.uniform(-1.0, 1.0, size=5))
        if validate(to_matrix(s), tol).valid:
            return s


def _real(value, key: str) -> float:
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise ValueError(f"field {key!r} must be a real number, got {value!r}")
    return float(value)


def parse_state_doc(doc: Mapping) -> BlochX | XMatrix:
    """Parse a JSON state document in either Bloch or matrix form (not both).

    Matrix documents come back as :class:`XMatrix` so that a wrong trace is
    still visible to :func:`validate`; the Bloch form cannot express it.
    """
    if not isinstance(doc, Mapping):
        raise ValueError("state document must be a JSON object")
    keys = set(doc) - {"schema_version"}
    if keys == set(BLOCH_KEYS):
        return BlochX(*(_real(doc[k], k) for k in BLOCH_KEYS))
    if keys == set(MATRIX_KEYS):
        return XMatrix(*(_real(doc[k], k) for k in MATRIX_KEYS))
    raise ValueError(
        f"state must have exactly the keys {BLOCH_KEYS} or {MATRIX_KEYS}, got {sorted(keys)}"
    )


def state_from_dict(doc: Mapping, tol: float = DEFAULT_TOL) -> BlochX:
    """Parse and validate a state document, returning its Bloch form."""
    parsed = parse_state_doc(doc)
    m = parsed if isinstance(parsed, XMatrix) else to_matrix(parsed)
    report = validate(m, tol)
    if not report.valid:
        raise InvalidStateError(report)
    return parsed if isinstance(parsed, BlochX) else from_matrix(parsed)
