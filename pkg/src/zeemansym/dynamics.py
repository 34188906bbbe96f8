"""Precession of the l=1 angular momentum in a field along z.

Two pictures, each with a closed form and a fixed-step RK4 integration:

* Schrodinger: the +1 eigenvector of ``L . n(theta, phi)`` evolves under
  ``i d|psi>/dt = -rate * L_z |psi>``; theta stays fixed and
  ``phi(t) = phi(0) - rate * t``.
* Heisenberg: ``dLx/dt = omega Ly``, ``dLy/dt = -omega Lx``, ``dLz/dt = 0``.

The module takes one caller-supplied rate for both. Converting a field in
gauss into that rate is left to the caller (see :mod:`zeemansym.zeeman`).
Units are hbar = 1 throughout.
"""
from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass, field

import numpy as np

from . import cmatrix
from .errors import RejectedInputError, StepControlError
from .so3rep import algebra_residual, defining_rep

MAX_STEP_PHASE = 0.1
# below this |sin(theta)| the (theta, phi) chart is singular
CHART_SINGULAR_TOL = 1e-8
_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class Orientation:
    theta: float
    phi: float

    def __post_init__(self):
        if not (math.isfinite(self.theta) and math.isfinite(self.phi)):
            raise RejectedInputError("orientation angles must be finite")
        if not 0.0 <= self.theta <= math.pi:
            raise RejectedInputError(f"theta must lie in [0, pi], got {self.theta}")


@dataclass(frozen=True)
class PrecessionSpec:
    omega: float
    t_end: float
    dt: float

    def __post_init__(self):
        if not all(math.isfinite(x) for x in (self.omega, self.t_end, self.dt)):
            raise RejectedInputError("precession parameters must be finite")
        if self.t_end < 0:
            raise RejectedInputError(f"t_end must be non-negative, got {self.t_end}")
        if self.dt <= 0:
            raise RejectedInputError(f"dt must be positive, got {self.dt}")
        if self.t_end > 0 and self.dt > self.t_end:
            raise RejectedInputError(f"dt={self.dt} exceeds t_end={self.t_end}")

    def check_step(self) -> None:
        if self.dt * abs(self.omega) > MAX_STEP_PHASE:
            raise StepControlError(
                f"dt*|omega| = {self.dt * abs(self.omega):.3g} exceeds {MAX_STEP_PHASE}"
            )

    @property
    def steps(self) -> int:
        return math.ceil(self.t_end / self.dt - 1e-12) if self.t_end > 0 else 0

    @property
    def step(self) -> float:
        """Actual step t_end / ceil(t_end / dt), never larger than dt."""
        return self.t_end / self.steps if self.steps else 0.0

    def times(self) -> np.ndarray:
        return np.arange(self.steps + 1) * self.step


class Method(str, enum.Enum):
    CLOSED_FORM = "closed_form"
    INTEGRATED = "integrated"


class Picture(str, enum.Enum):
    SCHRODINGER = "schrodinger"
    HEISENBERG = "heisenberg"


@dataclass
class PrecessionTrajectory:
    """Sampled precession run.

    Schrodinger runs fill ``states`` with Orientations (plus ``vectors`` with
    the underlying 3-component states and ``flags`` marking chart-singular
    samples); Heisenberg runs fill ``states`` with ``(Lx, Ly, Lz)`` triples.
    """

    times: np.ndarray
    states: list
    method: Method
    picture: Picture
    omega: float
    vectors: list = field(default_factory=list)
    flags: list = field(default_factory=list)


def l_dot_n(theta: float, phi: float) -> np.ndarray:
    """``sin(theta)cos(phi) Lx + sin(theta)sin(phi) Ly + cos(theta) Lz`` in the Cartesian rep."""
    c, s = math.cos(theta), math.sin(theta)
    sp, cp = math.sin(phi), math.cos(phi)
    return 1j * np.array(
        [
            [0.0, -c, s * sp],
            [c, 0.0, -s * cp],
            [-s * sp, s * cp, 0.0],
        ],
        dtype=np.complex128,
    )


def eigenstate_plus(theta: float, phi: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    sp, cp = math.sin(phi), math.cos(phi)
    return np.array([-c * cp + 1j * sp, -c * sp - 1j * cp, s], dtype=np.complex128) / _SQRT2


def eigenstate_minus(theta: float, phi: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    sp, cp = math.sin(phi), math.cos(phi)
    return np.array([-c * cp - 1j * sp, -c * sp + 1j * cp, s], dtype=np.complex128) / _SQRT2


def orientation_from_state(v: np.ndarray) -> tuple[float, float, bool]:
    """Invert the ``eigenstate_plus`` parameterization.

    The global phase is fixed by making the z component real and
    non-negative. Returns ``(theta, phi, singular)``; ``phi`` is meaningless
    when ``singular`` is set.
    """
    v = np.asarray(v, dtype=np.complex128) * _SQRT2 / np.linalg.norm(v)
    if abs(v[2]) > 0:
        v = v * (abs(v[2]) / v[2])
    sin_t = v[2].real
    sin_p, cos_p = v[0].imag, -v[1].imag
    cos_t = -(v[0].real * cos_p + v[1].real * sin_p)
    theta = math.atan2(max(sin_t, 0.0), cos_t)
    phi = math.atan2(sin_p, cos_p)
    return theta, phi, abs(math.sin(theta)) < CHART_SINGULAR_TOL


def _rk4(f, y, h):
    k1 = f(y)
    k2 = f(y + 0.5 * h * k1)
    k3 = f(y + 0.5 * h * k2)
    k4 = f(y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _nearest_branch(angle: float, reference: float) -> float:
    return angle + 2.0 * math.pi * round((reference - angle) / (2.0 * math.pi))


def schrodinger_closed_form(init: Orientation, spec: PrecessionSpec) -> PrecessionTrajectory:
    times = spec.times()
    states = [Orientation(init.theta, init.phi - spec.omega * t) for t in times]
    vectors = [eigenstate_plus(o.theta, o.phi) for o in states]
    flags = [abs(math.sin(init.theta)) < CHART_SINGULAR_TOL] * len(times)
    return PrecessionTrajectory(times, states, Method.CLOSED_FORM, Picture.SCHRODINGER, spec.omega, vectors, flags)


def schrodinger_integrate(init: Orientation, spec: PrecessionSpec) -> PrecessionTrajectory:
    """RK4 integration of ``d|psi>/dt = i * rate * L_z |psi>`` from the +1 eigenstate.

    phi is unwrapped onto the branch nearest the previous sample so it can
    be compared directly with the closed form. Chart-singular samples repeat
    the previous phi and are flagged.
    """
    spec.check_step()
    lz = defining_rep().lz
    gen = 1j * spec.omega * lz
    times = spec.times()
    psi = eigenstate_plus(init.theta, init.phi)
    vectors, states, flags = [], [], []
    prev_phi = init.phi
    for k, t in enumerate(times):
        if k:
            psi = _rk4(lambda y: gen @ y, psi, spec.step)
        theta, phi, singular = orientation_from_state(psi)
        phi = prev_phi if singular else _nearest_branch(phi, prev_phi)
        prev_phi = phi
        vectors.append(psi.copy())
        states.append(Orientation(theta, phi))
        flags.append(singular)
    return PrecessionTrajectory(times, states, Method.INTEGRATED, Picture.SCHRODINGER, spec.omega, vectors, flags)


def _default_ops(init_ops):
    if init_ops is None:
        return defining_rep().generators
    ops = tuple(cmatrix.as_matrix(x) for x in init_ops)
    resid = algebra_residual(ops)
    if resid > cmatrix.DEFAULT_TOL:
        raise RejectedInputError(f"initial operators violate the so(3) algebra: residual {resid:.3e}")
    return ops


def heisenberg_closed_form(init_ops, spec: PrecessionSpec) -> PrecessionTrajectory:
    lx0, ly0, lz0 = _default_ops(init_ops)
    times = spec.times()
    states = []
    for t in times:
        c, s = math.cos(spec.omega * t), math.sin(spec.omega * t)
        states.append((c * lx0 + s * ly0, -s * lx0 + c * ly0, lz0.copy()))
    return PrecessionTrajectory(times, states, Method.CLOSED_FORM, Picture.HEISENBERG, spec.omega)


def heisenberg_integrate(init_ops, spec: PrecessionSpec) -> PrecessionTrajectory:
    spec.check_step()
    ops = _default_ops(init_ops)
    w = spec.omega

    def rhs(y):
        return np.stack([w * y[1], -w * y[0], np.zeros_like(y[2])])

    times = spec.times()
    y = np.stack(ops)
    states = [(y[0].copy(), y[1].copy(), y[2].copy())]
    for k in range(1, len(times)):
        y = _rk4(rhs, y, spec.step)
        states.append((y[0].copy(), y[1].copy(), y[2].copy()))
    return PrecessionTrajectory(times, states, Method.INTEGRATED, Picture.HEISENBERG, spec.omega)


def expectations(traj: PrecessionTrajectory, psi0: np.ndarray | None = None) -> np.ndarray:
    """``<L_a>(t)`` for a = x, y, z as an array of shape (len(times), 3).

    Schrodinger runs use the stored states against the fixed operators;
    Heisenberg runs need the initial state ``psi0``.
    """
    if traj.picture is Picture.SCHRODINGER:
        ops = defining_rep().generators
        return np.array([[np.vdot(v, op @ v).real for op in ops] for v in traj.vectors])
    if psi0 is None:
        raise RejectedInputError("Heisenberg expectations need an initial state")
    return np.array([[np.vdot(psi0, op @ psi0).real for op in triple] for triple in traj.states])


_OP_NAMES = ("Lx", "Ly", "Lz")


def trajectory_rows(traj: PrecessionTrajectory) -> tuple[list[str], list[list]]:
    if traj.picture is Picture.SCHRODINGER:
        header = ["t", "theta", "phi", "flag"]
        rows = [
            [float(t), o.theta + 0.0, o.phi + 0.0, int(f)]
            for t, o, f in zip(traj.times, traj.states, traj.flags)
        ]
        return header, rows
    header = ["t", "op", "entry_row", "entry_col", "re", "im"]
    rows = []
    for t, triple in zip(traj.times, traj.states):
        for name, m in zip(_OP_NAMES, triple):
            n = m.shape[0]
            for i in range(n):
                for j in range(n):
                    rows.append([float(t), name, i, j, m[i, j].real + 0.0, m[i, j].imag + 0.0])
    return header, rows


def trajectory_to_csv(traj: PrecessionTrajectory) -> str:
    header, rows = trajectory_rows(traj)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(x) if isinstance(x, float) else x for x in row])
    return buf.getvalue()


def trajectory_to_dict(traj: PrecessionTrajectory) -> dict:
    header, rows = trajectory_rows(traj)
    return {
        "picture": traj.picture.value,
        "method": traj.method.value,
        "omega": traj.omega + 0.0,
        "columns": header,
        "rows": rows,
    }
