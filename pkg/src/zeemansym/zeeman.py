"""Normal Zeeman splitting of hydrogen levels.

Constants are CGS-Gaussian (erg, gauss); energies come out in eV. The
orbital moment ``mu0`` is negative, and a sublevel's energy is
``E_n - mu0 * B * m``, so for B > 0 the ``m = +l`` sublevel lies highest.

Sublevel energies are evaluated in exact rational arithmetic from the
decimal values of the constants and only then rounded to float. That keeps
the splitting exactly equidistant and the field-off limit exactly equal to
the unperturbed level.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import cmatrix
from .errors import RejectedInputError
from .repanalysis import RepDecomposition, ResidualGroup, residual_symmetry
from .so3rep import Basis, SpinLabel, SpinRep, spherical_rep


@dataclass(frozen=True)
class PhysicalConstants:
    mu0: float = -0.9273e-20  # erg/gauss
    rydberg_ev: float = 13.6
    erg_per_ev: float = 1.602176634e-12

    def __post_init__(self):
        if not self.mu0 < 0:
            raise RejectedInputError("mu0 must be negative")
        if not self.rydberg_ev > 0:
            raise RejectedInputError("rydberg_ev must be positive")
        if not self.erg_per_ev > 0:
            raise RejectedInputError("erg_per_ev must be positive")

    def exact(self, name: str) -> Fraction:
        # repr gives the shortest decimal that round-trips, e.g. 13.6 -> 68/5
        return Fraction(repr(float(getattr(self, name))))


CONSTANTS = PhysicalConstants()


def _exact_level(n: int, const: PhysicalConstants) -> Fraction:
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise RejectedInputError(f"principal quantum number must be a positive integer, got {n!r}")
    return -const.exact("rydberg_ev") / (int(n) ** 2)


def hydrogen_level(n: int, const: PhysicalConstants = CONSTANTS) -> float:
    """Bohr energy ``-13.6 / n**2`` in eV."""
    return float(_exact_level(n, const))


@dataclass(frozen=True)
class AtomicLevel:
    n: int
    l: int
    energy_ev: float

    def __post_init__(self):
        if isinstance(self.l, bool) or int(self.l) != self.l or not 0 <= self.l <= self.n - 1:
            raise RejectedInputError(f"l must be an integer in 0..{self.n - 1}, got {self.l!r}")

    @classmethod
    def hydrogen(cls, n: int, l: int, const: PhysicalConstants = CONSTANTS) -> "AtomicLevel":
        return cls(int(n), int(l), hydrogen_level(n, const))


def _shift_per_m(field_gauss, const: PhysicalConstants) -> Fraction:
    return -const.exact("mu0") * Fraction(repr(float(field_gauss))) / const.exact("erg_per_ev")


def perturbed_hamiltonian(rep: SpinRep, field_gauss: float, const: PhysicalConstants = CONSTANTS) -> np.ndarray:
    """The field coupling ``-mu0 * B * L_z`` in eV (diagonal in the spherical basis)."""
    if rep.basis is not Basis.SPHERICAL:
        raise RejectedInputError("perturbed_hamiltonian expects a spherical-basis representation")
    if not rep.label.is_integer:
        raise RejectedInputError(f"orbital angular momentum must be an integer, got l={rep.label}")
    return float(_shift_per_m(field_gauss, const)) * np.array(rep.lz)


@dataclass(frozen=True)
class ZeemanSpectrum:
    base: AtomicLevel
    field_gauss: float
    sublevels: tuple[tuple[int, float], ...]
    spacing_ev: float
    decomposition: RepDecomposition
    residual_group: ResidualGroup
    exact_energies: tuple[Fraction, ...] = ()
    exact_spacing: Fraction = Fraction(0)

    def to_dict(self) -> dict:
        return {
            "n": self.base.n,
            "l": self.base.l,
            "base_energy_ev": self.base.energy_ev,
            "field_gauss": float(self.field_gauss) + 0.0,
            "spacing_ev": self.spacing_ev,
            "sublevels": [{"m": m, "energy_ev": e} for m, e in self.sublevels],
            "decomposition": self.decomposition.to_dict(),
            "group": self.residual_group.ascii,
        }


def zeeman_split(level: AtomicLevel, field_gauss: float, const: PhysicalConstants = CONSTANTS) -> ZeemanSpectrum:
    if not field_gauss >= 0:
        raise RejectedInputError(f"field must be non-negative, got {field_gauss}")
    base = _exact_level(level.n, const)
    shift = _shift_per_m(field_gauss, const)
    exact = tuple(base + shift * m for m in range(-level.l, level.l + 1))
    sublevels = tuple((m, float(e)) for m, e in zip(range(-level.l, level.l + 1), exact))
    rep = spherical_rep(SpinLabel(2 * level.l))
    report = residual_symmetry(perturbed_hamiltonian(rep, field_gauss, const), rep)
    return ZeemanSpectrum(
        base=level,
        field_gauss=float(field_gauss),
        sublevels=sublevels,
        spacing_ev=float(abs(shift)),
        decomposition=RepDecomposition(((rep.label, 1),)),
        residual_group=report.group,
        exact_energies=exact,
        exact_spacing=abs(shift),
    )


def splitting_report(n: int, field_gauss: float, const: PhysicalConstants = CONSTANTS) -> list[ZeemanSpectrum]:
    """One spectrum per orbital quantum number l = 0..n-1."""
    _exact_level(n, const)
    return [zeeman_split(AtomicLevel.hydrogen(n, l, const), field_gauss, const) for l in range(n)]


SPECTRUM_CSV_HEADER = ("n", "l", "m", "field_gauss", "energy_ev", "spacing_ev")


def spectrum_rows(spectra) -> list[list]:
    rows = []
    for sp in spectra:
        for m, e in sp.sublevels:
            rows.append([sp.base.n, sp.base.l, m, sp.field_gauss + 0.0, e + 0.0, sp.spacing_ev + 0.0])
    return rows


def sublevel_energies_from_matrix(level: AtomicLevel, field_gauss: float, const: PhysicalConstants = CONSTANTS) -> np.ndarray:
    """Eigenvalues of the field coupling shifted by the Bohr energy, ascending."""
    rep = spherical_rep(SpinLabel(2 * level.l))
    w, _ = cmatrix.hermitian_eigensystem(perturbed_hamiltonian(rep, field_gauss, const))
    return w + hydrogen_level(level.n, const)
