"""Spin-l representations of so(3).

Generators are stored in units of hbar (hbar = 1). Spherical-basis
representations order their basis by descending m, so index 0 holds the
top weight m = l and ``lz = diag(l, l-1, ..., -l)``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from . import cmatrix
from .errors import RejectedInputError


@dataclass(frozen=True, order=True)
class SpinLabel:
    """Angular momentum quantum number ``l``, stored as the integer ``2l``."""

    two_l: int

    def __post_init__(self):
        if isinstance(self.two_l, bool) or not isinstance(self.two_l, (int, np.integer)):
            raise RejectedInputError(f"two_l must be an integer, got {self.two_l!r}")
        if self.two_l < 0:
            raise RejectedInputError(f"two_l must be non-negative, got {self.two_l}")
        object.__setattr__(self, "two_l", int(self.two_l))

    @classmethod
    def from_l(cls, l) -> "SpinLabel":
        """Build from ``l`` given as int, Fraction, float or decimal text (must be k/2)."""
        if isinstance(l, str):
            try:
                l = Fraction(l.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise RejectedInputError(f"cannot parse l={l!r}") from exc
        twice = Fraction(l) * 2
        if twice.denominator != 1:
            raise RejectedInputError(f"l={l} is not a non-negative multiple of 1/2")
        return cls(int(twice))

    @property
    def l(self) -> Fraction:
        return Fraction(self.two_l, 2)

    @property
    def dim(self) -> int:
        return self.two_l + 1

    @property
    def is_integer(self) -> bool:
        return self.two_l % 2 == 0

    def weights(self) -> list[Fraction]:
        """m values in basis order: l, l-1, ..., -l."""
        return [Fraction(self.two_l - 2 * k, 2) for k in range(self.dim)]

    def __str__(self):
        return str(self.two_l // 2) if self.is_integer else f"{self.two_l}/2"


class Basis(str, enum.Enum):
    SPHERICAL = "spherical"
    CARTESIAN = "cartesian"


class Generators(NamedTuple):
    """A bare triple of generator matrices (no irreducibility implied)."""

    lx: np.ndarray
    ly: np.ndarray
    lz: np.ndarray

    @property
    def dim(self) -> int:
        return self.lz.shape[0]


def _frozen(a) -> np.ndarray:
    m = cmatrix.as_matrix(a).copy()
    m.setflags(write=False)
    return m


@dataclass(frozen=True, eq=False)
class SpinRep:
    label: SpinLabel
    lx: np.ndarray
    ly: np.ndarray
    lz: np.ndarray
    basis: Basis = Basis.SPHERICAL

    def __post_init__(self):
        for name in ("lx", "ly", "lz"):
            m = _frozen(getattr(self, name))
            if m.shape[0] != self.label.dim:
                raise RejectedInputError(
                    f"{name} has dimension {m.shape[0]}, expected {self.label.dim} for l={self.label}"
                )
            object.__setattr__(self, name, m)
        object.__setattr__(self, "basis", Basis(self.basis))
        if self.basis is Basis.CARTESIAN and self.label.two_l != 2:
            raise RejectedInputError("the Cartesian basis is only defined for l=1")

    @property
    def dim(self) -> int:
        return self.label.dim

    @property
    def generators(self) -> Generators:
        return Generators(self.lx, self.ly, self.lz)

    def raising(self) -> np.ndarray:
        return self.lx + 1j * self.ly

    def lowering(self) -> np.ndarray:
        return self.lx - 1j * self.ly


@dataclass(frozen=True)
class LadderCoefficients:
    """Ladder coefficients mu_m for m = l, l-1, ..., -l+1.

    ``L+ |m-1> = mu_m |m>``. The squared values are kept as exact fractions.
    """

    label: SpinLabel
    mu_squared: tuple[Fraction, ...]

    @property
    def m_values(self) -> list[Fraction]:
        return self.label.weights()[:-1]

    @property
    def mu(self) -> list[float]:
        return [math.sqrt(x) for x in self.mu_squared]

    def mu_squared_at(self, m: Fraction) -> Fraction:
        """mu_m^2 with the terminating zeros at m = -l and m = l + 1."""
        l = self.label.l
        m = Fraction(m)
        if m <= -l or m > l:
            return Fraction(0)
        return self.mu_squared[int(l - m)]


def ladder_coefficients(label: SpinLabel) -> LadderCoefficients:
    l = label.l
    sq = tuple((l + m) * (l - m + 1) for m in label.weights()[:-1])
    return LadderCoefficients(label, sq)


def defining_rep() -> SpinRep:
    """The 3x3 Cartesian representation acting on (x, y, z)."""
    lx = np.zeros((3, 3), dtype=np.complex128)
    ly = np.zeros((3, 3), dtype=np.complex128)
    lz = np.zeros((3, 3), dtype=np.complex128)
    lx[1, 2], lx[2, 1] = -1j, 1j
    ly[0, 2], ly[2, 0] = 1j, -1j
    lz[0, 1], lz[1, 0] = -1j, 1j
    return SpinRep(SpinLabel(2), lx, ly, lz, Basis.CARTESIAN)


def spherical_rep(label: SpinLabel) -> SpinRep:
    n = label.dim
    lz = np.diag([float(m) for m in label.weights()]).astype(np.complex128)
    lplus = np.zeros((n, n), dtype=np.complex128)
    for k, mu in enumerate(ladder_coefficients(label).mu):
        # column k+1 holds |m-1>, row k holds |m>
        lplus[k, k + 1] = mu
    lminus = lplus.conj().T
    lx = (lplus + lminus) / 2
    ly = (lplus - lminus) / 2j
    return SpinRep(label, lx, ly, lz, Basis.SPHERICAL)


def cartesian_to_spherical(rep: SpinRep) -> tuple[SpinRep, np.ndarray]:
    """Rotate the Cartesian l=1 rep into the ladder basis.

    Returns the spherical rep together with the unitary ``U`` such that
    ``U @ L_cart @ U^H`` equals the spherical generator for each component.
    """
    if rep.basis is not Basis.CARTESIAN or rep.label.two_l != 2:
        raise RejectedInputError("cartesian_to_spherical needs the Cartesian l=1 representation")
    # top weight: eigenvector of lz with eigenvalue +1
    w, v = cmatrix.hermitian_eigensystem(rep.lz)
    top = v[:, int(np.argmin(np.abs(w - 1.0)))]
    lminus = rep.lowering()
    cols = [top]
    for mu in ladder_coefficients(rep.label).mu:
        cols.append(lminus @ cols[-1] / mu)
    # columns are |m> in Cartesian components; U maps Cartesian -> spherical
    u = np.column_stack(cols).conj().T
    out = SpinRep(
        rep.label,
        u @ rep.lx @ u.conj().T,
        u @ rep.ly @ u.conj().T,
        u @ rep.lz @ u.conj().T,
        Basis.SPHERICAL,
    )
    return out, u


def _block_diag(mats: Sequence[np.ndarray]) -> np.ndarray:
    n = sum(m.shape[0] for m in mats)
    out = np.zeros((n, n), dtype=np.complex128)
    i = 0
    for m in mats:
        k = m.shape[0]
        out[i:i + k, i:i + k] = m
        i += k
    return out


def direct_sum(reps: Sequence[SpinRep]):
    """Block-diagonal generators of a direct sum, plus the recorded decomposition."""
    from .repanalysis import RepDecomposition

    reps = list(reps)
    if not reps:
        raise RejectedInputError("direct_sum needs at least one representation")
    if any(r.basis is not Basis.SPHERICAL for r in reps):
        raise RejectedInputError("direct_sum expects spherical-basis representations")
    gens = Generators(*(_block_diag([getattr(r, c) for r in reps]) for c in ("lx", "ly", "lz")))
    return gens, RepDecomposition.from_labels([r.label for r in reps])


def tensor_product(a: SpinRep, b: SpinRep) -> Generators:
    """Generators ``L_a (x) 1 + 1 (x) L_b`` on the product space."""
    if a.basis is not Basis.SPHERICAL or b.basis is not Basis.SPHERICAL:
        raise RejectedInputError("tensor_product expects spherical-basis representations")
    ia, ib = np.eye(a.dim), np.eye(b.dim)
    return Generators(*(np.kron(x, ib) + np.kron(ia, y) for x, y in zip(a.generators, b.generators)))


def parity_is_physical(rep: SpinRep) -> bool:
    """Inversion has a physical meaning only on integer-l carriers."""
    return rep.label.is_integer


def parity_operator(rep: SpinRep) -> np.ndarray:
    """Inversion (x, y, z) -> (-x, -y, -z) on the carrier of ``rep``.

    Cartesian l=1 gives ``-1``; spherical integer l gives ``(-1)^l`` as on
    spherical harmonics. Half-integer carriers get the identity, which
    :func:`parity_is_physical` reports as non-physical.
    """
    if rep.basis is Basis.CARTESIAN:
        return -cmatrix.identity(3)
    if not rep.label.is_integer:
        return cmatrix.identity(rep.dim)
    sign = -1.0 if (rep.label.two_l // 2) % 2 else 1.0
    return sign * cmatrix.identity(rep.dim)


_LEVI_CIVITA = {(0, 1): (2, 1), (1, 2): (0, 1), (2, 0): (1, 1)}


def algebra_residual(gens) -> float:
    """Max entrywise residual of ``[L_a, L_b] - i eps_abc L_c`` over all pairs."""
    g = list(gens)
    worst = 0.0
    for (a, b), (c, sign) in _LEVI_CIVITA.items():
        r = cmatrix.commutator(g[a], g[b]) - 1j * sign * g[c]
        worst = max(worst, cmatrix.max_abs(r))
    return worst


def casimir(gens) -> np.ndarray:
    lx, ly, lz = gens
    return lx @ lx + ly @ ly + lz @ lz


def casimir_residual(rep: SpinRep) -> float:
    l = float(rep.label.l)
    return cmatrix.max_abs(casimir(rep.generators) - l * (l + 1) * np.eye(rep.dim))


def rep_to_dict(rep: SpinRep) -> dict:
    return {
        "two_l": rep.label.two_l,
        "basis": rep.basis.value,
        "lx": cmatrix.matrix_to_dict(rep.lx),
        "ly": cmatrix.matrix_to_dict(rep.ly),
        "lz": cmatrix.matrix_to_dict(rep.lz),
    }


def generators_to_dict(gens) -> dict:
    lx, ly, lz = gens
    return {
        "lx": cmatrix.matrix_to_dict(lx),
        "ly": cmatrix.matrix_to_dict(ly),
        "lz": cmatrix.matrix_to_dict(lz),
    }
