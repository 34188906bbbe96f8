"""Group-level analysis of so(3) representations.

Covers exponential-map group elements, characters of rotations about z,
reduction of a reducible representation into irreducible blocks (two
independent routes: highest-weight peeling of the L_z spectrum and Fourier
projection of the character), and detection of the symmetry that survives
a perturbing Hamiltonian.
"""
from __future__ import annotations

import cmath
import enum
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from . import cmatrix
from .errors import (
    InconsistentCharacterError,
    MalformedRepresentationError,
    RejectedInputError,
)
from .so3rep import Generators, SpinLabel, SpinRep, algebra_residual, parity_is_physical, parity_operator

# lz eigenvalues are snapped to the nearest half-integer within this distance
WEIGHT_SNAP_TOL = 1e-6
# max distance from an integer tolerated when rounding character multiplicities
CHARACTER_ROUNDING_TOL = 0.01
PARALLEL_TOL = 1e-12


@dataclass(frozen=True)
class RepDecomposition:
    """Irreducible content of a representation as ``(label, multiplicity)`` pairs."""

    blocks: tuple[tuple[SpinLabel, int], ...]
    total_dim: int = field(default=-1)

    def __post_init__(self):
        merged: Counter = Counter()
        for label, mult in self.blocks:
            if mult < 1:
                raise RejectedInputError(f"multiplicity must be positive, got {mult}")
            merged[SpinLabel(label.two_l)] += int(mult)
        blocks = tuple(sorted(merged.items(), key=lambda b: -b[0].two_l))
        object.__setattr__(self, "blocks", blocks)
        dim = sum(label.dim * mult for label, mult in blocks)
        if self.total_dim == -1:
            object.__setattr__(self, "total_dim", dim)
        elif self.total_dim != dim:
            raise RejectedInputError(f"total_dim {self.total_dim} does not match block sum {dim}")

    @classmethod
    def from_labels(cls, labels: Iterable[SpinLabel]) -> "RepDecomposition":
        return cls(tuple(Counter(labels).items()))

    def as_multiset(self) -> dict[int, int]:
        """``{two_l: multiplicity}``."""
        return {label.two_l: mult for label, mult in self.blocks}

    def to_dict(self) -> dict:
        return {
            "blocks": [{"two_l": label.two_l, "mult": mult} for label, mult in self.blocks],
            "total_dim": self.total_dim,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "RepDecomposition":
        blocks = tuple((SpinLabel(int(b["two_l"])), int(b["mult"])) for b in d["blocks"])
        return cls(blocks, int(d["total_dim"]))


@dataclass(frozen=True)
class RotationParameter:
    alpha: tuple[float, float, float]

    def __post_init__(self):
        a = tuple(float(x) for x in self.alpha)
        if len(a) != 3 or not all(math.isfinite(x) for x in a):
            raise RejectedInputError(f"rotation parameter must be 3 finite reals, got {self.alpha}")
        object.__setattr__(self, "alpha", a)

    def __add__(self, other: "RotationParameter") -> "RotationParameter":
        return RotationParameter(tuple(x + y for x, y in zip(self.alpha, other.alpha)))


def _as_param(alpha) -> RotationParameter:
    return alpha if isinstance(alpha, RotationParameter) else RotationParameter(tuple(alpha))


def _gens(rep) -> Generators:
    return rep.generators if isinstance(rep, SpinRep) else Generators(*rep)


def group_element(rep, alpha) -> np.ndarray:
    """``exp(i L . alpha)`` for a SpinRep or bare generator triple."""
    a = _as_param(alpha).alpha
    lx, ly, lz = _gens(rep)
    return cmatrix.expm(1j * (a[0] * lx + a[1] * ly + a[2] * lz))


def _parallel(a, b) -> bool:
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        return True
    return float(np.linalg.norm(np.cross(a, b))) <= PARALLEL_TOL * na * nb


def homomorphism_check(rep, alpha, beta, diagnostic: bool = False) -> float:
    """``max |D(alpha) D(beta) - D(alpha + beta)|``.

    The product rule holds exactly only when the two parameters share an
    axis, so non-parallel input is rejected unless ``diagnostic`` is set, in
    which case the (generally non-zero) residual is returned as-is.
    """
    alpha, beta = _as_param(alpha), _as_param(beta)
    if not diagnostic and not _parallel(np.array(alpha.alpha), np.array(beta.alpha)):
        raise RejectedInputError("homomorphism_check requires parallel rotation parameters")
    prod = group_element(rep, alpha) @ group_element(rep, beta)
    return cmatrix.max_abs(prod - group_element(rep, alpha + beta))


def irreducible_character(label: SpinLabel, theta: float) -> complex:
    """sum_{m=-l}^{l} exp(i m theta), summed in ascending m."""
    total = 0j
    for k in range(label.dim):
        two_m = -label.two_l + 2 * k
        total += cmath.exp(0.5j * two_m * theta)
    return total


def character(obj, theta: float) -> complex:
    """Character of a rotation by ``theta`` about z.

    ``obj`` may be a SpinLabel, an irreducible SpinRep, or a RepDecomposition.
    """
    if isinstance(obj, SpinRep):
        obj = obj.label
    if isinstance(obj, SpinLabel):
        return irreducible_character(obj, theta)
    if isinstance(obj, RepDecomposition):
        total = 0j
        for label, mult in obj.blocks:
            total += mult * irreducible_character(label, theta)
        return total
    raise RejectedInputError(f"cannot take the character of {type(obj).__name__}")


def _weight_counts(gens: Generators, tol: float) -> Counter:
    resid = algebra_residual(gens)
    if resid > tol:
        raise MalformedRepresentationError(f"generators violate the so(3) algebra: residual {resid:.3e}")
    w, _ = cmatrix.hermitian_eigensystem(gens.lz, tol=tol)
    counts: Counter = Counter()
    for x in w:
        two_m = round(2.0 * x)
        if abs(2.0 * x - two_m) > 2.0 * WEIGHT_SNAP_TOL:
            raise MalformedRepresentationError(f"L_z eigenvalue {x!r} is not a half-integer")
        counts[two_m] += 1
    return counts


def decompose_by_weights(gens, tol: float = cmatrix.DEFAULT_TOL) -> RepDecomposition:
    """Reduce a representation by peeling highest-weight chains off the L_z spectrum."""
    gens = _gens(gens)
    counts = _weight_counts(gens, tol)
    blocks = []
    while counts:
        top = max(counts)
        if top < 0:
            raise MalformedRepresentationError("weights are not symmetric about zero")
        mult = counts[top]
        for two_m in range(top, -top - 1, -2):
            counts[two_m] -= mult
            if counts[two_m] < 0:
                raise MalformedRepresentationError(
                    f"weight chain for l={top}/2 broken at m={two_m}/2"
                )
            if counts[two_m] == 0:
                del counts[two_m]
        blocks.append((SpinLabel(top), mult))
    return RepDecomposition(tuple(blocks))


def decompose_by_character(char_samples: Callable[[float], complex], l_max: SpinLabel) -> RepDecomposition:
    """Reduce a representation from its character alone.

    Weight multiplicities are Fourier coefficients of the character. Sampling
    runs over [0, 4 pi) so half-integer weights stay orthogonal; the grid has
    4 (2 l_max + 1) points, which integrates every occurring frequency exactly.
    The multiplicity of block l is then n(l) - n(l+1).
    """
    n = 4 * (l_max.two_l + 1)
    thetas = [4.0 * math.pi * j / n for j in range(n)]
    samples = [complex(char_samples(t)) for t in thetas]

    def weight_mult(two_m: int) -> int:
        acc = 0j
        for t, chi in zip(thetas, samples):
            acc += chi * cmath.exp(-0.5j * two_m * t)
        value = acc / n
        rounded = round(value.real)
        if abs(value - rounded) > CHARACTER_ROUNDING_TOL or rounded < 0:
            raise InconsistentCharacterError(
                f"weight m={two_m}/2 has non-integer multiplicity {value:.6g}"
            )
        return rounded

    nw = {two_m: weight_mult(two_m) for two_m in range(-l_max.two_l - 2, l_max.two_l + 3)}
    for two_m in range(1, l_max.two_l + 1):
        if nw[two_m] != nw[-two_m]:
            raise InconsistentCharacterError(f"weights m=+-{two_m}/2 occur {nw[two_m]} vs {nw[-two_m]} times")
    blocks = []
    for two_l in range(l_max.two_l, -1, -1):
        mult = nw[two_l] - nw[two_l + 2]
        if mult < 0:
            raise InconsistentCharacterError(f"negative multiplicity {mult} for l={two_l}/2")
        if mult:
            blocks.append((SpinLabel(two_l), mult))
    if nw[l_max.two_l + 2] or nw[-l_max.two_l - 2]:
        raise InconsistentCharacterError("character contains weights above l_max")
    if not blocks:
        raise InconsistentCharacterError("character decomposes into nothing")
    return RepDecomposition(tuple(blocks))


class ResidualGroup(str, enum.Enum):
    """Closed set of names for the symmetry left by a perturbation."""

    ROTATION_AND_INVERSION = "U(1) ⊗ {E, I}"
    FULL = "SO(3) ⊗ {E, I}"
    FULL_NO_INVERSION = "SO(3)"
    NONSTANDARD = "nonstandard residual set"

    @property
    def ascii(self) -> str:
        return _ASCII_NAMES[self]


_ASCII_NAMES = {
    ResidualGroup.ROTATION_AND_INVERSION: "U(1) x {E,I}",
    ResidualGroup.FULL: "SO(3) x {E,I}",
    ResidualGroup.FULL_NO_INVERSION: "SO(3)",
    ResidualGroup.NONSTANDARD: "nonstandard residual set",
}

_GENERATOR_NAMES = ("Lx", "Ly", "Lz", "I")


@dataclass(frozen=True)
class ResidualSymmetryReport:
    surviving: tuple[str, ...]
    residuals: dict[str, float]
    group: ResidualGroup
    axis: str | None = None
    parity_physical: bool = True

    @property
    def group_name(self) -> str:
        return self.group.value

    def to_dict(self) -> dict:
        d = {
            "surviving": list(self.surviving),
            "residuals": {k: self.residuals[k] + 0.0 for k in _GENERATOR_NAMES},
            "group": self.group.ascii,
        }
        if self.axis is not None:
            d["axis"] = self.axis
        if not self.parity_physical:
            d["parity_physical"] = False
        return d


def residual_symmetry(h_pert, rep: SpinRep, tol: float = cmatrix.DEFAULT_TOL) -> ResidualSymmetryReport:
    """Which of L_x, L_y, L_z and inversion still commute with ``h_pert``."""
    h = cmatrix.as_matrix(h_pert)
    if h.shape[0] != rep.dim:
        raise RejectedInputError(f"dimension mismatch: hamiltonian {h.shape[0]} vs rep {rep.dim}")
    ops = dict(zip(_GENERATOR_NAMES, (rep.lx, rep.ly, rep.lz, parity_operator(rep))))
    residuals = {name: cmatrix.max_abs(cmatrix.commutator(h, x)) for name, x in ops.items()}
    surviving = tuple(name for name in _GENERATOR_NAMES if residuals[name] <= tol)
    axis = None
    rotations = [s for s in surviving if s != "I"]
    if len(surviving) == 4:
        group = ResidualGroup.FULL
    elif len(rotations) == 3:
        group = ResidualGroup.FULL_NO_INVERSION
    elif len(rotations) == 1 and "I" in surviving:
        group = ResidualGroup.ROTATION_AND_INVERSION
        axis = rotations[0][1]
    else:
        group = ResidualGroup.NONSTANDARD
    return ResidualSymmetryReport(surviving, residuals, group, axis, parity_is_physical(rep))


def splitting_multiplicities(decomp: RepDecomposition) -> list[tuple[SpinLabel, int]]:
    """Number of levels each block splits into once only U(1) x {E, I} survives.

    Every irreducible of the abelian residual group is one-dimensional, so a
    block of angular momentum l yields one level per m value: 2l + 1.
    Blocks with multiplicity above one are listed once per copy.
    """
    return [(label, label.dim) for label, mult in decomp.blocks for _ in range(mult)]
