from decimal import Decimal, getcontext
from fractions import Fraction

import numpy as np
import pytest

from zeemansym import cmatrix
from zeemansym.errors import RejectedInputError
from zeemansym.repanalysis import ResidualGroup, character, residual_symmetry
from zeemansym.so3rep import SpinLabel, defining_rep, spherical_rep
from zeemansym.zeeman import (
    CONSTANTS,
    AtomicLevel,
    PhysicalConstants,
    hydrogen_level,
    perturbed_hamiltonian,
    spectrum_rows,
    splitting_report,
    sublevel_energies_from_matrix,
    zeeman_split,
)


def hand_spacing_ev(field_gauss):
    # |mu0| [erg/G] * B [G] / (erg per eV), worked in decimal at 30 digits
    getcontext().prec = 30
    return Decimal("0.9273e-20") * Decimal(str(field_gauss)) / Decimal("1.602176634e-12")


def test_hand_conversion_figure():
    assert float(hand_spacing_ev(1e4)) == pytest.approx(5.79e-5, abs=5e-8)


def test_constants():
    assert CONSTANTS.mu0 == -0.9273e-20
    assert CONSTANTS.rydberg_ev == 13.6
    with pytest.raises(RejectedInputError):
        PhysicalConstants(mu0=1.0)


def test_hydrogen_levels_as_printed():
    assert hydrogen_level(1) == -13.6
    assert hydrogen_level(2) == -3.4


def test_hydrogen_levels_monotone_to_zero():
    levels = [hydrogen_level(n) for n in range(1, 200)]
    assert all(a < b < 0 for a, b in zip(levels, levels[1:]))
    assert levels[-1] > -1e-3


def test_hydrogen_rejects_n0():
    with pytest.raises(RejectedInputError):
        hydrogen_level(0)


def test_atomic_level_range():
    AtomicLevel.hydrogen(3, 0)
    AtomicLevel.hydrogen(3, 2)
    with pytest.raises(RejectedInputError):
        AtomicLevel.hydrogen(3, 3)


def test_perturbed_zero_field():
    np.testing.assert_array_equal(perturbed_hamiltonian(spherical_rep(SpinLabel(2)), 0.0), np.zeros((3, 3)))


def test_perturbed_spin1():
    b = 2500.0
    h = perturbed_hamiltonian(spherical_rep(SpinLabel(2)), b)
    unit = 0.9273e-20 * b / 1.602176634e-12
    np.testing.assert_allclose(np.diag(h).real, [unit, 0.0, -unit], rtol=1e-15)
    assert cmatrix.max_abs(h - np.diag(np.diag(h))) == 0.0


def test_perturbed_symmetry():
    r = spherical_rep(SpinLabel(4))
    report = residual_symmetry(perturbed_hamiltonian(r, 1e4), r, tol=1e-15)
    assert report.surviving == ("Lz", "I")
    assert report.group is ResidualGroup.ROTATION_AND_INVERSION


def test_perturbed_rejects_half_integer_and_cartesian():
    with pytest.raises(RejectedInputError):
        perturbed_hamiltonian(spherical_rep(SpinLabel(1)), 1.0)
    with pytest.raises(RejectedInputError):
        perturbed_hamiltonian(defining_rep(), 1.0)


def test_split_s_state():
    sp = zeeman_split(AtomicLevel.hydrogen(3, 0), 1e5)
    assert sp.sublevels == ((0, hydrogen_level(3)),)


def test_split_p_state_centered():
    sp = zeeman_split(AtomicLevel.hydrogen(2, 1), 1e4)
    assert [m for m, _ in sp.sublevels] == [-1, 0, 1]
    e = [x for _, x in sp.sublevels]
    assert e[1] == -3.4
    assert e[0] < e[1] < e[2]  # m = +l highest for B > 0
    assert sp.exact_energies[2] - sp.exact_energies[1] == sp.exact_energies[1] - sp.exact_energies[0]
    assert (e[0] + e[2]) / 2 == pytest.approx(-3.4, abs=1e-15)


def test_split_spacing_matches_hand_conversion():
    sp = zeeman_split(AtomicLevel.hydrogen(2, 1), 1e4)
    assert sp.spacing_ev == pytest.approx(float(hand_spacing_ev(1e4)), rel=1e-15)
    assert sp.spacing_ev == pytest.approx(5.79e-5, abs=5e-8)


def test_split_field_off_is_unperturbed():
    for l in range(4):
        sp = zeeman_split(AtomicLevel.hydrogen(4, l), 0.0)
        assert all(e == hydrogen_level(4) for _, e in sp.sublevels)
        assert sp.spacing_ev == 0.0


def test_split_rejects_negative_field():
    with pytest.raises(RejectedInputError):
        zeeman_split(AtomicLevel.hydrogen(2, 1), -1.0)


@pytest.mark.parametrize("n,field", [(2, 1e4), (4, 3.3e3), (5, 12345.678)])
def test_split_equidistant_exact(n, field):
    for sp in splitting_report(n, field):
        ex = sp.exact_energies
        diffs = {b - a for a, b in zip(ex, ex[1:])}
        assert len(diffs) <= 1
        if diffs:
            assert diffs.pop() == sp.exact_spacing
        assert len(sp.sublevels) == 2 * sp.base.l + 1


@pytest.mark.parametrize("n,l", [(2, 1), (3, 2), (5, 4)])
def test_matrix_and_formula_agree(n, l):
    level = AtomicLevel.hydrogen(n, l)
    sp = zeeman_split(level, 1e4)
    formula = np.array([e for _, e in sp.sublevels])
    matrix = sublevel_energies_from_matrix(level, 1e4)
    np.testing.assert_allclose(matrix, formula, rtol=1e-12, atol=0)


def test_sublevel_count_matches_character_terms():
    for l in range(6):
        sp = zeeman_split(AtomicLevel.hydrogen(6, l), 1e3)
        assert len(sp.sublevels) == round(character(SpinLabel(2 * l), 0.0).real)


def test_splitting_report_counts():
    assert len(splitting_report(1, 1e4)) == 1
    assert [len(s.sublevels) for s in splitting_report(2, 1e4)] == [1, 3]
    assert sum(len(s.sublevels) for s in splitting_report(3, 1e4)) == 9


def test_splitting_report_groups():
    report = splitting_report(3, 1e4)
    assert report[0].residual_group is ResidualGroup.FULL  # l = 0 is untouched
    assert all(s.residual_group is ResidualGroup.ROTATION_AND_INVERSION for s in report[1:])
    assert [s.decomposition.as_multiset() for s in report] == [{0: 1}, {2: 1}, {4: 1}]


def test_spectrum_rows_and_json():
    rows = spectrum_rows(splitting_report(2, 1e4))
    assert len(rows) == 4
    assert rows[1][:3] == [2, 1, -1]
    d = splitting_report(2, 1e4)[1].to_dict()
    assert d["group"] == "U(1) x {E,I}"
    assert [s["m"] for s in d["sublevels"]] == [-1, 0, 1]
