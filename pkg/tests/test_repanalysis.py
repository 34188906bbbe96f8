import cmath
import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zeemansym import cmatrix
from zeemansym.errors import (
    InconsistentCharacterError,
    MalformedRepresentationError,
    RejectedInputError,
)
from zeemansym.repanalysis import (
    RepDecomposition,
    ResidualGroup,
    character,
    decompose_by_character,
    decompose_by_weights,
    group_element,
    homomorphism_check,
    residual_symmetry,
    splitting_multiplicities,
)
from zeemansym.so3rep import Generators, SpinLabel, defining_rep, direct_sum, spherical_rep, tensor_product

from conftest import rep


def L(x):
    return SpinLabel.from_l(x)


def trace_character(gens, theta):
    return complex(np.trace(group_element(gens, (0.0, 0.0, theta))))


def test_group_element_identity():
    for two_l in (0, 1, 4, 7):
        r = spherical_rep(SpinLabel(two_l))
        np.testing.assert_array_equal(group_element(r, (0, 0, 0)), np.eye(r.dim))


def test_group_element_spherical_z():
    label = SpinLabel(6)
    theta = 1.234
    d = group_element(spherical_rep(label), (0, 0, theta))
    expected = np.diag([cmath.exp(1j * float(m) * theta) for m in label.weights()])
    assert cmatrix.max_abs(d - expected) < 1e-14


def test_group_element_defining_rotates_vectors():
    theta = 0.6
    d = group_element(defining_rep(), (0, 0, theta))
    v = np.array([0.3, -1.2, 0.5])
    c, s = math.cos(theta), math.sin(theta)
    # active rotation by -theta about z
    expected = np.array([c * v[0] + s * v[1], -s * v[0] + c * v[1], v[2]])
    assert cmatrix.max_abs(d @ v - expected) < 1e-15
    assert cmatrix.max_abs(d @ d.conj().T - np.eye(3)) < 1e-15


def test_group_element_general_axis_unitary():
    d = group_element(rep(5), (0.4, -1.1, 0.9))
    assert cmatrix.max_abs(d @ d.conj().T - np.eye(11)) < 1e-12


def test_homomorphism_zero():
    assert homomorphism_check(rep(1), (0, 0, 0), (0, 0, 0)) == 0.0


def test_homomorphism_z_spin2():
    assert homomorphism_check(rep(2), (0, 0, 0.3), (0, 0, 0.4)) <= 1e-10


def test_homomorphism_x_spin1():
    assert homomorphism_check(rep(1), (0.1, 0, 0), (0.2, 0, 0)) <= 1e-10


def test_homomorphism_tilted_axis():
    axis = np.array([1.0, 2.0, -0.5])
    assert homomorphism_check(rep("3/2"), 0.7 * axis, -1.3 * axis) <= 1e-10


def test_homomorphism_rejects_non_parallel():
    with pytest.raises(RejectedInputError):
        homomorphism_check(rep(1), (0.1, 0, 0), (0, 0.2, 0))


def test_homomorphism_diagnostic_reports_bch_residual():
    r = homomorphism_check(rep(1), (0.1, 0, 0), (0, 0.2, 0), diagnostic=True)
    # leading BCH term is |alpha x beta|/2 in size; clearly non-zero
    assert 1e-3 < r < 0.1


def test_character_at_zero_is_dimension():
    for two_l in range(12):
        assert character(SpinLabel(two_l), 0.0) == pytest.approx(two_l + 1, abs=1e-12)


def test_character_spin1_pi():
    assert character(L(1), math.pi) == pytest.approx(-1.0, abs=1e-12)


@pytest.mark.parametrize("theta", np.linspace(-3, 7, 9))
def test_character_spin1_real(theta):
    chi = character(L(1), theta)
    oracle = cmath.exp(-1j * theta) + 1 + cmath.exp(1j * theta)
    assert abs(chi - oracle) < 1e-14
    assert abs(chi.imag) <= 1e-12


def test_character_of_decomposition():
    dec = RepDecomposition(((L(2), 1), (L(0), 3)))
    assert character(dec, 0.0) == pytest.approx(8)
    theta = 0.9
    assert character(dec, theta) == pytest.approx(character(L(2), theta) + 3)


def test_decompose_irreducible():
    assert decompose_by_weights(rep(3).generators).as_multiset() == {6: 1}


def test_decompose_direct_sum():
    gens, _ = direct_sum([rep(1), rep(1), rep(0)])
    assert decompose_by_weights(gens).as_multiset() == {2: 2, 0: 1}


def brute_force_weights(la, lb):
    wa, wb = la.weights(), lb.weights()
    return Counter(a + b for a in wa for b in wb)


def test_decompose_tensor_one_one():
    assert sorted(brute_force_weights(L(1), L(1)).elements()) == [-2, -1, -1, 0, 0, 0, 1, 1, 2]
    dec = decompose_by_weights(tensor_product(rep(1), rep(1)))
    assert dec.as_multiset() == {4: 1, 2: 1, 0: 1}
    assert dec.total_dim == 9


def test_decompose_rejects_broken_algebra():
    r = rep(1)
    with pytest.raises(MalformedRepresentationError):
        decompose_by_weights(Generators(r.lx, 2 * r.ly, r.lz))


def test_decompose_rejects_non_half_integer_weights():
    # scaled generators still Hermitian but the algebra check catches the scale
    r = rep(1)
    with pytest.raises(MalformedRepresentationError):
        decompose_by_weights(Generators(1.1 * r.lx, 1.1 * r.ly, 1.1 * r.lz))


def test_character_decompose_constant():
    assert decompose_by_character(lambda t: 1.0, SpinLabel(4)).as_multiset() == {0: 1}


def test_character_decompose_two_halves():
    gens = tensor_product(rep("1/2"), rep("1/2"))
    dec = decompose_by_character(lambda t: trace_character(gens, t), SpinLabel(2))
    assert dec.as_multiset() == {2: 1, 0: 1}
    assert dec == decompose_by_weights(gens)


def test_character_decompose_two_plus_zero():
    gens, built = direct_sum([rep(2), rep(0)])
    dec = decompose_by_character(lambda t: trace_character(gens, t), SpinLabel(4))
    assert dec.as_multiset() == {4: 1, 0: 1} == built.as_multiset()


def test_character_decompose_half_integer_content():
    gens, built = direct_sum([rep("3/2"), rep("1/2"), rep(1)])
    dec = decompose_by_character(lambda t: trace_character(gens, t), SpinLabel(3))
    assert dec == built


def test_character_decompose_inconsistent():
    with pytest.raises(InconsistentCharacterError):
        decompose_by_character(lambda t: 0.5, SpinLabel(2))
    # weights {0, 1} without -1 is not a rep
    with pytest.raises(InconsistentCharacterError):
        decompose_by_character(lambda t: 1 + cmath.exp(1j * t), SpinLabel(2))


def test_character_decompose_above_l_max():
    with pytest.raises(InconsistentCharacterError):
        decompose_by_character(lambda t: character(L(3), t), SpinLabel(2))


def test_residual_symmetry_zero_perturbation():
    r = defining_rep()
    report = residual_symmetry(np.zeros((3, 3)), r)
    assert report.surviving == ("Lx", "Ly", "Lz", "I")
    assert report.group is ResidualGroup.FULL


@pytest.mark.parametrize("c", [1e-6, 0.5, -2.0, 1e3])
def test_residual_symmetry_z_field(c):
    r = defining_rep()
    report = residual_symmetry(-c * r.lz, r, tol=1e-10)
    assert report.surviving == ("Lz", "I")
    assert report.group_name == "U(1) ⊗ {E, I}"
    assert report.axis == "z"


def test_residual_symmetry_x_field():
    r = defining_rep()
    report = residual_symmetry(0.7 * r.lx, r)
    assert report.surviving == ("Lx", "I")
    assert report.group is ResidualGroup.ROTATION_AND_INVERSION
    assert report.axis == "x"


def test_residual_symmetry_nonstandard():
    r = spherical_rep(SpinLabel(2))
    h = r.lz + 0.3 * r.lx
    report = residual_symmetry(h @ h, r)
    assert report.group is ResidualGroup.NONSTANDARD


def test_residual_symmetry_dimension_mismatch():
    with pytest.raises(RejectedInputError):
        residual_symmetry(np.zeros((2, 2)), defining_rep())


def test_residual_report_json():
    r = defining_rep()
    d = residual_symmetry(-r.lz, r).to_dict()
    assert d["surviving"] == ["Lz", "I"]
    assert d["group"] == "U(1) x {E,I}"
    assert set(d["residuals"]) == {"Lx", "Ly", "Lz", "I"}


def test_splitting_multiplicities():
    assert splitting_multiplicities(RepDecomposition(((L(0), 1),))) == [(L(0), 1)]
    assert splitting_multiplicities(RepDecomposition(((L(1), 1),))) == [(L(1), 3)]
    dec = RepDecomposition(((L(0), 1), (L(2), 1), (L(1), 1)))
    assert [(int(l.l), k) for l, k in splitting_multiplicities(dec)] == [(2, 5), (1, 3), (0, 1)]


def test_decomposition_json_roundtrip():
    dec = RepDecomposition(((L(1), 2), (L("1/2"), 1)))
    d = dec.to_dict()
    assert d == {"blocks": [{"two_l": 2, "mult": 2}, {"two_l": 1, "mult": 1}], "total_dim": 8}
    assert RepDecomposition.from_dict(d) == dec


def test_decomposition_rejects_wrong_total():
    with pytest.raises(RejectedInputError):
        RepDecomposition(((L(1), 1),), total_dim=4)


@pytest.mark.parametrize("two_l", range(0, 13))
def test_character_matches_trace(two_l):
    r = spherical_rep(SpinLabel(two_l))
    for j in range(32):
        theta = 2 * math.pi * j / 32 - 0.3
        assert abs(character(r, theta) - trace_character(r, theta)) <= 1e-10


_multisets = st.lists(st.integers(0, 9), min_size=1, max_size=8).filter(
    lambda xs: sum(x + 1 for x in xs) <= 40
)


@settings(max_examples=40, deadline=None)
@given(_multisets)
def test_decomposition_roundtrip_property(two_ls):
    gens, built = direct_sum([spherical_rep(SpinLabel(t)) for t in two_ls])
    assert decompose_by_weights(gens) == built
    top = SpinLabel(max(two_ls))
    assert decompose_by_character(lambda t: trace_character(gens, t), top) == built


@settings(max_examples=20, deadline=None)
@given(st.floats(1e-6, 1e6), st.sampled_from(["defining", 2, 4]))
def test_z_field_never_keeps_lx_ly(c, which):
    r = defining_rep() if which == "defining" else spherical_rep(SpinLabel(which))
    report = residual_symmetry(-c * r.lz, r, tol=1e-10)
    assert "Lx" not in report.surviving and "Ly" not in report.surviving
