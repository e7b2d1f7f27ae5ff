import math

import numpy as np
import pytest

from spinchain import (
    FieldProfile,
    HeisenbergModel,
    field_at,
    hamiltonian_matrix,
)
from spinchain.hamiltonian import validate

X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
I2 = np.eye(2, dtype=complex)


def test_two_site_tfim_matrix():
    model = HeisenbergModel(
        jx=0.0, jy=0.0, jz=1.5, field=FieldProfile(amplitude=0.7), field_axis="x"
    )
    got = hamiltonian_matrix(model, 0.0, 2)
    expected = -1.5 * np.kron(Z, Z) - 0.7 * (np.kron(X, I2) + np.kron(I2, X))
    assert np.allclose(got, expected, atol=1e-14)


def test_three_site_heisenberg_matrix():
    model = HeisenbergModel(
        jx=0.3, jy=-0.4, jz=0.9, field=FieldProfile(amplitude=1.1), field_axis="z"
    )
    got = hamiltonian_matrix(model, 0.0, 3)
    expected = np.zeros((8, 8), dtype=complex)
    paulis = {"x": X, "y": Y, "z": Z}
    for (j, p) in ((0.3, X), (-0.4, Y), (0.9, Z)):
        expected -= j * (np.kron(np.kron(p, p), I2) + np.kron(I2, np.kron(p, p)))
    drive = paulis["z"]
    for site in range(3):
        ops = [I2, I2, I2]
        ops[site] = drive
        expected -= 1.1 * np.kron(np.kron(ops[0], ops[1]), ops[2])
    assert np.allclose(got, expected, atol=1e-14)
    assert np.allclose(got, got.conj().T)


def test_xx_chain_has_no_diagonal_part():
    model = HeisenbergModel(jx=1.0, jy=1.0, jz=0.0)
    h = hamiltonian_matrix(model, 0.0, 3)
    assert np.allclose(np.diag(h), 0.0)


def test_field_time_dependence_enters_matrix():
    field = FieldProfile(mode="sinusoid", amplitude=2.0, frequency=0.25)
    model = HeisenbergModel(jx=0, jy=0, jz=1.0, field=field, field_axis="x")
    h0 = hamiltonian_matrix(model, 0.0, 2)
    h1 = hamiltonian_matrix(model, 1.0, 2)  # cos(pi/2) = 0 -> no field term
    assert not np.allclose(h0, h1)
    assert np.allclose(h1, -1.0 * np.kron(Z, Z), atol=1e-12)


def test_field_at_constant_and_sinusoid():
    assert field_at(FieldProfile(amplitude=0.5), 12.3) == 0.5
    sin = FieldProfile(mode="sinusoid", amplitude=2.0, frequency=0.5, phase=0.1)
    for t in (0.0, 0.3, 1.7):
        assert math.isclose(
            field_at(sin, t), 2.0 * math.cos(2 * math.pi * 0.5 * t + 0.1), abs_tol=1e-12
        )


def test_field_at_tabulated_interpolates_and_clamps():
    tab = FieldProfile(mode="tabulated", samples=((0.0, 1.0), (1.0, 3.0), (2.0, -1.0)))
    assert field_at(tab, 0.5) == pytest.approx(2.0)
    assert field_at(tab, 1.5) == pytest.approx(1.0)
    assert field_at(tab, -5.0) == pytest.approx(1.0)  # clamped left
    assert field_at(tab, 99.0) == pytest.approx(-1.0)  # clamped right


@pytest.mark.parametrize(
    "model",
    [
        HeisenbergModel(jx=float("nan"), jy=0, jz=0),
        HeisenbergModel(jx=0, jy=0, jz=0, field_axis="q"),
        HeisenbergModel(jx=0, jy=0, jz=0, hbar=0.0),
        HeisenbergModel(jx=0, jy=0, jz=0, field=FieldProfile(mode="nope")),
        HeisenbergModel(jx=0, jy=0, jz=0, field=FieldProfile(mode="tabulated", samples=())),
        HeisenbergModel(
            jx=0, jy=0, jz=0,
            field=FieldProfile(mode="tabulated", samples=((0.0, 1.0), (0.0, 2.0))),
        ),
    ],
)
def test_validate_flags_bad_models(model):
    assert validate(model)
    with pytest.raises(ValueError):
        hamiltonian_matrix(model, 0.0, 2)


def test_validate_ok_model():
    assert validate(HeisenbergModel(jx=1, jy=2, jz=3)) == []
