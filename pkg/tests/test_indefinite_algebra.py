import numpy as np
import pytest

from src.algebra.indefinite_algebra import (
    SignatureForm,
    hermitian_form,
    j_apply,
    norm_squared,
    real_inner,
)
from src.errors import DimensionMismatchError
from tests.conftest import random_vector

B12 = SignatureForm.standard(2, 1)
B23 = SignatureForm.standard(3, 2)
DRAWS = 100


def test_hermitian_form_examples():
    assert hermitian_form(B12, [1, 0], [1, 0]) == -1
    assert hermitian_form(B12, [1, 1], [1, 1]) == 0
    assert hermitian_form(B12, [1, 0], [0, 1]) == 0


def test_real_inner_examples():
    assert real_inner(B12, [1, 1], [0.5, -0.5]) == -1
    assert real_inner(B12, [0.3 + 2j, -1j], [0, 0]) == 0
    assert real_inner(B12, [1j, 0], [1j, 0]) == -1


def test_j_apply():
    assert np.array_equal(j_apply([1, 0]), np.array([1j, 0]))
    z = np.array([2 - 1j, 0.5 + 3j])
    assert np.array_equal(j_apply(j_apply(z)), -z)


def test_signature_form():
    assert B23.negative_slots == (0, 1)
    assert B23.index == 2
    assert B23.real_signature == (4, 2)
    assert SignatureForm(3, (2,)).signs.tolist() == [1.0, 1.0, -1.0]
    with pytest.raises(ValueError):
        SignatureForm(2, (2,))
    with pytest.raises(ValueError):
        SignatureForm.standard(2, 3)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchError, match="dimension mismatch"):
        hermitian_form(B12, [1, 0, 0], [1, 0])


def test_sesquilinear_and_hermitian(rng):
    for _ in range(DRAWS):
        z, w, u = (random_vector(rng, 3) for _ in range(3))
        a = complex(*rng.uniform(-1, 1, 2))
        b = complex(*rng.uniform(-1, 1, 2))
        # linear in the second slot
        lhs = hermitian_form(B23, z, a * w + b * u)
        rhs = a * hermitian_form(B23, z, w) + b * hermitian_form(B23, z, u)
        assert abs(lhs - rhs) < 1e-12
        # conjugate-linear in the first slot
        lhs = hermitian_form(B23, a * w + b * u, z)
        rhs = np.conj(a) * hermitian_form(B23, w, z) + np.conj(b) * hermitian_form(B23, u, z)
        assert abs(lhs - rhs) < 1e-12
        assert abs(hermitian_form(B23, z, w) - np.conj(hermitian_form(B23, w, z))) < 1e-12


def test_metric_is_j_invariant(rng):
    for _ in range(DRAWS):
        z, w = random_vector(rng, 3), random_vector(rng, 3)
        assert abs(real_inner(B23, j_apply(z), j_apply(w)) - real_inner(B23, z, w)) < 1e-12
        assert abs(real_inner(B23, j_apply(z), z)) < 1e-12
        assert abs(real_inner(B23, z, w) - real_inner(B23, w, z)) < 1e-12


def test_norm_squared_is_real():
    assert norm_squared(B12, [1j, 1]) == 0.0
    assert norm_squared(SignatureForm(3, (2,)), [1, 0, 1]) == 0.0
