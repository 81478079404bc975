import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ptdiscord import qmat
from ptdiscord.errors import (DimensionMismatch, NonOrthonormalBasis, NotHermitian,
                              NotPositive, NotUnitTrace)
from ptdiscord.oracles import states

from conftest import bell_projector, pt_by_loops, random_hermitian, random_unitary


# -- validate_density --------------------------------------------------------

def test_maximally_mixed_is_valid():
    rho = qmat.validate_density(np.eye(4) / 4, (2, 2))
    assert rho.min_eigenvalue == pytest.approx(0.25)
    assert rho.trace_defect < 1e-15


def test_bell_projector_spectrum():
    rho = qmat.validate_density(bell_projector(), (2, 2))
    np.testing.assert_allclose(qmat.spectrum(rho).values, [1, 0, 0, 0], atol=1e-12)


def test_trace_defect_reported():
    with pytest.raises(NotUnitTrace) as info:
        qmat.validate_density(1.5 * np.eye(4) / 4, (2, 2))
    assert info.value.defect == pytest.approx(0.5)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        qmat.validate_density(np.eye(4) / 4, (2, 3))
    with pytest.raises(DimensionMismatch):
        qmat.validate_density(np.ones((2, 3)), (1, 2))


def test_not_hermitian():
    a = np.eye(4, dtype=complex) / 4
    a[0, 1] = 0.1
    with pytest.raises(NotHermitian) as info:
        qmat.validate_density(a, (2, 2))
    assert info.value.defect == pytest.approx(0.1)


def test_not_positive():
    with pytest.raises(NotPositive) as info:
        qmat.validate_density(np.diag([0.6, 0.5, 0.1, -0.2]), (2, 2))
    assert info.value.defect == pytest.approx(0.2)


def test_symmetrization_absorbs_rounding():
    a = np.eye(4, dtype=complex) / 4
    a[0, 1] = 1e-12
    rho = qmat.validate_density(a, (2, 2))
    assert rho.entries[0, 1] == pytest.approx(5e-13)
    assert rho.hermiticity_defect == pytest.approx(1e-12)


def test_entries_read_only():
    rho = states.werner(0.3)
    with pytest.raises(ValueError):
        rho.entries[0, 0] = 1


# -- partial_transpose ---------------------------------------------------------

def test_bell_partial_transpose_spectrum():
    pt = qmat.partial_transpose(qmat.validate_density(bell_projector(), (2, 2)), "A")
    np.testing.assert_allclose(qmat.spectrum(pt).values, [0.5, 0.5, 0.5, -0.5], atol=1e-12)


@pytest.mark.parametrize("dims", [(2, 2), (2, 3), (3, 2), (3, 4)])
def test_partial_transpose_matches_index_definition(dims, rng):
    rho = states.random_ginibre(dims, seed=int(rng.integers(1000)))
    m, n = dims
    np.testing.assert_array_equal(qmat.partial_transpose(rho, "A").entries,
                                  pt_by_loops(rho.entries, m, n))


def test_partial_transpose_b_is_full_transpose_of_a(rng):
    rho = states.random_ginibre((3, 2), seed=5)
    a = qmat.partial_transpose(rho, "A").entries
    b = qmat.partial_transpose(rho, "B").entries
    np.testing.assert_array_equal(b, a.T)


def test_product_state_transposes_factor(rng):
    ra = states.random_ginibre((1, 2), seed=1).entries
    rb = states.random_ginibre((1, 3), seed=2).entries
    rho = qmat.validate_density(np.kron(ra, rb), (2, 3))
    pt = qmat.partial_transpose(rho, "A")
    np.testing.assert_allclose(pt.entries, np.kron(ra.T, rb), atol=1e-15)
    np.testing.assert_allclose(qmat.spectrum(pt).values, qmat.spectrum(rho).values, atol=1e-12)


@pytest.mark.parametrize("side", ["A", "B"])
def test_involution_bit_exact(side):
    rho = states.random_ginibre((3, 2), seed=11)
    twice = qmat.partial_transpose(qmat.partial_transpose(rho, side), side)
    assert np.array_equal(twice.entries, rho.entries)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 2**31 - 1))
def test_involution_property(m, n, seed):
    rng = np.random.default_rng(seed)
    h = qmat.HermitianMatrix(random_hermitian(m * n, rng), (m, n))
    for side in "AB":
        assert np.array_equal(
            qmat.partial_transpose(qmat.partial_transpose(h, side), side).entries, h.entries)


def test_spectrum_side_independent():
    for seed in range(200):
        rho = states.random_ginibre((2, 3) if seed % 2 else (2, 2), seed=seed)
        a = qmat.spectrum(qmat.partial_transpose(rho, "A")).values
        b = qmat.spectrum(qmat.partial_transpose(rho, "B")).values
        assert np.max(np.abs(a - b)) <= 1e-10


def test_spectrum_basis_independent(rng):
    for _ in range(100):
        rho = states.random_ginibre((3, 2), seed=int(rng.integers(2**31)))
        u = np.kron(random_unitary(3, rng), np.eye(2))
        rotated = qmat.validate_density(u @ rho.entries @ u.conj().T, (3, 2))
        a = qmat.spectrum(qmat.partial_transpose(rho)).values
        b = qmat.spectrum(qmat.partial_transpose(rotated)).values
        assert np.max(np.abs(a - b)) <= 1e-9


# -- spectrum / moments / norms --------------------------------------------------

def test_spectrum_of_maximally_mixed():
    np.testing.assert_allclose(qmat.spectrum(np.eye(9) / 9).values, np.full(9, 1 / 9))


def test_spectrum_sorted_and_sums_to_trace(rng):
    h = random_hermitian(6, rng)
    s = qmat.spectrum(h).values
    assert np.all(np.diff(s) <= 0)
    assert s.sum() == pytest.approx(np.trace(h).real, abs=1e-10)


def test_moments_maximally_mixed():
    np.testing.assert_allclose(qmat.moments(np.eye(4) / 4, 3), [1, 0.25, 0.0625])


def test_moments_bell_partial_transpose():
    # spectrum (1/2, 1/2, 1/2, -1/2): Pi_3 = 3/8 - 1/8
    pt = qmat.partial_transpose(qmat.validate_density(bell_projector(), (2, 2)))
    np.testing.assert_allclose(qmat.moments(pt, 3), [1, 1, 0.25], atol=1e-14)


def test_low_moments_preserved(rng):
    for _ in range(50):
        rho = states.random_ginibre((2, 3), seed=int(rng.integers(2**31)))
        a = qmat.moments(rho, 2)
        b = qmat.moments(qmat.partial_transpose(rho), 2)
        assert np.max(np.abs(a - b)) < 1e-12
        assert a[1] == pytest.approx(qmat.hs_distance_sq(rho.entries, 0 * rho.entries))


def test_moments_match_spectrum(rng):
    for _ in range(50):
        h = random_hermitian(6, rng) / 3
        lam = qmat.spectrum(h).values
        mom = qmat.moments(h, 8)
        for n in range(1, 9):
            assert abs(mom[n - 1] - np.sum(lam ** n)) <= 1e-9 * n


def test_moments_rejects_zero_order():
    with pytest.raises(ValueError):
        qmat.moments(np.eye(2), 0)


def test_trace_norm_and_negativity_of_bell():
    pt = qmat.partial_transpose(qmat.validate_density(bell_projector(), (2, 2)))
    tn = qmat.trace_norm(pt)
    assert tn == pytest.approx(2.0)
    assert (tn - 1) / 2 == pytest.approx(0.5)


def test_hs_distance_basics(rng):
    x = random_hermitian(4, rng)
    assert qmat.hs_distance_sq(x, x) == 0.0
    with pytest.raises(DimensionMismatch):
        qmat.hs_distance_sq(x, np.eye(3))


def test_hs_distance_unitarily_invariant(rng):
    rho = states.random_ginibre((2, 2), seed=3)
    pt = qmat.partial_transpose(rho).entries
    base = qmat.hs_distance_sq(rho, pt)
    for _ in range(20):
        u = random_unitary(4, rng)
        assert qmat.hs_distance_sq(u @ rho.entries @ u.conj().T,
                                   u @ pt @ u.conj().T) == pytest.approx(base, abs=1e-12)


def test_eigenvalue_distance_inequality(rng):
    for _ in range(1000):
        dim = int(rng.integers(2, 7))
        x, y = random_hermitian(dim, rng), random_hermitian(dim, rng)
        d = qmat.spectrum(x).values - qmat.spectrum(y).values
        assert qmat.hs_distance_sq(x, y) >= d @ d - 1e-10


# -- entropies ---------------------------------------------------------------------

def test_entropy_maximally_mixed():
    assert qmat.entropy(np.eye(4) / 4) == pytest.approx(2.0)


def test_entropy_pure_is_zero():
    assert qmat.entropy(bell_projector()) == pytest.approx(0.0, abs=1e-12)


def test_relative_entropy_self_zero():
    rho = states.random_ginibre((2, 2), seed=4)
    assert qmat.relative_entropy(rho, rho) == pytest.approx(0.0, abs=1e-10)


def test_relative_entropy_support_violation_is_inf():
    assert qmat.relative_entropy(np.diag([0.5, 0.5]), np.diag([1.0, 0.0])) == float("inf")


def test_relative_entropy_classical_case():
    p, q = np.array([0.7, 0.3]), np.array([0.4, 0.6])
    expected = np.sum(p * np.log2(p / q))
    assert qmat.relative_entropy(np.diag(p), np.diag(q)) == pytest.approx(expected)


def test_pinching_identity_werner():
    rho = states.werner(0.5)
    pinched = qmat.pinch(rho, qmat.Measurement.computational(2, "B"))
    assert qmat.relative_entropy(rho, pinched) == pytest.approx(
        qmat.entropy(pinched) - qmat.entropy(rho), abs=1e-10)


def test_pinching_identity_random(rng):
    for _ in range(20):
        rho = states.random_ginibre((2, 3), seed=int(rng.integers(2**31)))
        basis = qmat.Measurement.from_unitary(random_unitary(3, rng), "B")
        pinched = qmat.pinch(rho, basis)
        assert qmat.relative_entropy(rho, pinched) == pytest.approx(
            qmat.entropy(pinched) - qmat.entropy(rho), abs=1e-9)


# -- pinch -----------------------------------------------------------------------------

def test_pinch_fixes_cq_state_in_defining_basis():
    # rebuild the factory's basis from the same seed
    m, n = 3, 2
    rho = states.random_cq((m, n), seed=9)
    rng = np.random.default_rng(9)
    u = states._haar(m, rng)
    out = qmat.pinch(rho, qmat.Measurement.from_unitary(u, "A"))
    np.testing.assert_allclose(out.entries, rho.entries, atol=1e-14)


def test_pinch_bell_in_computational_basis():
    rho = qmat.validate_density(bell_projector(), (2, 2))
    out = qmat.pinch(rho, qmat.Measurement.computational(2, "B"))
    np.testing.assert_allclose(out.entries, np.diag([0.5, 0, 0, 0.5]), atol=1e-15)


def test_pinch_idempotent(rng):
    rho = states.random_ginibre((2, 3), seed=21)
    basis = qmat.Measurement.from_unitary(random_unitary(2, rng), "A")
    once = qmat.pinch(rho, basis)
    np.testing.assert_allclose(qmat.pinch(once, basis).entries, once.entries, atol=1e-14)


def test_pinch_is_closest_block_diagonal(rng):
    m, n = 2, 3
    rho = states.random_ginibre((m, n), seed=33)
    u = random_unitary(m, rng)
    basis = qmat.Measurement.from_unitary(u, "A")
    d0 = qmat.hs_distance_sq(rho, qmat.pinch(rho, basis))
    for _ in range(100):
        sigma = sum(np.kron(qmat.projector(u[:, i]), random_hermitian(n, rng))
                    for i in range(m))
        assert d0 <= qmat.hs_distance_sq(rho, sigma) + 1e-12


def test_pinch_rejects_bad_basis():
    bad = qmat.Measurement(np.array([[1, 0], [1, 1]]) / np.sqrt(2), "A")
    with pytest.raises(NonOrthonormalBasis):
        qmat.pinch(states.werner(0.3), bad)


def test_pinch_rejects_wrong_dimension():
    with pytest.raises(DimensionMismatch):
        qmat.pinch(states.werner(0.3), qmat.Measurement.computational(3, "A"))


# -- tensor -----------------------------------------------------------------------------

def test_tensor_identities():
    np.testing.assert_allclose(qmat.tensor(np.eye(2) / 2, np.eye(2) / 2), np.eye(4) / 4)
    out = qmat.tensor(np.diag([1, 0]), np.diag([0, 1]))
    expected = np.zeros((4, 4))
    expected[1, 1] = 1
    np.testing.assert_array_equal(out, expected)


def test_tensor_spectrum_is_product_of_spectra(rng):
    for _ in range(20):
        x, y = random_hermitian(2, rng), random_hermitian(3, rng)
        expected = np.sort(np.outer(qmat.spectrum(x).values, qmat.spectrum(y).values).ravel())[::-1]
        np.testing.assert_allclose(qmat.spectrum(qmat.tensor(x, y)).values, expected, atol=1e-10)
