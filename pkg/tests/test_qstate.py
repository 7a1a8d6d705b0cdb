import math

import numpy as np
import pytest

from polspin.qstate import (ELECTRON, PHOTON, HilbertFactor, PURE,
                            QuantumChannel, QuantumState, apply_channel,
                            choi_matrix, choi_of_map, density_state,
                            entanglement_entropy, fidelity, is_cptp,
                            partial_trace, process_fidelity, pure_state,
                            purity, tensor_product)

HOLE2 = HilbertFactor("hole", 2)
HOLE4 = HilbertFactor("hole", 4)

SQ2 = 1.0 / math.sqrt(2.0)


def rand_qubit(rng):
    z = rng.standard_normal(4)
    v = np.array([z[0] + 1j * z[1], z[2] + 1j * z[3]])
    return v / np.linalg.norm(v)


def entangled_pair(alpha, beta):
    """alpha |h0 e0> + beta |h3 e1> on electron ⊗ hole(4), electron slow axis."""
    vec = np.zeros(8, dtype=complex)
    vec[0 * 4 + 0] = alpha
    vec[1 * 4 + 3] = beta
    return pure_state(vec, (ELECTRON, HOLE4))


# --- construction -----------------------------------------------------------

def test_factor_constraints():
    with pytest.raises(ValueError):
        HilbertFactor("photon", 3)
    with pytest.raises(ValueError):
        HilbertFactor("hole", 3)
    with pytest.raises(ValueError):
        HilbertFactor("spin", 2)


def test_pure_state_norm_enforced():
    with pytest.raises(ValueError):
        QuantumState((ELECTRON,), PURE, np.array([1.0, 1.0]))


def test_density_invariants():
    with pytest.raises(ValueError):
        density_state(np.array([[0.5, 0.5], [0.1, 0.5]]), (ELECTRON,))
    with pytest.raises(ValueError):
        density_state(np.array([[0.9, 0.0], [0.0, 0.5]]), (ELECTRON,))
    with pytest.raises(ValueError):
        density_state(np.array([[1.5, 0.0], [0.0, -0.5]]), (ELECTRON,))


# --- tensor product ---------------------------------------------------------

def test_tensor_basis_states():
    zero = pure_state([1, 0], (PHOTON,))
    one = pure_state([0, 1], (ELECTRON,))
    combined = tensor_product(zero, one)
    assert np.allclose(combined.amplitudes, [0, 1, 0, 0])


def test_tensor_superposition():
    plus = pure_state([SQ2, SQ2], (PHOTON,))
    zero = pure_state([1, 0], (ELECTRON,))
    combined = tensor_product(plus, zero)
    assert np.allclose(combined.amplitudes, [SQ2, 0, SQ2, 0])


def test_tensor_product_schmidt_rank_one():
    rng = np.random.default_rng(3)
    q = pure_state(rand_qubit(rng), (ELECTRON,))
    h = pure_state([1, 0], (HOLE2,))
    st = tensor_product(q, h)
    assert entanglement_entropy(st, ("electron_spin",)) == pytest.approx(0.0, abs=1e-12)


def test_tensor_duplicate_label_rejected():
    a = pure_state([1, 0], (ELECTRON,))
    with pytest.raises(ValueError):
        tensor_product(a, a)


# --- partial trace ----------------------------------------------------------

def test_partial_trace_product_state_pure():
    q = pure_state([0.6, 0.8], (ELECTRON,))
    h = pure_state([SQ2, SQ2], (HOLE2,))
    red = partial_trace(tensor_product(q, h), ("electron_spin",))
    assert purity(red) == pytest.approx(1.0, abs=1e-12)
    assert np.allclose(red.amplitudes, np.outer([0.6, 0.8], [0.6, 0.8]))


def test_partial_trace_bell_like_oracle():
    """Direct dense oracle: build the 8x8 density matrix by hand and trace
    the hole indices with explicit loops."""
    st = entangled_pair(SQ2, SQ2)
    rho = np.outer(st.amplitudes, st.amplitudes.conj())
    oracle = np.zeros((2, 2), dtype=complex)
    for e1 in range(2):
        for e2 in range(2):
            for h in range(4):
                oracle[e1, e2] += rho[e1 * 4 + h, e2 * 4 + h]
    red = partial_trace(st, ("electron_spin",))
    assert np.allclose(red.amplitudes, oracle, atol=1e-14)
    assert np.allclose(red.amplitudes, np.eye(2) / 2, atol=1e-12)


def test_partial_trace_keeps_trace_one():
    rng = np.random.default_rng(11)
    for _ in range(20):
        v = rng.standard_normal(8) + 1j * rng.standard_normal(8)
        st = pure_state(v, (ELECTRON, HOLE4))
        red = partial_trace(st, ("hole",))
        assert np.trace(red.amplitudes).real == pytest.approx(1.0, abs=1e-12)


def test_partial_trace_unknown_label():
    st = entangled_pair(1.0, 0.0)
    with pytest.raises(ValueError):
        partial_trace(st, ("photon",))


# --- entropy and purity -----------------------------------------------------

def test_entropy_product_state_zero():
    assert entanglement_entropy(entangled_pair(1.0, 0.0),
                                ("hole",)) == pytest.approx(0.0, abs=1e-12)


def test_entropy_symmetric_one_bit():
    assert entanglement_entropy(entangled_pair(SQ2, SQ2),
                                ("electron_spin",)) == pytest.approx(1.0, abs=1e-12)


def test_entropy_biased_oracle():
    # independent oracle: -sum p log2 p on the squared Schmidt coefficients
    p = 0.9
    want = -(p * math.log2(p) + (1 - p) * math.log2(1 - p))
    st = entangled_pair(math.sqrt(p), math.sqrt(1 - p))
    assert entanglement_entropy(st, ("electron_spin",)) == pytest.approx(want, abs=1e-12)
    assert want == pytest.approx(0.468996, abs=1e-6)


def test_entropy_requires_pure():
    mixed = density_state(np.eye(2) / 2, (ELECTRON,))
    with pytest.raises(ValueError):
        entanglement_entropy(mixed, ("electron_spin",))


def test_entropy_purity_equivalence():
    rng = np.random.default_rng(5)
    for _ in range(50):
        v = rng.standard_normal(8) + 1j * rng.standard_normal(8)
        st = pure_state(v, (ELECTRON, HOLE4))
        ent = entanglement_entropy(st, ("electron_spin",))
        pur = purity(partial_trace(st, ("electron_spin",)))
        if ent < 1e-12:
            assert pur == pytest.approx(1.0, abs=1e-10)
        if abs(pur - 1.0) < 1e-12:
            assert ent == pytest.approx(0.0, abs=1e-10)


def test_purity_extremes():
    assert purity(pure_state([0.6, 0.8], (ELECTRON,))) == pytest.approx(1.0, abs=1e-12)
    assert purity(density_state(np.eye(2) / 2, (ELECTRON,))) == pytest.approx(0.5, abs=1e-12)


# --- fidelity ----------------------------------------------------------------

def test_fidelity_identical_and_orthogonal():
    a = pure_state([1, 0], (ELECTRON,))
    b = pure_state([0, 1], (ELECTRON,))
    assert fidelity(a, a) == pytest.approx(1.0, abs=1e-12)
    assert fidelity(a, b) == pytest.approx(0.0, abs=1e-12)


def test_fidelity_plus_vs_maximally_mixed():
    plus = pure_state([SQ2, SQ2], (ELECTRON,))
    mixed = density_state(np.eye(2) / 2, (ELECTRON,))
    assert fidelity(plus, mixed) == pytest.approx(0.5, abs=1e-12)


def test_fidelity_symmetric_random():
    rng = np.random.default_rng(9)
    for _ in range(20):
        a = pure_state(rand_qubit(rng), (ELECTRON,))
        # random density matrix
        m = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        rho = m @ m.conj().T
        rho = rho / np.trace(rho).real
        b = density_state(rho, (ELECTRON,))
        assert fidelity(a, b) == pytest.approx(fidelity(b, a), abs=1e-12)
        assert fidelity(a, a) == pytest.approx(1.0, abs=1e-12)
        assert fidelity(b, b) == pytest.approx(1.0, abs=1e-10)


def test_fidelity_mixed_mixed_uhlmann_oracle():
    # closed form for commuting diagonal states: F = (sum sqrt(p q))²
    a = density_state(np.diag([0.7, 0.3]), (ELECTRON,))
    b = density_state(np.diag([0.2, 0.8]), (ELECTRON,))
    want = (math.sqrt(0.7 * 0.2) + math.sqrt(0.3 * 0.8)) ** 2
    assert fidelity(a, b) == pytest.approx(want, abs=1e-12)


def test_fidelity_dimension_mismatch():
    a = pure_state([1, 0], (ELECTRON,))
    b = pure_state([1, 0, 0, 0], (HOLE4,))
    with pytest.raises(ValueError):
        fidelity(a, b)


# --- channels ----------------------------------------------------------------

def dephasing_kraus(gamma):
    return (math.sqrt((1 + gamma) / 2) * np.eye(2),
            math.sqrt((1 - gamma) / 2) * np.diag([1.0, -1.0]))


def test_identity_channel():
    ch = QuantumChannel((np.eye(2),), (ELECTRON,))
    st = pure_state([0.6, 0.8], (ELECTRON,))
    out = apply_channel(st, ch)
    assert np.allclose(out.amplitudes, st.densitymatrix(), atol=1e-14)


def test_full_dephasing_on_plus():
    ch = QuantumChannel(dephasing_kraus(0.0), (ELECTRON,))
    plus = pure_state([SQ2, SQ2], (ELECTRON,))
    out = apply_channel(plus, ch)
    assert np.allclose(out.amplitudes, np.eye(2) / 2, atol=1e-12)


def test_conditional_channel_renormalizes():
    k = np.diag([math.sqrt(2 / 3), math.sqrt(1 / 3)]).astype(complex)
    ch = QuantumChannel((k,), (ELECTRON,), conditional=True)
    st = pure_state([SQ2, SQ2], (ELECTRON,))
    out, p = apply_channel(st, ch)
    # explicit Kraus-sum oracle
    rho = st.densitymatrix()
    raw = k @ rho @ k.conj().T
    assert p == pytest.approx(np.trace(raw).real, abs=1e-12)
    assert np.allclose(out.amplitudes, raw / np.trace(raw).real, atol=1e-12)
    assert 0 < p <= 1


def test_non_tp_without_flag_rejected():
    k = np.diag([0.5, 0.5]).astype(complex)
    with pytest.raises(ValueError):
        QuantumChannel((k,), (ELECTRON,))


def test_channel_on_subfactor():
    ch = QuantumChannel(dephasing_kraus(0.0), (ELECTRON,))
    st = tensor_product(pure_state([SQ2, SQ2], (ELECTRON,)),
                        pure_state([1, 0], (HOLE2,)))
    out = apply_channel(st, ch)
    red = partial_trace(out, ("electron_spin",))
    assert np.allclose(red.amplitudes, np.eye(2) / 2, atol=1e-12)


def test_channel_on_non_leading_factor():
    # dephase the hole factor of electron ⊗ hole: hole mixes, electron intact
    el = pure_state([0.6, 0.8], (ELECTRON,))
    hole = pure_state([SQ2, SQ2], (HOLE2,))
    st = tensor_product(el, hole)
    ch = QuantumChannel(dephasing_kraus(0.0), (HOLE2,))
    out = apply_channel(st, ch)
    red_h = partial_trace(out, ("hole",))
    red_e = partial_trace(out, ("electron_spin",))
    assert np.allclose(red_h.amplitudes, np.eye(2) / 2, atol=1e-12)
    assert np.allclose(red_e.amplitudes, el.densitymatrix(), atol=1e-12)


def test_uhlmann_matches_pure_overlap():
    # exercises the general eigendecomposition path with rank-1 inputs;
    # its precision floor is set by sqrt of the clipped eigenvalue dust
    rng = np.random.default_rng(13)
    for _ in range(20):
        a, b = rand_qubit(rng), rand_qubit(rng)
        fa = fidelity(density_state(np.outer(a, a.conj()), (ELECTRON,)),
                      density_state(np.outer(b, b.conj()), (ELECTRON,)))
        assert fa == pytest.approx(abs(np.vdot(a, b)) ** 2, abs=1e-7)


def test_trace_preserved_random_states():
    rng = np.random.default_rng(21)
    ch = QuantumChannel(dephasing_kraus(0.37), (ELECTRON,))
    for _ in range(1000):
        st = pure_state(rand_qubit(rng), (ELECTRON,))
        out = apply_channel(st, ch)
        assert np.trace(out.amplitudes).real == pytest.approx(1.0, abs=1e-12)


# --- choi / cptp -------------------------------------------------------------

def test_choi_identity():
    ch = QuantumChannel((np.eye(2),), (ELECTRON,))
    choi = choi_matrix(ch)
    omega = np.zeros(4, dtype=complex)
    omega[0] = omega[3] = SQ2
    assert np.allclose(choi, np.outer(omega, omega.conj()), atol=1e-14)
    evals = np.sort(np.linalg.eigvalsh(choi))
    assert evals[-1] == pytest.approx(1.0, abs=1e-12)
    assert np.all(np.abs(evals[:-1]) < 1e-12)
    assert is_cptp(choi, tol=1e-8)


def test_choi_dephasing_off_diagonal():
    gamma = math.exp(-1.0)
    ch = QuantumChannel(dephasing_kraus(gamma), (ELECTRON,))
    choi = choi_matrix(ch)
    # analytic form: off-diagonal |0><1| block scaled by gamma
    assert choi[0, 3] == pytest.approx(gamma / 2, abs=1e-12)
    assert choi[0, 0] == pytest.approx(0.5, abs=1e-12)
    assert is_cptp(choi, tol=1e-8)


def test_cptp_rejects_negative_eigenvalue():
    bad = np.diag([0.5, -0.01, 0.0, 0.51]).astype(complex)
    assert not is_cptp(bad, tol=1e-6)


def test_cptp_conditional_subnormalized():
    k = np.diag([0.5, 0.5]).astype(complex)
    ch = QuantumChannel((k,), (ELECTRON,), conditional=True)
    choi = choi_matrix(ch)
    assert is_cptp(choi, tol=1e-8, conditional=True)
    assert not is_cptp(choi, tol=1e-8, conditional=False)


def test_process_fidelity_identity_and_depolarizing():
    ch = QuantumChannel((np.eye(2),), (ELECTRON,))
    assert process_fidelity(choi_matrix(ch)) == pytest.approx(1.0, abs=1e-12)
    # fully depolarizing: rho -> I/2, entanglement fidelity 1/4
    choi = choi_of_map(lambda rho: np.trace(rho) * np.eye(2) / 2)
    assert process_fidelity(choi) == pytest.approx(0.25, abs=1e-12)
