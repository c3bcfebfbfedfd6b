import json
import math

import numpy as np
import pytest

from ulab import matcore, states
from ulab.errors import (
    BadDim,
    InvalidParams,
    NonHermitianInput,
    NotPSD,
    OutOfRange,
    RankTooHigh,
    Unphysical,
)

SQ2 = math.sqrt(2)


def test_validate_density_matrix_first_violation_wins():
    with pytest.raises(BadDim):
        states.validate_density_matrix(np.ones((2, 3)))
    with pytest.raises(NonHermitianInput):
        states.validate_density_matrix(np.array([[0.5, 0.5], [0.0, 0.5]]))
    with pytest.raises(Unphysical):
        states.validate_density_matrix(np.eye(4) / 2)
    M = np.diag([0.6, 0.6, -0.1, -0.1])
    with pytest.raises(NotPSD):
        states.validate_density_matrix(M)


def test_xparams_validation():
    states.XStateParams(0.25, 0.25, 0.25, 0.25, 0.0, 0.0).validate()
    with pytest.raises(InvalidParams):
        states.XStateParams(-0.1, 0.4, 0.4, 0.3, 0.0, 0.0).validate()
    with pytest.raises(InvalidParams):
        states.XStateParams(0.3, 0.3, 0.3, 0.3, 0.0, 0.0).validate()
    with pytest.raises(InvalidParams):
        states.XStateParams(0.25, 0.25, 0.25, 0.25, 0.3, 0.0).validate()
    with pytest.raises(InvalidParams):
        states.XStateParams(0.25, 0.25, 0.25, 0.25, 0.0, 0.3).validate()


def test_x_state_sparsity_and_roundtrip():
    p = states.XStateParams(0.4, 0.2, 0.25, 0.15, 0.1, 0.05)
    rho = states.x_state(p)
    zeros = [(0, 1), (0, 2), (1, 0), (1, 3), (2, 0), (2, 3), (3, 1), (3, 2)]
    for i, j in zeros:
        assert rho[i, j] == 0
    back = states.x_params_from_matrix(rho)
    assert max(abs(a - b) for a, b in zip(back.as_tuple(), p.as_tuple())) < 1e-15


def test_canonical_is_sigma_x_pair_swap():
    p = states.XStateParams(0.1, 0.2, 0.3, 0.4, 0.05, 0.1)
    q = p.canonical()
    assert q.a11 >= q.a44
    sx = matcore.pauli(1)
    U = matcore.kron(sx, sx)
    rotated = U @ states.x_state(p) @ U
    assert np.abs(states.x_state(q) - rotated).max() < 1e-15
    # already-canonical params come back unchanged
    assert p.canonical().canonical().as_tuple() == q.as_tuple()


def test_ppt_matches_numeric_separability():
    rng = np.random.default_rng(23)
    seen = {True: 0, False: 0}
    for _ in range(200):
        z = rng.dirichlet(np.ones(4))
        f1, f2 = rng.random(2)
        p = states.XStateParams(
            z[0], z[1], z[2], z[3],
            f1 * math.sqrt(z[0] * z[3]), f2 * math.sqrt(z[1] * z[2]),
        )
        flag = p.ppt()
        seen[flag] += 1
        assert flag == states.is_separable(states.x_state(p))
    assert seen[True] > 0 and seen[False] > 0


def test_rho_star_entries_and_spectrum():
    rho = states.rho_star()
    u = (SQ2 + 1) / (4 * SQ2)
    v = (SQ2 - 1) / (4 * SQ2)
    c = 1 / (4 * SQ2)
    assert abs(rho[0, 0].real - u) < 1e-16
    assert abs(rho[1, 1].real - u) < 1e-16
    assert abs(rho[2, 2].real - v) < 1e-16
    assert abs(rho[3, 3].real - v) < 1e-16
    assert abs(rho[0, 3].real - c) < 1e-16
    assert abs(rho[1, 2].real - c) < 1e-16
    assert abs(np.trace(rho).real - 1.0) < 1e-15
    w = np.sort(np.linalg.eigvalsh(rho))
    assert np.abs(w - np.array([0.0, 0.0, 0.5, 0.5])).max() < 1e-15
    assert states.is_separable(rho)


def test_bell_states():
    kinds = ("phi_plus", "phi_minus", "psi_plus", "psi_minus")
    mats = [states.bell_state(k) for k in kinds]
    for i, m in enumerate(mats):
        assert abs(np.trace(m @ m).real - 1.0) < 1e-14
        ra = matcore.partial_trace(m, keep="A")
        assert np.abs(ra - np.eye(2) / 2).max() < 1e-14
        for j in range(i + 1, len(mats)):
            assert abs(np.trace(m @ mats[j]).real) < 1e-14
    with pytest.raises(OutOfRange):
        states.bell_state("phi")


def test_parameterized_families_range_checks():
    for fn in (states.werner, states.chi_state, states.noisy_star):
        with pytest.raises(OutOfRange):
            fn(-0.1)
        with pytest.raises(OutOfRange):
            fn(1.1)


def test_chi_and_noisy_endpoints_and_affinity():
    assert np.abs(states.chi_state(0.0) - states.bell_state("phi_plus")).max() < 1e-15
    assert np.abs(states.chi_state(1.0) - states.rho_star()).max() < 1e-15
    assert np.abs(states.noisy_star(0.0) - states.maximally_mixed()).max() < 1e-15
    assert np.abs(states.noisy_star(1.0) - states.rho_star()).max() < 1e-15
    mix = 0.3 * states.rho_star() + 0.7 * states.bell_state("phi_plus")
    assert np.abs(states.chi_state(0.3) - mix).max() < 1e-15


def test_noisy_family_is_separable_everywhere():
    for p in np.linspace(0.0, 1.0, 21):
        assert states.is_separable(states.noisy_star(float(p)))


def test_werner_separability_boundary():
    assert not states.is_separable(states.werner(0.5))
    assert states.is_separable(states.werner(0.3))
    assert states.is_separable(states.werner(1 / 3))


def test_bell_diagonal():
    assert np.abs(
        states.bell_diagonal(states.BellDiagonalParams(0, 0, 0))
        - states.maximally_mixed()
    ).max() < 1e-15
    assert np.abs(
        states.bell_diagonal(states.BellDiagonalParams(1, -1, 1))
        - states.bell_state("phi_plus")
    ).max() < 1e-15
    with pytest.raises(Unphysical):
        states.bell_diagonal(states.BellDiagonalParams(1, 1, 1))


def test_to_bloch_values():
    bf = states.to_bloch(states.maximally_mixed())
    assert np.abs(bf.x).max() < 1e-15
    assert np.abs(bf.y).max() < 1e-15
    assert np.abs(bf.T).max() < 1e-15

    bf = states.to_bloch(states.rho_star())
    assert np.abs(bf.x - np.array([0, 0, 1 / SQ2])).max() < 1e-12
    assert np.abs(bf.y).max() < 1e-12
    assert np.abs(bf.T - np.diag([1 / SQ2, 0, 0])).max() < 1e-12

    bf = states.to_bloch(states.bell_state("phi_plus"))
    assert np.abs(bf.T - np.diag([1, -1, 1])).max() < 1e-12


def test_to_bloch_of_bell_diagonal_is_exact():
    rng = np.random.default_rng(29)
    for _ in range(20):
        t = rng.uniform(-1 / 3, 1 / 3, size=3)
        bf = states.to_bloch(states.bell_diagonal(states.BellDiagonalParams(*t)))
        assert np.abs(bf.x).max() < 1e-12
        assert np.abs(bf.y).max() < 1e-12
        assert np.abs(bf.T - np.diag(t)).max() < 1e-12


def test_purify_rank2_roundtrip():
    rho = states.rho_star()
    psi = states.purify_rank2(rho)
    assert abs(np.linalg.norm(psi) - 1.0) < 1e-12
    back = states.trace_out_ancilla(psi)
    assert np.abs(back - rho).max() < 1e-10
    rho_bc = states.ancilla_marginal(psi)
    states.validate_density_matrix(rho_bc)


def test_purify_pure_input():
    v = np.array([1, 0, 0, 1], dtype=complex) / SQ2
    psi = states.purify_rank2(np.outer(v, v))
    back = states.trace_out_ancilla(psi)
    assert np.abs(back - np.outer(v, v)).max() < 1e-12


def test_purify_rejects_high_rank():
    with pytest.raises(RankTooHigh):
        states.purify_rank2(states.werner(0.8))


def test_random_separable_deterministic_and_ppt():
    a = states.random_separable(42, k=3)
    b = states.random_separable(42, k=3)
    assert np.abs(a - b).max() == 0.0
    rng = np.random.default_rng(31)
    for _ in range(50):
        k = int(rng.integers(1, 5))
        rho = states.random_separable(rng, k)
        states.validate_density_matrix(rho)
        assert states.is_separable(rho)
    with pytest.raises(OutOfRange):
        states.random_separable(1, k=0)


def test_random_separable_k1_is_pure_product():
    rho = states.random_separable(7, k=1)
    assert abs(np.trace(rho @ rho).real - 1.0) < 1e-12
    ra = matcore.partial_trace(rho, keep="A")
    assert abs(np.trace(ra @ ra).real - 1.0) < 1e-12


def test_save_load_roundtrip(tmp_path):
    rho = states.chi_state(0.37)
    path = tmp_path / "state.json"
    states.save_state(rho, str(path))
    back = states.load_state(str(path))
    assert np.abs(back - rho).max() < 1e-12


def test_load_state_rejects_bad_files(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(InvalidParams):
        states.load_state(str(bad))
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"dim": 4, "re": [[1.0, 0.0], [0.0, 0.0]]}))
    with pytest.raises(BadDim):
        states.load_state(str(wrong))


def test_state_from_dict_x_params_shorthand():
    d = {"x_params": {"a11": 0.4, "a22": 0.2, "a33": 0.25, "a44": 0.15,
                      "a14": 0.1, "a23": 0.05}}
    rho = states.state_from_dict(d)
    assert abs(rho[0, 3].real - 0.1) < 1e-15


def test_x_params_from_dict_strips_phases():
    d = {"a11": 0.4, "a22": 0.2, "a33": 0.25, "a44": 0.15,
         "a14": [0.0, 0.1], "a23": 0.05}
    params, meta = states.x_params_from_dict(d)
    assert abs(params.a14 - 0.1) < 1e-15
    assert abs(meta["phase_a14"] - math.pi / 2) < 1e-12
    assert meta["phase_a23"] == 0.0
    with pytest.raises(InvalidParams):
        states.x_params_from_dict({"a11": 0.5})


def test_state_fingerprint_distinguishes_states():
    f1 = states.state_fingerprint(states.rho_star())
    f2 = states.state_fingerprint(states.maximally_mixed())
    assert len(f1) == 64
    assert f1 != f2
    assert f1 == states.state_fingerprint(states.rho_star())
