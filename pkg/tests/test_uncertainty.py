import json
import math

import numpy as np
import pytest

from ulab import matcore, measures, states, uncertainty
from ulab.errors import DegenerateObservable, DimMismatch, NonHermitianInput

GOLD_S_A = 0.6008760366928562


def test_complementarity_values():
    sx = matcore.pauli(1)
    sz = matcore.pauli(3)
    assert abs(uncertainty.complementarity(sx, sz) - 1 / math.sqrt(2)) < 1e-12
    assert abs(uncertainty.complementarity(sz, sz) - 1.0) < 1e-12
    tilted = (sx + sz) / math.sqrt(2)
    assert abs(uncertainty.complementarity(sz, tilted) - math.cos(math.pi / 8)) < 1e-10


def test_observable_validation():
    with pytest.raises(DegenerateObservable):
        uncertainty.complementarity(np.eye(2), matcore.pauli(3))
    with pytest.raises(NonHermitianInput):
        uncertainty.complementarity(np.array([[0.0, 1.0], [0.0, 0.0]]), matcore.pauli(3))
    with pytest.raises(DimMismatch):
        uncertainty.complementarity(np.eye(4), matcore.pauli(3))
    with pytest.raises(DimMismatch):
        uncertainty.measured_conditional_entropy(np.eye(2) / 2, matcore.pauli(3))


def test_measured_conditional_entropy_reference_points():
    bell = states.bell_state("phi_plus")
    assert abs(uncertainty.measured_conditional_entropy(bell, matcore.pauli(3))) < 1e-10
    assert abs(uncertainty.measured_conditional_entropy(bell, matcore.pauli(1))) < 1e-10
    mm = states.maximally_mixed()
    assert abs(uncertainty.measured_conditional_entropy(mm, matcore.pauli(3)) - 1.0) < 1e-12


def test_berta_bound_reference_points():
    sx = matcore.pauli(1)
    sz = matcore.pauli(3)
    assert abs(uncertainty.berta_bound(states.bell_state("phi_plus"), sx, sz)) < 1e-10
    assert abs(uncertainty.berta_bound(states.maximally_mixed(), sx, sz) - 2.0) < 1e-12
    assert abs(uncertainty.berta_bound(states.rho_star(), sx, sz) - 1.0) < 1e-10


def test_pati_bound_tightens_berta():
    sx = matcore.pauli(1)
    sz = matcore.pauli(3)
    # discord below classical correlation: correction inactive
    r = states.rho_star()
    assert abs(uncertainty.pati_bound(r, sx, sz) - uncertainty.berta_bound(r, sx, sz)) < 1e-9
    # discord above classical correlation: correction active
    w8 = states.werner(0.8)
    delta = uncertainty.pati_bound(w8, sx, sz) - uncertainty.berta_bound(w8, sx, sz)
    assert abs(delta - 0.0904065073539877) < 1e-7


def test_uncertainty_gap_extremal_state():
    rep = uncertainty.uncertainty_gap(states.rho_star(), matcore.pauli(1), matcore.pauli(3))
    assert abs(rep.s_pb - GOLD_S_A) < 1e-9
    assert abs(rep.s_qb - GOLD_S_A) < 1e-9
    assert abs(rep.c - 1 / math.sqrt(2)) < 1e-12
    assert abs(rep.berta - 1.0) < 1e-10
    assert abs(rep.pati - 1.0) < 1e-9
    assert abs(rep.gap - (2 * GOLD_S_A - 1.0)) < 1e-9
    # the gap equals the state's dissonance here
    assert abs(rep.gap - measures.dissonance_rank2(states.rho_star())) < 1e-6


def test_gap_vanishes_on_maximal_entanglement():
    rep = uncertainty.uncertainty_gap(states.bell_state("phi_plus"),
                                      matcore.pauli(1), matcore.pauli(3))
    assert abs(rep.gap) < 1e-8


def test_bounds_hold_on_random_states():
    rng = np.random.default_rng(67)
    sx = matcore.pauli(1)
    sz = matcore.pauli(3)
    for _ in range(50):
        G = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        rho = G @ G.conj().T
        rho /= np.trace(rho).real
        rep = uncertainty.uncertainty_gap(rho, sx, sz)
        assert rep.pati >= rep.berta - 1e-12
        assert rep.s_pb + rep.s_qb >= rep.pati - 1e-8


def test_report_serialization():
    rep = uncertainty.uncertainty_gap(states.chi_state(0.5),
                                      matcore.pauli(1), matcore.pauli(3))
    d = rep.as_dict()
    assert set(d) == {"s_pb", "s_qb", "c", "berta", "pati", "gap"}
    payload = json.loads(rep.to_json())
    assert abs(payload["c"] - 0.707106781) < 1e-9
