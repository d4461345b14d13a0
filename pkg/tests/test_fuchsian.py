"""Fuchsian system monodromy and simultaneous triangularization."""

import numpy as np
import pytest
from scipy.linalg import expm

from finitude.fuchsian import (FuchsianSystem, monodromy_at_infinity,
                               simultaneous_triangularizable,
                               small_norm_verdict, system_monodromy,
                               triangularization_defect)
from finitude.solvability.verdicts import VerdictStatus

E = np.array([[0, 1], [0, 0]], dtype=complex)
F = np.array([[0, 0], [1, 0]], dtype=complex)


def random_matrix(rng, n, scale=0.3):
    return scale * (rng.standard_normal((n, n))
                    + 1j * rng.standard_normal((n, n)))


class TestSystemMonodromy:
    def test_single_pole_matches_exponential(self):
        rng = np.random.default_rng(1)
        for n in (2, 3, 4):
            for _ in range(3):
                A = random_matrix(rng, n, 0.4)
                system = FuchsianSystem([0.0], [A])
                mono = system_monodromy(system, tol=1e-11)
                target = expm(2j * np.pi * A)
                err = np.linalg.norm(mono.matrices[0] - target, 2)
                assert err < 1e-6

    def test_zero_matrices_identity(self):
        system = FuchsianSystem([0.0, 1.0],
                                [np.zeros((2, 2)), np.zeros((2, 2))])
        mono = system_monodromy(system)
        for M in mono.matrices:
            assert np.allclose(M, np.eye(2))

    def test_commuting_diagonal(self):
        D1 = np.diag([0.3, -0.2]).astype(complex)
        D2 = np.diag([0.1, 0.4]).astype(complex)
        system = FuchsianSystem([0.0, 1.0], [D1, D2])
        mono = system_monodromy(system, tol=1e-11)
        by_pole = {loop.singular_index: M
                   for loop, M in zip(mono.loops, mono.matrices)}
        assert np.allclose(by_pole[0], expm(2j * np.pi * D1), atol=1e-7)
        assert np.allclose(by_pole[1], expm(2j * np.pi * D2), atol=1e-7)

    def test_det_trace_relation(self):
        rng = np.random.default_rng(7)
        poles = [0.0, 1.5, -1.0 + 0.8j]
        for _ in range(3):
            mats = [random_matrix(rng, 3, 0.15) for _ in poles]
            system = FuchsianSystem(poles, mats)
            mono = system_monodromy(system, tol=1e-12)
            for loop, M in zip(mono.loops, mono.matrices):
                A = mats[loop.singular_index]
                expected = np.exp(2j * np.pi * np.trace(A))
                assert abs(np.linalg.det(M) - expected) < 1e-6

    def test_product_relation(self):
        rng = np.random.default_rng(9)
        poles = [1.0, -0.5 + 1.0j, -0.5 - 1.0j]
        mats = [random_matrix(rng, 2, 0.2) for _ in poles]
        system = FuchsianSystem(poles, mats)
        mono = system_monodromy(system, tol=1e-12)
        big = monodromy_at_infinity(system, tol=1e-12)
        product = np.eye(2, dtype=complex)
        for M in mono.matrices:
            product = product @ M
        rel = np.linalg.norm(product - big, 2) / np.linalg.norm(big, 2)
        assert rel < 1e-6

    def test_condition_estimates_reported(self):
        system = FuchsianSystem([0.0], [0.3 * E])
        mono = system_monodromy(system)
        assert len(mono.condition_estimates) == 1
        assert mono.condition_estimates[0] >= 1.0


class TestTriangularization:
    def test_single_matrix_always(self):
        rng = np.random.default_rng(3)
        result = simultaneous_triangularizable([random_matrix(rng, 4)])
        assert result["triangularizable"]

    def test_upper_pair(self):
        H = np.array([[1, 0], [0, -1]], dtype=complex)
        result = simultaneous_triangularizable([E, H])
        assert result["triangularizable"]
        assert triangularization_defect([E, H], result["basis"]) < 1e-9

    def test_sl2_pair_obstruction(self):
        result = simultaneous_triangularizable([E, F])
        assert not result["triangularizable"]
        assert "witness" in result

    def test_commuting_families(self):
        rng = np.random.default_rng(11)
        for n in (3, 4):
            S = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            Sinv = np.linalg.inv(S)
            mats = [S @ np.diag(rng.standard_normal(n)) @ Sinv
                    for _ in range(3)]
            result = simultaneous_triangularizable(mats)
            assert result["triangularizable"]
            assert triangularization_defect(mats, result["basis"]) < 1e-7


class TestSmallNormVerdict:
    def test_triangular_representable(self):
        system = FuchsianSystem(
            [0.0], [np.array([[0.5, 1.0], [0.0, -0.25]], dtype=complex)])
        verdict = small_norm_verdict(system)
        assert verdict.status == VerdictStatus.REPRESENTABLE
        assert len(verdict.extras["schedule"]) == 2

    def test_sl2_conditional_not_representable(self):
        system = FuchsianSystem([0.0, 1.0], [1e-3 * E, 1e-3 * F])
        verdict = small_norm_verdict(system)
        assert verdict.status == VerdictStatus.NOT_REPRESENTABLE
        assert verdict.extras["conditional"] is True
        assert verdict.extras["max_residue_norm"] == pytest.approx(1e-3)

    def test_zero_system(self):
        system = FuchsianSystem([0.0], [np.zeros((3, 3))])
        verdict = small_norm_verdict(system)
        assert verdict.status == VerdictStatus.REPRESENTABLE

    def test_json_io(self):
        data = {"poles": [[0.0, 0.0]],
                "matrices": [[[[0.1, 0.0], [0.0, 0.2]],
                              [[0.0, 0.0], [0.3, -0.1]]]]}
        system = FuchsianSystem.from_json(data)
        assert system.dimension == 2
        assert system.poles == [0j]
