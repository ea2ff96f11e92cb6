import numpy as np
import pytest

from diracwalk.domain import DispersionParams, RepKind, SignConvention
from diracwalk.services.clifford_service import (
    anticommutator,
    beta_eigenbasis,
    build_full_rep,
    build_reduced_rep,
    build_rep,
    momentum_block,
    verify_algebra,
)
from diracwalk.services.spectral_service import dispersion
from diracwalk.utils.error_handling import ConfigurationError


@pytest.mark.unit
class TestFullRepresentation:
    """완전 클리퍼드 표현 테스트"""

    @pytest.mark.parametrize("d, dim", [(1, 2), (2, 2), (3, 4), (4, 4), (5, 8), (6, 8)])
    def test_dimension(self, d, dim):
        """스핀 차원 2^⌈d/2⌉"""
        rep = build_full_rep(d)
        assert rep.dim == dim
        assert rep.alphas.shape == (d, dim, dim)
        assert rep.kind == RepKind.FULL

    @pytest.mark.parametrize("d", range(1, 7))
    def test_algebra_exact(self, d):
        """{α_j,α_k}=2δ_jk, {α_j,β}=0, β²=1 이 정확히 성립"""
        report = verify_algebra(build_full_rep(d))
        assert report.passed
        assert report.max_violation <= 1e-14
        assert report.hermitian_violation <= 1e-14
        assert not report.on_eta_only

    def test_eta_is_beta_eigenvector(self):
        """기본 η 는 β 의 +1 고유벡터"""
        rep = build_full_rep(4)
        np.testing.assert_allclose(rep.beta @ rep.eta, rep.eta, atol=1e-15)

    def test_custom_eta_is_normalized(self):
        """사용자 지정 η 는 정규화"""
        rep = build_full_rep(2, eta=[3.0, 4.0])
        assert np.linalg.norm(rep.eta) == pytest.approx(1.0)

    def test_custom_eta_wrong_length(self):
        """η 길이 불일치"""
        with pytest.raises(ConfigurationError):
            build_full_rep(2, eta=[1.0, 0.0, 0.0])

    def test_generators_are_read_only(self):
        """표현 배열은 수정 불가"""
        rep = build_full_rep(3)
        with pytest.raises(ValueError):
            rep.beta[0, 0] = 2.0

    @pytest.mark.parametrize("d", [0, 7])
    def test_dimension_out_of_range(self, d):
        """d 범위 밖"""
        with pytest.raises(ConfigurationError):
            build_full_rep(d)


@pytest.mark.unit
class TestReducedRepresentation:
    """축소 표현 테스트"""

    @pytest.mark.parametrize("d", range(1, 7))
    def test_relations_hold_on_eta(self, d):
        """η 위에서는 모든 관계가 정확히 성립"""
        rep = build_reduced_rep(d)
        assert rep.dim == d + 1
        report = verify_algebra(rep)
        assert report.on_eta_only
        assert report.passed

    @pytest.mark.parametrize("d", range(2, 7))
    def test_relations_fail_off_eta(self, d):
        """d ≥ 2 에서는 행렬 항등식으로는 성립하지 않음"""
        report = verify_algebra(build_reduced_rep(d), on_full_space=True)
        assert not report.passed
        assert report.max_violation >= 1.0

    def test_d1_reduced_is_a_full_rep(self):
        """d=1 축소 표현은 파울리 X, Z 와 같음"""
        report = verify_algebra(build_reduced_rep(1), on_full_space=True)
        assert report.passed

    def test_alpha_beta_anticommute_exactly(self):
        """{α_j, β} 는 축소 표현에서도 행렬로 0"""
        rep = build_reduced_rep(3)
        for alpha in rep.alphas:
            assert np.max(np.abs(anticommutator(alpha, rep.beta))) == 0.0

    def test_build_rep_dispatch(self):
        """종류별 생성"""
        assert build_rep(RepKind.FULL, 3).dim == 4
        assert build_rep("reduced", 3).dim == 4
        assert build_rep(RepKind.REDUCED, 5).dim == 6


@pytest.mark.unit
class TestMomentumBlock:
    """운동량 블록 테스트"""

    @pytest.mark.parametrize("d", [2, 3, 5])
    def test_block_squares_to_energy(self, d):
        """B(k)² = E(k)² I (완전 표현)"""
        rep = build_full_rep(d)
        p = DispersionParams(0.7, 0.4)
        k = np.linspace(0.3, 2.9, d)
        block = momentum_block(rep, k, p)
        energy = float(dispersion(k, p))
        np.testing.assert_allclose(block @ block, energy**2 * np.eye(rep.dim), atol=1e-13)

    def test_block_spectrum(self):
        """고유값은 ±E(k), 각각 dim/2 중복"""
        rep = build_full_rep(3)
        p = DispersionParams(0.5, 0.25)
        k = np.array([0.4, -1.1, 2.0])
        values = np.linalg.eigvalsh(momentum_block(rep, k, p))
        energy = float(dispersion(k, p))
        np.testing.assert_allclose(values, [-energy, -energy, energy, energy], atol=1e-13)

    def test_literal_convention_flips_beta_term(self):
        """LITERAL 규약은 γcβ 항의 부호만 바꿈"""
        rep = build_full_rep(2)
        p = DispersionParams(0.6, 0.3)
        k = np.array([0.8, 1.7])
        flipped = momentum_block(rep, k, p, SignConvention.FLIPPED)
        literal = momentum_block(rep, k, p, SignConvention.LITERAL)
        c = 2.0 * np.sum(1.0 - np.cos(k))
        np.testing.assert_allclose(flipped - literal, 2.0 * p.gamma * c * rep.beta, atol=1e-14)

    def test_zero_momentum_block_vanishes(self):
        """k=0 블록은 0"""
        rep = build_full_rep(2)
        block = momentum_block(rep, [0.0, 0.0], DispersionParams(1.0, 1.0))
        assert np.max(np.abs(block)) == 0.0


@pytest.mark.unit
class TestBetaEigenbasis:
    """β 고유공간 테스트"""

    def test_full_rep_sectors_split_evenly(self):
        """완전 표현에서 β=±1 공간은 각각 dim/2"""
        rep = build_full_rep(4)
        plus = beta_eigenbasis(rep, 1)
        minus = beta_eigenbasis(rep, -1)
        assert plus.shape == (4, 2)
        assert minus.shape == (4, 2)
        np.testing.assert_allclose(rep.beta @ plus, plus, atol=1e-14)

    def test_reduced_rep_plus_sector_is_eta(self):
        """축소 표현의 β=+1 공간은 η 하나"""
        rep = build_reduced_rep(3)
        plus = beta_eigenbasis(rep, 1)
        assert plus.shape == (4, 1)
        assert abs(np.vdot(rep.eta, plus[:, 0])) == pytest.approx(1.0)

    def test_missing_eigenvalue(self):
        """존재하지 않는 고유값"""
        with pytest.raises(ConfigurationError):
            beta_eigenbasis(build_full_rep(2), 2)
