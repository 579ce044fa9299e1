#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wallkit/wallstate.hpp"
#include "wallkit/frame.hpp"
#include "wallkit/models.hpp"
#include "wallkit/dynamics.hpp"
#include "oracles.hpp"

using namespace wallkit;

namespace {
Mat lw_block(const Mat& H, const TripartiteDims& d) {
  TripartiteBases bases = make_bases(d);
  HamiltonianTerms t = extract_terms(decompose_hamiltonian(H, d, bases), bases);
  return partial_trace(t.Hlw, d, kSubL | kSubW) / double(d.ne);
}
}  // namespace

TEST_CASE("OSD reconstructs, is orthonormal, and matches the Ising values") {
  ModelSpec m = transversal_ising3();
  Mat Hlw = lw_block(m.H, m.dims);
  OSD d = osd_decompose(Hlw, 2, 2);

  REQUIRE(d.s.size() == 4);
  CHECK(d.s[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(d.s[1] < 1e-12);
  CHECK(d.s[2] < 1e-12);
  CHECK(d.s[3] < 1e-12);
  CHECK((osd_reconstruct(d) - Hlw).norm() < 1e-12);

  // Leading wall factor is the x direction with positive sign.
  CHECK((d.D[0] - pauli(Axis::X) / std::sqrt(2.0)).norm() < 1e-12);

  for (size_t i = 0; i < d.s.size(); ++i) {
    if (d.s[i] == 0.0) continue;
    CHECK(std::abs(d.C[i].trace()) < 1e-12);
    CHECK(std::abs(d.D[i].trace()) < 1e-12);
    for (size_t j = 0; j < d.s.size(); ++j) {
      if (d.s[j] == 0.0) continue;
      double want = (i == j) ? 1.0 : 0.0;
      CHECK(std::abs((d.C[i] * d.C[j]).trace().real() - want) < 1e-12);
      CHECK(std::abs((d.D[i] * d.D[j]).trace().real() - want) < 1e-12);
    }
  }
}

TEST_CASE("OSD on a generic coupling agrees with reconstruction") {
  Rng rng(41);
  // Build a traceless-on-both-factors random coupling on (4 x 2).
  HermitianBasis bl = gellmann_basis(4), bw = gellmann_basis(2);
  std::normal_distribution<double> g(0.0, 1.0);
  Mat Hlw = Mat::Zero(8, 8);
  for (int a = 1; a < 16; ++a)
    for (int b = 1; b < 4; ++b) Hlw += g(rng) * kron(bl.sigma[a], bw.sigma[b]);
  OSD d = osd_decompose(Hlw, 4, 2);
  CHECK(int(d.s.size()) == 4);  // min(4,2)^2
  CHECK((osd_reconstruct(d) - Hlw).norm() < 1e-10);
  for (size_t i = 1; i < d.s.size(); ++i) CHECK(d.s[i - 1] >= d.s[i]);

  // Identity components are rejected.
  CHECK_THROWS_AS(osd_decompose(Mat(Hlw + kron(bl.sigma[1], bw.sigma[0])), 4, 2),
                  PreconditionError);
}

TEST_CASE("qubit wall lemma: operator squares, eigenvalues, optimum") {
  ModelSpec m = transversal_ising3();
  OSD d = osd_decompose(lw_block(m.H, m.dims), 2, 2);

  for (size_t i = 0; i < d.s.size(); ++i) {
    if (d.s[i] == 0.0) continue;
    CHECK((d.D[i] * d.D[i] - 0.5 * Mat::Identity(2, 2)).norm() < 1e-12);
    Eigen::SelfAdjointEigenSolver<Mat> es(d.D[i]);
    CHECK(es.eigenvalues()(0) == doctest::Approx(-1.0 / std::sqrt(2.0)));
    CHECK(es.eigenvalues()(1) == doctest::Approx(1.0 / std::sqrt(2.0)));
  }

  Vec w = optimal_qubit_wall(d);
  Vec minus(2);
  minus << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  CHECK(std::norm(w.dot(minus)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(gamma2(d, w) < 1e-12);
  CHECK(qubit_eigenstate_cost(d, 0) == doctest::Approx(0.875).epsilon(1e-12));

  // Degenerate leading singular values are refused.
  Mat deg = 0.5 * kron(Mat(pauli(Axis::X)), Mat(pauli(Axis::X))) +
            0.5 * kron(Mat(pauli(Axis::Z)), Mat(pauli(Axis::Z)));
  CHECK_THROWS_AS(optimal_qubit_wall(osd_decompose(deg, 2, 2)), DegeneracyError);
}

TEST_CASE("variance functional matches the spectral-variance oracle") {
  Rng rng(43);
  ModelSpec m = spin_lattice5();
  OSD d = osd_decompose(lw_block(m.H, m.dims), 4, 2);
  for (int t = 0; t < 10; ++t) {
    Vec w = haar_random_vec(2, rng);
    CHECK(gamma2(d, w) == doctest::Approx(oracle::gamma2_direct(d, w)).epsilon(1e-10));
  }
}

TEST_CASE("gradients of both functionals pass finite-difference checks") {
  Rng rng(47);
  ModelSpec m = transversal_ising3();
  OSD d = osd_decompose(lw_block(m.H, m.dims), 2, 2);
  Mat rho_e = thermal_state(oracle::random_hermitian(2, rng), 0.7);
  Gamma1 g1(m.H, m.dims, rho_e);

  auto fd_check = [&](auto value, auto egrad, int n) {
    for (int t = 0; t < 20; ++t) {
      Vec w = haar_random_vec(n, rng);
      Vec dir = haar_random_vec(n, rng);
      double eps = 1e-4;
      auto f = [&](double s) { return value(Vec(w + s * dir)); };
      double fd = (f(-2 * eps) - 8 * f(-eps) + 8 * f(eps) - f(2 * eps)) / (12 * eps);
      double an = egrad(w).dot(dir).real();
      CHECK(std::abs(fd - an) /
                std::max(1e-7, std::max(std::abs(fd), std::abs(an))) < 1e-5);
    }
  };
  fd_check([&](const Vec& w) { return gamma2(d, w); },
           [&](const Vec& w) { return gamma2_egrad(d, w); }, 2);
  fd_check([&](const Vec& w) { return g1.value(w); },
           [&](const Vec& w) { return g1.egrad(w); }, 2);
}

TEST_CASE("the two functionals coincide when the direct coupling vanishes") {
  // For a Hamiltonian with no logical-environment coupling the purity-average
  // functional equals the variance functional exactly, for any environment
  // state.
  Rng rng(53);
  ModelSpec m = transversal_ising3();
  OSD d = osd_decompose(lw_block(m.H, m.dims), 2, 2);
  for (int t = 0; t < 3; ++t) {
    Mat rho_e = (t == 0) ? Mat(Mat::Identity(2, 2) / 2.0)
                         : thermal_state(oracle::random_hermitian(2, rng), 1.0);
    Gamma1 g1(m.H, m.dims, rho_e);
    for (int k = 0; k < 5; ++k) {
      Vec w = haar_random_vec(2, rng);
      CHECK(std::abs(g1.value(w) - gamma2(d, w)) < 1e-9);
    }
  }
}

TEST_CASE("purity-average functional matches the Monte-Carlo acceleration oracle") {
  Rng rng(59);
  ModelSpec m = transversal_ising3();
  Mat rho_e = thermal_state(oracle::random_hermitian(2, rng), 0.5);
  Gamma1 g1(m.H, m.dims, rho_e);
  Vec w = haar_random_vec(2, rng);
  double mc = haar_avg_purity_accel(m.H, m.dims, w, rho_e, 4000, rng);
  double closed = -4.0 * haar_nu(m.dims.nl) * g1.value(w);
  CHECK(std::abs(mc - closed) / std::abs(closed) < 0.05);
}

TEST_CASE("wall-state search finds the Ising optimum") {
  ModelSpec m = transversal_ising3();
  OSD d = osd_decompose(lw_block(m.H, m.dims), 2, 2);
  WallSearchOptions opt;
  opt.seed = 7;
  opt.descent.grad_tol = 1e-18;
  WallResult wr = find_wall_state(d, opt);
  Vec minus(2);
  minus << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  CHECK(std::norm(wr.w.dot(minus)) > 1.0 - 1e-6);
  CHECK(wr.value < 1e-10);
}

TEST_CASE("perfect wall detection") {
  ModelSpec chain = ising_chain(3, 2, 1.0, 0.8);
  auto w = detect_perfect_wall(chain.H, chain.dims);
  REQUIRE(w.has_value());
  // All wall-side operators are diagonal, so the detected state is a basis state.
  CHECK(std::max(std::abs((*w)(0)), std::abs((*w)(1))) > 1.0 - 1e-8);

  ModelSpec ti = transversal_ising3();
  CHECK(!detect_perfect_wall(ti.H, ti.dims).has_value());
}

TEST_CASE("logical gauge alignment sorts the coupling axes without moving the cost") {
  Rng rng(314);
  TripartiteDims d{2, 2, 2};
  Mat H = oracle::random_hermitian(8, rng);
  Mat U = UnitaryManifold(4).random(rng);
  Mat Ua = align_logical_frame(H, d, U);
  CHECK((Ua * Ua.adjoint() - Mat::Identity(4, 4)).norm() < 1e-12);

  FrameCost fc(H, d, 0.01);
  CHECK(fc.components(U).J == doctest::Approx(fc.components(Ua).J).epsilon(1e-10));
  CHECK(fc.components(U).Hlw_norm2 ==
        doctest::Approx(fc.components(Ua).Hlw_norm2).epsilon(1e-10));

  // In the aligned frame the Gram matrix of the Pauli coupling operators is
  // diagonal with ascending diagonal: x weakest, z strongest.
  Mat Hr = kron(Ua, Mat::Identity(2, 2)).adjoint() * H * kron(Ua, Mat::Identity(2, 2));
  std::array<Mat, 3> G;
  std::array<Axis, 3> axes{Axis::X, Axis::Y, Axis::Z};
  for (int a = 0; a < 3; ++a)
    G[a] = partial_trace(Mat(kron(pauli(axes[a]), Mat::Identity(4, 4)) * Hr), d,
                         kSubW | kSubE) / 2.0;
  Eigen::Matrix3d M;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) M(a, b) = (G[a].adjoint() * G[b]).trace().real();
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      if (a != b) CHECK(std::abs(M(a, b)) < 1e-9);
  CHECK(M(0, 0) <= M(1, 1) + 1e-9);
  CHECK(M(1, 1) <= M(2, 2) + 1e-9);

  // Larger logical factors pass through unchanged.
  TripartiteDims d4{4, 2, 2};
  Mat H4 = oracle::random_hermitian(16, rng);
  Mat U8 = UnitaryManifold(8).random(rng);
  CHECK((align_logical_frame(H4, d4, U8) - U8).norm() == 0.0);
}
