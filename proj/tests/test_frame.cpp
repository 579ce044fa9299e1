#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wallkit/frame.hpp"
#include "wallkit/models.hpp"
#include "oracles.hpp"

using namespace wallkit;

namespace {
Mat rotate_lw(const Mat& H, const TripartiteDims& d, const Mat& U) {
  Mat Uf = kron(U, Mat::Identity(d.ne, d.ne));
  return Uf.adjoint() * H * Uf;
}

// Independent evaluation of the residual coupling norm: rotate the full
// Hamiltonian, decompose it, and sum the squared coefficients with both a
// nontrivial logical and environment index.
double residual_norm2_oracle(const Mat& H, const TripartiteDims& d, const Mat& U) {
  TripartiteBases bases = make_bases(d);
  CoeffTensor g = decompose_hamiltonian(rotate_lw(H, d, U), d, bases);
  double out = 0.0;
  for (int i = 1; i < g.nl2(); ++i)
    for (int j = 0; j < g.nw2(); ++j)
      for (int k = 1; k < g.ne2(); ++k) out += g.at(i, j, k) * g.at(i, j, k);
  return out;
}

double lw_norm2_oracle(const Mat& H, const TripartiteDims& d, const Mat& U) {
  TripartiteBases bases = make_bases(d);
  CoeffTensor g = decompose_hamiltonian(rotate_lw(H, d, U), d, bases);
  double out = 0.0;
  for (int i = 1; i < g.nl2(); ++i)
    for (int j = 1; j < g.nw2(); ++j) out += g.at(i, j, 0) * g.at(i, j, 0);
  return out;
}
}  // namespace

TEST_CASE("cost agrees with the decompose-and-sum oracle") {
  Rng rng(31);
  TripartiteDims d{2, 2, 3};
  Mat H = oracle::random_hermitian(d.total(), rng);
  FrameCost fc(H, d, 0.01);
  UnitaryManifold man(4);
  for (int t = 0; t < 4; ++t) {
    Mat U = (t == 0) ? man.identity() : man.random(rng);
    auto c = fc.components(U);
    CHECK(c.J == doctest::Approx(residual_norm2_oracle(H, d, U)).epsilon(1e-9));
    CHECK(c.Hlw_norm2 == doctest::Approx(lw_norm2_oracle(H, d, U)).epsilon(1e-9));
  }
  // J at the identity equals the squared norm of the coupling block.
  TripartiteBases bases = make_bases(d);
  HamiltonianTerms terms = extract_terms(decompose_hamiltonian(H, d, bases), bases);
  CHECK(fc.components(man.identity()).J ==
        doctest::Approx(terms.Delta.squaredNorm()).epsilon(1e-9));
}

TEST_CASE("toy model reference values and reference unitaries") {
  ToyModel toy = toy_regularization_model();
  const TripartiteDims d = toy.spec.dims;
  FrameCost fc(toy.spec.H, d, 0.01);
  Mat I = Mat::Identity(4, 4);

  CHECK(fc.components(I).J == doctest::Approx(0.5).epsilon(1e-12));

  // U2 (the swap) removes the coupling with no residual lw term.
  auto c2 = fc.components(toy.U2);
  CHECK(c2.J < 1e-24);
  CHECK(c2.Hlw_norm2 < 1e-24);

  // U1 removes the coupling but leaves ||H_lw||^2 = 2.
  auto c1 = fc.components(toy.U1);
  CHECK(c1.J < 1e-24);
  CHECK(c1.Hlw_norm2 == doctest::Approx(2.0).epsilon(1e-12));

  // The rotated Hamiltonians match their closed forms.
  auto J = [&](int i, Axis a) { return spin_op(3, i, a); };
  Mat H2 = J(2, Axis::Z) + J(1, Axis::Z) + J(3, Axis::Z) + J(2, Axis::X) * J(3, Axis::X);
  CHECK((rotate_lw(toy.spec.H, d, toy.U2) - H2).norm() < 1e-13);
  Mat H1 = 2.0 * J(1, Axis::Z) * J(2, Axis::Z) - J(1, Axis::Z) + J(3, Axis::Z) +
           J(2, Axis::X) * J(3, Axis::X);
  CHECK((rotate_lw(toy.spec.H, d, toy.U1) - H1).norm() < 1e-13);
}

TEST_CASE("gradient passes finite-difference checks") {
  Rng rng(37);
  TripartiteDims d{2, 2, 3};
  Mat H = oracle::random_hermitian(d.total(), rng);
  UnitaryManifold man(4);
  for (double eta : {0.0, 0.01, 0.3}) {
    FrameCost fc(H, d, eta);
    for (int t = 0; t < 5; ++t) {
      Mat U = man.random(rng);
      CHECK(frame_grad_check(fc, U, rng) < 1e-5);
    }
  }
  ToyModel toy = toy_regularization_model();
  FrameCost fct(toy.spec.H, toy.spec.dims, 0.01);
  for (int t = 0; t < 5; ++t) CHECK(frame_grad_check(fct, man.random(rng), rng) < 1e-5);
}

TEST_CASE("frame search solves the toy model") {
  ToyModel toy = toy_regularization_model();
  FrameSearchOptions opt;
  opt.seed = 1234;
  FrameResult fr = find_wall_frame(toy.spec.H, toy.spec.dims, opt);
  CHECK(fr.J < 1e-6);
  CHECK(fr.J_reg < 1e-6);
  CHECK((fr.U * fr.U.adjoint() - Mat::Identity(4, 4)).norm() < 1e-10);
}

TEST_CASE("identity restart guarantees no regression from the identity frame") {
  ModelSpec m = spin_lattice5();
  FrameCost fc(m.H, m.dims, 0.01);
  double id_cost = fc.cost(Mat::Identity(8, 8));
  FrameSearchOptions opt;
  opt.restarts = 1;  // only the identity start
  opt.seed = 99;
  opt.descent.max_iters = 200;
  FrameResult fr = find_wall_frame(m.H, m.dims, opt);
  CHECK(fr.J_reg <= id_cost + 1e-12);
}
