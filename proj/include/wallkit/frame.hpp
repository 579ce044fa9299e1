// Search over unitaries on the logical+wall block that minimize the
// direct logical-environment coupling left in the rotated Hamiltonian.
#pragma once

#include "wallkit/core.hpp"
#include "wallkit/manifold.hpp"

namespace wallkit {

// Partial traces on a bipartite (first x second) block.
inline Mat ptr_first(const Mat& M, int n1, int n2) {
  Mat out = Mat::Zero(n2, n2);
  for (int a = 0; a < n2; ++a)
    for (int b = 0; b < n2; ++b)
      for (int s = 0; s < n1; ++s) out(a, b) += M(s * n2 + a, s * n2 + b);
  return out;
}
inline Mat ptr_second(const Mat& M, int n1, int n2) {
  Mat out = Mat::Zero(n1, n1);
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n1; ++b)
      for (int s = 0; s < n2; ++s) out(a, b) += M(a * n2 + s, b * n2 + s);
  return out;
}

// Remove the component that acts trivially on the first factor.
inline Mat remove_first_identity(const Mat& M, int n1, int n2) {
  return M - kron(Mat::Identity(n1, n1) / double(n1), ptr_first(M, n1, n2));
}
// Keep only the component that is traceless on both factors.
inline Mat traceless_both(const Mat& M, int n1, int n2) {
  Mat out = remove_first_identity(M, n1, n2);
  return out - kron(ptr_second(out, n1, n2) / double(n2), Mat::Identity(n2, n2));
}

// Frame cost evaluator.  With C_k = tr_e((1 x s_k^e) H) fixed in the original
// frame and D_k(U) = U^dag C_k U, the residual coupling norm is
//   J(U) = sum_{k>0} || P_l D_k ||_F^2,
// where P_l removes the part acting trivially on the logical factor; the
// regularizer adds eta * || P_lw D_0 ||_F^2 (the rotated-frame lw coupling).
class FrameCost {
 public:
  FrameCost(const Mat& H, const TripartiteDims& dims, double eta_reg = 0.0)
      : dims_(dims), eta_(eta_reg) {
    const int dlw = dims.nl * dims.nw, de = dims.ne;
    if (H.rows() != dims.total()) throw DimensionError("FrameCost: H/dims mismatch");
    Mat Hh = hermitian(H, 1e-10);
    HermitianBasis be = gellmann_basis(de);
    C_.reserve(be.size());
    for (int k = 0; k < be.size(); ++k) {
      Mat Ck = Mat::Zero(dlw, dlw);
      const Mat& sk = be.sigma[k];
      for (int r = 0; r < dlw; ++r)
        for (int c = 0; c < dlw; ++c) {
          cplx acc = 0.0;
          for (int a = 0; a < de; ++a)
            for (int b = 0; b < de; ++b) acc += sk(a, b) * Hh(r * de + b, c * de + a);
          Ck(r, c) = acc;
        }
      C_.push_back(0.5 * (Ck + Ck.adjoint()));
    }
  }

  double eta() const { return eta_; }
  const TripartiteDims& dims() const { return dims_; }

  struct Components {
    double J = 0.0;        // residual logical-environment coupling
    double Hlw_norm2 = 0.0;  // || H_lw ||^2 in the rotated frame
  };

  Components components(const Mat& U) const {
    const int nl = dims_.nl, nw = dims_.nw;
    Components out;
    for (size_t k = 1; k < C_.size(); ++k) {
      Mat Dk = U.adjoint() * C_[k] * U;
      out.J += remove_first_identity(Dk, nl, nw).squaredNorm();
    }
    Mat D0 = U.adjoint() * C_[0] * U;
    out.Hlw_norm2 = traceless_both(D0, nl, nw).squaredNorm();
    return out;
  }

  double cost(const Mat& U) const {
    Components c = components(U);
    return c.J + eta_ * c.Hlw_norm2;
  }

  // Riemannian gradient of cost() at U (tangent to the unitary group).
  Mat grad(const Mat& U) const {
    const int nl = dims_.nl, nw = dims_.nw;
    Mat acc = Mat::Zero(U.rows(), U.cols());
    for (size_t k = 1; k < C_.size(); ++k) {
      Mat Dk = U.adjoint() * C_[k] * U;
      acc += comm(remove_first_identity(Dk, nl, nw), Dk);
    }
    if (eta_ != 0.0) {
      Mat D0 = U.adjoint() * C_[0] * U;
      acc += eta_ * comm(traceless_both(D0, nl, nw), D0);
    }
    return U * (-2.0 * acc);
  }

 private:
  TripartiteDims dims_;
  double eta_;
  std::vector<Mat> C_;  // environment-contracted blocks, C_[0] for s_0^e
};

struct FrameSearchOptions {
  double eta_reg = 0.01;
  int restarts = 8;           // restart 0 starts at the identity
  std::uint64_t seed = 0;
  DescentParams descent;
};

struct FrameResult {
  Mat U;            // optimizer on the lw block
  double J = 0.0;
  double J_reg = 0.0;
  double Hlw_norm2 = 0.0;
  StopReason reason = StopReason::Converged;
  int iters = 0;
  bool stalled = false;  // best restart hit a failed line search
};

inline FrameResult find_wall_frame(const Mat& H, const TripartiteDims& dims,
                                   const FrameSearchOptions& opt = {}) {
  FrameCost fc(H, dims, opt.eta_reg);
  UnitaryManifold man(dims.nl * dims.nw);
  Rng rng(derive_seed(opt.seed, "frame-restarts"));
  FrameResult best;
  double best_cost = 0.0;
  bool have = false;
  for (int r = 0; r < opt.restarts; ++r) {
    Mat U0 = (r == 0) ? man.identity() : man.random(rng);
    auto res = descend(
        man, U0, [&](const Mat& U) { return fc.cost(U); },
        [&](const Mat& U) { return fc.grad(U); }, opt.descent);
    if (!have || res.cost < best_cost) {
      have = true;
      best_cost = res.cost;
      auto c = fc.components(res.x);
      best.U = res.x;
      best.J = c.J;
      best.Hlw_norm2 = c.Hlw_norm2;
      best.J_reg = c.J + opt.eta_reg * c.Hlw_norm2;
      best.reason = res.reason;
      best.iters = res.iters;
      best.stalled = (res.reason == StopReason::Stalled);
    }
  }
  return best;
}

// Relative error between the analytic directional derivative and a central
// finite difference, maximized over `trials` random tangent directions.
inline double frame_grad_check(const FrameCost& fc, const Mat& U, Rng& rng,
                               int trials = 5, double eps = 1e-4) {
  const int n = int(U.rows());
  std::normal_distribution<double> g(0.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    Mat A(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = cplx(g(rng), g(rng));
    Mat Om = 0.5 * (A - A.adjoint());
    Om /= Om.norm();
    auto f = [&](double s) { return fc.cost(expm_antiherm(s * Om) * U); };
    // Fourth-order central difference keeps the absolute error near 1e-12
    // even when the directional derivative itself is tiny.
    double fd =
        (f(-2 * eps) - 8 * f(-eps) + 8 * f(eps) - f(2 * eps)) / (12 * eps);
    double an = (fc.grad(U).adjoint() * (Om * U)).trace().real();
    double err = std::abs(fd - an) / std::max(1e-7, std::max(std::abs(fd), std::abs(an)));
    worst = std::max(worst, err);
  }
  return worst;
}

}  // namespace wallkit
