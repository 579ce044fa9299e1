// Riemannian descent on SU(n) and on the complex unit sphere.
#pragma once

#include "wallkit/core.hpp"

#include <functional>

namespace wallkit {

// exp(Omega) for anti-Hermitian Omega, via the eigendecomposition of the
// Hermitian matrix i*Omega.
inline Mat expm_antiherm(const Mat& Omega) {
  Mat A = cplx(0, 1) * Omega;
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (A + A.adjoint()));
  Vec phase(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < phase.size(); ++i)
    phase(i) = std::exp(cplx(0, -es.eigenvalues()(i)));
  return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

inline Mat expm_herm_times(const Mat& H, double t) {
  // exp(-i H t) for Hermitian H
  Eigen::SelfAdjointEigenSolver<Mat> es(H);
  Vec phase(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < phase.size(); ++i)
    phase(i) = std::exp(cplx(0, -es.eigenvalues()(i) * t));
  return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

// Unitary group with the metric tr(A^dag B).  Tangent vectors at U are
// matrices T with T U^dag anti-Hermitian.
struct UnitaryManifold {
  using Point = Mat;
  using Tangent = Mat;
  int n;
  explicit UnitaryManifold(int n_) : n(n_) {}

  double metric(const Point&, const Tangent& a, const Tangent& b) const {
    return (a.adjoint() * b).trace().real();
  }
  // Move along T from U: exp(eps * T U^dag) U.
  Point retract(const Point& U, const Tangent& T, double eps) const {
    Mat Om = T * U.adjoint();
    Om = 0.5 * (Om - Om.adjoint());
    return expm_antiherm(eps * Om) * U;
  }
  Point random(Rng& rng) const {
    std::normal_distribution<double> g(0.0, 1.0);
    Mat A(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = cplx(g(rng), g(rng));
    Eigen::HouseholderQR<Mat> qr(A);
    Mat Q = qr.householderQ();
    Mat R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i) {
      cplx d = R(i, i);
      Q.col(i) *= (d == cplx(0.0)) ? cplx(1.0) : d / std::abs(d);
    }
    return Q;
  }
  Point identity() const { return Mat::Identity(n, n); }
};

// Complex unit sphere with metric <x,y>_w = Re x^dag (1 - w w^dag / 2) y and
// the group retraction exp((Q X w^dag - w X^dag Q) eps) w, Q = 1 - w w^dag/2.
// All costs used here are invariant under w -> e^{i phi} w, so gradients are
// orthogonal to w and the metric reduces to the plain inner product on them.
struct SphereManifold {
  using Point = Vec;
  using Tangent = Vec;
  int n;
  explicit SphereManifold(int n_) : n(n_) {}

  double metric(const Point& w, const Tangent& a, const Tangent& b) const {
    cplx wa = w.dot(a), wb = w.dot(b);
    return (a.dot(b) - 0.5 * std::conj(wa) * wb).real();
  }
  Point retract(const Point& w, const Tangent& X, double eps) const {
    Mat Q = Mat::Identity(n, n) - 0.5 * w * w.adjoint();
    Vec QX = Q * X;
    Mat Om = QX * w.adjoint() - w * QX.adjoint();
    Point out = expm_antiherm(eps * Om) * w;
    return out / out.norm();
  }
  // Project a Euclidean gradient (2 df/d conj(w)) to the tangent space.
  Tangent project(const Point& w, const Vec& egrad) const {
    return egrad - w * w.dot(egrad);
  }
  Point random(Rng& rng) const { return haar_random_vec(n, rng); }
};

struct DescentParams {
  double armijo_c = 1e-4;
  double backtrack = 0.5;
  double step0 = 0.1;
  double grad_tol = 1e-10;  // threshold on the squared Riemannian gradient norm
  int max_iters = 5000;
  double min_step = 1e-16;
  bool keep_trace = false;
};

enum class StopReason { Converged, MaxIters, Stalled };

template <class Point>
struct DescentResult {
  Point x;
  double cost = 0.0;
  double grad_norm2 = 0.0;
  int iters = 0;
  StopReason reason = StopReason::Converged;
  std::vector<double> trace;  // cost per accepted iterate, if requested
};

// Armijo backtracking descent.  `cost` maps Point -> double and `rgrad` maps
// Point -> Riemannian gradient.  On a failed line search the best point so
// far is returned with reason Stalled.
template <class Man, class Cost, class Grad>
DescentResult<typename Man::Point> descend(const Man& man, typename Man::Point x0,
                                           Cost cost, Grad rgrad,
                                           const DescentParams& p = {}) {
  DescentResult<typename Man::Point> res;
  res.x = std::move(x0);
  res.cost = cost(res.x);
  if (p.keep_trace) res.trace.push_back(res.cost);
  for (res.iters = 0; res.iters < p.max_iters; ++res.iters) {
    auto g = rgrad(res.x);
    res.grad_norm2 = man.metric(res.x, g, g);
    if (res.grad_norm2 < p.grad_tol) {
      res.reason = StopReason::Converged;
      return res;
    }
    double eps = p.step0;
    bool accepted = false;
    while (eps >= p.min_step) {
      auto xt = man.retract(res.x, -g, eps);
      double ft = cost(xt);
      // Written as a decrease test so that underflow of the Armijo margin
      // cannot make a flat step look acceptable.
      if (res.cost - ft >= p.armijo_c * eps * res.grad_norm2) {
        res.x = std::move(xt);
        res.cost = ft;
        accepted = true;
        break;
      }
      eps *= p.backtrack;
    }
    if (!accepted) {
      res.reason = StopReason::Stalled;
      return res;
    }
    if (p.keep_trace) res.trace.push_back(res.cost);
  }
  res.reason = StopReason::MaxIters;
  return res;
}

}  // namespace wallkit
