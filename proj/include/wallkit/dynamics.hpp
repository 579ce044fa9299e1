// Time evolution and purity tracking: spectral propagation for closed
// dynamics, adaptive Dormand-Prince integration for Lindblad dynamics, and
// the wall-directed control schemes (projective monitoring, Zeno limit,
// engineered dissipation, coherent driving).
#pragma once

#include "wallkit/core.hpp"
#include "wallkit/manifold.hpp"

#include <fstream>
#include <iomanip>
#include <optional>

namespace wallkit {

struct Lindblad {
  Mat H;
  std::vector<Mat> L;
};

inline Mat lindblad_rhs(const Lindblad& lb, const Mat& rho) {
  Mat out = cplx(0, -1) * comm(lb.H, rho);
  for (const Mat& L : lb.L) {
    Mat LdL = L.adjoint() * L;
    out += L * rho * L.adjoint() - 0.5 * (LdL * rho + rho * LdL);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Closed evolution via the eigendecomposition of H.
class SpectralProp {
 public:
  SpectralProp(const Mat& H) : es_(hermitian(H, 1e-9)) {}
  Mat unitary(double t) const {
    Vec ph(es_.eigenvalues().size());
    for (Eigen::Index i = 0; i < ph.size(); ++i)
      ph(i) = std::exp(cplx(0, -es_.eigenvalues()(i) * t));
    return es_.eigenvectors() * ph.asDiagonal() * es_.eigenvectors().adjoint();
  }
  Mat propagate(const Mat& rho0, double t) const {
    Mat U = unitary(t);
    return U * rho0 * U.adjoint();
  }
  const RVec& eigenvalues() const { return es_.eigenvalues(); }
  const Mat& eigenvectors() const { return es_.eigenvectors(); }

 private:
  Eigen::SelfAdjointEigenSolver<Mat> es_;
};

// ---------------------------------------------------------------------------
// Adaptive Dormand-Prince 5(4) for matrix-valued ODEs.
struct OdeTols {
  double atol = 1e-10;
  double rtol = 1e-8;
};

template <class Rhs>
void integrate_rk45(Rhs rhs, Mat& y, double t0, double t1, const OdeTols& tol = {}) {
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                      a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                      a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                      b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                      e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  if (t1 <= t0) return;
  double t = t0;
  double h = std::min(1e-3, t1 - t0);
  Mat k1 = rhs(y);
  int rejects_in_a_row = 0;
  while (t < t1) {
    if (t + h > t1) h = t1 - t;
    Mat k2 = rhs(Mat(y + h * (a21 * k1)));
    Mat k3 = rhs(Mat(y + h * (a31 * k1 + a32 * k2)));
    Mat k4 = rhs(Mat(y + h * (a41 * k1 + a42 * k2 + a43 * k3)));
    Mat k5 = rhs(Mat(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
    Mat k6 = rhs(Mat(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)));
    Mat ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    Mat k7 = rhs(ynew);
    Mat errm = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    double err = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      double sc = tol.atol + tol.rtol * std::max(std::abs(y(i)), std::abs(ynew(i)));
      double e = std::abs(errm(i)) / sc;
      err += e * e;
    }
    err = std::sqrt(err / double(y.size()));
    if (err <= 1.0) {
      t += h;
      y = std::move(ynew);
      k1 = std::move(k7);  // FSAL
      rejects_in_a_row = 0;
    } else if (++rejects_in_a_row > 50) {
      throw Error("integrate_rk45: step size collapsed");
    }
    double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
    h *= std::min(5.0, std::max(0.2, fac));
    if (h < 1e-14 * std::max(1.0, t1)) throw Error("integrate_rk45: step underflow");
  }
}

// ---------------------------------------------------------------------------
struct Trajectory {
  std::vector<double> t;
  std::vector<double> gamma;  // logical purity at each time
};

inline double logical_purity(const Mat& rho, const TripartiteDims& dims) {
  return purity(partial_trace(rho, dims, kSubL));
}

inline std::vector<double> time_grid(double t_final, int n_points) {
  if (n_points < 2) throw Error("time_grid: need at least two points");
  std::vector<double> t(n_points);
  for (int i = 0; i < n_points; ++i) t[i] = t_final * double(i) / (n_points - 1);
  return t;
}

inline Trajectory simulate_hamiltonian(const Mat& H, const Mat& rho0,
                                       const TripartiteDims& dims,
                                       const std::vector<double>& times) {
  check_density(rho0);
  SpectralProp prop(H);
  Trajectory tr;
  for (double t : times) {
    tr.t.push_back(t);
    tr.gamma.push_back(logical_purity(prop.propagate(rho0, t), dims));
  }
  return tr;
}

inline Trajectory simulate_lindblad(const Lindblad& lb, const Mat& rho0,
                                    const TripartiteDims& dims,
                                    const std::vector<double>& times,
                                    const OdeTols& tol = {}) {
  check_density(rho0);
  Trajectory tr;
  Mat rho = rho0;
  double t_prev = 0.0;
  for (double t : times) {
    integrate_rk45([&](const Mat& r) { return lindblad_rhs(lb, r); }, rho, t_prev, t, tol);
    t_prev = t;
    tr.t.push_back(t);
    tr.gamma.push_back(logical_purity(rho, dims));
  }
  return tr;
}

// ---------------------------------------------------------------------------
// Wall projector 1 x |w><w| x 1 and the control schemes built on it.
inline Mat wall_projector(const TripartiteDims& dims, const Vec& w) {
  if (w.size() != dims.nw) throw DimensionError("wall_projector: w dimension");
  Mat pw = w * w.adjoint();
  return kron(Mat::Identity(dims.nl, dims.nl), pw, Mat::Identity(dims.ne, dims.ne));
}

// Repeated projective monitoring at frequency f: between measurements the
// state evolves freely for 1/f, then collapses into the wall block or its
// complement.  Purity is reported at the measurement times i/f.
inline Trajectory simulate_measured(const Mat& H, const Mat& rho0,
                                    const TripartiteDims& dims, const Vec& w,
                                    double f, double t_final) {
  if (f <= 0) throw Error("simulate_measured: frequency must be positive");
  check_density(rho0);
  SpectralProp prop(H);
  Mat U = prop.unitary(1.0 / f);
  Mat P = wall_projector(dims, w);
  Mat Pc = Mat::Identity(P.rows(), P.cols()) - P;
  Trajectory tr;
  Mat rho = rho0;
  tr.t.push_back(0.0);
  tr.gamma.push_back(logical_purity(rho, dims));
  int steps = int(std::floor(f * t_final + 1e-9));
  for (int i = 1; i <= steps; ++i) {
    Mat ev = U * rho * U.adjoint();
    rho = P * ev * P + Pc * ev * Pc;
    tr.t.push_back(double(i) / f);
    tr.gamma.push_back(logical_purity(rho, dims));
  }
  return tr;
}

// Infinite-frequency (Zeno) limit: evolution under P H P + (1-P) H (1-P).
inline Mat zeno_hamiltonian(const Mat& H, const TripartiteDims& dims, const Vec& w) {
  Mat P = wall_projector(dims, w);
  Mat Pc = Mat::Identity(P.rows(), P.cols()) - P;
  return P * hermitian(H, 1e-10) * P + Pc * H * Pc;
}

// Engineered dissipation pumping the wall into |w>: jump operators
// sqrt(eta) 1 x |w><w_i| x 1 over an orthonormal basis of the complement.
inline std::vector<Mat> wall_dissipators(const TripartiteDims& dims, const Vec& w,
                                         double eta) {
  if (eta < 0) throw Error("wall_dissipators: eta must be nonnegative");
  const int nw = dims.nw;
  // Complete w to an orthonormal basis by Gram-Schmidt over the unit vectors.
  Mat A(nw, nw);
  A.col(0) = w;
  int filled = 1;
  for (int c = 0; c < nw && filled < nw; ++c) {
    Vec e = Vec::Unit(nw, c);
    Vec r = e;
    for (int k = 0; k < filled; ++k) r -= A.col(k) * A.col(k).dot(e);
    if (r.norm() > 1e-8) {
      A.col(filled++) = r / r.norm();
    }
  }
  if (filled < nw) throw Error("wall_dissipators: basis completion failed");
  std::vector<Mat> out;
  double g = std::sqrt(eta);
  for (int c = 1; c < nw; ++c) {
    Mat jump = w * A.col(c).adjoint();
    out.push_back(g * kron(Mat::Identity(dims.nl, dims.nl), jump,
                           Mat::Identity(dims.ne, dims.ne)));
  }
  return out;
}

// Constant coherent drive on the wall: H + kappa * 1 x Hu x 1.
inline Mat driven_hamiltonian(const Mat& H, const TripartiteDims& dims, const Mat& Hu,
                              double kappa) {
  if (Hu.rows() != dims.nw) throw DimensionError("driven_hamiltonian: Hu dimension");
  return H + kappa * kron(Mat::Identity(dims.nl, dims.nl), hermitian(Hu, 1e-10),
                          Mat::Identity(dims.ne, dims.ne));
}

// First time the purity drops below `threshold` (linear interpolation between
// grid points); empty if it never does.
inline std::optional<double> time_to_threshold(const Trajectory& tr, double threshold) {
  for (size_t i = 0; i < tr.t.size(); ++i) {
    if (tr.gamma[i] < threshold) {
      if (i == 0) return tr.t[0];
      double g0 = tr.gamma[i - 1], g1 = tr.gamma[i];
      double frac = (g0 - threshold) / (g0 - g1);
      return tr.t[i - 1] + frac * (tr.t[i] - tr.t[i - 1]);
    }
  }
  return std::nullopt;
}

inline void write_trajectory_csv(const std::string& path, const Trajectory& tr) {
  std::ofstream out(path);
  if (!out) throw Error("write_trajectory_csv: cannot open " + path);
  out << "t,gamma_l\n" << std::setprecision(12);
  for (size_t i = 0; i < tr.t.size(); ++i)
    out << tr.t[i] << "," << tr.gamma[i] << "\n";
}

// ---------------------------------------------------------------------------
// Exact purity derivatives under a (possibly dissipative) generator.
inline double purity_rate(const Lindblad& lb, const Mat& rho, const TripartiteDims& dims) {
  Mat rl = partial_trace(rho, dims, kSubL);
  Mat dl = partial_trace(lindblad_rhs(lb, rho), dims, kSubL);
  return 2.0 * (dl * rl).trace().real();
}

inline double purity_accel(const Lindblad& lb, const Mat& rho, const TripartiteDims& dims) {
  Mat d1 = lindblad_rhs(lb, rho);
  Mat d2 = lindblad_rhs(lb, d1);
  Mat rl = partial_trace(rho, dims, kSubL);
  Mat dl = partial_trace(d1, dims, kSubL);
  Mat ddl = partial_trace(d2, dims, kSubL);
  return 2.0 * ((ddl * rl).trace().real() + (dl * dl).trace().real());
}

// Monte Carlo Haar average of the purity acceleration over logical states,
// with the wall in |w> and the environment in rho_e.
inline double haar_avg_purity_accel(const Mat& H, const TripartiteDims& dims,
                                    const Vec& w, const Mat& rho_e, int n_samples,
                                    Rng& rng) {
  Lindblad lb{hermitian(H, 1e-10), {}};
  Mat pw = w * w.adjoint();
  double acc = 0.0;
  for (int s = 0; s < n_samples; ++s) {
    Mat rho = kron(haar_random_pure(dims.nl, rng), pw, rho_e);
    acc += purity_accel(lb, rho, dims);
  }
  return acc / n_samples;
}

}  // namespace wallkit
