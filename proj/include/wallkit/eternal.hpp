// Spectral purity analysis of a driven Hamiltonian: decomposition of the
// logical purity into a constant part plus oscillating terms, the resulting
// time-independent lower bound, and the index-set certificate for keeping
// purity near its initial value at large drive strength.
#pragma once

#include "wallkit/core.hpp"
#include "wallkit/dynamics.hpp"

#include <algorithm>
#include <optional>

namespace wallkit {

struct SpectralData {
  RVec lambda;
  Mat psi;  // columns are eigenvectors
  double kappa = 0.0;
};

inline SpectralData spectral_data(const Mat& H, double kappa = 0.0) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian(H, 1e-9));
  return {es.eigenvalues(), es.eigenvectors(), kappa};
}

struct Quadruple {
  int a = 0, b = 0, i = 0, j = 0;
};

struct OscTerm {
  double lambda = 0.0;  // lambda_a - lambda_b + lambda_i - lambda_j
  cplx amp;             // rho_ab rho_ij tr(tau_ab tau_ij)
  Quadruple q;
};

struct BoundReport {
  double gamma_bar = 0.0;   // constant part of the purity
  double rho_l1 = 0.0;      // sum of |amplitude| over oscillating terms
  double bound = 0.0;       // gamma_bar - rho_l1
  double gamma0 = 0.0;      // purity at t = 0
  double zero_tol = 0.0;
  long count_c1 = 0;        // quadruples with lambda_abij != 0
  std::vector<OscTerm> osc;  // oscillating terms with nonzero amplitude

  double gamma_at(double t) const {
    cplx acc = gamma_bar;
    for (const OscTerm& o : osc) acc += std::exp(cplx(0, -o.lambda * t)) * o.amp;
    return acc.real();
  }
};

inline BoundReport purity_decomposition(const Mat& rho0, const SpectralData& sp,
                                        const TripartiteDims& dims,
                                        double zero_tol_scale = 1e-9) {
  const int n = int(sp.lambda.size());
  if (rho0.rows() != n || dims.total() != n)
    throw DimensionError("purity_decomposition: dimension mismatch");
  check_density(rho0);

  double range = sp.lambda.maxCoeff() - sp.lambda.minCoeff();
  double ztol = zero_tol_scale * std::max(1.0, range);

  Mat R = sp.psi.adjoint() * rho0 * sp.psi;  // R(i,j) = <psi_i|rho0|psi_j>
  std::vector<Mat> tau(size_t(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      tau[size_t(i) * n + j] =
          partial_trace(Mat(sp.psi.col(i) * sp.psi.col(j).adjoint()), dims, kSubL);

  BoundReport rep;
  rep.zero_tol = ztol;
  cplx gamma_bar = 0.0;
  const double prune = 1e-14;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      cplx rab = R(a, b);
      double lam_ab = sp.lambda(a) - sp.lambda(b);
      bool ab_dead = std::abs(rab) < prune;
      const Mat& tab = tau[size_t(a) * n + b];
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double lam = lam_ab + sp.lambda(i) - sp.lambda(j);
          bool zero = std::abs(lam) < ztol;
          if (!zero) ++rep.count_c1;
          if (ab_dead) continue;
          cplx rij = R(i, j);
          if (std::abs(rij) < prune) continue;
          cplx amp = rab * rij * (tab * tau[size_t(i) * n + j]).trace();
          if (std::abs(amp) < 1e-16) continue;
          if (zero) {
            gamma_bar += amp;
          } else {
            rep.rho_l1 += std::abs(amp);
            rep.osc.push_back({lam, amp, {a, b, i, j}});
          }
        }
    }
  if (std::abs(gamma_bar.imag()) > 1e-10)
    throw Error("purity_decomposition: constant part is not real");
  rep.gamma_bar = gamma_bar.real();
  rep.bound = rep.gamma_bar - rep.rho_l1;
  rep.gamma0 = purity(partial_trace(rho0, dims, kSubL));
  return rep;
}

inline double eternal_lower_bound(const BoundReport& rep) { return rep.bound; }

// ---------------------------------------------------------------------------
// Large-drive limit eigenstates: block-diagonalize H0 within each eigenspace
// of 1 x Hu x 1, ordered by (Hu eigenvalue, energy shift) ascending — the
// eigenvalue order of H0 + kappa 1 x Hu x 1 for large kappa.
struct AsymptoticEigens {
  std::vector<Vec> states;       // full-space limit eigenstates
  std::vector<double> shifts;    // <psi~|H0|psi~>
  std::vector<int> wall_index;   // which Hu eigenvector each state lives in
  RVec hu_eigs;                  // ascending
  Mat hu_vecs;
};

inline AsymptoticEigens asymptotic_eigenstates(const Mat& H0, const Mat& Hu,
                                               const TripartiteDims& dims) {
  if (Hu.rows() != dims.nw) throw DimensionError("asymptotic_eigenstates: Hu dimension");
  Eigen::SelfAdjointEigenSolver<Mat> hu(hermitian(Hu, 1e-10));
  for (int b = 1; b < dims.nw; ++b)
    if (hu.eigenvalues()(b) - hu.eigenvalues()(b - 1) < 1e-9)
      throw DegeneracyError("asymptotic_eigenstates: Hu is degenerate");

  Mat H0h = hermitian(H0, 1e-9);
  AsymptoticEigens out;
  out.hu_eigs = hu.eigenvalues();
  out.hu_vecs = hu.eigenvectors();
  const int nle = dims.nl * dims.ne;
  for (int b = 0; b < dims.nw; ++b) {
    // Isometry from the (l,e) block into the full space.
    Mat B = Mat::Zero(dims.total(), nle);
    for (int a = 0; a < dims.nl; ++a)
      for (int c = 0; c < dims.ne; ++c)
        for (int wv = 0; wv < dims.nw; ++wv)
          B((a * dims.nw + wv) * dims.ne + c, a * dims.ne + c) = out.hu_vecs(wv, b);
    Eigen::SelfAdjointEigenSolver<Mat> blk(Mat(B.adjoint() * H0h * B));
    for (int k = 0; k < nle; ++k) {
      out.states.push_back(B * blk.eigenvectors().col(k));
      out.shifts.push_back(blk.eigenvalues()(k));
      out.wall_index.push_back(b);
    }
  }
  return out;
}

// Overlap (<psi_b| x <psi_j|) SWAP_ll (|psi_a> x |psi_i>), where SWAP_ll
// exchanges the logical factors of the doubled space.  Computed by direct
// tensor contraction.
inline cplx swap_ll_overlap(const Vec& pa, const Vec& pb, const Vec& pi, const Vec& pj,
                            const TripartiteDims& d) {
  auto idx = [&](int a, int w, int e) { return (a * d.nw + w) * d.ne + e; };
  cplx acc = 0.0;
  for (int a = 0; a < d.nl; ++a)
    for (int i = 0; i < d.nl; ++i)
      for (int bw = 0; bw < d.nw; ++bw)
        for (int jw = 0; jw < d.nw; ++jw)
          for (int ce = 0; ce < d.ne; ++ce)
            for (int ke = 0; ke < d.ne; ++ke)
              acc += pa(idx(a, bw, ce)) * pi(idx(i, jw, ke)) *
                     std::conj(pb(idx(i, bw, ce))) * std::conj(pj(idx(a, jw, ke)));
  return acc;
}

struct IndexSets {
  std::vector<int> perm;        // perm[j] = finite-kappa eigenindex matched to state j
  std::vector<int> k1_states;   // states whose wall label is w_hat
  std::vector<Quadruple> k1_k2;     // quadruples in K1 with nonzero swap overlap
  std::vector<Quadruple> c1_k1_k2;  // ... whose frequency is also nonzero
  std::vector<double> c1_k1_k2_lambda;
  double zero_tol = 0.0;
  double swap_tol = 0.0;
};

// Build the index sets of the eternal-purity certificate.  `sp` holds the
// spectrum at the analysis drive strength; its eigenvectors are matched to
// the asymptotic states by maximal overlap so that all quadruple indices
// refer to the asymptotic labeling.
inline IndexSets index_sets(const AsymptoticEigens& asymp, const Vec& w_hat,
                            const SpectralData& sp, const TripartiteDims& dims,
                            double zero_tol_scale = 1e-9, double swap_tol = 1e-9) {
  const int n = int(asymp.states.size());
  if (sp.lambda.size() != n) throw DimensionError("index_sets: spectral size");

  int w_label = -1;
  for (int b = 0; b < dims.nw; ++b)
    if (std::norm(asymp.hu_vecs.col(b).dot(w_hat)) > 1.0 - 1e-10) w_label = b;
  if (w_label < 0)
    throw PreconditionError("index_sets: w_hat is not an eigenvector of Hu");

  IndexSets out;
  out.swap_tol = swap_tol;
  out.perm.resize(n);
  std::vector<bool> used(n, false);
  for (int j = 0; j < n; ++j) {
    int best = -1;
    double best_ov = -1.0;
    for (int k = 0; k < n; ++k) {
      if (used[k]) continue;
      double ov = std::norm(sp.psi.col(k).dot(asymp.states[j]));
      if (ov > best_ov) {
        best_ov = ov;
        best = k;
      }
    }
    used[best] = true;
    out.perm[j] = best;
  }
  double range = sp.lambda.maxCoeff() - sp.lambda.minCoeff();
  out.zero_tol = zero_tol_scale * std::max(1.0, range);

  for (int j = 0; j < n; ++j)
    if (asymp.wall_index[j] == w_label) out.k1_states.push_back(j);

  for (int a : out.k1_states)
    for (int b : out.k1_states)
      for (int i : out.k1_states)
        for (int j : out.k1_states) {
          cplx ov = swap_ll_overlap(asymp.states[a], asymp.states[b], asymp.states[i],
                                    asymp.states[j], dims);
          if (std::abs(ov) <= swap_tol) continue;
          out.k1_k2.push_back({a, b, i, j});
          double lam = sp.lambda(out.perm[a]) - sp.lambda(out.perm[b]) +
                       sp.lambda(out.perm[i]) - sp.lambda(out.perm[j]);
          if (std::abs(lam) >= out.zero_tol) {
            out.c1_k1_k2.push_back({a, b, i, j});
            out.c1_k1_k2_lambda.push_back(lam);
          }
        }
  return out;
}

struct EternalVerdict {
  bool empty = false;
  std::optional<Quadruple> witness;
  double witness_lambda = 0.0;
};

inline EternalVerdict check_eternal_condition(const IndexSets& sets) {
  EternalVerdict v;
  v.empty = sets.c1_k1_k2.empty();
  if (!v.empty) {
    v.witness = sets.c1_k1_k2.front();
    v.witness_lambda = sets.c1_k1_k2_lambda.front();
  }
  return v;
}

// ---------------------------------------------------------------------------
// Product-state corollary: when every asymptotic eigenstate in the w_hat
// sector factorizes as |j_l> |w_hat> |j_e>, constancy reduces to uniformity
// of the logical gaps across environment labels.
enum class CorollaryStatus { Holds, Fails, Inapplicable };

struct CorollaryVerdict {
  CorollaryStatus status = CorollaryStatus::Inapplicable;
  std::string detail;
  double worst_mismatch = 0.0;
};

inline CorollaryVerdict corollary_check(const AsymptoticEigens& asymp, const Vec& w_hat,
                                        const SpectralData& sp, const TripartiteDims& dims,
                                        double gap_tol = 1e-9) {
  CorollaryVerdict v;
  int w_label = -1;
  for (int b = 0; b < dims.nw; ++b)
    if (std::norm(asymp.hu_vecs.col(b).dot(w_hat)) > 1.0 - 1e-10) w_label = b;
  if (w_label < 0)
    throw PreconditionError("corollary_check: w_hat is not an eigenvector of Hu");

  // Match finite-kappa eigenvalues to the asymptotic states.
  const int n = int(asymp.states.size());
  std::vector<int> perm(n);
  std::vector<bool> used(n, false);
  for (int j = 0; j < n; ++j) {
    int best = -1;
    double best_ov = -1.0;
    for (int k = 0; k < n; ++k) {
      if (used[k]) continue;
      double ov = std::norm(sp.psi.col(k).dot(asymp.states[j]));
      if (ov > best_ov) {
        best_ov = ov;
        best = k;
      }
    }
    used[best] = true;
    perm[j] = best;
  }

  // Factorize the w_hat-sector states across logical | environment.
  std::vector<Vec> lfac, efac;
  std::vector<int> llab, elab;
  std::vector<double> lam;
  for (int j = 0; j < n; ++j) {
    if (asymp.wall_index[j] != w_label) continue;
    Mat coef(dims.nl, dims.ne);
    for (int a = 0; a < dims.nl; ++a)
      for (int c = 0; c < dims.ne; ++c) {
        cplx acc = 0.0;
        for (int wv = 0; wv < dims.nw; ++wv)
          acc += std::conj(asymp.hu_vecs(wv, w_label)) *
                 asymp.states[j]((a * dims.nw + wv) * dims.ne + c);
        coef(a, c) = acc;
      }
    Eigen::JacobiSVD<Mat> svd(coef, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.singularValues().size() > 1 && svd.singularValues()(1) > 1e-8) {
      v.status = CorollaryStatus::Inapplicable;
      v.detail = "asymptotic eigenstate is entangled across logical|environment";
      return v;
    }
    Vec fl = svd.matrixU().col(0), fe = svd.matrixV().col(0).conjugate();
    auto assign = [](std::vector<Vec>& pool, const Vec& f) {
      for (size_t k = 0; k < pool.size(); ++k)
        if (std::norm(pool[k].dot(f)) > 1.0 - 1e-8) return int(k);
      pool.push_back(f);
      return int(pool.size()) - 1;
    };
    llab.push_back(assign(lfac, fl));
    elab.push_back(assign(efac, fe));
    lam.push_back(sp.lambda(perm[j]));
  }

  // Gap uniformity: lambda[j_l, b_e] - lambda[i_l, b_e] must not depend on b_e.
  const int m = int(lam.size());
  auto find = [&](int a, int c) -> std::optional<double> {
    for (int k = 0; k < m; ++k)
      if (llab[k] == a && elab[k] == c) return lam[k];
    return std::nullopt;
  };
  for (int il = 0; il < int(lfac.size()); ++il)
    for (int jl = 0; jl < int(lfac.size()); ++jl)
      for (int be = 0; be < int(efac.size()); ++be)
        for (int je = 0; je < int(efac.size()); ++je) {
          auto a = find(jl, be), b = find(il, be), c = find(jl, je), d = find(il, je);
          if (!a || !b || !c || !d) continue;
          double mis = std::abs((*a - *b) - (*c - *d));
          v.worst_mismatch = std::max(v.worst_mismatch, mis);
        }
  v.status = (v.worst_mismatch < gap_tol) ? CorollaryStatus::Holds : CorollaryStatus::Fails;
  return v;
}

}  // namespace wallkit
