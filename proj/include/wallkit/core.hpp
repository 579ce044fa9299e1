// Core linear algebra over tripartite Hilbert spaces: orthonormal Hermitian
// bases, tensor assembly, partial traces, states, purity and Hamiltonian
// term decomposition.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace wallkit {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using Rng = std::mt19937_64;

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};
struct DimensionError : Error {
  explicit DimensionError(const std::string& msg) : Error(msg) {}
};
struct HermiticityError : Error {
  explicit HermiticityError(const std::string& msg) : Error(msg) {}
};
struct PreconditionError : Error {
  explicit PreconditionError(const std::string& msg) : Error(msg) {}
};
struct DegeneracyError : Error {
  explicit DegeneracyError(const std::string& msg) : Error(msg) {}
};

inline Mat dag(const Mat& m) { return m.adjoint(); }
inline Mat comm(const Mat& a, const Mat& b) { return a * b - b * a; }
inline double fnorm(const Mat& m) { return m.norm(); }

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}
inline Mat kron(const Mat& a, const Mat& b, const Mat& c) {
  return kron(kron(a, b), c);
}

// Symmetrize when the residual is tiny, reject otherwise.  Guards against
// floating point drift accumulating through long pipelines.
inline Mat hermitian(const Mat& m, double tol = 1e-12) {
  double scale = std::max(1.0, m.norm());
  if ((m - m.adjoint()).norm() > tol * scale)
    throw HermiticityError("matrix is not Hermitian within tolerance");
  return 0.5 * (m + m.adjoint());
}

inline void check_density(const Mat& rho, double tol = 1e-10) {
  if (rho.rows() != rho.cols()) throw DimensionError("density matrix not square");
  if ((rho - rho.adjoint()).norm() > 1e-10 * std::max(1.0, rho.norm()))
    throw HermiticityError("density matrix not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > tol)
    throw Error("density matrix trace differs from 1");
  Eigen::SelfAdjointEigenSolver<Mat> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol)
    throw Error("density matrix has negative eigenvalue");
}

struct TripartiteDims {
  int nl = 1, nw = 1, ne = 1;
  int total() const { return nl * nw * ne; }
};

// ---------------------------------------------------------------------------
// Orthonormal Hermitian basis (generalized Gell-Mann matrices).
//
// Fixed canonical order: identity/sqrt(n), then symmetric pairs (j,k) in
// lexicographic order, then antisymmetric pairs, then diagonal elements.
// All elements satisfy tr(s_i s_j) = delta_ij.
struct HermitianBasis {
  int n = 0;                 // Hilbert space dimension
  std::vector<Mat> sigma;    // n^2 elements, sigma[0] = 1/sqrt(n)
  int size() const { return static_cast<int>(sigma.size()); }
};

inline HermitianBasis gellmann_basis(int n) {
  if (n < 2) throw DimensionError("gellmann_basis requires n >= 2");
  HermitianBasis b;
  b.n = n;
  b.sigma.reserve(static_cast<size_t>(n) * n);
  b.sigma.push_back(Mat::Identity(n, n) / std::sqrt(double(n)));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      Mat m = Mat::Zero(n, n);
      m(j, k) = inv_sqrt2;
      m(k, j) = inv_sqrt2;
      b.sigma.push_back(m);
    }
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      Mat m = Mat::Zero(n, n);
      m(j, k) = cplx(0.0, -1.0) * inv_sqrt2;
      m(k, j) = cplx(0.0, 1.0) * inv_sqrt2;
      b.sigma.push_back(m);
    }
  for (int k = 1; k < n; ++k) {
    Mat m = Mat::Zero(n, n);
    double norm = 1.0 / std::sqrt(double(k) * (k + 1));
    for (int j = 0; j < k; ++j) m(j, j) = norm;
    m(k, k) = -double(k) * norm;
    b.sigma.push_back(m);
  }
  return b;
}

// ---------------------------------------------------------------------------
// Partial trace. `keep` is a bitmask over the three factors.
enum Subsystem : unsigned { kSubL = 1u, kSubW = 2u, kSubE = 4u };

inline Mat partial_trace(const Mat& op, const TripartiteDims& dims, unsigned keep) {
  if (op.rows() != dims.total() || op.cols() != dims.total())
    throw DimensionError("partial_trace: operator/dims mismatch");
  const int dl = dims.nl, dw = dims.nw, de = dims.ne;
  const int kl = (keep & kSubL) ? dl : 1;
  const int kw = (keep & kSubW) ? dw : 1;
  const int ke = (keep & kSubE) ? de : 1;
  const int tl = (keep & kSubL) ? 1 : dl;
  const int tw = (keep & kSubW) ? 1 : dw;
  const int te = (keep & kSubE) ? 1 : de;
  Mat out = Mat::Zero(kl * kw * ke, kl * kw * ke);
  for (int al = 0; al < kl; ++al)
    for (int aw = 0; aw < kw; ++aw)
      for (int ae = 0; ae < ke; ++ae)
        for (int bl = 0; bl < kl; ++bl)
          for (int bw = 0; bw < kw; ++bw)
            for (int be = 0; be < ke; ++be) {
              cplx acc = 0.0;
              for (int sl = 0; sl < tl; ++sl)
                for (int sw = 0; sw < tw; ++sw)
                  for (int se = 0; se < te; ++se) {
                    int rl = (keep & kSubL) ? al : sl;
                    int rw = (keep & kSubW) ? aw : sw;
                    int re = (keep & kSubE) ? ae : se;
                    int cl = (keep & kSubL) ? bl : sl;
                    int cw = (keep & kSubW) ? bw : sw;
                    int ce = (keep & kSubE) ? be : se;
                    acc += op((rl * dw + rw) * de + re, (cl * dw + cw) * de + ce);
                  }
              out((al * kw + aw) * ke + ae, (bl * kw + bw) * ke + be) = acc;
            }
  return out;
}

inline double purity(const Mat& rho) { return (rho * rho).trace().real(); }

// ---------------------------------------------------------------------------
// Coefficient tensor g_ijk = tr(s_i x s_j x s_k H) over a product basis.
struct CoeffTensor {
  TripartiteDims dims;
  std::vector<double> g;  // indexed [i * nw^2 * ne^2 + j * ne^2 + k]
  int nl2() const { return dims.nl * dims.nl; }
  int nw2() const { return dims.nw * dims.nw; }
  int ne2() const { return dims.ne * dims.ne; }
  double& at(int i, int j, int k) { return g[(size_t(i) * nw2() + j) * ne2() + k]; }
  double at(int i, int j, int k) const { return g[(size_t(i) * nw2() + j) * ne2() + k]; }
};

struct TripartiteBases {
  HermitianBasis l, w, e;
};

inline TripartiteBases make_bases(const TripartiteDims& dims) {
  return {gellmann_basis(dims.nl), gellmann_basis(dims.nw), gellmann_basis(dims.ne)};
}

inline CoeffTensor decompose_hamiltonian(const Mat& H, const TripartiteDims& dims,
                                         const TripartiteBases& bases) {
  if (H.rows() != dims.total()) throw DimensionError("decompose: H/dims mismatch");
  Mat Hh = hermitian(H, 1e-10);
  CoeffTensor ct;
  ct.dims = dims;
  ct.g.assign(size_t(ct.nl2()) * ct.nw2() * ct.ne2(), 0.0);
  // Contract over the environment factor first so that the basis kron products
  // are only formed on the lw block.
  const int dlw = dims.nl * dims.nw, de = dims.ne;
  for (int k = 0; k < ct.ne2(); ++k) {
    // B_k = tr_e((1 x s_k^e) H), a dlw x dlw matrix.
    Mat Bk = Mat::Zero(dlw, dlw);
    const Mat& sk = bases.e.sigma[k];
    for (int r = 0; r < dlw; ++r)
      for (int c = 0; c < dlw; ++c) {
        cplx acc = 0.0;
        for (int a = 0; a < de; ++a)
          for (int bb = 0; bb < de; ++bb) acc += sk(a, bb) * Hh(r * de + bb, c * de + a);
        Bk(r, c) = acc;
      }
    for (int i = 0; i < ct.nl2(); ++i)
      for (int j = 0; j < ct.nw2(); ++j) {
        const Mat& si = bases.l.sigma[i];
        const Mat& sj = bases.w.sigma[j];
        cplx acc = 0.0;
        for (int rl = 0; rl < dims.nl; ++rl)
          for (int cl = 0; cl < dims.nl; ++cl) {
            if (si(rl, cl) == cplx(0.0)) continue;
            for (int rw = 0; rw < dims.nw; ++rw)
              for (int cw = 0; cw < dims.nw; ++cw)
                acc += si(rl, cl) * sj(rw, cw) * Bk(cl * dims.nw + cw, rl * dims.nw + rw);
          }
        ct.at(i, j, k) = acc.real();
      }
  }
  return ct;
}

inline Mat reconstruct(const CoeffTensor& ct, const TripartiteBases& bases) {
  Mat H = Mat::Zero(ct.dims.total(), ct.dims.total());
  for (int i = 0; i < ct.nl2(); ++i)
    for (int j = 0; j < ct.nw2(); ++j) {
      Mat lw;
      bool have_lw = false;
      for (int k = 0; k < ct.ne2(); ++k) {
        double g = ct.at(i, j, k);
        if (g == 0.0) continue;
        if (!have_lw) {
          lw = kron(bases.l.sigma[i], bases.w.sigma[j]);
          have_lw = true;
        }
        H += g * kron(lw, bases.e.sigma[k]);
      }
    }
  return H;
}

// Term split by index pattern.  The overall identity component g_000 is folded
// into H_e, where it only shifts the environment energy reference.
struct HamiltonianTerms {
  Mat Hl, Hw, He, Hlw, Hwe, Delta;
};

inline HamiltonianTerms extract_terms(const CoeffTensor& ct, const TripartiteBases& bases) {
  const int n = ct.dims.total();
  HamiltonianTerms t{Mat::Zero(n, n), Mat::Zero(n, n), Mat::Zero(n, n),
                     Mat::Zero(n, n), Mat::Zero(n, n), Mat::Zero(n, n)};
  for (int i = 0; i < ct.nl2(); ++i)
    for (int j = 0; j < ct.nw2(); ++j)
      for (int k = 0; k < ct.ne2(); ++k) {
        double g = ct.at(i, j, k);
        if (g == 0.0) continue;
        Mat term = g * kron(bases.l.sigma[i], bases.w.sigma[j], bases.e.sigma[k]);
        if (i > 0 && k > 0) t.Delta += term;          // le and lwe couplings
        else if (i > 0 && j > 0) t.Hlw += term;       // k == 0
        else if (j > 0 && k > 0) t.Hwe += term;       // i == 0
        else if (i > 0) t.Hl += term;
        else if (j > 0) t.Hw += term;
        else t.He += term;                            // includes g_000
      }
  return t;
}

// ---------------------------------------------------------------------------
// Spin operators.  J^axis has eigenvalues +-1/2 per site.
enum class Axis { X, Y, Z };

inline Mat pauli(Axis axis) {
  Mat m(2, 2);
  switch (axis) {
    case Axis::X: m << 0, 1, 1, 0; break;
    case Axis::Y: m << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case Axis::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

inline Mat spin_op(int N, int site, Axis axis) {
  if (site < 1 || site > N) throw DimensionError("spin_op: site out of range");
  Mat op = Mat::Identity(1, 1);
  for (int i = 1; i <= N; ++i)
    op = kron(op, i == site ? Mat(0.5 * pauli(axis)) : Mat(Mat::Identity(2, 2)));
  return op;
}

// Spin-3/2 operators in the J^z eigenbasis (m = 3/2, 1/2, -1/2, -3/2).
inline Mat spin32_op(Axis axis) {
  const double s3 = std::sqrt(3.0) / 2.0;
  Mat m = Mat::Zero(4, 4);
  switch (axis) {
    case Axis::X:
      m(0, 1) = s3; m(1, 0) = s3;
      m(1, 2) = 1.0; m(2, 1) = 1.0;
      m(2, 3) = s3; m(3, 2) = s3;
      break;
    case Axis::Y:
      m(0, 1) = cplx(0, -1) * s3; m(1, 0) = cplx(0, 1) * s3;
      m(1, 2) = cplx(0, -1); m(2, 1) = cplx(0, 1);
      m(2, 3) = cplx(0, -1) * s3; m(3, 2) = cplx(0, 1) * s3;
      break;
    case Axis::Z:
      m(0, 0) = 1.5; m(1, 1) = 0.5; m(2, 2) = -0.5; m(3, 3) = -1.5;
      break;
  }
  return m;
}

inline Mat thermal_state(const Mat& H, double beta) {
  if (beta < 0) throw Error("thermal_state: beta must be nonnegative");
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian(H, 1e-10));
  RVec ev = es.eigenvalues();
  RVec w = (-beta * (ev.array() - ev.minCoeff())).exp();
  w /= w.sum();
  return es.eigenvectors() * w.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

// Haar-uniform unit vector: normalized vector of iid standard complex normals.
inline Vec haar_random_vec(int n, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = cplx(gauss(rng), gauss(rng));
  return v / v.norm();
}

inline Mat haar_random_pure(int n, Rng& rng) {
  Vec v = haar_random_vec(n, rng);
  return v * v.adjoint();
}

// Derive an independent seed stream from a root seed and a task label, so that
// adding a sweep point never perturbs the randomness of the others.
inline std::uint64_t derive_seed(std::uint64_t root, const std::string& label) {
  std::uint64_t h = 14695981039346656037ull ^ root;
  for (unsigned char c : label) {
    h ^= c;
    h *= 1099511628211ull;
  }
  h ^= h >> 33; h *= 0xff51afd7ed558ccdull; h ^= h >> 33;
  return h;
}

}  // namespace wallkit
