// Pulsed decoupling of the logical factor: ideal (instantaneous) and finite
// duration pulse sequences, either the universal XZXZ cycle or the selective
// XX cycle, with optional wall driving folded into the base Hamiltonian.
#pragma once

#include "wallkit/core.hpp"
#include "wallkit/dynamics.hpp"

namespace wallkit {

enum class DDSequence { Universal, Selective };

// Logical pi-pulse generators.  For nl = 2^k the pulses act as k-fold tensor
// powers of the single-qubit Pauli operators.
inline Mat logical_pauli(const TripartiteDims& dims, Axis axis) {
  int nl = dims.nl, k = 0;
  while (nl > 1 && nl % 2 == 0) {
    nl /= 2;
    ++k;
  }
  if (nl != 1 || k == 0)
    throw DimensionError("logical_pauli: logical dimension must be a power of two");
  Mat p = Mat::Identity(1, 1);
  for (int i = 0; i < k; ++i) p = kron(p, pauli(axis));
  return kron(p, Mat::Identity(dims.nw, dims.nw), Mat::Identity(dims.ne, dims.ne));
}

// Control envelopes for the finite-pulse sequences.  Universal: X windows of
// width tau ending at T/4 mod T/2 and Z windows ending at T/2 mod T/2, both
// of amplitude kappa = pi/(2 tau).  Selective: only the X windows, ending at
// T/2 mod T/2.  Returns (u_x, u_z) at time t.
inline std::pair<double, double> dd_control_amplitudes(DDSequence seq, double T,
                                                       double tau, double t) {
  double kappa = M_PI / (2.0 * tau);
  double half = T / 2.0;
  double s = std::fmod(std::fmod(t, half) + half, half);
  auto window = [&](double end) { return (s >= end - tau && s < end) ? kappa : 0.0; };
  if (seq == DDSequence::Selective) return {window(half), 0.0};
  return {window(T / 4.0), window(half)};
}

struct DDOptions {
  DDSequence sequence = DDSequence::Universal;
  bool ideal = true;
  double period = 0.1;  // cycle length T
  double tau = 0.0;     // finite pulse width; amplitude is pi/(2 tau)
  int cycles = 0;
};

// One full cycle of the pulse sequence as a unitary on the whole space.
inline Mat dd_cycle_unitary(const Mat& H, const TripartiteDims& dims,
                            const DDOptions& opt) {
  const double T = opt.period;
  if (T <= 0) throw Error("dd_cycle_unitary: period must be positive");
  Mat Hh = hermitian(H, 1e-9);
  if (opt.ideal) {
    Mat X = logical_pauli(dims, Axis::X), Z = logical_pauli(dims, Axis::Z);
    if (opt.sequence == DDSequence::Universal) {
      Mat F = expm_herm_times(Hh, T / 4.0);
      return Z * F * X * F * Z * F * X * F;
    }
    Mat F = expm_herm_times(Hh, T / 2.0);
    return X * F * X * F;
  }
  const double tau = opt.tau;
  const double limit = (opt.sequence == DDSequence::Universal) ? T / 4.0 : T / 2.0;
  if (tau <= 0 || tau >= limit)
    throw Error("dd_cycle_unitary: pulse width incompatible with the period");
  double kappa = M_PI / (2.0 * tau);
  Mat X = logical_pauli(dims, Axis::X), Z = logical_pauli(dims, Axis::Z);
  if (opt.sequence == DDSequence::Universal) {
    Mat free_seg = expm_herm_times(Hh, T / 4.0 - tau);
    Mat px = expm_herm_times(Mat(Hh + kappa * X), tau);
    Mat pz = expm_herm_times(Mat(Hh + kappa * Z), tau);
    Mat half = pz * free_seg * px * free_seg;
    return half * half;
  }
  Mat free_seg = expm_herm_times(Hh, T / 2.0 - tau);
  Mat px = expm_herm_times(Mat(Hh + kappa * X), tau);
  Mat half = px * free_seg;
  return half * half;
}

// Purity trajectory sampled at cycle boundaries.
inline Trajectory simulate_dd(const Mat& H, const Mat& rho0, const TripartiteDims& dims,
                              const DDOptions& opt) {
  check_density(rho0);
  Mat Uc = dd_cycle_unitary(H, dims, opt);
  Trajectory tr;
  Mat rho = rho0;
  tr.t.push_back(0.0);
  tr.gamma.push_back(logical_purity(rho, dims));
  for (int c = 1; c <= opt.cycles; ++c) {
    rho = Uc * rho * Uc.adjoint();
    tr.t.push_back(c * opt.period);
    tr.gamma.push_back(logical_purity(rho, dims));
  }
  return tr;
}

}  // namespace wallkit
