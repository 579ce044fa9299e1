// Constructors for the benchmark Hamiltonians: Ising chains, the
// three-qubit regularization toy model, a five-site spin lattice with
// three-body terms, a central spin-3/2 with a four-qubit bath, and the
// three-qubit model used for the eternal-bound analysis.
#pragma once

#include "wallkit/core.hpp"

#include <map>
#include <optional>

namespace wallkit {

struct ModelSpec {
  std::string id;
  TripartiteDims dims;
  Mat H;
  std::map<std::string, double> params;
  std::optional<Mat> Hu;    // designated wall control Hamiltonian (nw x nw)
  std::optional<Vec> w_hat; // designated wall state, when the model fixes one
  std::vector<Mat> jumps;   // Lindblad extras (e.g. bath pumping)
};

// H = h sum_i J_i^z + g_z sum_i J_i^z J_{i+1}^z on N spins; the wall is the
// single spin at position j_split.
inline ModelSpec ising_chain(int N, int j_split, double h, double g_z) {
  if (j_split < 2 || j_split >= N) throw DimensionError("ising_chain: invalid split");
  ModelSpec m;
  m.id = "ising-chain";
  m.dims = {1 << (j_split - 1), 2, 1 << (N - j_split)};
  m.params = {{"N", double(N)}, {"j", double(j_split)}, {"h", h}, {"g_z", g_z}};
  const int dim = 1 << N;
  m.H = Mat::Zero(dim, dim);
  for (int i = 1; i <= N; ++i) m.H += h * spin_op(N, i, Axis::Z);
  for (int i = 1; i < N; ++i)
    m.H += g_z * spin_op(N, i, Axis::Z) * spin_op(N, i + 1, Axis::Z);
  Vec w0 = Vec::Zero(2);
  w0(0) = 1.0;
  m.w_hat = w0;
  return m;
}

// Three qubits, H0 = sum_i J_i^z + J_1^x J_3^x, plus the two reference
// unitaries on the (1,2) block: U2 (the swap) removes the logical-environment
// coupling with no residual lw term; U1 removes it but leaves a large one.
struct ToyModel {
  ModelSpec spec;
  Mat U1, U2;  // act on the logical+wall block (dimension 4)
};

inline ToyModel toy_regularization_model() {
  ToyModel t;
  t.spec.id = "toy-reg";
  t.spec.dims = {2, 2, 2};
  t.spec.H = spin_op(3, 1, Axis::Z) + spin_op(3, 2, Axis::Z) + spin_op(3, 3, Axis::Z) +
             spin_op(3, 1, Axis::X) * spin_op(3, 3, Axis::X);
  t.U1 = Mat::Zero(4, 4);
  t.U1(0, 3) = 1.0;  // |00><11|
  t.U1(1, 0) = 1.0;  // |01><00|
  t.U1(2, 2) = 1.0;  // |10><10|
  t.U1(3, 1) = 1.0;  // |11><01|
  t.U2 = Mat::Zero(4, 4);
  t.U2(0, 0) = 1.0;
  t.U2(1, 2) = 1.0;  // |01><10|
  t.U2(2, 1) = 1.0;  // |10><01|
  t.U2(3, 3) = 1.0;
  return t;
}

// H = sum_i J_i^z + J_1^x J_2^x + J_2^x J_3^x; wall = middle spin; the
// designated control is H_u = |-><-| - |+><+| = -2 J_x.
inline ModelSpec transversal_ising3() {
  ModelSpec m;
  m.id = "ising3";
  m.dims = {2, 2, 2};
  m.H = spin_op(3, 1, Axis::Z) + spin_op(3, 2, Axis::Z) + spin_op(3, 3, Axis::Z) +
        spin_op(3, 1, Axis::X) * spin_op(3, 2, Axis::X) +
        spin_op(3, 2, Axis::X) * spin_op(3, 3, Axis::X);
  m.Hu = Mat(-pauli(Axis::X));  // -2 J_x on the wall spin
  Vec minus(2);
  minus << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  m.w_hat = minus;
  return m;
}

// Five-site chain with nearest-neighbour ZZ/XX+YY couplings and three-body
// ZZZ and XZX+YZY terms; logical = sites (1,2), wall = site 3,
// environment = sites (4,5).
inline ModelSpec spin_lattice5() {
  ModelSpec m;
  m.id = "lattice5";
  m.dims = {4, 2, 4};
  const int N = 5;
  const double omega[5] = {1.13, 1.13, 1.55, 2.51, 2.51};
  const double gzz[4] = {0.77, 0.77, 0.46, 0.46};
  const double gxx[4] = {0.21, 0.21, 0.19, 0.19};
  const double gzzz = 0.08, gxzx = 0.06;
  const int dim = 1 << N;
  m.H = Mat::Zero(dim, dim);
  auto J = [&](int i, Axis a) { return spin_op(N, i, a); };
  for (int i = 1; i <= N; ++i) m.H += omega[i - 1] * J(i, Axis::Z);
  for (int i = 1; i < N; ++i) {
    m.H += gzz[i - 1] * J(i, Axis::Z) * J(i + 1, Axis::Z);
    m.H += gxx[i - 1] * (J(i, Axis::X) * J(i + 1, Axis::X) +
                         J(i, Axis::Y) * J(i + 1, Axis::Y));
  }
  for (int i = 1; i + 2 <= N; ++i) {
    m.H += gzzz * J(i, Axis::Z) * J(i + 1, Axis::Z) * J(i + 2, Axis::Z);
    m.H += gxzx * (J(i, Axis::X) * J(i + 1, Axis::Z) * J(i + 2, Axis::X) +
                   J(i, Axis::Y) * J(i + 1, Axis::Z) * J(i + 2, Axis::Y));
  }
  m.params = {{"omega_1", 1.13}, {"omega_3", 1.55}, {"omega_4", 2.51},
              {"g_zz_12", 0.77}, {"g_zz_34", 0.46}, {"g_xx_12", 0.21},
              {"g_xx_34", 0.19}, {"g_zzz", gzzz},   {"g_xzx", gxzx}};
  return m;
}

// Central spin-3/2 coupled to four bath qubits.  The system's J^z eigenbasis
// (m = 3/2, 1/2, -1/2, -3/2) maps onto two virtual qubits |00>,|01>,|10>,|11>
// giving dims (2, 2, 16); this ordering is exactly how spin32_op is laid out,
// so no reshuffling is needed.  The bath pairwise term runs over i < j.
inline ModelSpec central_spin() {
  ModelSpec m;
  m.id = "central-spin";
  m.dims = {2, 2, 16};
  const int Nb = 4;
  const double omega_s = 1.01, eta_s = 0.0;
  const double Ax = 0.71, Ay = 0.0, Az = 0.19;
  const double omega_e = 1.92, eta_e = 0.0, lambda_e = 0.31;
  const int de = 1 << Nb;
  Mat Ie = Mat::Identity(de, de), Is = Mat::Identity(4, 4);
  Mat SxSum = Mat::Zero(de, de), SySum = Mat::Zero(de, de), SzSum = Mat::Zero(de, de);
  for (int i = 1; i <= Nb; ++i) {
    SxSum += spin_op(Nb, i, Axis::X);
    SySum += spin_op(Nb, i, Axis::Y);
    SzSum += spin_op(Nb, i, Axis::Z);
  }
  Mat He = omega_e * SzSum + eta_e * SxSum;
  for (int i = 1; i <= Nb; ++i)
    for (int j = i + 1; j <= Nb; ++j)
      He += lambda_e * spin_op(Nb, i, Axis::X) * spin_op(Nb, j, Axis::X);
  m.H = kron(Mat(omega_s * spin32_op(Axis::Z) + eta_s * spin32_op(Axis::X)), Ie) +
        Ax * kron(spin32_op(Axis::X), SxSum) + Ay * kron(spin32_op(Axis::Y), SySum) +
        Az * kron(spin32_op(Axis::Z), SzSum) + kron(Is, He);
  m.params = {{"omega_s", omega_s}, {"eta_s", eta_s},   {"A_x", Ax},
              {"A_y", Ay},          {"A_z", Az},        {"omega_e", omega_e},
              {"eta_e", eta_e},     {"lambda_e", lambda_e}, {"N_bath", double(Nb)}};
  return m;
}

// L = Lambda (J_site^x + i J_site^y), the raising operator at one bath site.
inline Mat pumping_operator(int N, int site, double Lambda) {
  Mat op = spin_op(N, site, Axis::X) + cplx(0, 1) * spin_op(N, site, Axis::Y);
  return Lambda * op;
}

// Three-qubit model for the eternal-bound analysis:
// H0 = J_1^z + J_2^z + J_3^z + J_1^z J_2^z + J_2^x J_3^z, driven on the wall
// (middle) qubit with H_u = sigma_z; the designated wall state is |0>.
inline ModelSpec eternal_example() {
  ModelSpec m;
  m.id = "eternal3q";
  m.dims = {2, 2, 2};
  m.H = spin_op(3, 1, Axis::Z) + spin_op(3, 2, Axis::Z) + spin_op(3, 3, Axis::Z) +
        spin_op(3, 1, Axis::Z) * spin_op(3, 2, Axis::Z) +
        spin_op(3, 2, Axis::X) * spin_op(3, 3, Axis::Z);
  m.Hu = pauli(Axis::Z);
  Vec w0 = Vec::Zero(2);
  w0(0) = 1.0;
  m.w_hat = w0;
  return m;
}

// Closed-form spectrum of the driven eternal-bound model, ascending.
inline RVec eternal_example_spectrum(double kappa) {
  const double c = 1.0 / (2.0 * std::sqrt(2.0));
  double ra = c * std::sqrt(1.0 + 4.0 * kappa + 8.0 * kappa * kappa);
  double rb = c * std::sqrt(5.0 + 12.0 * kappa + 8.0 * kappa * kappa);
  RVec lam(8);
  lam << -1.0 - ra, -rb, -ra, 1.0 - rb, -1.0 + ra, ra, rb, 1.0 + rb;
  return lam;
}

inline ModelSpec model_by_id(const std::string& id) {
  if (id == "ising3") return transversal_ising3();
  if (id == "toy-reg") return toy_regularization_model().spec;
  if (id == "lattice5") return spin_lattice5();
  if (id == "central-spin") return central_spin();
  if (id == "eternal3q") return eternal_example();
  throw Error("unknown model id: " + id);
}

}  // namespace wallkit
