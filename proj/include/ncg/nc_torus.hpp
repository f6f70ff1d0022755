#pragma once
// rational non-commutative torus: N=1 data on M_N (x) C^2, the doubled N=(1,1)
// data on M_N (x) C^2 (x) C^2 and its kahler extension

#include "ncg/geometry.hpp"
#include "ncg/report.hpp"
#include "ncg/spectral_forms.hpp"

#include <array>

namespace ncg {

struct usage_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// hilbert index (r*N + c)*2 + s for the matrix entry (r, c) and spinor s;
// the algebra acts by left multiplication, a (x) 1_{2N}.
// classical (M = 0): K = functions on Z_N^2, index x1*N + x2, the algebra is
// the diagonal multiplication operators and U, V, parity are N^2 x N^2
struct TorusModel {
  int M = 0, N = 0;
  RMatrix metric;                  // g_{mu nu}
  CMatrix U, V;                    // shift and clock, UV = e^{-2 pi i M/N} VU
  std::array<CMatrix, 2> gammas;   // 2x2, {g^mu, g^nu} = -2 g^{mu nu}, anti-hermitian
  CMatrix sigma;                   // (i/2) sqrt(g) eps g g
  std::array<CMatrix, 2> S;        // N^2 x N^2 sine multipliers on the fourier basis
  CMatrix parity;                  // P e_k = e_{-k}, P U P = U*, P V P = V*
  SpectralData data;               // N1
  bool classical = false;          // M = 0, outside the coprime contract

  double alpha() const { return double(M) / double(N); }
  // dimension of the algebra (N^2 in both cases)
  Index algebra_dim() const { return Index(N) * N; }
  CMatrix left(const CMatrix& a) const;     // a acting on H
  CMatrix left_k(const CMatrix& a) const;   // a acting on the function factor K, dim N^2
  CMatrix right_k(const CMatrix& a) const;  // right multiplication by a on K
  CMatrix theta(const CMatrix& a) const { return parity * a * parity; }
  CMatrix fourier(int p1, int p2) const;    // U^p1 V^p2
  CMatrix random_element(std::mt19937_64& rng) const;
  CMatrix j0;  // J0 xi = j0 conj(xi) on K, J0 a J0^-1 = right multiplication by theta(a*)
};

// centered representative of p mod N in (-N/2, N/2]
int centered(int p, int N);
// sin(pi p / N) / (pi / N) on the centered representative
double sine_symbol(int p, int N);

// throws usage_error unless gcd(M, N) = 1 (or M = 0) and N >= 2
TorusModel build_torus(int M, int N, const RMatrix& metric = RMatrix::Identity(2, 2));

struct TorusOptions {
  Index max_degree = 3;
  bool solve_connection = true;
  Progress progress;
};

struct TorusReport {
  std::vector<Index> pi_dims, junk_dims, canon_dims, module_ranks, betti;
  bool cotangent_free = false;
  Index lc_homogeneous_dim = -1;
  double lc_coefficient_norm = -1;  // max |Gamma| of the particular solution
  double scalar_norm = -1;
  ModelReport report;
  bool pass() const { return report.pass(); }
};

TorusReport torus_report(const TorusModel& m, const TorusOptions& opts = {});

// nabla e_i = omega_{mu i}^j gamma^mu (x) e_j; omega[mu][i][j] in M_N
using SpinConnection = std::array<std::array<std::array<CMatrix, 2>, 2>, 2>;
SpinConnection zero_spin_connection(const TorusModel& m);
SpinConnection random_spin_connection(const TorusModel& m, std::mt19937_64& rng);

// index ((r*N + c)*2 + i)*2 + j for the coefficient a^{ij}_{rc} of e_i (x) a^{ij} e_j
struct DoubledTorus {
  TorusModel base;
  SpinConnection omega;
  CMatrix C;                       // C g = -conj(g) C, C = C* = C^-1
  CMatrix J;                       // J xi = J conj(xi) on H
  CMatrix Dc, Dcbar;               // the two dirac operators
  CMatrix gamma, gamma_bar, Gamma, star, T;
  CMatrix d;                       // (1/2)(Dc - i Dcbar)
  SpectralData data;               // N11: d, Gamma, * = gamma_bar
};

DoubledTorus build_doubled(const TorusModel& m, const SpinConnection& omega);

struct DoubledReport {
  std::array<double, 4> relations{};  // Dc* = Dc, Dcbar* = Dcbar, {Dc, Dcbar}, Dc^2 - Dcbar^2
  double grading_residual = 0;        // [T, d] - d
  int j_square = 0, j_gamma = 0, j_dirac = 0;  // signs read off, 0 when none fits
  double first_order = 0;             // max |[JaJ*, b]|, |[JaJ*, [D, b]]|
  ModelReport report;
  double max_relation() const;
};

DoubledReport doubled_report(const DoubledTorus& t, double tol = 1e-10);

struct KahlerTorus {
  CMatrix I1, I2, d1, d2, d3, del, delbar, T, Tbar;
  SpectralData data;  // Kahler flavor
};

// throws model_error when the doubled data carry a nonzero connection
KahlerTorus build_kahler(const DoubledTorus& t);

struct KahlerReport {
  std::vector<Index> bigrade_ranks;  // ranks of (1,0) and (0,1) forms
  ModelReport report;
};

KahlerReport kahler_report(const KahlerTorus& k, double tol = 1e-10);

}  // namespace ncg
