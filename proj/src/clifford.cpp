#include "ncg/clifford.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ncg {

namespace {

void check_metric(const RMatrix& g) {
  if (g.rows() != g.cols() || g.rows() == 0)
    throw contract_violation("metric must be square and nonempty");
  if ((g - g.transpose()).norm() > 1e-12 * std::max(1.0, g.norm()))
    throw contract_violation("metric must be symmetric");
  Eigen::LLT<RMatrix> llt(g);
  if (llt.info() != Eigen::Success) throw contract_violation("metric must be positive definite");
}

// sum over permutations of the ordered product, weighted by the sign
CMatrix antisym_product(const std::vector<CMatrix>& ops, Index dim) {
  int n = int(ops.size());
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  CMatrix sum = CMatrix::Zero(dim, dim);
  do {
    CMatrix term = identity(dim);
    for (int i : p) term = term * ops[i];
    sum += levi_civita(p) * term;
  } while (std::next_permutation(p.begin(), p.end()));
  return sum;
}

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

}  // namespace

double levi_civita(const std::vector<int>& idx) {
  int n = int(idx.size());
  double s = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (idx[i] == idx[j]) return 0;
      if (idx[i] > idx[j]) s = -s;
    }
  return s;
}

FermionAlgebra build_fermion_algebra(const RMatrix& g) {
  check_metric(g);
  FermionAlgebra alg;
  alg.n_modes = g.rows();
  alg.dim = Index(1) << alg.n_modes;
  alg.g = g;
  alg.g_inv = g.inverse();
  CMatrix lower(2, 2), z(2, 2), id2 = identity(2);
  lower << 0, 1, 0, 0;  // |1> -> |0>
  z << 1, 0, 0, -1;
  // jordan-wigner, mode 0 is the most significant occupation bit
  for (Index i = 0; i < alg.n_modes; ++i) {
    CMatrix op = identity(1);
    for (Index j = 0; j < alg.n_modes; ++j) op = kron(op, j < i ? z : (j == i ? lower : id2));
    alg.a.push_back(op);
    alg.adag.push_back(op.adjoint());
  }
  // c^A = sum_i L_Ai a_i with L L^T = g^-1
  RMatrix l = Eigen::LLT<RMatrix>(alg.g_inv).matrixL();
  for (Index A = 0; A < alg.n_modes; ++A) {
    CMatrix c = CMatrix::Zero(alg.dim, alg.dim);
    for (Index i = 0; i < alg.n_modes; ++i) c += l(A, i) * alg.a[i];
    alg.c.push_back(c);
    alg.cdag.push_back(c.adjoint());
  }
  return alg;
}

CMatrix FermionAlgebra::number() const {
  CMatrix n = CMatrix::Zero(dim, dim);
  for (Index i = 0; i < n_modes; ++i) n += adag[i] * a[i];
  return n;
}

double FermionAlgebra::car_residual() const {
  double r = 0;
  CMatrix id = identity(dim);
  for (Index i = 0; i < n_modes; ++i)
    for (Index j = 0; j < n_modes; ++j) {
      r = std::max(r, anticommutator(a[i], a[j]).norm());
      r = std::max(r, (anticommutator(a[i], adag[j]) - (i == j ? 1.0 : 0.0) * id).norm());
    }
  return r;
}

double FermionAlgebra::raised_residual() const {
  double r = 0;
  CMatrix id = identity(dim);
  for (Index i = 0; i < n_modes; ++i)
    for (Index j = 0; j < n_modes; ++j) {
      r = std::max(r, anticommutator(c[i], c[j]).norm());
      r = std::max(r, (anticommutator(c[i], cdag[j]) - g_inv(i, j) * id).norm());
    }
  return r;
}

GammaPair gamma_pair(const FermionAlgebra& alg) {
  GammaPair gp;
  const cplx I(0, 1);
  for (Index A = 0; A < alg.n_modes; ++A) {
    CMatrix gam = alg.cdag[A] - alg.c[A];
    CMatrix gbar = I * (alg.cdag[A] + alg.c[A]);
    gp.gamma.push_back(gam);
    gp.gamma_bar.push_back(gbar);
    gp.psi.push_back(-I * gam);
    gp.psi_bar.push_back(I * gbar);
  }
  return gp;
}

double clifford_residual(const FermionAlgebra& alg, const GammaPair& gp) {
  double r = 0;
  CMatrix id = identity(alg.dim);
  for (Index A = 0; A < alg.n_modes; ++A)
    for (Index B = 0; B < alg.n_modes; ++B) {
      CMatrix target = -2.0 * alg.g_inv(A, B) * id;
      r = std::max(r, (anticommutator(gp.gamma[A], gp.gamma[B]) - target).norm());
      r = std::max(r, (anticommutator(gp.gamma_bar[A], gp.gamma_bar[B]) - target).norm());
      r = std::max(r, anticommutator(gp.gamma[A], gp.gamma_bar[B]).norm());
      r = std::max(r, (anticommutator(gp.psi[A], gp.psi[B]) + target).norm());
      r = std::max(r, (anticommutator(gp.psi_bar[A], gp.psi_bar[B]) + target).norm());
    }
  return r;
}

CMatrix volume_2d(const std::vector<CMatrix>& gammas, const RMatrix& g) {
  if (gammas.size() != 2) throw dimension_error("volume_2d needs two gammas");
  const cplx I(0, 1);
  double sg = std::sqrt(g.determinant());
  // eps_{mu nu} with lowered indices equals the symbol itself
  return 0.5 * I * sg * (gammas[0] * gammas[1] - gammas[1] * gammas[0]);
}

CMatrix grading_volume(const FermionAlgebra& alg, VolumeKind which) {
  const cplx I(0, 1);
  double sg = std::sqrt(alg.g.determinant());
  GammaPair gp = gamma_pair(alg);
  switch (which) {
    case VolumeKind::both_copies: {
      if (alg.n_modes != 3) throw dimension_error("grading_volume(both_copies) needs 3 modes");
      // (1/(i 3!^2)) g eps eps psi psi psi psibar psibar psibar
      CMatrix p = antisym_product(gp.psi, alg.dim);
      CMatrix pb = antisym_product(gp.psi_bar, alg.dim);
      double detg = alg.g.determinant();
      CMatrix out = (detg / (I * 36.0)) * p * pb;
      // phase fixed so the vacuum has eigenvalue +1
      cplx v = out(0, 0);
      if (std::abs(v) > 0.5) out *= std::conj(v) / std::abs(v);
      return out;
    }
    case VolumeKind::single_copy: {
      if (alg.n_modes != 2) throw dimension_error("grading_volume(single_copy) needs 2 modes");
      return volume_2d(gp.gamma, alg.g);
    }
    case VolumeKind::hodge: {
      std::vector<CMatrix> x;
      for (Index A = 0; A < alg.n_modes; ++A) x.push_back(alg.c[A] + alg.cdag[A]);
      return (sg / factorial(int(alg.n_modes))) * antisym_product(x, alg.dim);
    }
  }
  throw contract_violation("grading_volume: unknown kind");
}

CMatrix charge_conjugation(const std::vector<CMatrix>& gammas, double tol) {
  if (gammas.empty()) throw dimension_error("charge_conjugation: no gammas");
  Index d = gammas.front().rows();
  // solve C g - (-conj g) C = 0 as a linear system on vec(C)
  CMatrix sys(gammas.size() * d * d, d * d);
  CMatrix id = identity(d);
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    const CMatrix& gm = gammas[i];
    CMatrix gc = -gm.conjugate();
    // vec(C G) = (G^T kron I) vec C, vec(H C) = (I kron H) vec C
    sys.block(Index(i) * d * d, 0, d * d, d * d) = kron(gm.transpose(), id) - kron(id, gc);
  }
  Svd svd = ncg::svd(sys, SvdVectors::full);
  const RVector& s = svd.singularValues();
  Index last = d * d - 1;
  double smax = s.size() ? s(0) : 1.0;
  double smin = last < s.size() ? s(last) : 0.0;
  if (smin > tol * std::max(smax, 1.0)) throw model_error("charge_conjugation: no intertwiner");
  CMatrix c = unvec(svd.matrixV().col(last), d);
  // unitary normalization: C*C proportional to I
  double scale = std::sqrt((c.adjoint() * c).trace().real() / double(d));
  c /= scale;
  // fix the phase so C is self-adjoint, then the sign by the first nonzero entry
  for (Index k = 0; k < c.size(); ++k) {
    cplx v = c.data()[k];
    if (std::abs(v) > 1e-8) {
      c *= std::conj(v) / std::abs(v);
      break;
    }
  }
  if ((c - c.adjoint()).norm() > 1e-8 || (c * c - id).norm() > 1e-8)
    throw model_error("charge_conjugation: solution is not self-adjoint involutive");
  return c;
}

}  // namespace ncg
