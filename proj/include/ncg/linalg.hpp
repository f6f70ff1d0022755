#pragma once
// dense complex linear algebra and operator subspaces

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncg {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double default_tol = 1e-9;

struct dimension_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct contract_violation : std::logic_error {
  using std::logic_error::logic_error;
};
struct model_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct configuration_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class DA, class DB>
CMatrix commutator(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  return a * b - b * a;
}

template <class DA, class DB>
CMatrix anticommutator(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  return a * b + b * a;
}

// graded commutator, sign = (-1)^{deg a * deg b}
template <class DA, class DB>
CMatrix graded_commutator(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b,
                          bool both_odd) {
  return both_odd ? CMatrix(a * b + b * a) : CMatrix(a * b - b * a);
}

// normalized Hilbert-Schmidt product Tr(X* Y)/dim
template <class DA, class DB>
cplx hs_inner(const Eigen::MatrixBase<DA>& x, const Eigen::MatrixBase<DB>& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols() || x.rows() != x.cols())
    throw dimension_error("hs_inner: shapes differ or not square");
  if (x.rows() == 0) return cplx(0);
  return x.conjugate().cwiseProduct(y).sum() / double(x.rows());
}

// norm induced by hs_inner; all reported residuals use it
template <class D>
double hs_norm(const Eigen::MatrixBase<D>& x) {
  return x.rows() == 0 ? 0.0 : x.norm() / std::sqrt(double(x.rows()));
}

CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix identity(Index n);

// column-major vec and its inverse
CVector vec(const CMatrix& x);
CMatrix unvec(const CVector& v, Index n);

// one-sided jacobi svd. eigen 3.4.0 BDCSVD loses small singular values on
// the rank-deficient differentials here, so it is not used anywhere
enum class SvdVectors { none, thin, full };
struct Svd {
  RVector s;
  CMatrix u, v;  // m = u diag(s) v*
  const RVector& singularValues() const { return s; }
  const CMatrix& matrixU() const { return u; }
  const CMatrix& matrixV() const { return v; }
};
Svd svd(const CMatrix& m, SvdVectors vectors = SvdVectors::none);

// orthonormal basis of the column space; singular values <= tol*smax dropped
// floor: absolute scale below which everything counts as zero (cutoff is
// tol*max(smax, floor)); guards against pure rounding noise
CMatrix orth_columns(const CMatrix& m, double tol = default_tol, double floor = 0.0);
RVector singular_values(const CMatrix& m);
Index numerical_rank(const CMatrix& m, double tol = default_tol, double floor = 0.0);

// exact incremental column-space accumulation: keeps U*S of everything
// added so far, so the final cutoff equals the one-shot SVD cutoff
class SpanAccumulator {
 public:
  explicit SpanAccumulator(Index rows, Index batch = 2048);
  void add(const CVector& col);
  void add(const CMatrix& cols);
  // orthonormal columns, cutoff relative to the largest singular value
  CMatrix finish(double tol = default_tol, double floor = 0.0);
  double max_singular() const;
  Index rows() const { return rows_; }

 private:
  void compress();
  Index rows_, batch_;
  CMatrix us_;
  std::vector<CVector> pending_;
};

class OperatorSpan {
 public:
  OperatorSpan() = default;
  OperatorSpan(Index ambient_dim, CMatrix q, double tol);

  Index ambient_dim() const { return n_; }
  Index dim() const { return q_.cols(); }
  double tol() const { return tol_; }
  // basis element i, orthonormal for hs_inner
  CMatrix basis(Index i) const;
  std::vector<CMatrix> basis() const;
  // euclidean-orthonormal vec columns
  const CMatrix& columns() const { return q_; }
  CVector coords(const CMatrix& x) const;  // hs_inner(basis(i), x)
  CMatrix element(const CVector& c) const;
  CMatrix project(const CMatrix& x) const;
  bool contains(const CMatrix& x) const;
  double residual(const CMatrix& x) const;  // ||x - project(x)||

 private:
  Index n_ = 0;
  CMatrix q_;
  double tol_ = default_tol;
};

OperatorSpan orthonormalize(const std::vector<CMatrix>& gens, double tol = default_tol);
OperatorSpan span_from_vecs(Index n, const CMatrix& vecs, double tol = default_tol);
OperatorSpan span_sum(const OperatorSpan& a, const OperatorSpan& b);
CMatrix span_project(const OperatorSpan& s, const CMatrix& x);
bool span_contains(const OperatorSpan& s, const CMatrix& x);
// orthocomplement of b inside a
OperatorSpan span_complement(const OperatorSpan& a, const OperatorSpan& b);
// ||P_a - P_b|| in Frobenius norm on the vec space
double projector_distance(const OperatorSpan& a, const OperatorSpan& b);

struct LinearMap {
  Index domain_dim = 0, codomain_dim = 0;
  CMatrix matrix;
  LinearMap() = default;
  explicit LinearMap(CMatrix m);
};

LinearMap kernel_projector(const LinearMap& p, double tol = default_tol);
Index rank(const LinearMap& p, double tol = default_tol);
Index rank(const CMatrix& m, double tol = default_tol, double floor = 0.0);
RVector eig_hermitian(const CMatrix& h, double tol = default_tol);

// right-singular vectors spanning the row space (thin, rank r)
CMatrix row_space(const CMatrix& m, double tol = default_tol, double floor = 0.0);

}  // namespace ncg
