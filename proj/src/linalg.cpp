#include "ncg/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace ncg {

namespace {

Eigen::JacobiSVD<CMatrix> thin_svd(const CMatrix& m, bool u, bool v) {
  unsigned opts = 0;
  if (u) opts |= Eigen::ComputeThinU;
  if (v) opts |= Eigen::ComputeThinV;
  return Eigen::JacobiSVD<CMatrix>(m, opts);
}

}  // namespace

Svd svd(const CMatrix& m, SvdVectors vectors) {
  Svd out;
  unsigned opts = 0;
  if (vectors == SvdVectors::thin) opts = Eigen::ComputeThinU | Eigen::ComputeThinV;
  if (vectors == SvdVectors::full) opts = Eigen::ComputeFullU | Eigen::ComputeFullV;
  if (m.size() == 0) {
    out.s = RVector(0);
    bool full = vectors == SvdVectors::full;
    out.u = full ? identity(m.rows()) : CMatrix(m.rows(), 0);
    out.v = full ? identity(m.cols()) : CMatrix(m.cols(), 0);
    return out;
  }
  Eigen::JacobiSVD<CMatrix> d(m, opts);
  out.s = d.singularValues();
  if (opts) {
    out.u = d.matrixU();
    out.v = d.matrixV();
  }
  return out;
}

namespace {

Index count_above(const RVector& s, double tol, double floor) {
  if (s.size() == 0) return 0;
  double cut = tol * std::max(s(0), floor);
  if (!(cut > 0)) cut = 1e-300;
  Index r = 0;
  while (r < s.size() && s(r) > cut) ++r;
  return r;
}

}  // namespace

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix identity(Index n) { return CMatrix::Identity(n, n); }

CVector vec(const CMatrix& x) {
  return Eigen::Map<const CVector>(x.data(), x.size());
}

CMatrix unvec(const CVector& v, Index n) {
  if (v.size() != n * n) throw dimension_error("unvec: length is not n*n");
  return Eigen::Map<const CMatrix>(v.data(), n, n);
}

RVector singular_values(const CMatrix& m) {
  if (m.size() == 0) return RVector();
  return thin_svd(m, false, false).singularValues();
}

Index numerical_rank(const CMatrix& m, double tol, double floor) {
  return count_above(singular_values(m), tol, floor);
}

CMatrix orth_columns(const CMatrix& m, double tol, double floor) {
  if (m.size() == 0) return CMatrix(m.rows(), 0);
  if (std::min(m.rows(), m.cols()) > 256) {
    // jacobi is too slow on the big sampled spans; column-pivoted qr reveals
    // the rank well enough when the gap is many orders wide, as it is here
    Eigen::ColPivHouseholderQR<CMatrix> qr(m);
    Index n = std::min(m.rows(), m.cols());
    RVector d = qr.matrixR().diagonal().head(n).cwiseAbs();
    Index r = count_above(d, tol, floor);
    return qr.householderQ() * CMatrix::Identity(m.rows(), r);
  }
  auto svd = thin_svd(m, true, false);
  Index r = count_above(svd.singularValues(), tol, floor);
  return svd.matrixU().leftCols(r);
}

CMatrix row_space(const CMatrix& m, double tol, double floor) {
  if (m.size() == 0) return CMatrix(m.cols(), 0);
  auto svd = thin_svd(m, false, true);
  Index r = count_above(svd.singularValues(), tol, floor);
  return svd.matrixV().leftCols(r);
}

// SpanAccumulator

SpanAccumulator::SpanAccumulator(Index rows, Index batch)
    : rows_(rows), batch_(std::max<Index>(batch, 1)), us_(rows, 0) {}

void SpanAccumulator::add(const CVector& col) {
  if (col.size() != rows_) throw dimension_error("SpanAccumulator: wrong length");
  pending_.push_back(col);
  if (Index(pending_.size()) >= batch_) compress();
}

void SpanAccumulator::add(const CMatrix& cols) {
  if (cols.rows() != rows_) throw dimension_error("SpanAccumulator: wrong length");
  for (Index j = 0; j < cols.cols(); ++j) add(CVector(cols.col(j)));
}

void SpanAccumulator::compress() {
  if (pending_.empty()) return;
  CMatrix m(rows_, us_.cols() + Index(pending_.size()));
  m.leftCols(us_.cols()) = us_;
  for (std::size_t j = 0; j < pending_.size(); ++j) m.col(us_.cols() + Index(j)) = pending_[j];
  pending_.clear();
  auto svd = thin_svd(m, true, false);
  const RVector& s = svd.singularValues();
  // keep everything above rounding level, final cutoff is applied in finish
  Index r = count_above(s, 1e-15, 0.0);
  us_ = svd.matrixU().leftCols(r) * s.head(r).asDiagonal();
}

double SpanAccumulator::max_singular() const {
  double m = 0;
  for (Index j = 0; j < us_.cols(); ++j) m = std::max(m, us_.col(j).norm());
  for (const auto& p : pending_) m = std::max(m, p.norm());
  return m;
}

CMatrix SpanAccumulator::finish(double tol, double floor) {
  compress();
  if (us_.cols() == 0) return CMatrix(rows_, 0);
  RVector s(us_.cols());
  for (Index j = 0; j < us_.cols(); ++j) s(j) = us_.col(j).norm();
  Index r = count_above(s, tol, floor);
  CMatrix q(rows_, r);
  for (Index j = 0; j < r; ++j) q.col(j) = us_.col(j) / s(j);
  return q;
}

// OperatorSpan

OperatorSpan::OperatorSpan(Index ambient_dim, CMatrix q, double tol)
    : n_(ambient_dim), q_(std::move(q)), tol_(tol) {
  if (q_.rows() != n_ * n_) throw dimension_error("OperatorSpan: basis length is not n*n");
}

CMatrix OperatorSpan::basis(Index i) const {
  return unvec(q_.col(i), n_) * std::sqrt(double(n_));
}

std::vector<CMatrix> OperatorSpan::basis() const {
  std::vector<CMatrix> out;
  for (Index i = 0; i < dim(); ++i) out.push_back(basis(i));
  return out;
}

CVector OperatorSpan::coords(const CMatrix& x) const {
  if (x.rows() != n_ || x.cols() != n_) throw dimension_error("OperatorSpan: ambient mismatch");
  return q_.adjoint() * vec(x) / std::sqrt(double(n_));
}

CMatrix OperatorSpan::element(const CVector& c) const {
  if (c.size() != dim()) throw dimension_error("OperatorSpan: coordinate length");
  return unvec(q_ * c, n_) * std::sqrt(double(n_));
}

CMatrix OperatorSpan::project(const CMatrix& x) const {
  if (x.rows() != n_ || x.cols() != n_) throw dimension_error("OperatorSpan: ambient mismatch");
  if (dim() == 0) return CMatrix::Zero(n_, n_);
  return unvec(q_ * (q_.adjoint() * vec(x)), n_);
}

double OperatorSpan::residual(const CMatrix& x) const { return (x - project(x)).norm(); }

bool OperatorSpan::contains(const CMatrix& x) const {
  return residual(x) <= tol_ * x.norm();
}

OperatorSpan orthonormalize(const std::vector<CMatrix>& gens, double tol) {
  if (gens.empty()) return OperatorSpan(0, CMatrix(0, 0), tol);
  Index n = gens.front().rows();
  CMatrix m(n * n, Index(gens.size()));
  for (std::size_t j = 0; j < gens.size(); ++j) {
    if (gens[j].rows() != n || gens[j].cols() != n)
      throw dimension_error("orthonormalize: generators differ in shape");
    m.col(Index(j)) = vec(gens[j]);
  }
  return OperatorSpan(n, orth_columns(m, tol), tol);
}

OperatorSpan span_from_vecs(Index n, const CMatrix& vecs, double tol) {
  return OperatorSpan(n, orth_columns(vecs, tol), tol);
}

OperatorSpan span_sum(const OperatorSpan& a, const OperatorSpan& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw dimension_error("span_sum: ambient mismatch");
  CMatrix m(a.columns().rows(), a.dim() + b.dim());
  m << a.columns(), b.columns();
  double tol = std::max(a.tol(), b.tol());
  return OperatorSpan(a.ambient_dim(), orth_columns(m, tol), tol);
}

CMatrix span_project(const OperatorSpan& s, const CMatrix& x) { return s.project(x); }

bool span_contains(const OperatorSpan& s, const CMatrix& x) { return s.contains(x); }

OperatorSpan span_complement(const OperatorSpan& a, const OperatorSpan& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw dimension_error("span_complement: ambient mismatch");
  CMatrix m = a.columns() - b.columns() * (b.columns().adjoint() * a.columns());
  return OperatorSpan(a.ambient_dim(), orth_columns(m, a.tol(), 1.0), a.tol());
}

double projector_distance(const OperatorSpan& a, const OperatorSpan& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw dimension_error("projector_distance: ambient mismatch");
  // ||QQ* - RR*||^2 = ||(1 - RR*)Q||^2 + ||(1 - QQ*)R||^2, free of cancellation
  const CMatrix& q = a.columns();
  const CMatrix& r = b.columns();
  double d2 = (q - r * (r.adjoint() * q)).squaredNorm() + (r - q * (q.adjoint() * r)).squaredNorm();
  return std::sqrt(d2);
}

// LinearMap

LinearMap::LinearMap(CMatrix m)
    : domain_dim(m.cols()), codomain_dim(m.rows()), matrix(std::move(m)) {}

LinearMap kernel_projector(const LinearMap& p, double tol) {
  CMatrix v = row_space(p.matrix, tol);
  CMatrix pi = CMatrix::Identity(p.domain_dim, p.domain_dim) - v * v.adjoint();
  return LinearMap(std::move(pi));
}

Index rank(const LinearMap& p, double tol) { return numerical_rank(p.matrix, tol); }

Index rank(const CMatrix& m, double tol, double floor) { return numerical_rank(m, tol, floor); }

RVector eig_hermitian(const CMatrix& h, double tol) {
  if (h.rows() != h.cols()) throw dimension_error("eig_hermitian: not square");
  double asym = (h - h.adjoint()).norm();
  if (asym > tol * std::max(h.norm(), 1e-300) && asym > 0)
    throw contract_violation("eig_hermitian: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

}  // namespace ncg
