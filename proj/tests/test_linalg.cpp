#include "ncg/linalg.hpp"

#include <doctest.h>

#include <random>

using namespace ncg;

namespace {

CMatrix random_matrix(Index r, Index c, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  CMatrix m(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) m(i, j) = cplx(n(rng), n(rng));
  return m;
}

CMatrix random_unitary(Index n, std::mt19937_64& rng) {
  Eigen::HouseholderQR<CMatrix> qr(random_matrix(n, n, rng));
  return qr.householderQ() * CMatrix::Identity(n, n);
}

// projector onto the column space of an orthonormal q
CMatrix proj(const CMatrix& q) { return q * q.adjoint(); }

}  // namespace

TEST_CASE("kron matches the index formula") {
  std::mt19937_64 rng(1);
  CMatrix a = random_matrix(2, 3, rng), b = random_matrix(3, 2, rng);
  CMatrix k = kron(a, b);
  REQUIRE(k.rows() == 6);
  REQUIRE(k.cols() == 6);
  double err = 0;
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 3; ++j)
      for (Index p = 0; p < 3; ++p)
        for (Index q = 0; q < 2; ++q) err = std::max(err, std::abs(k(i * 3 + p, j * 2 + q) - a(i, j) * b(p, q)));
  CHECK(err == 0.0);
}

TEST_CASE("vec and unvec are inverse, column-major") {
  std::mt19937_64 rng(2);
  CMatrix x = random_matrix(4, 4, rng);
  CVector v = vec(x);
  CHECK(v(1) == x(1, 0));
  CHECK(v(4) == x(0, 1));
  CHECK((unvec(v, 4) - x).norm() == 0.0);
}

TEST_CASE("hs inner product is the normalized trace") {
  std::mt19937_64 rng(3);
  CMatrix x = random_matrix(5, 5, rng), y = random_matrix(5, 5, rng);
  cplx want = (x.adjoint() * y).trace() / 5.0;
  CHECK(std::abs(hs_inner(x, y) - want) < 1e-12);
  CHECK(std::abs(hs_norm(x) - std::sqrt(hs_inner(x, x).real())) < 1e-12);
  CHECK(hs_norm(identity(7)) == doctest::Approx(1.0));
  CHECK_THROWS_AS(hs_inner(x, CMatrix(random_matrix(4, 4, rng))), dimension_error);
}

TEST_CASE("svd recovers planted singular values spanning many decades") {
  std::mt19937_64 rng(4);
  const Index n = 40;
  RVector s(n);
  for (Index i = 0; i < n; ++i) s(i) = std::pow(10.0, -0.3 * double(i));  // 1 .. 1e-11.7
  CMatrix u = random_unitary(n, rng), v = random_unitary(n, rng);
  CMatrix m = u * s.cast<cplx>().asDiagonal() * v.adjoint();
  Svd d = svd(m, SvdVectors::thin);
  for (Index i = 0; i < n; ++i) CHECK(std::abs(d.s(i) - s(i)) <= 1e-14);
  CHECK((d.u * d.s.cast<cplx>().asDiagonal() * d.v.adjoint() - m).norm() < 1e-13);
}

TEST_CASE("rank of a planted rank-deficient matrix") {
  std::mt19937_64 rng(5);
  for (Index r : {0, 1, 7, 19}) {
    CMatrix m = random_matrix(30, r, rng) * random_matrix(r, 50, rng);
    CHECK(numerical_rank(m) == r);
    CHECK(orth_columns(m).cols() == r);
  }
}

TEST_CASE("orthonormal basis agrees between the svd and the large qr path") {
  std::mt19937_64 rng(6);
  const Index r = 37;
  CMatrix basis = random_matrix(300, r, rng);
  CMatrix m = basis * random_matrix(r, 280, rng);  // min dim 280 > 256, qr path
  CMatrix q = orth_columns(m);
  REQUIRE(q.cols() == r);
  CHECK((q.adjoint() * q - CMatrix::Identity(r, r)).norm() < 1e-12);
  Eigen::HouseholderQR<CMatrix> ref(basis);
  CMatrix qref = ref.householderQ() * CMatrix::Identity(300, r);
  CHECK((proj(q) - proj(qref)).norm() < 1e-10);
}

TEST_CASE("floor suppresses a span made only of rounding noise") {
  std::mt19937_64 rng(7);
  CMatrix noise = 1e-17 * random_matrix(10, 10, rng);
  CHECK(orth_columns(noise).cols() == 10);  // relative cutoff alone keeps noise
  CHECK(orth_columns(noise, default_tol, 1.0).cols() == 0);
}

TEST_CASE("span accumulator matches the one-shot basis") {
  std::mt19937_64 rng(8);
  CMatrix m = random_matrix(20, 6, rng) * random_matrix(6, 90, rng);
  SpanAccumulator acc(20, 16);
  for (Index j = 0; j < m.cols(); ++j) acc.add(CVector(m.col(j)));
  CMatrix q = acc.finish();
  CHECK(q.cols() == 6);
  CHECK((proj(q) - proj(orth_columns(m))).norm() < 1e-10);
  CHECK(acc.max_singular() == doctest::Approx(singular_values(m)(0)).epsilon(1e-12));
}

TEST_CASE("operator spans: projection, complement, distance") {
  const Index n = 3;
  std::vector<CMatrix> units;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      CMatrix e = CMatrix::Zero(n, n);
      e(i, j) = 1;
      units.push_back(e);
    }
  OperatorSpan diag = orthonormalize({units[0], units[4], units[8]});
  OperatorSpan e00 = orthonormalize({units[0]});
  OperatorSpan e11 = orthonormalize({units[4]});
  CHECK(diag.dim() == 3);
  CHECK(span_contains(diag, identity(n)));
  CHECK_FALSE(span_contains(diag, units[1]));
  CHECK((span_project(diag, CMatrix::Ones(n, n)) - identity(n)).norm() < 1e-14);
  CHECK(span_complement(diag, e00).dim() == 2);
  CHECK(span_sum(e00, e11).dim() == 2);
  CHECK(projector_distance(e00, e11) == doctest::Approx(std::sqrt(2.0)));
  CHECK(projector_distance(diag, diag) < 1e-14);
  // coordinates are hs inner products against the orthonormal basis
  CMatrix x = 2.0 * units[0] - 3.0 * units[8];
  CVector c = diag.coords(x);
  CHECK((diag.element(c) - x).norm() < 1e-14);
  for (Index i = 0; i < 3; ++i) CHECK(std::abs(c(i) - hs_inner(diag.basis(i), x)) < 1e-14);
}

TEST_CASE("hermitian eigenvalues and kernel projector") {
  std::mt19937_64 rng(9);
  CMatrix u = random_unitary(6, rng);
  RVector ev(6);
  ev << -2, -1, 0, 0, 0.5, 3;
  CMatrix h = u * ev.cast<cplx>().asDiagonal() * u.adjoint();
  RVector got = eig_hermitian(h);
  for (Index i = 0; i < 6; ++i) CHECK(got(i) == doctest::Approx(ev(i)).epsilon(1e-12));
  LinearMap kp = kernel_projector(LinearMap(h));
  CHECK(rank(kp) == 2);
  CHECK((h * kp.matrix).norm() < 1e-12);
}
