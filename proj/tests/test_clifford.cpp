#include "ncg/clifford.hpp"

#include <doctest.h>

using namespace ncg;

namespace {

std::vector<RMatrix> metrics(Index n) {
  RMatrix skew = RMatrix::Identity(n, n);
  for (Index i = 0; i + 1 < n; ++i) skew(i, i + 1) = skew(i + 1, i) = 0.3;
  return {RMatrix::Identity(n, n), RMatrix(2.0 * RMatrix::Identity(n, n)), skew};
}

double max_anti(const std::vector<CMatrix>& x, const std::vector<CMatrix>& y, const RMatrix& target) {
  double r = 0;
  Index d = x.front().rows();
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j)
      r = std::max(r, hs_norm(CMatrix(x[i] * y[j] + y[j] * x[i] - target(i, j) * identity(d))));
  return r;
}

}  // namespace

TEST_CASE("fock space relations for n <= 3 and several metrics") {
  for (Index n = 1; n <= 3; ++n)
    for (const RMatrix& g : metrics(n)) {
      FermionAlgebra f = build_fermion_algebra(g);
      REQUIRE(f.dim == (Index(1) << n));
      RMatrix zero = RMatrix::Zero(n, n);
      RMatrix one = RMatrix::Identity(n, n);
      RMatrix ginv = g.inverse();
      CHECK(max_anti(f.a, f.a, zero) <= 1e-12);
      CHECK(max_anti(f.a, f.adag, one) <= 1e-12);
      CHECK(max_anti(f.c, f.c, zero) <= 1e-12);
      CHECK(max_anti(f.c, f.cdag, ginv) <= 1e-12);
      CHECK(f.car_residual() <= 1e-12);
      CHECK(f.raised_residual() <= 1e-12);

      GammaPair gp = gamma_pair(f);
      RMatrix m2 = -2.0 * ginv;
      CHECK(max_anti(gp.gamma, gp.gamma, m2) <= 1e-12);
      CHECK(max_anti(gp.gamma_bar, gp.gamma_bar, m2) <= 1e-12);
      CHECK(max_anti(gp.gamma, gp.gamma_bar, zero) <= 1e-12);
      CHECK(max_anti(gp.psi, gp.psi, RMatrix(-m2)) <= 1e-12);
      CHECK(max_anti(gp.psi_bar, gp.psi_bar, RMatrix(-m2)) <= 1e-12);
      CHECK(clifford_residual(f, gp) <= 1e-12);
      // number operator counts occupied modes
      CHECK(f.number().diagonal().real().sum() == doctest::Approx(double(n) * double(f.dim) / 2));
    }
}

TEST_CASE("gammas are anti-hermitian, psi hermitian") {
  FermionAlgebra f = build_fermion_algebra(2.0 * RMatrix::Identity(3, 3));
  GammaPair gp = gamma_pair(f);
  for (Index A = 0; A < 3; ++A) {
    CHECK((gp.gamma[A] + gp.gamma[A].adjoint()).norm() < 1e-14);
    CHECK((gp.psi[A] - gp.psi[A].adjoint()).norm() < 1e-14);
  }
}

TEST_CASE("gradings square to one and anticommute with the odd generators") {
  for (const RMatrix& g : metrics(3)) {
    FermionAlgebra f = build_fermion_algebra(g);
    GammaPair gp = gamma_pair(f);
    CMatrix v = grading_volume(f, VolumeKind::both_copies);
    CHECK(hs_norm(CMatrix(v * v - identity(f.dim))) < 1e-12);
    CHECK(hs_norm(CMatrix(v - v.adjoint())) < 1e-12);
    for (Index A = 0; A < 3; ++A) {
      CHECK(hs_norm(anticommutator(v, gp.gamma[A])) < 1e-12);
      CHECK(hs_norm(anticommutator(v, gp.gamma_bar[A])) < 1e-12);
    }
  }
  for (const RMatrix& g : metrics(2)) {
    FermionAlgebra f = build_fermion_algebra(g);
    GammaPair gp = gamma_pair(f);
    CMatrix s = grading_volume(f, VolumeKind::single_copy);
    CHECK(hs_norm(CMatrix(s * s - identity(f.dim))) < 1e-12);
    CHECK(hs_norm(CMatrix(s - s.adjoint())) < 1e-12);
    for (Index A = 0; A < 2; ++A) CHECK(hs_norm(anticommutator(s, gp.gamma[A])) < 1e-12);
  }
  CHECK_THROWS_AS(grading_volume(build_fermion_algebra(RMatrix::Identity(2, 2)), VolumeKind::both_copies),
                  dimension_error);
}

TEST_CASE("two-dimensional volume from pauli gammas") {
  // gamma^mu = i L sigma with L L^T = g^-1
  CMatrix s1(2, 2), s2(2, 2);
  s1 << 0, 1, 1, 0;
  s2 << 0, cplx(0, -1), cplx(0, 1), 0;
  for (const RMatrix& g : metrics(2)) {
    RMatrix l = Eigen::LLT<RMatrix>(g.inverse()).matrixL();
    std::vector<CMatrix> gam(2);
    for (Index mu = 0; mu < 2; ++mu) gam[mu] = cplx(0, 1) * (l(mu, 0) * s1 + l(mu, 1) * s2);
    CMatrix vol = volume_2d(gam, g);
    CHECK(hs_norm(CMatrix(vol * vol - identity(2))) < 1e-12);
    CHECK(hs_norm(anticommutator(vol, gam[0])) < 1e-12);

    CMatrix C = charge_conjugation(gam);
    for (const auto& x : gam) CHECK(hs_norm(CMatrix(C * x + x.conjugate() * C)) < 1e-12);
    CHECK(hs_norm(CMatrix(C - C.adjoint())) < 1e-12);
    CHECK(hs_norm(CMatrix(C * C - identity(2))) < 1e-12);
  }
}

TEST_CASE("levi-civita symbol") {
  CHECK(levi_civita({0, 1, 2}) == 1);
  CHECK(levi_civita({1, 0, 2}) == -1);
  CHECK(levi_civita({2, 0, 1}) == 1);
  CHECK(levi_civita({0, 0, 1}) == 0);
}

TEST_CASE("bad metrics are rejected") {
  RMatrix g(2, 2);
  g << 1, 2, 2, 1;
  CHECK_THROWS_AS(build_fermion_algebra(g), contract_violation);
  g << 1, 0.1, 0, 1;
  CHECK_THROWS_AS(build_fermion_algebra(g), contract_violation);
}
