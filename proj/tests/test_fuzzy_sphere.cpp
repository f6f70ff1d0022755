#include "ncg/fuzzy_sphere.hpp"

#include <doctest.h>

using namespace ncg;

TEST_CASE("dimension of H0 matches the sum of squares") {
  for (int k = 0; k <= 6; ++k) {
    Index sum = 0;
    for (int n = 1; n <= k + 1; ++n) sum += Index(n) * n;
    CHECK(sphere_h0_dim(k) == sum);
    CHECK(build_level_space(k).dim == sum);
  }
}

TEST_CASE("sphere model structure at level one") {
  SphereModel m = build_sphere(1);
  CHECK(m.data.hilbert_dim == 5 * 8);
  CHECK(m.data.algebra_basis.size() == 25);
  AxiomReport ax = check_axioms(m.data);
  CHECK(ax.pass());
  // {psi^A, psi^B} = 2 g^AB with g = 2 delta
  for (int A = 0; A < 3; ++A)
    for (int B = 0; B < 3; ++B)
      CHECK(hs_norm(CMatrix(anticommutator(m.psi[A], m.psi[B]) -
                            (A == B ? 1.0 : 0.0) * identity(m.data.hilbert_dim))) < 1e-12);
  CHECK(m.structure_constant(0, 1, 2) == 1.0);
  CHECK(m.structure_constant(1, 0, 2) == -1.0);
  CHECK_THROWS(build_sphere(0));
}

TEST_CASE("sphere level one: forms, junk, cohomology, connection") {
  SphereModel m = build_sphere(1);
  SphereReport r = sphere_report(m);
  REQUIRE(r.module_ranks.size() >= 4);
  CHECK(std::vector<Index>(r.module_ranks.begin(), r.module_ranks.begin() + 4) == std::vector<Index>{1, 3, 3, 1});
  for (std::size_t i = 4; i < r.module_ranks.size(); ++i) CHECK(r.module_ranks[i] == 0);
  CHECK(r.canon_dims == std::vector<Index>{25, 75, 75, 25, 0});
  CHECK(r.junk_dims[2] == 25);
  CHECK(r.betti == std::vector<Index>{5, 0, 0, 5});
  CHECK(r.h0_projector_distance <= 1e-9);
  CHECK(r.connection_solved);
  CHECK(r.lc_homogeneous_dim == 0);
  CHECK(r.scalar == doctest::Approx(-1.5).epsilon(1e-9));
  CHECK(r.torsion_residual <= 1e-10);
  for (const auto& c : r.report.checks) {
    INFO(c.name << " value " << c.value << " " << c.detail);
    CHECK(c.passed);
  }
}

TEST_CASE("H0 projector is the block commutant") {
  SphereModel m = build_sphere(2);
  OperatorSpan h0 = sphere_h0_span(m);
  // one free block End(V_j*) per spin: sum (2j+1)^2 = H0 dimension
  CHECK(h0.dim() == sphere_h0_dim(2));
  for (int A = 0; A < 3; ++A) {
    // the right su(2) action lies in the commutant of the left one
    CMatrix jb = kron(m.space.Jbar[A], identity(m.fock.dim));
    CHECK(h0.residual(jb) < 1e-9);
  }
}

TEST_CASE("brst data at level one") {
  BrstModel b = build_brst(1);
  CHECK(hs_norm(CMatrix(b.Q * b.Q)) <= 1e-12);
  CMatrix id = identity(b.data.hilbert_dim);
  CHECK(hs_norm(CMatrix(b.star * b.star + id)) <= 1e-12);
  CHECK(hs_norm(CMatrix(b.star * b.Q - b.Q.adjoint() * b.star)) <= 1e-12);
  ModelReport rep = brst_report(b);
  for (const auto& c : rep.checks) {
    INFO(c.name << " value " << c.value << " " << c.detail);
    CHECK(c.passed);
  }
  CHECK(rep.check("reality of the natural involution").value <= 1e-10);
  CHECK(rep.check("integral cyclicity").value <= 1e-12);
}

TEST_CASE("broken supersymmetry at level one") {
  BrokenSusyModel s = build_broken_susy(1);
  CMatrix id = identity(s.D.rows());
  CHECK(hs_norm(CMatrix(s.D * s.D - s.Dbar * s.Dbar)) <= 1e-10);
  CHECK(hs_norm(anticommutator(s.D, s.Dbar)) <= 1e-10);
  CHECK(hs_norm(CMatrix(s.dtilde * s.dtilde)) <= 1e-10);
  CHECK(hs_norm(CMatrix(s.laplacian - s.casimir - 0.125 * id)) <= 1e-10);
  // independent eigenvalue computation of the laplacian
  Eigen::SelfAdjointEigenSolver<CMatrix> es(s.laplacian);
  CHECK(es.eigenvalues()(0) == doctest::Approx(0.125).epsilon(1e-9));
  SusyReport r = broken_susy_report(s);
  CHECK(r.min_eigenvalue == doctest::Approx(0.125).epsilon(1e-9));
  CHECK(r.kernel_dim == 0);
  CHECK(r.report.pass());
}
