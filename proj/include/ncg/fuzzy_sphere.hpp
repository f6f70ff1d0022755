#pragma once
// level-k fuzzy 3-sphere: N=1 data, BRST and broken-supersymmetry variants

#include "ncg/clifford.hpp"
#include "ncg/geometry.hpp"
#include "ncg/report.hpp"
#include "ncg/spectral_forms.hpp"
#include "ncg/su2rep.hpp"

#include <array>

namespace ncg {

struct SphereModel {
  int k = 0;
  LevelSpace space;
  FermionAlgebra fock;  // three modes, metric 2 delta
  GammaPair gammas;
  SpectralData data;    // N1 on H0 (x) W
  RMatrix metric;       // g_AB = 2 delta
  std::array<CMatrix, 3> e, f;  // e^A and f^A = (1/2) eps^ABC e^B e^C
  CMatrix vol;                  // g = e^1 e^2 e^3
  std::array<CMatrix, 3> psi;   // psi^A on H, {psi, psi} = 2 g^AB

  double structure_constant(int a, int b, int c) const;  // f_AB^C = eps_ABC
};

// throws model_error naming the identity when the conventions do not line up
SphereModel build_sphere(int k);

// closed-form dimension of H0, (1/6)(2k+3)(k+2)(k+1)
Index sphere_h0_dim(int k);

// block projector onto sum_j End(V_j*) (x) 1, the commutant of the left action
OperatorSpan sphere_h0_span(const SphereModel& m);

struct SphereReport {
  int k = 0;
  std::vector<Index> pi_dims, junk_dims, canon_dims, module_ranks, betti;
  std::vector<Index> expected_betti;
  double h0_projector_distance = 0;
  bool connection_solved = false;
  Index lc_homogeneous_dim = -1;
  Index lc_homogeneous_dim_unreal = -1;  // without the reality condition
  double scalar = 0;
  double torsion_residual = 0, curvature_residual = 0, ricci_residual = 0;
  ModelReport report;
  bool pass() const { return report.pass(); }
};

struct SphereOptions {
  Index max_degree = 3;
  double tol = default_tol;
  bool solve_connection = true;  // the levi-civita solve grows like dim(A)^2
  Progress progress;
};

SphereReport sphere_report(const SphereModel& m, const SphereOptions& opts = {});

// BRST: d = Q on H0 (x) ghost space
struct BrstModel {
  int k = 0;
  SpectralData data;  // N11 flavor: d, gamma, star, plus ghost number T
  FermionAlgebra ghosts;
  CMatrix Q, ghost_number, star;
};

BrstModel build_brst(int k);
ModelReport brst_report(const BrstModel& m, const SphereOptions& opts = {});

// broken supersymmetry
struct BrokenSusyModel {
  int k = 0;
  CMatrix D, Dbar, dtilde, laplacian, casimir;  // casimir = g^AB J_A J_B
  CMatrix casimir_bar;                          // g^AB Jbar_A Jbar_B
  CMatrix gamma;
  std::vector<CMatrix> algebra_basis;
};

BrokenSusyModel build_broken_susy(int k);
struct SusyReport {
  double min_eigenvalue = 0;
  Index kernel_dim = 0;
  std::vector<Index> form_betti;  // cohomology of the dtilde forms, reported only
  ModelReport report;
};
SusyReport broken_susy_report(const BrokenSusyModel& m, double tol = 1e-10, bool with_forms = false);

}  // namespace ncg
