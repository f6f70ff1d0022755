#pragma once
// connections on a free cotangent module: torsion, curvature, ricci, scalar, levi-civita

#include "ncg/spectral_forms.hpp"

#include <optional>

namespace ncg {

// free generators E^A of the canonical 1-forms, their metric and dual forms
struct CotangentBasis {
  Index n = 0;
  std::vector<CMatrix> E;                    // canonical 1-forms
  std::vector<std::vector<CMatrix>> metric;  // h^AB = <E^A, E^B>
  std::vector<CMatrix> dual;                 // e_A with eps_A(w) = <w, e_A>
  double freeness_residual = 0;              // span{a E^A} vs canonical 1-forms
  Index module_rank = 0;
};

// throws model_error when E does not freely generate or the metric is degenerate
CotangentBasis make_cotangent_basis(const SpectralData& data, const FormComplex& fc,
                                    const std::vector<CMatrix>& E);

// Ẽ^A = u^A_B E^B for an invertible scalar matrix u
CotangentBasis rotate_basis(const SpectralData& data, const FormComplex& fc,
                            const CotangentBasis& b, const CMatrix& u);

enum class Reality { none, anti_hermitian, self_adjoint };

// nabla E^A = -Gamma^A_BC E^B (x) E^C, coefficients in the algebra
struct Connection {
  Index n = 0;
  std::vector<CMatrix> coeffs;  // index (A*n + B)*n + C
  Reality reality = Reality::none;

  CMatrix& at(Index a, Index b, Index c) { return coeffs[(a * n + b) * n + c]; }
  const CMatrix& at(Index a, Index b, Index c) const { return coeffs[(a * n + b) * n + c]; }
  static Connection zero(Index n, Index h);
};

// coefficients of the same connection in the rotated basis
Connection rotate_connection(const Connection& c, const CMatrix& u);

// Omega^A_C = Gamma^A_BC E^B
std::vector<CMatrix> connection_forms(const CotangentBasis& b, const Connection& c);

// T^A = delta E^A + Omega^A_B E^B, canonical 2-forms
std::vector<CMatrix> torsion(const FormComplex& fc, const CotangentBasis& b, const Connection& c);
// (delta - m o nabla)(w) for w = w_A E^A, computed without the component formula
CMatrix torsion_of_form(const FormComplex& fc, const CotangentBasis& b, const Connection& c,
                        const std::vector<CMatrix>& w);

// R^A_B = (delta Omega^A_B + Omega^A_C Omega^C_B)^perp, row-major n x n
std::vector<CMatrix> curvature(const FormComplex& fc, const CotangentBasis& b, const Connection& c);
// R(w) = w_A R^A_B (x) E^B, returned as the components w_A R^A_B
std::vector<CMatrix> curvature_of_form(const FormComplex& fc, const CotangentBasis& b,
                                       const Connection& c, const std::vector<CMatrix>& w);

// Ric_B = e_A^ad(R^A_B), with e_A^ad the adjoint of left multiplication by e_A
std::vector<CMatrix> ricci(const FormComplex& fc, const CotangentBasis& b,
                           const std::vector<CMatrix>& R);
// r = (E^B*)_R^ad(Ric_B); for N=(1,1) data the natural involution replaces the adjoint
CMatrix scalar_curvature(const SpectralData& data, const FormComplex& fc, const CotangentBasis& b,
                         const std::vector<CMatrix>& ric);

// max deviation in delta h^AB = <nabla E^A, E^B> -/+ <E^A, nabla E^B>
double unitarity_residual(const SpectralData& data, const FormComplex& fc, const CotangentBasis& b,
                          const Connection& c);

struct LeviCivitaConstraints {
  bool unitary = true;
  bool torsionless = true;
  Reality reality = Reality::none;
};

struct LeviCivitaSolution {
  bool feasible = false;
  Connection particular;
  Index homogeneous_dim = 0;  // real dimension of the solution space
  Index unknowns = 0;         // real unknowns
  double residual = 0;        // constraint residual of the particular solution
  bool unique() const { return feasible && homogeneous_dim == 0; }
};

LeviCivitaSolution solve_levi_civita(const SpectralData& data, const FormComplex& fc,
                                     const CotangentBasis& b, const LeviCivitaConstraints& cons);

}  // namespace ncg
