#pragma once
// spectral data, represented forms, junk, quotient complex, cohomology

#include "ncg/linalg.hpp"

#include <map>
#include <random>
#include <optional>
#include <string>
#include <utility>

namespace ncg {

enum class Flavor { N1, N11, Hermitian, Kahler, N44, Symplectic };
std::string to_string(Flavor f);

// the algebra is M_n (x) 1_m inside M_{nm}; enables the factored engine
struct BlockLayout {
  Index n = 0, m = 0;
};

struct SpectralData {
  Flavor flavor = Flavor::N1;
  std::vector<CMatrix> algebra_basis;
  Index hilbert_dim = 0;
  std::map<std::string, CMatrix> ops;
  cplx zeta{-1.0, 0.0};
  std::optional<BlockLayout> blocks;
  double tol = default_tol;

  bool has(const std::string& name) const { return ops.count(name) > 0; }
  const CMatrix& op(const std::string& name) const;
  // D for N1, d for N11 and symplectic, del + delbar for hermitian/kahler
  CMatrix differential() const;
};

// throws configuration_error on missing operators or a broken algebra basis
void validate(const SpectralData& data);
double algebra_closure_residual(const SpectralData& data);

struct AxiomReport {
  std::vector<std::pair<std::string, double>> residuals;
  double tol = 1e-10;
  bool pass() const;
  double max_residual() const;
  double get(const std::string& name) const;
};

AxiomReport check_axioms(const SpectralData& data, double tol = 1e-10);

// subspace of operators on H; either dense or M_n (x) fiber
class FormSpace {
 public:
  FormSpace() = default;
  static FormSpace dense(Index h, CMatrix q);
  static FormSpace factored(Index n, Index m, CMatrix fiber);

  bool is_factored() const { return factored_; }
  Index dim() const;
  Index hilbert_dim() const { return h_; }
  Index n() const { return n_; }
  Index m() const { return m_; }
  const CMatrix& fiber() const { return q_; }  // m^2 x r (factored) or h^2 x r
  Index fiber_dim() const { return q_.cols(); }

  // frobenius-orthonormal coordinates; factored index is (p*n + q)*r + j
  CVector coords(const CMatrix& x) const;
  CMatrix element(const CVector& c) const;
  CMatrix project(const CMatrix& x) const;
  double residual(const CMatrix& x) const { return (x - project(x)).norm(); }
  bool contains(const CMatrix& x, double tol) const { return residual(x) <= tol * std::max(1.0, x.norm()); }
  CMatrix basis_element(Index i) const;
  OperatorSpan span(double tol = default_tol) const;

 private:
  bool factored_ = false;
  Index h_ = 0, n_ = 0, m_ = 0;
  CMatrix q_;
};

enum class JunkMethod { automatic, factored, reduced, tensor_projector, tensor_kernel_basis };

struct FormComplex {
  Index kmax = 0;
  double tol = default_tol;
  double scale = 1.0;  // operator scale of the differential, rank floor
  bool graded = false;
  std::vector<FormSpace> pi, junk, canon;  // degrees 0..kmax+1
  std::vector<CMatrix> delta;              // canon_k -> canon_{k+1}, k = 0..kmax
  std::vector<Index> delta_rank;           // k = 0..kmax
  std::vector<Index> betti;                // k = 0..kmax

  std::vector<Index> pi_dims() const;
  std::vector<Index> junk_dims() const;
  std::vector<Index> canon_dims() const;
  // dim / dim A when divisible, else -1
  std::vector<Index> module_ranks(Index dim_algebra) const;

  CMatrix canonical(Index k, const CMatrix& x) const;
  CMatrix apply_delta(Index k, const CMatrix& x) const;
  double delta_squared_residual() const;
  double junk_containment_residual() const;
  // basis of ker delta_k modulo im delta_{k-1}, as canonical representatives
  std::vector<CMatrix> cohomology_representatives(Index k) const;
  OperatorSpan kernel_span(Index k) const;
};

std::vector<FormSpace> pi_forms(const SpectralData& data, Index kmax);
FormSpace junk(const SpectralData& data, Index k, JunkMethod method = JunkMethod::automatic);
FormComplex build_form_complex(const SpectralData& data, Index kmax,
                               JunkMethod method = JunkMethod::automatic);
CMatrix canonical_rep(const FormComplex& fc, Index k, const CMatrix& w);

// normalized trace and the cyclicity defect on random forms
cplx integral(const SpectralData& data, const CMatrix& x);
double cyclicity_check(const SpectralData& data, const FormComplex& fc, int samples = 50,
                       unsigned seed = 7);

// <w, e> in A: trace-orthogonal projection of w e* onto the algebra
CMatrix algebra_projection(const SpectralData& data, const CMatrix& x);
CMatrix hermitian_structure(const SpectralData& data, const CMatrix& w, const CMatrix& e);

// (-zeta)^k * w* *^-1
CMatrix natural_involution(const SpectralData& data, Index k, const CMatrix& w);
double reality_check(const SpectralData& data, const FormComplex& fc, int samples = 20,
                     unsigned seed = 11);

struct Bidegree {
  int r = 0, s = 0;
  Index degree = 0;
  FormSpace space;
};

struct BigradeReport {
  std::vector<Bidegree> parts;
  double invariance_residual = 0;    // ad T, ad Tbar leave each pi_k invariant
  double orthogonality_residual = 0; // max |(w, e)| across distinct bidegrees
  Index rank(int r, int s, Index dim_algebra) const;
};

BigradeReport bigrade_decompose(const SpectralData& data, const FormComplex& fc, Index kmax);

// random element of a span, fixed seed
CMatrix random_element(const FormSpace& s, std::mt19937_64& rng);

}  // namespace ncg
