#include "ncg/spectral_forms.hpp"
#include "ncg/su2rep.hpp"

#include <doctest.h>

#include <random>

using namespace ncg;

namespace {

CMatrix random_hermitian(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = cplx(g(rng), g(rng));
  return (m + m.adjoint()) / 2.0;
}

// A = M_2 (x) 1_2 acting on C^4, grading 1 (x) sigma_3
SpectralData m2_data(const CMatrix& D) {
  SpectralData s;
  s.flavor = Flavor::N1;
  s.hilbert_dim = 4;
  for (const auto& e : matrix_units(2)) s.algebra_basis.push_back(kron(e, identity(2)));
  CMatrix s3(2, 2);
  s3 << 1, 0, 0, -1;
  s.ops["D"] = D;
  s.ops["gamma"] = kron(identity(2), s3);
  s.blocks = BlockLayout{2, 2};
  return s;
}

// independent oracle, straight from the definition of universal forms:
// a_0 delta a_1 ... delta a_{k-1} runs over all basis words; junk_k is the
// image of the combinations whose representation vanishes under
// a_0 da_1 ... da_{k-1} -> da_0 da_1 ... da_{k-1}
OperatorSpan oracle_junk(const SpectralData& s, int k) {
  const auto& A = s.algebra_basis;
  const CMatrix& D = s.op("D");
  const Index h = s.hilbert_dim;
  const Index nA = Index(A.size());
  std::vector<CMatrix> dA;
  for (const auto& a : A) dA.push_back(D * a - a * D);
  Index words = 1;
  for (int i = 0; i < k; ++i) words *= nA;
  CMatrix P(h * h, words), Q(h * h, words);
  for (Index w = 0; w < words; ++w) {
    Index rest = w;
    std::vector<Index> idx(k);
    for (int i = k - 1; i >= 0; --i) {
      idx[i] = rest % nA;
      rest /= nA;
    }
    CMatrix p = A[idx[0]], q = dA[idx[0]];
    for (int i = 1; i < k; ++i) {
      p = p * dA[idx[i]];
      q = q * dA[idx[i]];
    }
    P.col(w) = Eigen::Map<const CVector>(p.data(), h * h);
    Q.col(w) = Eigen::Map<const CVector>(q.data(), h * h);
  }
  Eigen::JacobiSVD<CMatrix> svd(P, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  Index r = 0;
  while (r < sv.size() && sv(r) > 1e-10 * sv(0)) ++r;
  CMatrix ker = svd.matrixV().rightCols(words - r);
  // absolute cutoff on the scale of the products; the image may be pure rounding noise
  Eigen::JacobiSVD<CMatrix> img(Q * ker, Eigen::ComputeThinU);
  Index q = 0;
  while (q < img.singularValues().size() && img.singularValues()(q) > 1e-10 * std::max(1.0, Q.norm())) ++q;
  return OperatorSpan(h, img.matrixU().leftCols(q), 1e-10);
}

OperatorSpan oracle_pi1(const SpectralData& s) {
  std::vector<CMatrix> g;
  const CMatrix& D = s.op("D");
  for (const auto& a : s.algebra_basis)
    for (const auto& b : s.algebra_basis) g.push_back(a * (D * b - b * D));
  return orthonormalize(g, 1e-10);
}

}  // namespace

TEST_CASE("junk engines agree with the word-enumeration oracle on M_2") {
  std::mt19937_64 rng(20240611);
  for (int sample = 0; sample < 10; ++sample) {
    SpectralData s = m2_data(random_hermitian(4, rng));
    for (int k : {2, 3}) {
      OperatorSpan want = oracle_junk(s, k);
      OperatorSpan tp = junk(s, k, JunkMethod::tensor_projector).span();
      OperatorSpan tk = junk(s, k, JunkMethod::tensor_kernel_basis).span();
      OperatorSpan fa = junk(s, k, JunkMethod::factored).span();
      OperatorSpan re = junk(s, k, JunkMethod::reduced).span();
      INFO("k " << k << " oracle dim " << want.dim() << " engine dim " << tp.dim());
      CHECK(projector_distance(tp, tk) <= 1e-8);
      CHECK(projector_distance(tp, want) <= 1e-8);
      CHECK(projector_distance(fa, want) <= 1e-8);
      CHECK(projector_distance(re, want) <= 1e-8);
    }
  }
}

TEST_CASE("represented one-forms match the direct span") {
  std::mt19937_64 rng(5);
  SpectralData s = m2_data(random_hermitian(4, rng));
  auto pi = pi_forms(s, 2);
  CHECK(pi[0].dim() == 4);
  CHECK(projector_distance(pi[1].span(), oracle_pi1(s)) <= 1e-8);
}

TEST_CASE("a dirac operator commuting with the algebra gives no forms") {
  std::mt19937_64 rng(6);
  CMatrix D = kron(identity(2), random_hermitian(2, rng));
  SpectralData s = m2_data(D);
  FormComplex fc = build_form_complex(s, 2);
  CHECK(fc.pi[1].dim() == 0);
  CHECK(fc.pi[2].dim() == 0);
  CHECK(fc.canon[1].dim() == 0);
  CHECK(fc.betti[0] == 4);  // every element is closed
}

TEST_CASE("form complex of a generic M_2 triple is a complex") {
  std::mt19937_64 rng(7);
  SpectralData s = m2_data(random_hermitian(4, rng));
  for (JunkMethod m : {JunkMethod::factored, JunkMethod::reduced}) {
    FormComplex fc = build_form_complex(s, 2, m);
    CHECK(fc.delta_squared_residual() < 1e-9);
    CHECK(fc.junk_containment_residual() < 1e-9);
    // dim canon_k = dim pi_k - dim junk_k
    for (Index k = 0; k < Index(fc.canon.size()); ++k)
      CHECK(fc.canon[k].dim() == fc.pi[k].dim() - fc.junk[k].dim());
    // betti from the rank-nullity of delta
    for (Index k = 0; k < Index(fc.betti.size()); ++k) {
      Index in = k > 0 ? fc.delta_rank[k - 1] : 0;
      CHECK(fc.betti[k] == fc.canon[k].dim() - fc.delta_rank[k] - in);
    }
    CHECK(cyclicity_check(s, fc) <= 1e-12);
  }
}

TEST_CASE("engines give the same dimensions") {
  std::mt19937_64 rng(8);
  SpectralData s = m2_data(random_hermitian(4, rng));
  FormComplex a = build_form_complex(s, 2, JunkMethod::factored);
  FormComplex b = build_form_complex(s, 2, JunkMethod::reduced);
  CHECK(a.pi_dims() == b.pi_dims());
  CHECK(a.junk_dims() == b.junk_dims());
  CHECK(a.betti == b.betti);
}

TEST_CASE("integral is the normalized trace and is cyclic") {
  std::mt19937_64 rng(9);
  SpectralData s = m2_data(random_hermitian(4, rng));
  CHECK(std::abs(integral(s, identity(4)) - cplx(1)) < 1e-15);
  CMatrix x = random_hermitian(4, rng), y = random_hermitian(4, rng);
  CHECK(std::abs(integral(s, CMatrix(x * y)) - integral(s, CMatrix(y * x))) < 1e-14);
}

TEST_CASE("hermitian structure lands in the algebra") {
  std::mt19937_64 rng(10);
  SpectralData s = m2_data(random_hermitian(4, rng));
  auto pi = pi_forms(s, 1);
  CMatrix w = random_element(pi[1], rng), e = random_element(pi[1], rng);
  CMatrix h = hermitian_structure(s, w, e);
  OperatorSpan alg = orthonormalize(s.algebra_basis);
  CHECK(alg.residual(h) < 1e-12);
  // trace-orthogonal: w e* - <w, e> is orthogonal to every algebra element
  for (const auto& a : s.algebra_basis) CHECK(std::abs(hs_inner(a, CMatrix(w * e.adjoint() - h))) < 1e-12);
  // sesquilinear in the algebra: <a w, e> = a <w, e>
  CMatrix a = s.algebra_basis[1];
  CHECK((hermitian_structure(s, CMatrix(a * w), e) - a * h).norm() < 1e-12);
}

TEST_CASE("configuration errors") {
  SpectralData s = m2_data(identity(4));
  s.ops.erase("gamma");
  CHECK_THROWS_AS(validate(s), configuration_error);
  SpectralData t = m2_data(identity(4));
  t.ops["D"] = identity(3);
  CHECK_THROWS_AS(validate(t), configuration_error);
  SpectralData u = m2_data(identity(4));
  u.blocks.reset();
  CHECK_THROWS_AS(build_form_complex(u, 1, JunkMethod::factored), configuration_error);
}
