#include "ncg/fuzzy_sphere.hpp"
#include "ncg/geometry.hpp"
#include "ncg/nc_torus.hpp"

#include <doctest.h>

#include <random>

using namespace ncg;

namespace {

CMatrix random_matrix(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

CMatrix random_unitary(Index n, std::mt19937_64& rng) {
  Eigen::HouseholderQR<CMatrix> qr(random_matrix(n, rng));
  return qr.householderQ() * CMatrix::Identity(n, n);
}

double scalar_of(const SpectralData& data, const FormComplex& fc, const CotangentBasis& b,
                 const Connection& c) {
  auto R = curvature(fc, b, c);
  auto ric = ricci(fc, b, R);
  CMatrix r = scalar_curvature(data, fc, b, ric);
  return hs_inner(identity(data.hilbert_dim), r).real();
}

Connection sphere_connection(Index h) {
  Connection c = Connection::zero(3, h);
  for (int A = 0; A < 3; ++A)
    for (int B = 0; B < 3; ++B)
      for (int C = 0; C < 3; ++C) c.at(A, B, C) = cplx(0, 0.5) * levi_civita({A, B, C}) * identity(h);
  c.reality = Reality::anti_hermitian;
  return c;
}

struct SphereFixture {
  SphereModel m = build_sphere(1);
  FormComplex fc = build_form_complex(m.data, 3);
  CotangentBasis basis = make_cotangent_basis(m.data, fc, {m.e[0], m.e[1], m.e[2]});
};

const SphereFixture& sphere() {
  static SphereFixture f;
  return f;
}

}  // namespace

TEST_CASE("sphere cotangent basis is free with metric delta") {
  const auto& s = sphere();
  CHECK(s.basis.n == 3);
  CHECK(s.basis.freeness_residual < 1e-9);
  for (int A = 0; A < 3; ++A)
    for (int B = 0; B < 3; ++B)
      CHECK(hs_norm(CMatrix(s.basis.metric[A][B] - (A == B ? 1.0 : 0.0) * identity(s.m.data.hilbert_dim))) <
            1e-9);
}

TEST_CASE("closed-form sphere connection: torsion free, unitary, scalar -3/2") {
  const auto& s = sphere();
  Connection c = sphere_connection(s.m.data.hilbert_dim);
  double t = 0;
  for (const auto& x : torsion(s.fc, s.basis, c)) t = std::max(t, hs_norm(x));
  CHECK(t < 1e-10);
  CHECK(unitarity_residual(s.m.data, s.fc, s.basis, c) < 1e-10);
  CHECK(scalar_of(s.m.data, s.fc, s.basis, c) == doctest::Approx(-1.5).epsilon(1e-9));
}

TEST_CASE("torsion agrees with the coordinate-free definition") {
  const auto& s = sphere();
  std::mt19937_64 rng(3);
  Index h = s.m.data.hilbert_dim;
  Connection c = Connection::zero(3, h);
  for (auto& x : c.coeffs) x = random_element(s.fc.pi[0], rng);
  std::vector<CMatrix> w;
  for (int A = 0; A < 3; ++A) w.push_back(random_element(s.fc.pi[0], rng));
  auto T = torsion(s.fc, s.basis, c);
  // (delta - m o nabla)(w_A E^A) = w_A T^A for a torsion tensor
  CMatrix lhs = torsion_of_form(s.fc, s.basis, c, w);
  CMatrix rhs = CMatrix::Zero(h, h);
  for (int A = 0; A < 3; ++A) rhs += w[A] * T[A];
  CHECK(hs_norm(CMatrix(lhs - s.fc.canonical(2, rhs))) < 1e-9);
}

TEST_CASE("scalar curvature is unchanged by an invertible rotation of the free basis") {
  const auto& s = sphere();
  Connection c = sphere_connection(s.m.data.hilbert_dim);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 3; ++trial) {
    CMatrix u = random_matrix(3, rng) + 2.0 * identity(3);
    REQUIRE(std::abs(u.determinant()) > 1e-3);
    CotangentBasis rb = rotate_basis(s.m.data, s.fc, s.basis, u);
    Connection rc = rotate_connection(c, u);
    double t = 0;
    for (const auto& x : torsion(s.fc, rb, rc)) t = std::max(t, hs_norm(x));
    CHECK(t < 1e-9);
    CHECK(scalar_of(s.m.data, s.fc, rb, rc) == doctest::Approx(-1.5).epsilon(1e-9));
  }
}

TEST_CASE("unitary change of the algebra basis keeps the betti numbers") {
  // dense engine on the rational torus N = 3, so the basis is actually used
  TorusModel t = build_torus(1, 3);
  SpectralData plain = t.data;
  plain.blocks.reset();
  FormComplex ref = build_form_complex(t.data, 2);
  FormComplex dense = build_form_complex(plain, 2);
  CHECK(dense.betti == ref.betti);

  std::mt19937_64 rng(12);
  const Index nA = Index(plain.algebra_basis.size());
  CMatrix u = random_unitary(nA, rng);
  SpectralData mixed = plain;
  for (Index i = 0; i < nA; ++i) {
    CMatrix x = CMatrix::Zero(plain.hilbert_dim, plain.hilbert_dim);
    for (Index j = 0; j < nA; ++j) x += u(j, i) * plain.algebra_basis[j];
    mixed.algebra_basis[i] = x;
  }
  FormComplex rot = build_form_complex(mixed, 2);
  CHECK(rot.betti == ref.betti);
  CHECK(rot.pi_dims() == ref.pi_dims());
  CHECK(rot.junk_dims() == ref.junk_dims());
}

TEST_CASE("connection bookkeeping") {
  Connection z = Connection::zero(2, 4);
  CHECK(z.coeffs.size() == 8);
  z.at(1, 0, 1) = identity(4);
  CHECK(z.coeffs[(1 * 2 + 0) * 2 + 1].norm() > 0);
  Connection r = rotate_connection(z, identity(2));
  for (std::size_t i = 0; i < z.coeffs.size(); ++i) CHECK((r.coeffs[i] - z.coeffs[i]).norm() < 1e-14);
}
