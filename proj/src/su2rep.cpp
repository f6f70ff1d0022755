#include "ncg/su2rep.hpp"

#include "ncg/clifford.hpp"

#include <cmath>

namespace ncg {

Triple spin_matrices(int two_j) {
  if (two_j < 0) throw contract_violation("spin_matrices: 2j must be nonnegative");
  Index d = two_j + 1;
  double j = two_j / 2.0;
  CMatrix jp = CMatrix::Zero(d, d);
  CMatrix j3 = CMatrix::Zero(d, d);
  for (Index i = 0; i < d; ++i) {
    double m = j - double(i);
    j3(i, i) = m;
    if (i > 0) jp(i - 1, i) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  CMatrix jm = jp.adjoint();
  const cplx I(0, 1);
  return {CMatrix((jp + jm) / 2.0), CMatrix((jp - jm) / (2.0 * I)), j3};
}

LevelSpace build_level_space(int k) {
  if (k < 0) throw contract_violation("build_level_space: negative level");
  LevelSpace s;
  s.k = k;
  for (int tj = 0; tj <= k; ++tj) {
    Index d = tj + 1;
    s.blocks.push_back({tj, s.dim, d * d});
    s.dim += d * d;
  }
  for (int A = 0; A < 3; ++A) {
    s.J[A] = CMatrix::Zero(s.dim, s.dim);
    s.Jbar[A] = CMatrix::Zero(s.dim, s.dim);
  }
  for (const auto& b : s.blocks) {
    Triple t = spin_matrices(b.two_j);
    CMatrix id = identity(b.two_j + 1);
    for (int A = 0; A < 3; ++A) {
      s.J[A].block(b.offset, b.offset, b.size, b.size) = kron(id, t[A]);
      // minus transpose keeps [Jbar_A, Jbar_B] = i eps Jbar_C
      s.Jbar[A].block(b.offset, b.offset, b.size, b.size) = kron(CMatrix(-t[A].transpose()), id);
    }
  }
  return s;
}

double LevelSpace::bracket_residual() const {
  const cplx I(0, 1);
  double r = 0;
  for (int A = 0; A < 3; ++A)
    for (int B = 0; B < 3; ++B) {
      CMatrix rhs = CMatrix::Zero(dim, dim), rhsb = CMatrix::Zero(dim, dim);
      for (int C = 0; C < 3; ++C) {
        double e = levi_civita({A, B, C});
        rhs += I * e * J[C];
        rhsb += I * e * Jbar[C];
      }
      r = std::max(r, (commutator(J[A], J[B]) - rhs).norm());
      r = std::max(r, (commutator(Jbar[A], Jbar[B]) - rhsb).norm());
      r = std::max(r, commutator(J[A], Jbar[B]).norm());
    }
  return r;
}

double LevelSpace::casimir_residual() const {
  CMatrix c = CMatrix::Zero(dim, dim), cb = CMatrix::Zero(dim, dim);
  for (int A = 0; A < 3; ++A) {
    c += J[A] * J[A];
    cb += Jbar[A] * Jbar[A];
  }
  double r = 0;
  for (const auto& b : blocks) {
    double j = b.two_j / 2.0;
    CMatrix target = j * (j + 1) * identity(b.size);
    r = std::max(r, (c.block(b.offset, b.offset, b.size, b.size) - target).norm());
    r = std::max(r, (cb.block(b.offset, b.offset, b.size, b.size) - target).norm());
  }
  return r;
}

std::vector<CMatrix> matrix_units(Index n) {
  std::vector<CMatrix> out;
  out.reserve(n * n);
  for (Index p = 0; p < n; ++p)
    for (Index q = 0; q < n; ++q) {
      CMatrix e = CMatrix::Zero(n, n);
      e(p, q) = 1;
      out.push_back(e);
    }
  return out;
}

std::vector<CMatrix> algebra_basis(const LevelSpace& space) { return matrix_units(space.dim); }

}  // namespace ncg
