#include "ncg/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace ncg {

namespace {

bool n11_like(const SpectralData& data) {
  return data.flavor != Flavor::N1 && data.has("star");
}

// the adjoint of a 1-form as it enters the second slot of <.,.>
CMatrix second_slot(const SpectralData& data, const CMatrix& w) {
  return n11_like(data) ? natural_involution(data, 1, w) : CMatrix(w.adjoint());
}

// block matrix [x_AB] of algebra elements
CMatrix assemble(const std::vector<std::vector<CMatrix>>& x) {
  Index n = Index(x.size()), h = x[0][0].rows();
  CMatrix out(n * h, n * h);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) out.block(a * h, b * h, h, h) = x[a][b];
  return out;
}

}  // namespace

CotangentBasis make_cotangent_basis(const SpectralData& data, const FormComplex& fc,
                                    const std::vector<CMatrix>& E) {
  if (fc.canon.size() < 3) throw contract_violation("cotangent basis needs forms up to degree 2");
  const FormSpace& c0 = fc.canon[0];
  const FormSpace& c1 = fc.canon[1];
  const Index h = data.hilbert_dim;
  CotangentBasis b;
  b.n = Index(E.size());
  for (const auto& e : E) b.E.push_back(c1.project(e));

  // freeness: a_i E^A independent and spanning the canonical 1-forms
  const Index da = c0.dim();
  CMatrix gen(c1.dim(), da * b.n);
  for (Index i = 0; i < da; ++i) {
    CMatrix a = c0.basis_element(i);
    for (Index A = 0; A < b.n; ++A) gen.col(A * da + i) = c1.coords(a * b.E[A]);
  }
  Index r = numerical_rank(gen, fc.tol, 1.0 / std::sqrt(double(h)));
  b.module_rank = r == gen.cols() ? b.n : -1;
  double miss = 0;
  if (c1.dim() > 0) {
    CMatrix q = orth_columns(gen, fc.tol, 1.0 / std::sqrt(double(h)));
    miss = (CMatrix::Identity(c1.dim(), c1.dim()) - q * q.adjoint()).norm();
  }
  b.freeness_residual = std::max(miss, r == gen.cols() ? 0.0 : 1.0);
  if (r != gen.cols() || r != c1.dim())
    throw model_error("cotangent basis: the given 1-forms do not freely generate the canonical 1-forms (rank " +
                      std::to_string(r) + ", expected " + std::to_string(c1.dim()) + ")");

  b.metric.assign(b.n, std::vector<CMatrix>(b.n));
  for (Index A = 0; A < b.n; ++A)
    for (Index B = 0; B < b.n; ++B)
      b.metric[A][B] = algebra_projection(data, b.E[A] * second_slot(data, b.E[B]));

  // e_A = x_AC E^C with sum_C h^BC x_AC^* = delta_AB
  CMatrix H = assemble(b.metric);
  Eigen::JacobiSVD<CMatrix> svd(H);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(s.size() - 1) <= fc.tol * std::max(1.0, s(0)))
    throw model_error("cotangent basis: degenerate Hermitian structure");
  CMatrix Y = H.inverse();
  for (Index A = 0; A < b.n; ++A) {
    CMatrix e = CMatrix::Zero(h, h);
    for (Index C = 0; C < b.n; ++C) e += CMatrix(Y.block(C * h, A * h, h, h).adjoint()) * b.E[C];
    b.dual.push_back(c1.project(e));
  }
  return b;
}

CotangentBasis rotate_basis(const SpectralData& data, const FormComplex& fc,
                            const CotangentBasis& b, const CMatrix& u) {
  if (u.rows() != b.n || u.cols() != b.n) throw dimension_error("rotate_basis: u must be n x n");
  std::vector<CMatrix> E;
  for (Index A = 0; A < b.n; ++A) {
    CMatrix e = CMatrix::Zero(b.E[0].rows(), b.E[0].cols());
    for (Index B = 0; B < b.n; ++B) e += u(A, B) * b.E[B];
    E.push_back(e);
  }
  return make_cotangent_basis(data, fc, E);
}

Connection Connection::zero(Index n, Index h) {
  Connection c;
  c.n = n;
  c.coeffs.assign(n * n * n, CMatrix::Zero(h, h));
  return c;
}

Connection rotate_connection(const Connection& c, const CMatrix& u) {
  // Omega~ = u Omega u^-1 and E^F = (u^-1)^F_E E~^E
  const Index n = c.n;
  CMatrix ui = u.inverse();
  Index h = c.coeffs[0].rows();
  Connection out = Connection::zero(n, h);
  out.reality = c.reality;
  for (Index A = 0; A < n; ++A)
    for (Index E = 0; E < n; ++E)
      for (Index D = 0; D < n; ++D) {
        CMatrix g = CMatrix::Zero(h, h);
        for (Index B = 0; B < n; ++B)
          for (Index F = 0; F < n; ++F)
            for (Index C = 0; C < n; ++C) {
              cplx w = u(A, B) * ui(F, E) * ui(C, D);
              if (w != cplx(0)) g += w * c.at(B, F, C);
            }
        out.at(A, E, D) = g;
      }
  return out;
}

std::vector<CMatrix> connection_forms(const CotangentBasis& b, const Connection& c) {
  const Index n = b.n;
  if (c.n != n) throw dimension_error("connection and basis ranks differ");
  std::vector<CMatrix> om(n * n, CMatrix::Zero(b.E[0].rows(), b.E[0].cols()));
  for (Index A = 0; A < n; ++A)
    for (Index C = 0; C < n; ++C)
      for (Index B = 0; B < n; ++B) om[A * n + C] += c.at(A, B, C) * b.E[B];
  return om;
}

std::vector<CMatrix> torsion(const FormComplex& fc, const CotangentBasis& b, const Connection& c) {
  const Index n = b.n;
  std::vector<CMatrix> om = connection_forms(b, c);
  std::vector<CMatrix> T;
  for (Index A = 0; A < n; ++A) {
    CMatrix prod = CMatrix::Zero(b.E[0].rows(), b.E[0].cols());
    for (Index B = 0; B < n; ++B) prod += om[A * n + B] * b.E[B];
    T.push_back(fc.apply_delta(1, b.E[A]) + fc.canonical(2, prod));
  }
  return T;
}

CMatrix torsion_of_form(const FormComplex& fc, const CotangentBasis& b, const Connection& c,
                        const std::vector<CMatrix>& w) {
  // nabla(w_A E^A) = delta w_A (x) E^A - w_A Omega^A_B (x) E^B, then multiply out
  const Index n = b.n;
  std::vector<CMatrix> om = connection_forms(b, c);
  CMatrix form = CMatrix::Zero(b.E[0].rows(), b.E[0].cols());
  CMatrix m = form;
  for (Index A = 0; A < n; ++A) {
    form += w[A] * b.E[A];
    m += fc.apply_delta(0, w[A]) * b.E[A];
    for (Index B = 0; B < n; ++B) m -= w[A] * om[A * n + B] * b.E[B];
  }
  return fc.apply_delta(1, fc.canonical(1, form)) - fc.canonical(2, m);
}

std::vector<CMatrix> curvature(const FormComplex& fc, const CotangentBasis& b, const Connection& c) {
  const Index n = b.n;
  std::vector<CMatrix> om = connection_forms(b, c);
  std::vector<CMatrix> R;
  for (Index A = 0; A < n; ++A)
    for (Index B = 0; B < n; ++B) {
      CMatrix sq = CMatrix::Zero(om[0].rows(), om[0].cols());
      for (Index C = 0; C < n; ++C) sq += om[A * n + C] * om[C * n + B];
      R.push_back(fc.apply_delta(1, fc.canonical(1, om[A * n + B])) + fc.canonical(2, sq));
    }
  return R;
}

std::vector<CMatrix> curvature_of_form(const FormComplex& fc, const CotangentBasis& b,
                                       const Connection& c, const std::vector<CMatrix>& w) {
  std::vector<CMatrix> R = curvature(fc, b, c);
  const Index n = b.n;
  std::vector<CMatrix> out;
  for (Index B = 0; B < n; ++B) {
    CMatrix s = CMatrix::Zero(R[0].rows(), R[0].cols());
    for (Index A = 0; A < n; ++A) s += w[A] * R[A * n + B];
    out.push_back(fc.canonical(2, s));
  }
  return out;
}

std::vector<CMatrix> ricci(const FormComplex& fc, const CotangentBasis& b,
                           const std::vector<CMatrix>& R) {
  const Index n = b.n;
  const FormSpace& c1 = fc.canon[1];
  const FormSpace& c2 = fc.canon[2];
  // left multiplication by e_A as a map between orthonormal coordinates; its adjoint is L^*
  std::vector<CMatrix> L;
  for (Index A = 0; A < n; ++A) {
    CMatrix m(c2.dim(), c1.dim());
    for (Index j = 0; j < c1.dim(); ++j) m.col(j) = c2.coords(b.dual[A] * c1.basis_element(j));
    L.push_back(m);
  }
  std::vector<CMatrix> ric;
  for (Index B = 0; B < n; ++B) {
    CVector acc = CVector::Zero(c1.dim());
    for (Index A = 0; A < n; ++A) acc += L[A].adjoint() * c2.coords(R[A * n + B]);
    ric.push_back(c1.element(acc));
  }
  return ric;
}

CMatrix scalar_curvature(const SpectralData& data, const FormComplex& fc, const CotangentBasis& b,
                         const std::vector<CMatrix>& ric) {
  const FormSpace& c0 = fc.canon[0];
  const FormSpace& c1 = fc.canon[1];
  CVector acc = CVector::Zero(c0.dim());
  for (Index B = 0; B < b.n; ++B) {
    CMatrix eb = n11_like(data) ? natural_involution(data, 1, b.E[B]) : CMatrix(b.E[B].adjoint());
    CMatrix m(c1.dim(), c0.dim());
    for (Index j = 0; j < c0.dim(); ++j) m.col(j) = c1.coords(c0.basis_element(j) * eb);
    acc += m.adjoint() * c1.coords(ric[B]);
  }
  return c0.element(acc);
}

namespace {

// unitarity defect U^AB as canonical 1-forms
std::vector<CMatrix> unitarity_defect(const SpectralData& data, const FormComplex& fc,
                                      const CotangentBasis& b, const Connection& c, bool with_delta) {
  const Index n = b.n;
  std::vector<CMatrix> om = connection_forms(b, c);
  const double s = n11_like(data) ? 1.0 : -1.0;
  std::vector<CMatrix> out;
  for (Index A = 0; A < n; ++A)
    for (Index B = 0; B < n; ++B) {
      // delta h = -s(<nabla E^A, E^B>) ... written out: <nabla E^A,E^B> = -Omega^A_C h^CB
      CMatrix x = CMatrix::Zero(om[0].rows(), om[0].cols());
      if (with_delta) x += fc.apply_delta(0, b.metric[A][B]);
      for (Index C = 0; C < n; ++C) {
        x += om[A * n + C] * b.metric[C][B];
        x += s * b.metric[A][C] * second_slot(data, om[B * n + C]);
      }
      out.push_back(fc.canonical(1, x));
    }
  return out;
}

}  // namespace

double unitarity_residual(const SpectralData& data, const FormComplex& fc, const CotangentBasis& b,
                          const Connection& c) {
  double r = 0;
  for (const auto& x : unitarity_defect(data, fc, b, c, true)) r = std::max(r, hs_norm(x));
  return r;
}

LeviCivitaSolution solve_levi_civita(const SpectralData& data, const FormComplex& fc,
                                     const CotangentBasis& b, const LeviCivitaConstraints& cons) {
  const Index n = b.n;
  const FormSpace& c0 = fc.canon[0];
  const FormSpace& c1 = fc.canon[1];
  const FormSpace& c2 = fc.canon[2];
  const Index da = c0.dim();
  const Index h = data.hilbert_dim;
  const Index nent = n * n * n;
  const Index unknowns = 2 * nent * da;  // real and imaginary part per algebra coordinate

  // residual blocks, each complex, stacked as real rows
  Index rows_t = cons.torsionless ? n * c2.dim() : 0;
  Index rows_u = cons.unitary ? n * n * c1.dim() : 0;
  Index rows_r = cons.reality != Reality::none ? nent * da : 0;
  Index crow = rows_t + rows_u + rows_r;
  RMatrix M = RMatrix::Zero(2 * crow, unknowns);
  RVector rhs = RVector::Zero(2 * crow);

  auto put = [&](RMatrix& mat, Index col, Index row0, const CVector& v) {
    for (Index i = 0; i < v.size(); ++i) {
      mat(2 * (row0 + i), col) += v(i).real();
      mat(2 * (row0 + i) + 1, col) += v(i).imag();
    }
  };
  auto put_rhs = [&](Index row0, const CVector& v) {
    for (Index i = 0; i < v.size(); ++i) {
      rhs(2 * (row0 + i)) -= v(i).real();
      rhs(2 * (row0 + i) + 1) -= v(i).imag();
    }
  };

  // constant parts: delta E^A for torsion, delta h^AB for unitarity
  if (cons.torsionless)
    for (Index A = 0; A < n; ++A) put_rhs(A * c2.dim(), c2.coords(fc.apply_delta(1, b.E[A])));
  if (cons.unitary) {
    Connection z = Connection::zero(n, h);
    auto u0 = unitarity_defect(data, fc, b, z, true);
    for (Index k = 0; k < n * n; ++k) put_rhs(rows_t + k * c1.dim(), c1.coords(u0[k]));
  }

  const double s = n11_like(data) ? 1.0 : -1.0;
  for (Index A = 0; A < n; ++A)
    for (Index B = 0; B < n; ++B)
      for (Index C = 0; C < n; ++C)
        for (Index i = 0; i < da; ++i)
          for (int part = 0; part < 2; ++part) {
            const Index ent = (A * n + B) * n + C;
            const Index col = 2 * (ent * da + i) + part;
            CMatrix g = c0.basis_element(i) * (part == 0 ? cplx(1, 0) : cplx(0, 1));
            // Gamma^A_BC = g gives Omega^A_C = g E^B
            CMatrix om = g * b.E[B];
            if (cons.torsionless) put(M, col, A * c2.dim(), c2.coords(fc.canonical(2, om * b.E[C])));
            if (cons.unitary) {
              for (Index X = 0; X < n; ++X) {
                // U^{A X} gets Omega^A_C h^{C X}
                put(M, col, rows_t + (A * n + X) * c1.dim(),
                    c1.coords(fc.canonical(1, om * b.metric[C][X])));
                // U^{X A} gets s h^{X C} (Omega^A_C)^dagger
                put(M, col, rows_t + (X * n + A) * c1.dim(),
                    c1.coords(fc.canonical(1, s * b.metric[X][C] * second_slot(data, om))));
              }
            }
            if (cons.reality != Reality::none) {
              double sg = cons.reality == Reality::anti_hermitian ? 1.0 : -1.0;
              CMatrix re = g + sg * CMatrix(g.adjoint());
              put(M, col, rows_t + rows_u + ent * da, c0.coords(re));
            }
          }

  LeviCivitaSolution sol;
  sol.unknowns = unknowns;
  Eigen::CompleteOrthogonalDecomposition<RMatrix> cod;
  // rank floor: entries of the constraint matrix are O(1) in orthonormal coordinates
  cod.setThreshold(1e-8);
  cod.compute(M);
  RVector x = cod.solve(rhs);
  sol.homogeneous_dim = unknowns - cod.rank();
  sol.residual = crow ? (M * x - rhs).cwiseAbs().maxCoeff() : 0.0;
  sol.feasible = sol.residual <= 1e3 * fc.tol;
  Connection c = Connection::zero(n, h);
  c.reality = cons.reality;
  for (Index ent = 0; ent < nent; ++ent) {
    CVector co(da);
    for (Index i = 0; i < da; ++i) co(i) = cplx(x(2 * (ent * da + i)), x(2 * (ent * da + i) + 1));
    c.coeffs[ent] = c0.element(co);
  }
  sol.particular = c;
  return sol;
}

}  // namespace ncg
