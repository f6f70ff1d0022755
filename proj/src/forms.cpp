#include "ncg/spectral_forms.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ncg {

// FormSpace

FormSpace FormSpace::dense(Index h, CMatrix q) {
  FormSpace s;
  s.factored_ = false;
  s.h_ = h;
  s.n_ = h;
  s.m_ = 1;
  if (q.rows() != h * h) throw dimension_error("FormSpace::dense: wrong vec length");
  s.q_ = std::move(q);
  return s;
}

FormSpace FormSpace::factored(Index n, Index m, CMatrix fiber) {
  FormSpace s;
  s.factored_ = true;
  s.n_ = n;
  s.m_ = m;
  s.h_ = n * m;
  if (fiber.rows() != m * m) throw dimension_error("FormSpace::factored: wrong fiber length");
  s.q_ = std::move(fiber);
  return s;
}

Index FormSpace::dim() const { return factored_ ? n_ * n_ * q_.cols() : q_.cols(); }

CVector FormSpace::coords(const CMatrix& x) const {
  if (x.rows() != h_ || x.cols() != h_) throw dimension_error("FormSpace: ambient mismatch");
  if (!factored_) return q_.adjoint() * vec(x);
  Index r = q_.cols();
  CVector c(dim());
  for (Index p = 0; p < n_; ++p)
    for (Index q = 0; q < n_; ++q) {
      CMatrix blk = x.block(p * m_, q * m_, m_, m_);
      c.segment((p * n_ + q) * r, r) = q_.adjoint() * vec(blk);
    }
  return c;
}

CMatrix FormSpace::element(const CVector& c) const {
  if (c.size() != dim()) throw dimension_error("FormSpace: coordinate length");
  if (!factored_) return unvec(q_ * c, h_);
  Index r = q_.cols();
  CMatrix x = CMatrix::Zero(h_, h_);
  if (r == 0) return x;
  for (Index p = 0; p < n_; ++p)
    for (Index q = 0; q < n_; ++q)
      x.block(p * m_, q * m_, m_, m_) = unvec(q_ * c.segment((p * n_ + q) * r, r), m_);
  return x;
}

CMatrix FormSpace::project(const CMatrix& x) const { return element(coords(x)); }

CMatrix FormSpace::basis_element(Index i) const {
  CVector c = CVector::Zero(dim());
  c(i) = 1;
  return element(c);
}

OperatorSpan FormSpace::span(double tol) const {
  if (!factored_) return OperatorSpan(h_, q_, tol);
  CMatrix cols(h_ * h_, dim());
  for (Index i = 0; i < dim(); ++i) cols.col(i) = vec(basis_element(i));
  return OperatorSpan(h_, cols, tol);
}

CMatrix random_element(const FormSpace& s, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  CVector c(s.dim());
  for (Index i = 0; i < c.size(); ++i) c(i) = cplx(nd(rng), nd(rng));
  return s.element(c);
}

namespace {

CMatrix random_complex(Index r, Index c, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  CMatrix x(r, c);
  for (Index j = 0; j < c; ++j)
    for (Index i = 0; i < r; ++i) x(i, j) = cplx(nd(rng), nd(rng));
  return x;
}

double max_col_norm(const CMatrix& m) {
  double s = 0;
  for (Index j = 0; j < m.cols(); ++j) s = std::max(s, m.col(j).norm());
  return s;
}

// a-priori size of the products x*y; used as the rank floor so that a span of
// products which all vanish is not mistaken for the rounding noise it contains
double product_bound(const std::vector<CMatrix>& a, const std::vector<CMatrix>& b) {
  double na = 0, nb = 0;
  for (const auto& x : a) na = std::max(na, x.norm());
  for (const auto& y : b) nb = std::max(nb, y.norm());
  return na * nb;
}

double operator_scale(const CMatrix& d) { return std::max(hs_norm(d), 1e-300); }

Index rank_with_floor(const CMatrix& m, double tol, double floor) {
  if (m.size() == 0) return 0;
  return numerical_rank(m, tol, floor);
}

std::vector<Index> betti_from(const std::vector<Index>& dims, const std::vector<Index>& ranks) {
  std::vector<Index> b;
  for (std::size_t k = 0; k < ranks.size(); ++k)
    b.push_back(dims[k] - ranks[k] - (k > 0 ? ranks[k - 1] : 0));
  return b;
}

// ---------------------------------------------------------------------------
// factored engine, algebra M_n (x) 1_m. all fiber spans are subspaces of M_m;
// row-1 reduction: ker pi is a left module and pi o delta is left-linear on it
struct Factored {
  Index n, m, h;
  double tol;
  std::vector<CMatrix> dblk;  // D_pr at p*n + r
  std::vector<CMatrix> T;     // fiber of pi_k, m^2 x t_k
  std::vector<CMatrix> W;     // products [D,a1]..[D,ak] in M_n (x) T_k coords
  std::vector<CMatrix> S;     // junk fiber
  std::vector<CMatrix> C;     // canonical fiber
  std::vector<CMatrix> delta;

  const CMatrix& blk(Index p, Index r) const { return dblk[p * n + r]; }
};

CMatrix fiber_mat(const CMatrix& t, Index j, Index m) { return unvec(t.col(j), m); }

// coordinates of X (h x h) in M_n (x) T, index (p*n+q)*t + j
CVector block_coords(const CMatrix& x, const CMatrix& t, Index n, Index m) {
  Index r = t.cols();
  CVector c(n * n * r);
  for (Index p = 0; p < n; ++p)
    for (Index q = 0; q < n; ++q)
      c.segment((p * n + q) * r, r) = t.adjoint() * vec(CMatrix(x.block(p * m, q * m, m, m)));
  return c;
}

CMatrix block_element(const CVector& c, const CMatrix& t, Index n, Index m) {
  Index r = t.cols();
  CMatrix x = CMatrix::Zero(n * m, n * m);
  if (r == 0) return x;
  for (Index p = 0; p < n; ++p)
    for (Index q = 0; q < n; ++q)
      x.block(p * m, q * m, m, m) = unvec(t * c.segment((p * n + q) * r, r), m);
  return x;
}

CMatrix lift_algebra(const CMatrix& a, Index m) { return kron(a, identity(m)); }

void factored_fibers(Factored& f, const CMatrix& D, Index top) {
  // T_0 .. T_top
  f.T.clear();
  CMatrix t0 = vec(identity(f.m)) / std::sqrt(double(f.m));
  f.T.push_back(t0);
  std::vector<CMatrix> gens;
  for (Index p = 0; p < f.n; ++p)
    for (Index r = 0; r < f.n; ++r) {
      if (p != r) gens.push_back(f.blk(p, r));
      else if (p > 0) gens.push_back(f.blk(p, p) - f.blk(0, 0));
    }
  auto orth_fiber = [&](const std::vector<CMatrix>& g) {
    if (g.empty()) return CMatrix(f.m * f.m, 0);
    CMatrix cols(f.m * f.m, Index(g.size()));
    for (std::size_t j = 0; j < g.size(); ++j) cols.col(Index(j)) = vec(g[j]);
    return orth_columns(cols, f.tol, operator_scale(D));
  };
  if (top >= 1) f.T.push_back(orth_fiber(gens));
  for (Index k = 2; k <= top; ++k) {
    std::vector<CMatrix> g;
    const CMatrix& a = f.T[k - 1];
    const CMatrix& b = f.T[1];
    for (Index i = 0; i < a.cols(); ++i)
      for (Index j = 0; j < b.cols(); ++j) g.push_back(fiber_mat(a, i, f.m) * fiber_mat(b, j, f.m));
    CMatrix cols = g.empty() ? CMatrix(f.m * f.m, 0) : CMatrix(f.m * f.m, Index(g.size()));
    for (std::size_t j = 0; j < g.size(); ++j) cols.col(Index(j)) = vec(g[j]);
    f.T.push_back(g.empty() ? cols : orth_columns(cols, f.tol, 1.0));
  }
}

void factored_products(Factored& f, const CMatrix& D, Index top, std::mt19937_64& rng) {
  // W_0 .. W_top
  f.W.clear();
  CVector w0 = block_coords(identity(f.h), f.T[0], f.n, f.m);
  f.W.push_back(w0 / w0.norm());
  std::vector<CMatrix> comm;  // [D, E_rs]
  for (Index r = 0; r < f.n; ++r)
    for (Index s = 0; s < f.n; ++s) {
      CMatrix e = CMatrix::Zero(f.n, f.n);
      e(r, s) = 1;
      CMatrix a = lift_algebra(e, f.m);
      comm.push_back(D * a - a * D);
    }
  for (Index j = 0; j < top; ++j) {
    const CMatrix& wj = f.W[j];
    const CMatrix& tj = f.T[j];
    const CMatrix& tn = f.T[j + 1];
    Index target = f.n * f.n * tn.cols();
    Index exact = wj.cols() * f.n * f.n;
    if (target == 0 || wj.cols() == 0) {
      f.W.push_back(CMatrix(target, 0));
      continue;
    }
    CMatrix cols;
    double bound = 0;
    if (exact <= target + 32) {
      cols.resize(target, exact);
      Index c = 0;
      for (Index i = 0; i < wj.cols(); ++i) {
        CMatrix w = block_element(wj.col(i), tj, f.n, f.m);
        for (const auto& x : comm) {
          cols.col(c++) = block_coords(w * x, tn, f.n, f.m);
          bound = std::max(bound, w.norm() * x.norm());
        }
      }
    } else {
      // generic samples of the bilinear image span the same space
      Index samples = target + 32;
      cols.resize(target, samples);
      for (Index s = 0; s < samples; ++s) {
        CVector g = random_complex(wj.cols(), 1, rng);
        CMatrix w = block_element(wj * g, tj, f.n, f.m);
        CMatrix a = lift_algebra(random_complex(f.n, f.n, rng), f.m);
        CMatrix x = D * a - a * D;
        cols.col(s) = block_coords(w * x, tn, f.n, f.m);
        bound = std::max(bound, w.norm() * x.norm());
      }
    }
    f.W.push_back(orth_columns(cols, f.tol, bound));
  }
}

// lam[(s*n+q)] = T_next^* vec(D_sq t_j), t_next x t_k
std::vector<CMatrix> left_action_tables(const Factored& f, const CMatrix& tk, const CMatrix& tn) {
  std::vector<CMatrix> lam;
  for (Index s = 0; s < f.n; ++s)
    for (Index q = 0; q < f.n; ++q) {
      CMatrix l(tn.cols(), tk.cols());
      for (Index j = 0; j < tk.cols(); ++j)
        l.col(j) = tn.adjoint() * vec(CMatrix(f.blk(s, q) * fiber_mat(tk, j, f.m)));
      lam.push_back(l);
    }
  return lam;
}

FormComplex factored_complex(const SpectralData& data, const CMatrix& D, Index kmax) {
  Factored f;
  f.n = data.blocks->n;
  f.m = data.blocks->m;
  f.h = f.n * f.m;
  f.tol = data.tol;
  for (Index p = 0; p < f.n; ++p)
    for (Index r = 0; r < f.n; ++r) f.dblk.push_back(D.block(p * f.m, r * f.m, f.m, f.m));
  std::mt19937_64 rng(20240611);
  factored_fibers(f, D, kmax + 1);
  factored_products(f, D, kmax, rng);

  const Index n = f.n, m = f.m;
  const double dscale = operator_scale(D);
  f.S.assign(kmax + 2, CMatrix());
  f.C.assign(kmax + 2, CMatrix());
  f.S[0] = CMatrix(m * m, 0);
  f.C[0] = f.T[0];

  // lifted images delta(E_1q (x) c) in T_{k+1} coordinates, kept until C_{k+1} is known
  for (Index k = 0; k <= kmax; ++k) {
    const CMatrix& tk = f.T[k];
    const CMatrix& tn = f.T[k + 1];
    const CMatrix& wk = f.W[k];
    const Index t = tk.cols(), tnx = tn.cols(), nw = wk.cols();
    const Index L = n * nw;
    std::vector<CMatrix> lam = left_action_tables(f, tk, tn);

    // P on row-1 tuples E_1q (x) w_i, rows (q', j)
    CMatrix P(n * t, L);
    for (Index q = 0; q < n; ++q)
      for (Index i = 0; i < nw; ++i)
        for (Index qp = 0; qp < n; ++qp)
          P.block(qp * t, q * nw + i, t, 1) = wk.block((q * n + qp) * t, i, t, 1);
    Svd svd = ncg::svd(P, SvdVectors::thin);
    const RVector& sv = svd.singularValues();
    Index r = 0;
    double smax = sv.size() ? sv(0) : 0.0;
    while (r < sv.size() && sv(r) > f.tol * std::max(smax, 1e-300)) ++r;
    CMatrix V = svd.matrixV().leftCols(r);
    // lifts of E_1q (x) c for c in C_k, columns (q, c)
    const CMatrix& ck = f.C[k];
    CMatrix gam = tk.adjoint() * ck;  // t x c_k
    Index nc = ck.cols();
    CMatrix Y = CMatrix::Zero(n * t, n * nc);
    for (Index q = 0; q < n; ++q) Y.block(q * t, q * nc, t, nc) = gam;
    CMatrix X = V * (sv.head(r).cwiseInverse().asDiagonal() * (svd.matrixU().leftCols(r).adjoint() * Y));

    // Q row block p: (n*tnx) x L
    std::vector<CMatrix> junk_cols;
    double qscale = 0;
    CMatrix du(n * n * tnx, n * nc);  // delta of lifts, all blocks
    for (Index p = 0; p < n; ++p) {
      CMatrix Qp = CMatrix::Zero(n * tnx, L);
      for (Index q = 0; q < n; ++q)
        for (Index i = 0; i < nw; ++i) {
          Index col = q * nw + i;
          for (Index qp = 0; qp < n; ++qp) {
            CVector acc = lam[p * n + 0] * wk.block((q * n + qp) * t, i, t, 1);
            if (p == 0)
              for (Index qq = 0; qq < n; ++qq)
                acc -= lam[q * n + qq] * wk.block((qq * n + qp) * t, i, t, 1);
            Qp.block(qp * tnx, col, tnx, 1) = acc;
          }
        }
      qscale = std::max(qscale, max_col_norm(Qp));
      du.middleRows(p * n * tnx, n * tnx) = Qp * X;
      CMatrix Yp = Qp - (Qp * V) * V.adjoint();
      for (Index qp = 0; qp < n; ++qp) {
        CMatrix slice = Yp.middleRows(qp * tnx, tnx);  // tnx x L
        if (tnx == 0 || L == 0) continue;
        Eigen::HouseholderQR<CMatrix> qr(slice.adjoint());
        Index rr = std::min(L, tnx);
        CMatrix R = qr.matrixQR().topRows(rr).triangularView<Eigen::Upper>();
        junk_cols.push_back(R.adjoint());  // tnx x rr
      }
    }
    // junk fiber S_{k+1}
    Index total = 0;
    for (const auto& c : junk_cols) total += c.cols();
    CMatrix jc(tnx, total);
    Index off = 0;
    for (const auto& c : junk_cols) {
      jc.middleCols(off, c.cols()) = c;
      off += c.cols();
    }
    CMatrix sj = (tnx == 0 || total == 0) ? CMatrix(tnx, 0) : orth_columns(jc, f.tol, qscale);
    f.S[k + 1] = tn * sj;
    CMatrix rest = tn - f.S[k + 1] * (f.S[k + 1].adjoint() * tn);
    f.C[k + 1] = tnx == 0 ? CMatrix(m * m, 0) : orth_columns(rest, f.tol, 1.0);

    // assemble delta_k on canonical coordinates
    const CMatrix& cn = f.C[k + 1];
    Index ncn = cn.cols();
    CMatrix to_c = cn.adjoint() * tn;  // c_{k+1} x t_{k+1}
    CMatrix dk = CMatrix::Zero(n * n * ncn, n * n * nc);
    for (Index p = 0; p < n; ++p)
      for (Index q = 0; q < n; ++q)
        for (Index i = 0; i < nc; ++i) {
          Index col = (p * n + q) * nc + i;
          // [D, E_p1] u : block (p', q) gets (D_p'p - delta D_11) c
          for (Index pp = 0; pp < n; ++pp) {
            CMatrix l = lam[pp * n + p];
            if (pp == p) l -= lam[0];
            dk.block((pp * n + q) * ncn, col, ncn, 1) += to_c * (l * gam.col(i));
          }
          // E_p1 delta(u): row block 0 of the lift image moved to row p
          for (Index qq = 0; qq < n; ++qq)
            dk.block((p * n + qq) * ncn, col, ncn, 1) +=
                to_c * du.block((0 * n + qq) * tnx, q * nc + i, tnx, 1);
        }
    f.delta.push_back(dk);
    (void)dscale;
  }

  FormComplex fc;
  fc.kmax = kmax;
  fc.tol = data.tol;
  fc.scale = dscale;
  for (Index k = 0; k <= kmax + 1; ++k) {
    fc.pi.push_back(FormSpace::factored(n, m, f.T[k]));
    fc.junk.push_back(FormSpace::factored(n, m, f.S[k]));
    fc.canon.push_back(FormSpace::factored(n, m, f.C[k]));
  }
  fc.delta = f.delta;
  return fc;
}

// ---------------------------------------------------------------------------
// dense reduced engine for an arbitrary algebra basis

CMatrix vec_columns(const std::vector<CMatrix>& xs, Index h) {
  CMatrix out(h * h, Index(xs.size()));
  for (std::size_t j = 0; j < xs.size(); ++j) out.col(Index(j)) = vec(xs[j]);
  return out;
}

std::vector<CMatrix> orth_algebra(const SpectralData& data) {
  OperatorSpan s = orthonormalize(data.algebra_basis, data.tol);
  return s.basis();
}

FormComplex dense_complex(const SpectralData& data, const CMatrix& D, Index kmax) {
  const Index h = data.hilbert_dim;
  const double tol = data.tol;
  const double dscale = operator_scale(D);
  std::vector<CMatrix> alg = orth_algebra(data);
  std::vector<CMatrix> dalg;
  for (const auto& a : alg) dalg.push_back(D * a - a * D);

  // W_0 .. W_{kmax+1}
  std::vector<std::vector<CMatrix>> W;
  W.push_back({identity(h)});
  for (Index j = 0; j <= kmax; ++j) {
    std::vector<CMatrix> g;
    for (const auto& w : W[j])
      for (const auto& da : dalg) g.push_back(w * da);
    CMatrix cols = g.empty() ? CMatrix(h * h, 0) : vec_columns(g, h);
    CMatrix q = g.empty() ? cols : orth_columns(cols, tol, product_bound(W[j], dalg));
    std::vector<CMatrix> next;
    for (Index i = 0; i < q.cols(); ++i) next.push_back(unvec(q.col(i), h));
    W.push_back(next);
  }

  FormComplex fc;
  fc.kmax = kmax;
  fc.tol = tol;
  fc.scale = dscale;
  std::vector<CMatrix> pis, junks(kmax + 2), canons(kmax + 2);
  std::vector<CMatrix> Ps, Qs;
  for (Index k = 0; k <= kmax + 1; ++k) {
    std::vector<CMatrix> pc, qc;
    for (std::size_t i = 0; i < alg.size(); ++i)
      for (const auto& w : W[k]) {
        pc.push_back(alg[i] * w);
        qc.push_back(dalg[i] * w);
      }
    CMatrix P = pc.empty() ? CMatrix(h * h, 0) : vec_columns(pc, h);
    CMatrix Q = qc.empty() ? CMatrix(h * h, 0) : vec_columns(qc, h);
    pis.push_back(P.cols() ? orth_columns(P, tol, product_bound(alg, W[k])) : P);
    Ps.push_back(P);
    Qs.push_back(Q);
  }
  junks[0] = CMatrix(h * h, 0);
  for (Index k = 0; k <= kmax; ++k) {
    const CMatrix& P = Ps[k];
    const CMatrix& Q = Qs[k];
    CMatrix V = row_space(P, tol);
    CMatrix QK = Q - (Q * V) * V.adjoint();
    junks[k + 1] = QK.cols() ? orth_columns(QK, tol, std::max(max_col_norm(Q), product_bound(dalg, W[k]))) : CMatrix(h * h, 0);
  }
  for (Index k = 0; k <= kmax + 1; ++k) {
    const CMatrix& pi = pis[k];
    const CMatrix& jk = junks[k];
    CMatrix rest = pi - jk * (jk.adjoint() * pi);
    canons[k] = pi.cols() ? orth_columns(rest, tol, 1.0) : pi;
  }
  for (Index k = 0; k <= kmax; ++k) {
    const CMatrix& P = Ps[k];
    Eigen::CompleteOrthogonalDecomposition<CMatrix> cod;
    cod.setThreshold(tol);
    cod.compute(P);
    CMatrix x = cod.solve(canons[k]);
    fc.delta.push_back(canons[k + 1].adjoint() * (Qs[k] * x));
  }
  for (Index k = 0; k <= kmax + 1; ++k) {
    fc.pi.push_back(FormSpace::dense(h, pis[k]));
    fc.junk.push_back(FormSpace::dense(h, junks[k]));
    fc.canon.push_back(FormSpace::dense(h, canons[k]));
  }
  return fc;
}

void finish_complex(FormComplex& fc) {
  fc.delta_rank.clear();
  for (const auto& d : fc.delta) fc.delta_rank.push_back(rank_with_floor(d, fc.tol, fc.scale));
  std::vector<Index> dims = fc.canon_dims();
  fc.betti = betti_from(dims, fc.delta_rank);
}

// ---------------------------------------------------------------------------
// tensor model A (x) Abar^(k-1) over the full basis

CMatrix tensor_junk(const SpectralData& data, const CMatrix& D, Index k, bool kernel_basis) {
  const Index h = data.hilbert_dim;
  const double tol = data.tol;
  if (k <= 0) return CMatrix(h * h, 0);
  // orthonormal basis with the identity first; Abar = its orthocomplement
  CVector e0 = vec(identity(h)) / std::sqrt(double(h));
  CMatrix b = vec_columns(data.algebra_basis, h);
  b -= e0 * (e0.adjoint() * b);
  CMatrix rest = orth_columns(b, tol, 1.0);
  std::vector<CMatrix> alg{unvec(e0, h)}, abar, dabar;
  for (Index i = 0; i < rest.cols(); ++i) {
    CMatrix a = unvec(rest.col(i), h);
    alg.push_back(a);
    abar.push_back(a);
    dabar.push_back(D * a - a * D);
  }
  // words of length k-1 over Abar: products of commutators
  std::vector<CMatrix> words{identity(h)};
  for (Index j = 0; j < k - 1; ++j) {
    std::vector<CMatrix> next;
    for (const auto& w : words)
      for (const auto& d : dabar) next.push_back(w * d);
    words.swap(next);
  }
  CMatrix P(h * h, Index(alg.size() * words.size()));
  CMatrix Q(h * h, P.cols());
  Index c = 0;
  for (const auto& a : alg) {
    CMatrix da = D * a - a * D;
    for (const auto& w : words) {
      P.col(c) = vec(CMatrix(a * w));
      Q.col(c) = vec(CMatrix(da * w));
      ++c;
    }
  }
  CMatrix QK;
  if (kernel_basis) {
    // explicit kernel basis from the full SVD
    Svd svd = ncg::svd(P, SvdVectors::full);
    const RVector& s = svd.singularValues();
    Index r = 0;
    while (r < s.size() && s(r) > tol * std::max(s(0), 1e-300)) ++r;
    CMatrix N = svd.matrixV().rightCols(P.cols() - r);
    QK = Q * N;
  } else {
    CMatrix V = row_space(P, tol);
    QK = Q - (Q * V) * V.adjoint();
  }
  if (QK.cols() == 0) return CMatrix(h * h, 0);
  return orth_columns(QK, tol, max_col_norm(Q));
}

}  // namespace

// FormComplex helpers

std::vector<Index> FormComplex::pi_dims() const {
  std::vector<Index> d;
  for (const auto& s : pi) d.push_back(s.dim());
  return d;
}
std::vector<Index> FormComplex::junk_dims() const {
  std::vector<Index> d;
  for (const auto& s : junk) d.push_back(s.dim());
  return d;
}
std::vector<Index> FormComplex::canon_dims() const {
  std::vector<Index> d;
  for (const auto& s : canon) d.push_back(s.dim());
  return d;
}

std::vector<Index> FormComplex::module_ranks(Index dim_algebra) const {
  std::vector<Index> out;
  for (const auto& s : canon) out.push_back(s.dim() % dim_algebra == 0 ? s.dim() / dim_algebra : -1);
  return out;
}

CMatrix FormComplex::canonical(Index k, const CMatrix& x) const { return canon.at(k).project(x); }

CMatrix FormComplex::apply_delta(Index k, const CMatrix& x) const {
  if (k < 0 || k > kmax) throw contract_violation("apply_delta: degree out of range");
  return canon[k + 1].element(delta[k] * canon[k].coords(x));
}

double FormComplex::delta_squared_residual() const {
  double r = 0;
  for (Index k = 0; k + 1 < Index(delta.size()); ++k) {
    if (delta[k + 1].size() == 0 || delta[k].size() == 0) continue;
    r = std::max(r, (delta[k + 1] * delta[k]).norm() / std::max(1.0, scale * scale));
  }
  return r;
}

double FormComplex::junk_containment_residual() const {
  double r = 0;
  for (std::size_t k = 0; k < junk.size(); ++k) {
    const CMatrix& j = junk[k].fiber();
    const CMatrix& p = pi[k].fiber();
    if (j.cols() == 0) continue;
    r = std::max(r, (j - p * (p.adjoint() * j)).norm());
  }
  return r;
}

OperatorSpan FormComplex::kernel_span(Index k) const {
  const CMatrix& d = delta.at(k);
  Index dim = canon[k].dim();
  CMatrix ker;
  if (d.rows() == 0) {
    ker = CMatrix::Identity(dim, dim);
  } else {
    Svd svd = ncg::svd(d, SvdVectors::full);
    Index r = rank_with_floor(d, tol, scale);
    ker = svd.matrixV().rightCols(dim - r);
  }
  Index h = canon[k].hilbert_dim();
  CMatrix cols(h * h, ker.cols());
  for (Index j = 0; j < ker.cols(); ++j) cols.col(j) = vec(canon[k].element(ker.col(j)));
  return OperatorSpan(h, orth_columns(cols, tol, 1e-300), tol);
}

std::vector<CMatrix> FormComplex::cohomology_representatives(Index k) const {
  OperatorSpan ker = kernel_span(k);
  Index h = canon[k].hilbert_dim();
  CMatrix cols = ker.columns();
  if (k > 0 && delta[k - 1].size()) {
    CMatrix img = canon[k].dim() ? CMatrix(h * h, delta[k - 1].cols()) : CMatrix(h * h, 0);
    for (Index j = 0; j < img.cols(); ++j)
      img.col(j) = vec(canon[k].element(delta[k - 1].col(j)));
    CMatrix im = orth_columns(img, tol, scale);
    cols = cols - im * (im.adjoint() * cols);
  }
  CMatrix q = orth_columns(cols, tol, 1.0);
  std::vector<CMatrix> out;
  for (Index j = 0; j < q.cols(); ++j) out.push_back(unvec(q.col(j), h));
  return out;
}

// public entry points

std::vector<FormSpace> pi_forms(const SpectralData& data, Index kmax) {
  validate(data);
  CMatrix D = data.differential();
  const Index h = data.hilbert_dim;
  std::vector<FormSpace> out;
  if (data.blocks) {
    Factored f;
    f.n = data.blocks->n;
    f.m = data.blocks->m;
    f.h = h;
    f.tol = data.tol;
    for (Index p = 0; p < f.n; ++p)
      for (Index r = 0; r < f.n; ++r) f.dblk.push_back(D.block(p * f.m, r * f.m, f.m, f.m));
    factored_fibers(f, D, kmax);
    for (const auto& t : f.T) out.push_back(FormSpace::factored(f.n, f.m, t));
    return out;
  }
  OperatorSpan cur = orthonormalize(data.algebra_basis, data.tol);
  out.push_back(FormSpace::dense(h, cur.columns()));
  std::vector<CMatrix> dalg;
  for (const auto& b : data.algebra_basis) dalg.push_back(D * b - b * D);
  for (Index k = 1; k <= kmax; ++k) {
    std::vector<CMatrix> g;
    for (const auto& s : cur.basis())
      for (const auto& d : dalg) g.push_back(s * d);
    CMatrix cols = vec_columns(g, h);
    cur = OperatorSpan(h, orth_columns(cols, data.tol, product_bound(cur.basis(), dalg)), data.tol);
    out.push_back(FormSpace::dense(h, cur.columns()));
  }
  return out;
}

FormSpace junk(const SpectralData& data, Index k, JunkMethod method) {
  validate(data);
  const Index h = data.hilbert_dim;
  if (k <= 0) return FormSpace::dense(h, CMatrix(h * h, 0));
  CMatrix D = data.differential();
  switch (method) {
    case JunkMethod::tensor_projector:
      return FormSpace::dense(h, tensor_junk(data, D, k, false));
    case JunkMethod::tensor_kernel_basis:
      return FormSpace::dense(h, tensor_junk(data, D, k, true));
    default: {
      FormComplex fc = build_form_complex(data, k - 1, method);
      return fc.junk[k];
    }
  }
}

FormComplex build_form_complex(const SpectralData& data, Index kmax, JunkMethod method) {
  validate(data);
  if (kmax < 0) throw contract_violation("build_form_complex: negative kmax");
  CMatrix D = data.differential();
  bool use_factored = data.blocks.has_value() &&
                      (method == JunkMethod::automatic || method == JunkMethod::factored);
  if (method == JunkMethod::factored && !data.blocks)
    throw configuration_error("factored junk needs a block layout");
  FormComplex fc = use_factored ? factored_complex(data, D, kmax) : dense_complex(data, D, kmax);
  fc.graded = data.flavor != Flavor::N1;
  finish_complex(fc);
  return fc;
}

CMatrix canonical_rep(const FormComplex& fc, Index k, const CMatrix& w) {
  const FormSpace& pi = fc.pi.at(k);
  if (pi.residual(w) > 1e3 * fc.tol * std::max(1.0, w.norm()))
    throw contract_violation("canonical_rep: form is not in pi(Omega^k)");
  return fc.canon[k].project(w);
}

}  // namespace ncg
