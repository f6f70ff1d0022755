#include "ncg/nc_torus.hpp"

#include "ncg/clifford.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ncg {

namespace {

const cplx I(0, 1);
const double pi = std::acos(-1.0);

double eps2(int a, int b) { return a == b ? 0.0 : (a == 0 ? 1.0 : -1.0); }

CMatrix random_complex(Index r, Index c, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMatrix x(r, c);
  for (Index i = 0; i < x.size(); ++i) x.data()[i] = cplx(n(rng), n(rng));
  return x;
}

CMatrix pauli(int a) {
  CMatrix s = CMatrix::Zero(2, 2);
  if (a == 0) s << 0, 1, 1, 0;
  if (a == 1) s << 0, -I, I, 0;
  if (a == 2) s << 1, 0, 0, -1;
  return s;
}

CMatrix unit(Index n, Index r, Index c) {
  CMatrix e = CMatrix::Zero(n, n);
  e(r, c) = 1;
  return e;
}

CMatrix matrix_power(const CMatrix& a, int p) {
  CMatrix out = identity(a.rows());
  for (int i = 0; i < p; ++i) out = out * a;
  return out;
}

// zeta minimizing |a - zeta b|, rounded to the unit circle
cplx fit_phase(const CMatrix& a, const CMatrix& b) {
  cplx z = hs_inner(b, a);
  double n = std::abs(z);
  return n > 0 ? z / n : cplx(1, 0);
}

// sign s in {+1, -1} with |x - s y| <= tol, else 0
int read_sign(const CMatrix& x, const CMatrix& y, double tol) {
  if (hs_norm(CMatrix(x - y)) <= tol) return 1;
  if (hs_norm(CMatrix(x + y)) <= tol) return -1;
  return 0;
}

}  // namespace

int centered(int p, int N) {
  int r = ((p % N) + N) % N;
  if (2 * r > N) r -= N;
  return r;
}

double sine_symbol(int p, int N) {
  return std::sin(pi * centered(p, N) / N) / (pi / N);
}

CMatrix TorusModel::left_k(const CMatrix& a) const {
  return classical ? a : kron(a, identity(N));
}

CMatrix TorusModel::right_k(const CMatrix& a) const {
  // row-major vec: (X b)_{rc} = sum_s X_{rs} b_{sc}
  return classical ? a : kron(identity(N), a.transpose());
}

CMatrix TorusModel::left(const CMatrix& a) const { return kron(left_k(a), identity(2)); }

CMatrix TorusModel::fourier(int p1, int p2) const {
  return matrix_power(U, ((p1 % N) + N) % N) * matrix_power(V, ((p2 % N) + N) % N);
}

CMatrix TorusModel::random_element(std::mt19937_64& rng) const {
  if (!classical) return random_complex(N, N, rng);
  return random_complex(algebra_dim(), 1, rng).col(0).asDiagonal();
}

TorusModel build_torus(int M, int N, const RMatrix& metric) {
  if (N < 2) throw usage_error("build_torus: N must be at least 2");
  if (M != 0 && std::gcd(std::abs(M), N) != 1)
    throw usage_error("build_torus: M and N must be coprime");
  if (metric.rows() != 2 || metric.cols() != 2) throw usage_error("build_torus: metric must be 2x2");
  if ((metric - metric.transpose()).norm() > 1e-12 || Eigen::LLT<RMatrix>(metric).info() != Eigen::Success)
    throw usage_error("build_torus: metric must be symmetric positive definite");

  TorusModel m;
  m.M = M;
  m.N = N;
  m.metric = metric;
  m.classical = (M == 0);
  const Index n2 = m.algebra_dim();

  // gamma^mu = i L_{mu a} sigma_a with L L^T = g^-1
  RMatrix l = Eigen::LLT<RMatrix>(RMatrix(metric.inverse())).matrixL();
  for (int mu = 0; mu < 2; ++mu) {
    m.gammas[mu] = CMatrix::Zero(2, 2);
    for (int a = 0; a < 2; ++a) m.gammas[mu] += I * l(mu, a) * pauli(a);
  }
  m.sigma = volume_2d({m.gammas[0], m.gammas[1]}, metric);

  if (!m.classical) {
    m.U = CMatrix::Zero(N, N);
    m.V = CMatrix::Zero(N, N);
    m.parity = CMatrix::Zero(N, N);
    for (int k = 0; k < N; ++k) {
      m.U((k + 1) % N, k) = 1;
      m.V(k, k) = std::polar(1.0, 2 * pi * double(M) * k / N);
      m.parity((N - k) % N, k) = 1;
    }
    // J0(X) = (P X P)*: transpose after conjugating by P
    CMatrix swap = CMatrix::Zero(n2, n2);
    for (int r = 0; r < N; ++r)
      for (int c = 0; c < N; ++c) swap(c * N + r, r * N + c) = 1;
    m.j0 = swap * kron(m.parity, m.parity);
  } else {
    m.U = CMatrix::Zero(n2, n2);
    m.V = CMatrix::Zero(n2, n2);
    m.parity = CMatrix::Zero(n2, n2);
    for (int x1 = 0; x1 < N; ++x1)
      for (int x2 = 0; x2 < N; ++x2) {
        Index x = Index(x1) * N + x2;
        m.U(x, x) = std::polar(1.0, 2 * pi * x1 / N);
        m.V(x, x) = std::polar(1.0, 2 * pi * x2 / N);
        m.parity(Index((N - x1) % N) * N + (N - x2) % N, x) = 1;
      }
    m.j0 = m.parity;
  }

  // sine multipliers, diagonal on the orthogonal family F_p acting on the cyclic vector
  CVector omega = m.classical ? CVector(CVector::Ones(n2)) : vec(identity(N));
  for (int mu = 0; mu < 2; ++mu) m.S[mu] = CMatrix::Zero(n2, n2);
  for (int p1 = 0; p1 < N; ++p1)
    for (int p2 = 0; p2 < N; ++p2) {
      CVector v = m.left_k(m.fourier(p1, p2)) * omega;
      v /= v.norm();
      CMatrix proj = v * v.adjoint();
      m.S[0] += sine_symbol(p1, N) * proj;
      m.S[1] += sine_symbol(p2, N) * proj;
    }

  CMatrix D = CMatrix::Zero(2 * n2, 2 * n2);
  for (int mu = 0; mu < 2; ++mu) D += kron(m.S[mu], I * m.gammas[mu]);

  SpectralData& data = m.data;
  data.flavor = Flavor::N1;
  data.hilbert_dim = 2 * n2;
  data.ops["D"] = D;
  data.ops["gamma"] = kron(identity(n2), m.sigma);
  if (!m.classical) {
    for (int r = 0; r < N; ++r)
      for (int c = 0; c < N; ++c) data.algebra_basis.push_back(m.left(unit(N, r, c)));
    data.blocks = BlockLayout{N, 2 * Index(N)};
  } else {
    for (Index x = 0; x < n2; ++x) data.algebra_basis.push_back(m.left(unit(n2, x, x)));
  }
  validate(data);
  return m;
}

TorusReport torus_report(const TorusModel& m, const TorusOptions& opts) {
  TorusReport out;
  ModelReport& rep = out.report;
  StageTimer timer(rep, opts.progress);
  const SpectralData& data = m.data;
  const double tol = data.tol;
  const double rtol = 1e-10;
  const Index h = data.hilbert_dim;
  const Index dimA = m.algebra_dim();
  if (m.classical) rep.notes.push_back("M = 0: commutative model, outside the coprime contract");
  rep.notes.push_back("rational finite model");

  timer.start("structure");
  {
    cplx phase = std::polar(1.0, -2 * pi * m.alpha());
    rep.small("UV = e^{-2 pi i alpha} VU", hs_norm(CMatrix(m.U * m.V - phase * m.V * m.U)), rtol);
    CMatrix id = identity(m.U.rows());
    double r = std::max(hs_norm(CMatrix(matrix_power(m.U, m.N) - id)),
                        hs_norm(CMatrix(matrix_power(m.V, m.N) - id)));
    rep.small("U^N = V^N = 1", r, rtol);
    double cl = 0;
    RMatrix ginv = m.metric.inverse();
    for (int mu = 0; mu < 2; ++mu)
      for (int nu = 0; nu < 2; ++nu)
        cl = std::max(cl, hs_norm(CMatrix(anticommutator(m.gammas[mu], m.gammas[nu]) +
                                          2.0 * ginv(mu, nu) * identity(2))));
    rep.small("{gamma^mu, gamma^nu} = -2 g^{mu nu}", cl, rtol);
  }

  timer.start("axioms");
  AxiomReport ax = check_axioms(data, rtol);
  for (const auto& [name, v] : ax.residuals) rep.small("axiom: " + name, v, rtol);

  timer.start("forms");
  Index kmax = std::max<Index>(opts.max_degree, 3);
  FormComplex fc = build_form_complex(data, kmax);
  out.pi_dims = fc.pi_dims();
  out.junk_dims = fc.junk_dims();
  out.canon_dims = fc.canon_dims();
  out.module_ranks = fc.module_ranks(dimA);
  out.betti = fc.betti;
  const std::vector<Index> ranks_expected = {1, 2, 1, 0};
  const std::vector<Index> betti_expected = {1, 2, 1, 0};
  for (std::size_t i = 0; i < ranks_expected.size() && i < out.module_ranks.size(); ++i)
    rep.flag("module rank " + std::to_string(i), out.module_ranks[i] == ranks_expected[i],
             std::to_string(out.module_ranks[i]) + " vs " + std::to_string(ranks_expected[i]));
  rep.flag("dim pi(Omega^1) = 2 dim A", out.pi_dims.size() > 1 && out.pi_dims[1] == 2 * dimA,
           std::to_string(out.pi_dims.size() > 1 ? out.pi_dims[1] : -1));
  rep.flag("junk_2 = algebra",
           fc.junk[2].dim() == dimA && fc.junk[2].contains(identity(h), 1e-8),
           std::to_string(fc.junk[2].dim()));
  rep.small("delta^2 = 0", fc.delta_squared_residual(), 10 * tol);
  rep.small("junk inside represented forms", fc.junk_containment_residual(), 10 * tol);
  for (std::size_t i = 0; i < betti_expected.size() && i < out.betti.size(); ++i)
    rep.flag("betti " + std::to_string(i), out.betti[i] == betti_expected[i],
             std::to_string(out.betti[i]) + " vs " + std::to_string(betti_expected[i]));

  timer.start("differential algebra");
  const CMatrix& D = data.op("D");
  CMatrix Uh = m.left(m.U), Vh = m.left(m.V);
  std::array<CMatrix, 2> E = {fc.canonical(1, CMatrix(Uh.adjoint() * commutator(D, Uh))),
                              fc.canonical(1, CMatrix(Vh.adjoint() * commutator(D, Vh)))};
  CMatrix vol = CMatrix::Zero(2, 2);
  for (int mu = 0; mu < 2; ++mu)
    for (int nu = 0; nu < 2; ++nu) vol += 0.5 * eps2(mu, nu) * m.gammas[mu] * m.gammas[nu];
  CMatrix F = fc.canonical(2, kron(identity(dimA), vol));
  {
    double r_ee = 0, r_de = 0, r_gam = 0;
    for (int mu = 0; mu < 2; ++mu) {
      r_de = std::max(r_de, hs_norm(fc.apply_delta(1, E[mu])));
      CMatrix g = fc.canonical(1, kron(identity(dimA), m.gammas[mu]));
      r_gam = std::max(r_gam, hs_norm(CMatrix(E[mu] - g)));
      for (int nu = 0; nu < 2; ++nu)
        r_ee = std::max(r_ee, hs_norm(CMatrix(fc.canonical(2, E[mu] * E[nu]) - eps2(mu, nu) * F)));
    }
    rep.small("E^mu E^nu = eps^{mu nu} F", r_ee, rtol);
    rep.small("delta E^mu = 0", r_de, rtol);
    rep.small("delta F = 0", hs_norm(fc.apply_delta(2, F)), rtol);
    rep.small("E^mu = gamma^mu", r_gam, rtol);
    RMatrix ginv = m.metric.inverse();
    double hr = 0;
    for (int mu = 0; mu < 2; ++mu)
      for (int nu = 0; nu < 2; ++nu)
        hr = std::max(hr, hs_norm(CMatrix(hermitian_structure(data, E[mu], E[nu]) -
                                          ginv(mu, nu) * identity(h))));
    rep.small("<E^mu, E^nu> = g^{mu nu}", hr, rtol);
  }

  timer.start("integration");
  rep.small("integral cyclicity", cyclicity_check(data, fc), 1e-12);

  timer.start("connection");
  CotangentBasis basis;
  try {
    basis = make_cotangent_basis(data, fc, {E[0], E[1]});
    out.cotangent_free = true;
    rep.flag("cotangent module free on E^1, E^2", true);
  } catch (const model_error& e) {
    rep.flag("cotangent module free on E^1, E^2", false, e.what());
  }
  if (out.cotangent_free) {
    Connection conn = Connection::zero(2, h);
    conn.reality = Reality::self_adjoint;
    if (opts.solve_connection) {
      LeviCivitaSolution sol = solve_levi_civita(data, fc, basis, {true, true, Reality::self_adjoint});
      out.lc_homogeneous_dim = sol.homogeneous_dim;
      rep.flag("real Levi-Civita connection exists", sol.feasible,
               "residual " + std::to_string(sol.residual));
      rep.flag("real Levi-Civita connection is unique", sol.unique(),
               "homogeneous dimension " + std::to_string(sol.homogeneous_dim));
      double dev = 0;
      for (const auto& c : sol.particular.coeffs) dev = std::max(dev, hs_norm(c));
      out.lc_coefficient_norm = dev;
      rep.small("Gamma = 0", dev, 1e-9);
      if (sol.feasible) conn = sol.particular;
    } else {
      rep.notes.push_back("levi-civita solve skipped; the zero connection is checked instead");
    }
    double t = 0;
    for (const auto& x : torsion(fc, basis, conn)) t = std::max(t, hs_norm(x));
    rep.small("torsion", t, rtol);
    rep.small("unitarity", unitarity_residual(data, fc, basis, conn), rtol);
    std::vector<CMatrix> R = curvature(fc, basis, conn);
    double cr = 0;
    for (const auto& x : R) cr = std::max(cr, hs_norm(x));
    rep.small("curvature = 0", cr, rtol);
    std::vector<CMatrix> ric = ricci(fc, basis, R);
    double rr = 0;
    for (const auto& x : ric) rr = std::max(rr, hs_norm(x));
    rep.small("Ricci = 0", rr, rtol);
    CMatrix r = scalar_curvature(data, fc, basis, ric);
    out.scalar_norm = hs_norm(r);
    rep.small("scalar curvature = 0", out.scalar_norm, 1e-9);
  }
  timer.stop();
  return out;
}

// doubled torus

SpinConnection zero_spin_connection(const TorusModel& m) {
  SpinConnection w;
  Index n = m.classical ? m.algebra_dim() : m.N;
  for (auto& a : w)
    for (auto& b : a)
      for (auto& c : b) c = CMatrix::Zero(n, n);
  return w;
}

SpinConnection random_spin_connection(const TorusModel& m, std::mt19937_64& rng) {
  SpinConnection w;
  for (auto& a : w)
    for (auto& b : a)
      for (auto& c : b) c = m.random_element(rng);
  return w;
}

DoubledTorus build_doubled(const TorusModel& m, const SpinConnection& omega) {
  DoubledTorus t;
  t.base = m;
  t.omega = omega;
  const Index n2 = m.algebra_dim();
  const Index h = 4 * n2;
  CMatrix id2 = identity(2), idk = identity(n2);

  t.C = charge_conjugation({m.gammas[0], m.gammas[1]});
  t.J = kron(m.j0, t.C);

  // right connection coefficients through the flip
  SpinConnection wbar;
  for (int mu = 0; mu < 2; ++mu)
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i) {
        CMatrix s = CMatrix::Zero(omega[mu][0][0].rows(), omega[mu][0][0].cols());
        for (int kk = 0; kk < 2; ++kk)
          for (int l = 0; l < 2; ++l) s += t.C(i, kk) * omega[mu][l][kk].adjoint() * t.C(l, k);
        wbar[mu][k][i] = s;
      }

  t.Dc = CMatrix::Zero(h, h);
  t.Dcbar = CMatrix::Zero(h, h);
  for (int mu = 0; mu < 2; ++mu) {
    CMatrix X = kron(kron(I * m.S[mu], id2), id2);
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 2; ++k) {
        X += kron(kron(m.left_k(wbar[mu][k][i]), unit(2, i, k)), id2);
        X += kron(kron(m.right_k(omega[mu][i][k]), id2), unit(2, k, i));
      }
    t.Dc += kron(kron(idk, id2), m.gammas[mu]) * X;
    t.Dcbar += kron(kron(idk, m.gammas[mu]), m.sigma) * X;
  }
  t.gamma = kron(kron(idk, id2), m.sigma);
  t.gamma_bar = kron(kron(idk, m.sigma), id2);
  t.Gamma = t.gamma * t.gamma_bar;
  t.star = t.gamma_bar;
  t.T = CMatrix::Zero(h, h);
  for (int mu = 0; mu < 2; ++mu)
    for (int nu = 0; nu < 2; ++nu)
      t.T += (m.metric(mu, nu) / (2.0 * I)) *
             kron(kron(idk, m.gammas[mu]), CMatrix(m.gammas[nu] * m.sigma));
  t.d = 0.5 * (t.Dc - I * t.Dcbar);

  SpectralData& data = t.data;
  data.flavor = Flavor::N11;
  data.hilbert_dim = h;
  data.ops["d"] = t.d;
  data.ops["gamma"] = t.Gamma;
  data.ops["star"] = t.star;
  data.zeta = fit_phase(CMatrix(t.star * t.d), CMatrix(t.d.adjoint() * t.star));
  if (!m.classical) {
    for (int r = 0; r < m.N; ++r)
      for (int c = 0; c < m.N; ++c) data.algebra_basis.push_back(kron(unit(m.N, r, c), identity(4 * m.N)));
    data.blocks = BlockLayout{m.N, 4 * Index(m.N)};
  } else {
    for (Index x = 0; x < n2; ++x) data.algebra_basis.push_back(kron(unit(n2, x, x), identity(4)));
  }
  validate(data);
  return t;
}

double DoubledReport::max_relation() const {
  return *std::max_element(relations.begin(), relations.end());
}

namespace {

// <xi, zeta> in A: the element x with int(x c) = (xi, zeta . c) for every c
CMatrix right_inner(const TorusModel& m, const std::vector<CMatrix>& basis, const CVector& xi,
                    const CVector& zeta) {
  const Index n = Index(basis.size());
  CMatrix gram(n, n);
  CVector rhs(n);
  auto integ = [&](const CMatrix& x) { return x.trace() / double(x.rows()); };
  for (Index k = 0; k < n; ++k) {
    CMatrix act = kron(m.right_k(m.theta(basis[k])), identity(2));
    rhs(k) = xi.dot(act * zeta);
    for (Index j = 0; j < n; ++j) gram(k, j) = integ(CMatrix(basis[j] * basis[k]));
  }
  CVector c = gram.fullPivLu().solve(rhs);
  CMatrix x = CMatrix::Zero(basis[0].rows(), basis[0].cols());
  for (Index j = 0; j < n; ++j) x += c(j) * basis[j];
  return x;
}

}  // namespace

DoubledReport doubled_report(const DoubledTorus& t, double tol) {
  DoubledReport out;
  ModelReport& rep = out.report;
  const TorusModel& m = t.base;
  const CMatrix& Dc = t.Dc;
  const CMatrix& Db = t.Dcbar;
  out.relations = {hs_norm(CMatrix(Dc - Dc.adjoint())), hs_norm(CMatrix(Db - Db.adjoint())),
                   hs_norm(anticommutator(Dc, Db)), hs_norm(CMatrix(Dc * Dc - Db * Db))};
  rep.small("Dc = Dc*", out.relations[0], tol);
  rep.small("Dcbar = Dcbar*", out.relations[1], tol);
  rep.small("{Dc, Dcbar} = 0", out.relations[2], tol);
  rep.small("Dc^2 = Dcbar^2", out.relations[3], tol);
  out.grading_residual = hs_norm(CMatrix(commutator(t.T, t.d) - t.d));
  rep.small("[T, d] = d", out.grading_residual, tol);
  rep.small("T = T*", hs_norm(CMatrix(t.T - t.T.adjoint())), tol);
  rep.small("{gamma, Dc} = [gamma, Dcbar] = 0",
            std::max(hs_norm(anticommutator(t.gamma, Dc)), hs_norm(commutator(t.gamma, Db))), tol);
  rep.small("[gamma_bar, Dc] = {gamma_bar, Dcbar} = 0",
            std::max(hs_norm(commutator(t.gamma_bar, Dc)), hs_norm(anticommutator(t.gamma_bar, Db))),
            tol);
  AxiomReport ax = check_axioms(t.data, tol);
  for (const auto& [name, v] : ax.residuals) rep.small("axiom: " + name, v, tol);

  // real structure on the base
  const SpectralData& base = m.data;
  const CMatrix& Jm = t.J;
  const CMatrix& D = base.op("D");
  const CMatrix& g = base.op("gamma");
  rep.small("J unitary", hs_norm(CMatrix(Jm.adjoint() * Jm - identity(Jm.rows()))), tol);
  out.j_square = read_sign(CMatrix(Jm * Jm.conjugate()), identity(Jm.rows()), tol);
  out.j_gamma = read_sign(CMatrix(Jm * g.conjugate()), CMatrix(g * Jm), tol);
  out.j_dirac = read_sign(CMatrix(Jm * D.conjugate()), CMatrix(D * Jm), tol);
  rep.flag("J^2 = eps", out.j_square != 0, "eps = " + std::to_string(out.j_square));
  rep.flag("J gamma = eps' gamma J", out.j_gamma != 0, "eps' = " + std::to_string(out.j_gamma));
  rep.flag("J D = eps'' D J", out.j_dirac != 0, "eps'' = " + std::to_string(out.j_dirac));
  {
    double fo = 0, flip = 0;
    std::vector<CMatrix> jaj;
    std::vector<CMatrix> abstract;
    for (Index k = 0; k < m.algebra_dim(); ++k) {
      CMatrix a = m.classical ? unit(m.algebra_dim(), k, k) : unit(m.N, k / m.N, k % m.N);
      abstract.push_back(a);
      CMatrix x = Jm * m.left(a).conjugate() * Jm.adjoint();
      jaj.push_back(x);
      CMatrix expect = kron(m.right_k(m.theta(CMatrix(a.adjoint()))), identity(2));
      flip = std::max(flip, hs_norm(CMatrix(x - expect)));
    }
    for (const auto& x : jaj)
      for (const auto& b : base.algebra_basis) {
        fo = std::max(fo, hs_norm(commutator(x, b)));
        fo = std::max(fo, hs_norm(commutator(x, commutator(D, b))));
      }
    out.first_order = fo;
    rep.small("[JaJ*, b] = [JaJ*, [D, b]] = 0", fo, 10 * tol);
    rep.small("flip: Psi(a s) = Psi(s) a*", flip, tol);

    std::mt19937_64 rng(23);
    double herm = 0;
    const Index hd = base.hilbert_dim;
    for (int s = 0; s < 4; ++s) {
      CVector xi = random_complex(hd, 1, rng), ze = random_complex(hd, 1, rng);
      CMatrix a = m.random_element(rng), b = m.random_element(rng);
      CVector xa = kron(m.right_k(m.theta(a)), identity(2)) * xi;
      CVector zb = kron(m.right_k(m.theta(b)), identity(2)) * ze;
      CMatrix lhs = right_inner(m, abstract, xa, zb);
      CMatrix rhs = a.adjoint() * right_inner(m, abstract, xi, ze) * b;
      herm = std::max(herm, hs_norm(CMatrix(lhs - rhs)) / std::max(1.0, hs_norm(rhs)));
    }
    rep.small("<xi a, zeta b> = a* <xi, zeta> b", herm, tol);
  }
  return out;
}

// kahler extension

KahlerTorus build_kahler(const DoubledTorus& t) {
  for (const auto& a : t.omega)
    for (const auto& b : a)
      for (const auto& c : b)
        if (c.norm() > 0) throw model_error("build_kahler: the doubled torus carries a connection");
  KahlerTorus k;
  const TorusModel& m = t.base;
  const Index n2 = m.algebra_dim();
  CMatrix id2 = identity(2), idk = identity(n2);
  k.I1 = kron(idk, CMatrix(0.5 * I * (kron(m.sigma, id2) + kron(id2, m.sigma))));
  k.I2 = kron(idk, CMatrix(I * kron(m.sigma, m.sigma)));
  k.d1 = t.d;
  k.d2 = commutator(k.I1, k.d1);
  k.d3 = commutator(k.I2, k.d1);
  k.del = -0.5 * (k.d1 + I * k.d2);
  k.delbar = -0.5 * (k.d1 - I * k.d2);
  k.T = 0.5 * (t.T + I * k.I1);
  k.Tbar = 0.5 * (t.T - I * k.I1);

  SpectralData& data = k.data;
  data = t.data;
  data.flavor = Flavor::Kahler;
  data.ops.clear();
  data.ops["del"] = k.del;
  data.ops["delbar"] = k.delbar;
  data.ops["T"] = k.T;
  data.ops["Tbar"] = k.Tbar;
  data.ops["gamma"] = t.Gamma;
  data.ops["star"] = t.star;
  data.zeta = fit_phase(CMatrix(t.star * k.del), CMatrix(k.delbar.adjoint() * t.star));
  validate(data);
  return k;
}

KahlerReport kahler_report(const KahlerTorus& k, double tol) {
  KahlerReport out;
  ModelReport& rep = out.report;
  const SpectralData& data = k.data;
  rep.small("d1^2 = 0", hs_norm(CMatrix(k.d1 * k.d1)), tol);
  rep.small("d2^2 = 0", hs_norm(CMatrix(k.d2 * k.d2)), tol);
  rep.small("{d1, d2} = 0", hs_norm(anticommutator(k.d1, k.d2)), tol);
  rep.small("d3^2 = 0", hs_norm(CMatrix(k.d3 * k.d3)), tol);
  rep.small("d3 = 2i Gamma d", hs_norm(CMatrix(k.d3 - 2.0 * I * data.op("gamma") * k.d1)), tol);
  AxiomReport ax = check_axioms(data, tol);
  for (const auto& [name, v] : ax.residuals) rep.small("axiom: " + name, v, tol);

  FormComplex fc = build_form_complex(data, 2);
  BigradeReport bg = bigrade_decompose(data, fc, 1);
  const Index dimA = Index(data.algebra_basis.size());
  out.bigrade_ranks = {bg.rank(1, 0, dimA), bg.rank(0, 1, dimA)};
  rep.small("bidegree orthogonality", bg.orthogonality_residual, tol);
  rep.small("ad T, ad Tbar preserve the forms", bg.invariance_residual, tol);
  rep.flag("(1,0) forms have rank 1", out.bigrade_ranks[0] == 1, std::to_string(out.bigrade_ranks[0]));
  rep.flag("(0,1) forms have rank 1", out.bigrade_ranks[1] == 1, std::to_string(out.bigrade_ranks[1]));
  return out;
}

}  // namespace ncg
