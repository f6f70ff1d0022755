#include "ncg/fuzzy_sphere.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ncg {

namespace {

constexpr double kBuildTol = 1e-10;

double eps3(int a, int b, int c) { return levi_civita({a, b, c}); }

// 1/h-normalized distance of x from the scalars inside each algebra block
double off_scalar(const CMatrix& x) {
  cplx t = x.trace() / double(x.rows());
  return hs_norm(CMatrix(x - t * identity(x.rows())));
}

std::vector<CMatrix> lifted_basis(Index n, Index m) {
  std::vector<CMatrix> out;
  CMatrix id = identity(m);
  for (const auto& u : matrix_units(n)) out.push_back(kron(u, id));
  return out;
}

void require(double residual, const std::string& what) {
  if (!(residual <= kBuildTol))
    throw model_error("sphere convention check failed: " + what + " (residual " +
                      std::to_string(residual) +
                      "); the factor choices are fixed by demanding the differential-algebra identities");
}

}  // namespace

double SphereModel::structure_constant(int a, int b, int c) const { return eps3(a, b, c); }

Index sphere_h0_dim(int k) { return Index((2 * k + 3) * (k + 2) * (k + 1) / 6); }

SphereModel build_sphere(int k) {
  if (k < 1) throw contract_violation("build_sphere: level must be >= 1");
  SphereModel m;
  m.k = k;
  m.space = build_level_space(k);
  m.metric = 2.0 * RMatrix::Identity(3, 3);
  m.fock = build_fermion_algebra(m.metric);
  m.gammas = gamma_pair(m.fock);
  const Index n = m.space.dim, w = m.fock.dim, h = n * w;
  const cplx I(0, 1);
  CMatrix idn = identity(n), idw = identity(w);

  for (int A = 0; A < 3; ++A) m.psi[A] = kron(idn, m.gammas.psi[A]);
  // D = sqrt2 (psi^A J_A - (i/12) f_ABC psi psi psi), f_ABC = f_AB^D g_DC = 2 eps;
  // the sqrt2 makes [D, a] = [J_A, a] e^A with e^A of unit square
  CMatrix D = CMatrix::Zero(h, h);
  for (int A = 0; A < 3; ++A) D += m.psi[A] * kron(m.space.J[A], idw);
  CMatrix cubic = CMatrix::Zero(h, h);
  for (int A = 0; A < 3; ++A)
    for (int B = 0; B < 3; ++B)
      for (int C = 0; C < 3; ++C) {
        double f = 2.0 * eps3(A, B, C);
        if (f != 0) cubic += f * m.psi[A] * m.psi[B] * m.psi[C];
      }
  D = std::sqrt(2.0) * (D - (I / 12.0) * cubic);

  m.data.flavor = Flavor::N1;
  m.data.algebra_basis = lifted_basis(n, w);
  m.data.hilbert_dim = h;
  m.data.blocks = BlockLayout{n, w};
  m.data.ops["D"] = D;
  m.data.ops["gamma"] = kron(idn, grading_volume(m.fock, VolumeKind::both_copies));

  for (int A = 0; A < 3; ++A) m.e[A] = std::sqrt(2.0) * m.psi[A];
  for (int A = 0; A < 3; ++A) {
    CMatrix f = CMatrix::Zero(h, h);
    for (int B = 0; B < 3; ++B)
      for (int C = 0; C < 3; ++C)
        if (eps3(A, B, C) != 0) f += 0.5 * eps3(A, B, C) * m.e[B] * m.e[C];
    m.f[A] = f;
  }
  m.vol = m.e[0] * m.e[1] * m.e[2];

  // convention checks that need no junk computation
  const CMatrix& g = m.data.op("gamma");
  require(hs_norm(CMatrix(D - D.adjoint())), "D = D*");
  require(hs_norm(anticommutator(g, D)), "{gamma, D} = 0");
  require(hs_norm(CMatrix(g * g - identity(h))), "gamma^2 = 1");
  std::mt19937_64 rng(1);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 3; ++t) {
    CMatrix a0(n, n);
    for (Index i = 0; i < a0.size(); ++i) a0.data()[i] = cplx(nd(rng), nd(rng));
    CMatrix a = kron(a0, idw);
    CMatrix rhs = CMatrix::Zero(h, h);
    for (int A = 0; A < 3; ++A) rhs += kron(commutator(m.space.J[A], a0), idw) * m.e[A];
    require(hs_norm(CMatrix(commutator(D, a) - rhs)) / std::max(1.0, hs_norm(a)),
            "[D, a] = [J_A, a] e^A");
  }
  for (int A = 0; A < 3; ++A)
    for (int B = 0; B < 3; ++B) {
      CMatrix x = m.e[A] * m.e[B];
      for (int C = 0; C < 3; ++C) x -= eps3(A, B, C) * m.f[C];
      // the remainder must be junk, i.e. a multiple of the identity on the fiber
      require(off_scalar(x), "e^A e^B = eps^ABC f^C modulo junk");
    }
  return m;
}

OperatorSpan sphere_h0_span(const SphereModel& m) {
  // commutant of J_A = I (x) t_A inside block j is End(V_j*) (x) 1
  const Index n = m.space.dim, w = m.fock.dim;
  std::vector<CMatrix> gens;
  for (const auto& b : m.space.blocks) {
    Index d = b.two_j + 1;
    for (Index p = 0; p < d; ++p)
      for (Index q = 0; q < d; ++q) {
        CMatrix x = CMatrix::Zero(n, n);
        CMatrix e = CMatrix::Zero(d, d);
        e(p, q) = 1;
        x.block(b.offset, b.offset, b.size, b.size) = kron(e, identity(d));
        gens.push_back(kron(x, identity(w)));
      }
  }
  return orthonormalize(gens, 1e-12);
}

SphereReport sphere_report(const SphereModel& m, const SphereOptions& opts) {
  SphereReport out;
  out.k = m.k;
  ModelReport& rep = out.report;
  StageTimer timer(rep, opts.progress);
  const double tol = opts.tol;
  const double rtol = 1e-10;
  SpectralData data = m.data;
  data.tol = tol;

  timer.start("axioms");
  AxiomReport ax = check_axioms(data, rtol);
  for (const auto& [name, v] : ax.residuals) rep.small("axiom: " + name, v, rtol);

  timer.start("forms");
  Index kmax = std::max<Index>(opts.max_degree, 3);
  FormComplex fc = build_form_complex(data, kmax);
  const Index dimA = data.blocks->n * data.blocks->n;
  out.pi_dims = fc.pi_dims();
  out.junk_dims = fc.junk_dims();
  out.canon_dims = fc.canon_dims();
  out.module_ranks = fc.module_ranks(dimA);
  out.betti = fc.betti;
  Index d = sphere_h0_dim(m.k);
  out.expected_betti = {d, 0, 0, d};

  std::vector<Index> ranks_expected = {1, 3, 3, 1, 0};
  for (std::size_t i = 0; i < ranks_expected.size() && i < out.module_ranks.size(); ++i)
    rep.flag("module rank " + std::to_string(i), out.module_ranks[i] == ranks_expected[i],
             std::to_string(out.module_ranks[i]) + " vs " + std::to_string(ranks_expected[i]));
  for (std::size_t i = 0; i < ranks_expected.size() && i < out.canon_dims.size(); ++i)
    rep.flag("form dimension " + std::to_string(i), out.canon_dims[i] == ranks_expected[i] * dimA,
             std::to_string(out.canon_dims[i]));
  rep.flag("junk_2 = algebra", fc.junk[2].dim() == dimA, std::to_string(fc.junk[2].dim()));
  {
    // junk_3 equals pi(Omega^1) as operator spaces
    const CMatrix& j3 = fc.junk[3].fiber();
    const CMatrix& p1 = fc.pi[1].fiber();
    double dist = j3.cols() == p1.cols() ? (j3 * j3.adjoint() - p1 * p1.adjoint()).norm() : 1.0;
    rep.small("junk_3 = pi(Omega^1)", dist, 1e-8);
  }
  rep.small("delta^2 = 0", fc.delta_squared_residual(), 10 * tol);
  rep.small("junk inside represented forms", fc.junk_containment_residual(), 10 * tol);
  for (int i = 0; i < 4 && i < int(out.betti.size()); ++i)
    rep.flag("betti " + std::to_string(i), out.betti[i] == out.expected_betti[i],
             std::to_string(out.betti[i]) + " vs " + std::to_string(out.expected_betti[i]));

  timer.start("cohomology");
  OperatorSpan h0 = orthonormalize(fc.cohomology_representatives(0), 1e-10);
  out.h0_projector_distance = projector_distance(h0, sphere_h0_span(m));
  rep.small("H0 = commutant of the left action", out.h0_projector_distance, 1e-9);

  timer.start("differential algebra");
  {
    double r_de = 0, r_df = 0, r_ee = 0, r_ef = 0, r_eee = 0, r_comm = 0;
    std::vector<CMatrix> e(3), f(3);
    for (int A = 0; A < 3; ++A) {
      e[A] = fc.canonical(1, m.e[A]);
      f[A] = fc.canonical(2, m.f[A]);
    }
    CMatrix g3 = fc.canonical(3, m.vol);
    for (int A = 0; A < 3; ++A) {
      r_de = std::max(r_de, hs_norm(CMatrix(fc.apply_delta(1, e[A]) + cplx(0, 1) * f[A])));
      r_df = std::max(r_df, hs_norm(fc.apply_delta(2, f[A])));
      for (int B = 0; B < 3; ++B) {
        CMatrix x = fc.canonical(2, m.e[A] * m.e[B]);
        for (int C = 0; C < 3; ++C) x -= eps3(A, B, C) * f[C];
        r_ee = std::max(r_ee, hs_norm(x));
        CMatrix y = fc.canonical(3, m.e[A] * m.f[B]) - (A == B ? 1.0 : 0.0) * g3;
        r_ef = std::max(r_ef, hs_norm(y));
        for (int C = 0; C < 3; ++C) {
          CMatrix z = fc.canonical(3, m.e[A] * m.e[B] * m.e[C]) - eps3(A, B, C) * g3;
          r_eee = std::max(r_eee, hs_norm(z));
        }
      }
    }
    for (const auto& a : data.algebra_basis)
      for (int A = 0; A < 3; ++A)
        r_comm = std::max({r_comm, hs_norm(commutator(a, e[A])), hs_norm(commutator(a, f[A])),
                           hs_norm(commutator(a, g3))});
    rep.small("delta e^A = -i f^A", r_de, rtol);
    rep.small("delta f^A = 0", r_df, rtol);
    rep.small("e^A e^B = eps^ABC f^C", r_ee, rtol);
    rep.small("e^A f^B = delta^AB g", r_ef, rtol);
    rep.small("e^A e^B e^C = eps^ABC g", r_eee, rtol);
    rep.small("[a, e^A] = [a, f^A] = [a, g] = 0", r_comm, rtol);
  }

  timer.start("integration");
  rep.small("integral cyclicity", cyclicity_check(data, fc), 1e-12);

  timer.start("connection");
  std::vector<CMatrix> E(m.e.begin(), m.e.end());
  CotangentBasis basis = make_cotangent_basis(data, fc, E);
  {
    double mr = 0;
    for (int A = 0; A < 3; ++A)
      for (int B = 0; B < 3; ++B)
        mr = std::max(mr, hs_norm(CMatrix(basis.metric[A][B] -
                                          (A == B ? 1.0 : 0.0) * identity(data.hilbert_dim))));
    rep.small("<e^A, e^B> = delta^AB", mr, rtol);
  }
  const Index h = data.hilbert_dim;
  Connection closed = Connection::zero(3, h);
  for (int A = 0; A < 3; ++A)
    for (int B = 0; B < 3; ++B)
      for (int C = 0; C < 3; ++C) closed.at(A, B, C) = cplx(0, 0.5) * eps3(A, B, C) * identity(h);
  closed.reality = Reality::anti_hermitian;

  Connection conn = closed;
  if (opts.solve_connection) {
    LeviCivitaSolution sol =
        solve_levi_civita(data, fc, basis, {true, true, Reality::anti_hermitian});
    out.connection_solved = true;
    out.lc_homogeneous_dim = sol.homogeneous_dim;
    rep.flag("real Levi-Civita connection exists", sol.feasible, "residual " + std::to_string(sol.residual));
    rep.flag("real Levi-Civita connection is unique", sol.unique(),
             "homogeneous dimension " + std::to_string(sol.homogeneous_dim));
    double dev = 0;
    for (std::size_t i = 0; i < closed.coeffs.size(); ++i)
      dev = std::max(dev, hs_norm(CMatrix(sol.particular.coeffs[i] - closed.coeffs[i])));
    rep.small("Gamma^A_BC = (i/2) eps^ABC", dev, 1e-9);
    if (sol.feasible) conn = sol.particular;
    LeviCivitaSolution free_sol = solve_levi_civita(data, fc, basis, {true, true, Reality::none});
    out.lc_homogeneous_dim_unreal = free_sol.homogeneous_dim;
    rep.flag("unitary torsionless family has 10 self-adjoint parameters",
             free_sol.feasible && free_sol.homogeneous_dim == 10 * dimA,
             "real dimension " + std::to_string(free_sol.homogeneous_dim) + " vs " +
                 std::to_string(10 * dimA));
  } else {
    rep.notes.push_back("levi-civita uniqueness solve skipped; the closed-form connection is checked instead");
  }
  {
    double t = 0;
    for (const auto& x : torsion(fc, basis, conn)) t = std::max(t, hs_norm(x));
    out.torsion_residual = t;
    rep.small("torsion of the real connection", t, rtol);
    rep.small("unitarity of the real connection", unitarity_residual(data, fc, basis, conn), rtol);
    std::vector<CMatrix> R = curvature(fc, basis, conn);
    // R e^A = (1/4) eps^ABC f^B (x) e^C, so R^A_C = (1/4) eps^ABC f^B
    double cr = 0;
    std::vector<CMatrix> f(3);
    for (int A = 0; A < 3; ++A) f[A] = fc.canonical(2, m.f[A]);
    for (int A = 0; A < 3; ++A)
      for (int C = 0; C < 3; ++C) {
        CMatrix x = R[A * 3 + C];
        for (int B = 0; B < 3; ++B) x -= 0.25 * eps3(A, B, C) * f[B];
        cr = std::max(cr, hs_norm(x));
      }
    out.curvature_residual = cr;
    rep.small("curvature = (1/4) eps^ABC f^B (x) e^C", cr, rtol);
    std::vector<CMatrix> ric = ricci(fc, basis, R);
    double rr = 0;
    for (int B = 0; B < 3; ++B) rr = std::max(rr, hs_norm(CMatrix(ric[B] + 0.5 * fc.canonical(1, m.e[B]))));
    out.ricci_residual = rr;
    rep.small("Ricci = -(1/2) e^A (x) e^A", rr, rtol);
    CMatrix r = scalar_curvature(data, fc, basis, ric);
    out.scalar = hs_inner(identity(h), r).real();
    rep.near("scalar curvature", out.scalar, -1.5, 1e-9);
    rep.small("scalar curvature is a multiple of 1", off_scalar(r), 1e-9);
  }
  timer.stop();
  return out;
}

// BRST

BrstModel build_brst(int k) {
  if (k < 1) throw contract_violation("build_brst: level must be >= 1");
  BrstModel b;
  b.k = k;
  LevelSpace space = build_level_space(k);
  RMatrix g = 2.0 * RMatrix::Identity(3, 3);
  b.ghosts = build_fermion_algebra(g);
  const Index n = space.dim, w = b.ghosts.dim, h = n * w;
  const cplx I(0, 1);
  CMatrix idn = identity(n), idw = identity(w);
  // b_A = g_AB c^B*
  std::vector<CMatrix> c(3), bb(3);
  for (int A = 0; A < 3; ++A) c[A] = b.ghosts.c[A];
  for (int A = 0; A < 3; ++A) {
    bb[A] = CMatrix::Zero(w, w);
    for (int B = 0; B < 3; ++B) bb[A] += g(A, B) * b.ghosts.cdag[B];
  }
  CMatrix Q = CMatrix::Zero(h, h);
  for (int A = 0; A < 3; ++A) Q += kron(space.J[A], c[A]);
  CMatrix cubic = CMatrix::Zero(w, w);
  for (int A = 0; A < 3; ++A)
    for (int B = 0; B < 3; ++B)
      for (int C = 0; C < 3; ++C)
        if (eps3(A, B, C) != 0) cubic += eps3(A, B, C) * c[A] * c[B] * bb[C];
  Q -= (I / 2.0) * kron(idn, cubic);
  CMatrix T = CMatrix::Zero(w, w);
  for (int A = 0; A < 3; ++A) T += c[A] * bb[A];
  // T is diagonal in the occupation basis; gamma is its parity
  CMatrix par = CMatrix::Zero(w, w);
  for (Index i = 0; i < w; ++i) {
    long t = std::lround(T(i, i).real());
    par(i, i) = (t % 2 == 0) ? 1.0 : -1.0;
  }
  b.Q = Q;
  b.ghost_number = kron(idn, T);
  b.star = kron(idn, grading_volume(b.ghosts, VolumeKind::hodge));
  b.data.flavor = Flavor::N11;
  b.data.algebra_basis = lifted_basis(n, w);
  b.data.hilbert_dim = h;
  b.data.blocks = BlockLayout{n, w};
  b.data.ops["d"] = Q;
  b.data.ops["gamma"] = kron(idn, par);
  b.data.ops["star"] = b.star;
  b.data.ops["T"] = b.ghost_number;
  // zeta from * d = zeta d* *
  CMatrix lhs = b.star * Q, rhs = Q.adjoint() * b.star;
  b.data.zeta = hs_inner(rhs, lhs) / hs_inner(rhs, rhs);
  return b;
}

ModelReport brst_report(const BrstModel& b, const SphereOptions& opts) {
  ModelReport rep;
  StageTimer timer(rep, opts.progress);
  const double rtol = 1e-10;
  SpectralData data = b.data;
  data.tol = opts.tol;
  const Index h = data.hilbert_dim;
  CMatrix id = identity(h);
  timer.start("axioms");
  AxiomReport ax = check_axioms(data, rtol);
  for (const auto& [name, v] : ax.residuals) rep.small("axiom: " + name, v, rtol);
  rep.small("Q^2 = 0", hs_norm(CMatrix(b.Q * b.Q)), 1e-12);
  rep.small("*^2 = -1", hs_norm(CMatrix(b.star * b.star + id)), 1e-12);
  rep.small("* unitary", hs_norm(CMatrix(b.star.adjoint() * b.star - id)), 1e-12);
  rep.small("* Q = Q* *", hs_norm(CMatrix(b.star * b.Q - b.Q.adjoint() * b.star)), 1e-12);
  rep.near("zeta", std::abs(data.zeta - cplx(1, 0)), 0.0, 1e-12, "fitted from * d = zeta d* *");
  rep.small("T = T*", hs_norm(CMatrix(b.ghost_number - b.ghost_number.adjoint())), 1e-12);
  rep.small("[T, Q] = Q", hs_norm(CMatrix(commutator(b.ghost_number, b.Q) - b.Q)), 1e-12);

  timer.start("forms");
  FormComplex fc = build_form_complex(data, std::max<Index>(opts.max_degree, 3));
  const Index dimA = data.blocks->n * data.blocks->n;
  std::vector<Index> ranks = fc.module_ranks(dimA);
  std::vector<Index> want = {1, 3, 3, 1};
  for (std::size_t i = 0; i < want.size(); ++i)
    rep.flag("module rank " + std::to_string(i), i < ranks.size() && ranks[i] == want[i],
             i < ranks.size() ? std::to_string(ranks[i]) : "missing");
  Index d = sphere_h0_dim(b.k);
  std::vector<Index> bw = {d, 0, 0, d};
  for (std::size_t i = 0; i < bw.size(); ++i)
    rep.flag("betti " + std::to_string(i), i < fc.betti.size() && fc.betti[i] == bw[i],
             i < fc.betti.size() ? std::to_string(fc.betti[i]) : "missing");
  rep.small("delta^2 = 0", fc.delta_squared_residual(), 10 * opts.tol);
  timer.start("reality");
  rep.small("reality of the natural involution", reality_check(data, fc), rtol);
  rep.small("integral cyclicity", cyclicity_check(data, fc), 1e-12);
  timer.stop();
  return rep;
}

// broken supersymmetry

BrokenSusyModel build_broken_susy(int k) {
  if (k < 1) throw contract_violation("build_broken_susy: level must be >= 1");
  BrokenSusyModel s;
  s.k = k;
  LevelSpace space = build_level_space(k);
  RMatrix g = 2.0 * RMatrix::Identity(3, 3);
  FermionAlgebra fock = build_fermion_algebra(g);
  GammaPair gp = gamma_pair(fock);
  const Index n = space.dim, w = fock.dim, h = n * w;
  const cplx I(0, 1);
  CMatrix idn = identity(n), idw = identity(w);
  std::vector<CMatrix> psi(3), psib(3);
  for (int A = 0; A < 3; ++A) {
    psi[A] = kron(idn, gp.psi[A]);
    psib[A] = kron(idn, gp.psi_bar[A]);
  }
  auto dirac = [&](const std::vector<CMatrix>& p, const Triple& J) {
    CMatrix D = CMatrix::Zero(h, h);
    for (int A = 0; A < 3; ++A) D += p[A] * kron(J[A], idw);
    for (int A = 0; A < 3; ++A)
      for (int B = 0; B < 3; ++B)
        for (int C = 0; C < 3; ++C)
          if (eps3(A, B, C) != 0) D -= (I / 12.0) * 2.0 * eps3(A, B, C) * p[A] * p[B] * p[C];
    return D;
  };
  s.D = dirac(psi, space.J);
  s.Dbar = dirac(psib, space.Jbar);
  s.dtilde = 0.5 * (s.D + I * s.Dbar);
  s.laplacian = anticommutator(s.dtilde, CMatrix(s.dtilde.adjoint()));
  s.casimir = CMatrix::Zero(h, h);
  s.casimir_bar = CMatrix::Zero(h, h);
  for (int A = 0; A < 3; ++A) {
    s.casimir += fock.g_inv(A, A) * kron(CMatrix(space.J[A] * space.J[A]), idw);
    s.casimir_bar += fock.g_inv(A, A) * kron(CMatrix(space.Jbar[A] * space.Jbar[A]), idw);
  }
  s.gamma = kron(idn, grading_volume(fock, VolumeKind::both_copies));
  s.algebra_basis = lifted_basis(n, w);
  return s;
}

SusyReport broken_susy_report(const BrokenSusyModel& s, double tol, bool with_forms) {
  SusyReport out;
  ModelReport& rep = out.report;
  const Index h = s.D.rows();
  CMatrix id = identity(h);
  rep.small("D^2 = Dbar^2", hs_norm(CMatrix(s.D * s.D - s.Dbar * s.Dbar)), tol);
  rep.small("{D, Dbar} = 0", hs_norm(anticommutator(s.D, s.Dbar)), tol);
  rep.small("dtilde^2 = 0", hs_norm(CMatrix(s.dtilde * s.dtilde)), tol);
  rep.small("{gamma, D} = 0", hs_norm(anticommutator(s.gamma, s.D)), tol);
  rep.small("{gamma, Dbar} = 0", hs_norm(anticommutator(s.gamma, s.Dbar)), tol);
  rep.small("Laplacian = g^AB J_A J_B + 1/8", hs_norm(CMatrix(s.laplacian - s.casimir - 0.125 * id)), tol);
  rep.small("Laplacian = g^AB Jbar_A Jbar_B + 1/8",
            hs_norm(CMatrix(s.laplacian - s.casimir_bar - 0.125 * id)), tol);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (s.laplacian + s.laplacian.adjoint()), Eigen::EigenvaluesOnly);
  out.min_eigenvalue = es.eigenvalues()(0);
  out.kernel_dim = 0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()(i)) <= 1e-9) ++out.kernel_dim;
  rep.near("min eigenvalue of the Laplacian", out.min_eigenvalue, 0.125, 1e-9);
  rep.flag("Laplacian has trivial kernel", out.kernel_dim == 0, std::to_string(out.kernel_dim));
  if (with_forms) {
    // the differential forms of dtilde; their cohomology is reported, not asserted
    SpectralData data;
    data.flavor = Flavor::N1;
    data.algebra_basis = s.algebra_basis;
    data.hilbert_dim = h;
    data.blocks = BlockLayout{h / 8, 8};
    data.ops["D"] = s.dtilde;
    data.ops["gamma"] = s.gamma;
    FormComplex fc = build_form_complex(data, 3);
    out.form_betti = fc.betti;
    rep.notes.push_back("cohomology of the dtilde forms is computed with the generic engine and reported only");
  }
  return out;
}

}  // namespace ncg
