#include "ncg/clifford.hpp"
#include "ncg/spectral_forms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

namespace ncg {

std::string to_string(Flavor f) {
  switch (f) {
    case Flavor::N1: return "N1";
    case Flavor::N11: return "N11";
    case Flavor::Hermitian: return "Hermitian";
    case Flavor::Kahler: return "Kahler";
    case Flavor::N44: return "N44";
    case Flavor::Symplectic: return "Symplectic";
  }
  return "unknown";
}

const CMatrix& SpectralData::op(const std::string& name) const {
  auto it = ops.find(name);
  if (it == ops.end())
    throw configuration_error("spectral data (" + to_string(flavor) + ") has no operator '" + name + "'");
  return it->second;
}

CMatrix SpectralData::differential() const {
  switch (flavor) {
    case Flavor::N1: return op("D");
    case Flavor::N11:
    case Flavor::Symplectic: return op("d");
    case Flavor::Hermitian:
    case Flavor::Kahler: return op("del") + op("delbar");
    case Flavor::N44: return op("G1+") + op("Gbar1+");
  }
  throw configuration_error("differential: unknown flavor");
}

namespace {

std::vector<std::string> required_ops(Flavor f) {
  switch (f) {
    case Flavor::N1: return {"D", "gamma"};
    case Flavor::N11: return {"d", "gamma", "star"};
    case Flavor::Hermitian:
    case Flavor::Kahler: return {"del", "delbar", "T", "Tbar", "gamma", "star"};
    case Flavor::N44:
      return {"G1+", "G2+", "G1-", "G2-", "Gbar1+", "Gbar2+", "Gbar1-", "Gbar2-", "T1", "T2",
              "T3", "Tbar1", "Tbar2", "Tbar3", "gamma", "star", "box"};
    case Flavor::Symplectic: return {"d", "L3", "L+", "L-", "gamma", "star"};
  }
  return {};
}

double block_structure_residual(const CMatrix& x, Index n, Index m) {
  double r = 0;
  CMatrix id = identity(m);
  for (Index p = 0; p < n; ++p)
    for (Index q = 0; q < n; ++q) {
      CMatrix b = x.block(p * m, q * m, m, m);
      r = std::max(r, (b - b(0, 0) * id).norm());
    }
  return r;
}

}  // namespace

double algebra_closure_residual(const SpectralData& data) {
  const Index h = data.hilbert_dim;
  if (data.blocks) {
    double r = 0;
    for (const auto& a : data.algebra_basis)
      r = std::max(r, block_structure_residual(a, data.blocks->n, data.blocks->m));
    OperatorSpan s = orthonormalize(data.algebra_basis, data.tol);
    if (s.dim() != data.blocks->n * data.blocks->n) r = std::max(r, 1.0);
    return r;
  }
  OperatorSpan s = orthonormalize(data.algebra_basis, data.tol);
  double r = s.residual(identity(h)) / std::sqrt(double(h));
  std::vector<CMatrix> b = s.basis();
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> pick(0, b.size() - 1);
  std::size_t pairs = b.size() * b.size();
  bool all = pairs <= 4096;
  std::size_t count = all ? pairs : 2000;
  for (std::size_t t = 0; t < count; ++t) {
    std::size_t i = all ? t / b.size() : pick(rng);
    std::size_t j = all ? t % b.size() : pick(rng);
    CMatrix prod = b[i] * b[j];
    r = std::max(r, s.residual(prod) / std::sqrt(double(h)));
    if (j == 0) r = std::max(r, s.residual(b[i].adjoint()) / std::sqrt(double(h)));
  }
  return r;
}

void validate(const SpectralData& data) {
  if (data.hilbert_dim <= 0) throw configuration_error("spectral data: empty Hilbert space");
  if (data.algebra_basis.empty()) throw configuration_error("spectral data: empty algebra basis");
  for (const auto& a : data.algebra_basis)
    if (a.rows() != data.hilbert_dim || a.cols() != data.hilbert_dim)
      throw configuration_error("spectral data: algebra element of wrong size");
  for (const auto& name : required_ops(data.flavor)) {
    const CMatrix& o = data.op(name);
    if (o.rows() != data.hilbert_dim || o.cols() != data.hilbert_dim)
      throw configuration_error("spectral data: operator '" + name + "' has wrong size");
  }
  if (data.blocks && data.blocks->n * data.blocks->m != data.hilbert_dim)
    throw configuration_error("spectral data: block layout does not match the Hilbert dimension");
}

bool AxiomReport::pass() const {
  for (const auto& [name, v] : residuals)
    if (!(v <= tol)) return false;
  return true;
}

double AxiomReport::max_residual() const {
  double m = 0;
  for (const auto& [name, v] : residuals) m = std::max(m, v);
  return m;
}

double AxiomReport::get(const std::string& name) const {
  for (const auto& [n, v] : residuals)
    if (n == name) return v;
  throw configuration_error("axiom report has no entry '" + name + "'");
}

namespace {

struct Checker {
  const SpectralData& data;
  AxiomReport& rep;
  std::vector<CMatrix> alg;
  Index h;

  void add(const std::string& name, double v) { rep.residuals.emplace_back(name, v); }
  void add(const std::string& name, const CMatrix& x) { add(name, hs_norm(x)); }

  double comm_alg(const CMatrix& x) const {
    double r = 0;
    for (const auto& a : alg) r = std::max(r, hs_norm(commutator(x, a)));
    return r;
  }

  void grading(const CMatrix& g) {
    CMatrix id = identity(h);
    add("gamma = gamma*", CMatrix(g - g.adjoint()));
    add("gamma^2 = 1", CMatrix(g * g - id));
    add("[gamma, a] = 0", comm_alg(g));
  }

  void n11(const CMatrix& d, const CMatrix& gamma, const CMatrix& star, cplx zeta,
           const std::string& dn) {
    CMatrix id = identity(h);
    add(dn + "^2 = 0", CMatrix(d * d));
    grading(gamma);
    add("{gamma, " + dn + "} = 0", anticommutator(gamma, d));
    add("* unitary", CMatrix(star.adjoint() * star - id));
    add("* " + dn + " = zeta " + dn + "* *", CMatrix(star * d - zeta * d.adjoint() * star));
    add("[*, a] = 0", comm_alg(star));
    add("|zeta| = 1", std::abs(std::abs(zeta) - 1.0));
  }

  void hermitian(const CMatrix& del, const CMatrix& delbar, const CMatrix& T, const CMatrix& Tbar,
                 const CMatrix& gamma, const CMatrix& star, cplx zeta) {
    n11(del + delbar, gamma, star, zeta, "(del + delbar)");
    add("del^2 = 0", CMatrix(del * del));
    add("delbar^2 = 0", CMatrix(delbar * delbar));
    add("{del, delbar} = 0", anticommutator(del, delbar));
    add("[T, del] = del", CMatrix(commutator(T, del) - del));
    add("[T, delbar] = 0", commutator(T, delbar));
    add("[Tbar, del] = 0", commutator(Tbar, del));
    add("[Tbar, delbar] = delbar", CMatrix(commutator(Tbar, delbar) - delbar));
    add("[T, Tbar] = 0", commutator(T, Tbar));
    add("T = T*", CMatrix(T - T.adjoint()));
    add("Tbar = Tbar*", CMatrix(Tbar - Tbar.adjoint()));
    add("[T, a] = 0", comm_alg(T));
    add("[Tbar, a] = 0", comm_alg(Tbar));
    add("{gamma, del} = 0", anticommutator(gamma, del));
    add("{gamma, delbar} = 0", anticommutator(gamma, delbar));
    add("[gamma, T] = 0", commutator(gamma, T));
    add("[gamma, Tbar] = 0", commutator(gamma, Tbar));
    add("* del = zeta delbar* *", CMatrix(star * del - zeta * delbar.adjoint() * star));
    add("* delbar = zeta del* *", CMatrix(star * delbar - zeta * del.adjoint() * star));
  }

  void kahler(const CMatrix& del, const CMatrix& delbar) {
    add("{del, delbar*} = 0", anticommutator(del, CMatrix(delbar.adjoint())));
    add("{delbar, del*} = 0", anticommutator(delbar, CMatrix(del.adjoint())));
    add("{del, del*} = {delbar, delbar*}",
        CMatrix(anticommutator(del, CMatrix(del.adjoint())) -
                anticommutator(delbar, CMatrix(delbar.adjoint()))));
  }

  // one copy of the N=4 relations; prefix "" or "bar"
  void n4_copy(const std::string& g, const std::string& t) {
    const cplx I(0, 1);
    std::array<CMatrix, 3> tau;
    tau[0] = CMatrix(2, 2);
    tau[0] << 0, 1, 1, 0;
    tau[1] = CMatrix(2, 2);
    tau[1] << 0, -I, I, 0;
    tau[2] = CMatrix(2, 2);
    tau[2] << 1, 0, 0, -1;
    const CMatrix& box = data.op("box");
    auto G = [&](int a, char s) { return data.op(g + std::to_string(a) + s); };
    auto Ti = [&](int i) { return data.op(t + std::to_string(i)); };
    double adj = 0, anti = 0, boxr = 0, sl = 0, rep2 = 0, herm = 0;
    for (int a = 1; a <= 2; ++a) {
      adj = std::max(adj, hs_norm(CMatrix(G(a, '+').adjoint() - G(a, '-'))));
      boxr = std::max(boxr, hs_norm(commutator(box, G(a, '+'))));
      for (int b = 1; b <= 2; ++b) {
        anti = std::max(anti, hs_norm(anticommutator(G(a, '+'), G(b, '+'))));
        CMatrix rhs = (a == b ? 1.0 : 0.0) * box;
        anti = std::max(anti, hs_norm(CMatrix(anticommutator(G(a, '-'), G(b, '+')) - rhs)));
      }
    }
    for (int i = 1; i <= 3; ++i) {
      herm = std::max(herm, hs_norm(CMatrix(Ti(i) - Ti(i).adjoint())));
      boxr = std::max(boxr, hs_norm(commutator(box, Ti(i))));
      for (int j = 1; j <= 3; ++j) {
        CMatrix rhs = CMatrix::Zero(h, h);
        for (int k = 1; k <= 3; ++k) rhs += I * levi_civita({i, j, k}) * Ti(k);
        sl = std::max(sl, hs_norm(CMatrix(commutator(Ti(i), Ti(j)) - rhs)));
      }
      for (int a = 1; a <= 2; ++a) {
        CMatrix rhs = CMatrix::Zero(h, h);
        for (int b = 1; b <= 2; ++b) rhs += 0.5 * std::conj(tau[i - 1](a - 1, b - 1)) * G(b, '+');
        rep2 = std::max(rep2, hs_norm(CMatrix(commutator(Ti(i), G(a, '+')) - rhs)));
      }
    }
    std::string tag = g == "G" ? "" : " (barred)";
    add("(G^a+)* = G^a-" + tag, adj);
    add("T^i = T^i*" + tag, herm);
    add("{G^a+, G^b+} = 0, {G^a-, G^b+} = delta box" + tag, anti);
    add("[box, G^a+] = [box, T^i] = 0" + tag, boxr);
    add("[T^i, T^j] = i eps T^k" + tag, sl);
    add("[T^i, G^a+] = (1/2) conj(tau^i_ab) G^b+" + tag, rep2);
  }
};

}  // namespace

AxiomReport check_axioms(const SpectralData& data, double tol) {
  validate(data);
  AxiomReport rep;
  rep.tol = tol;
  Checker c{data, rep, {}, data.hilbert_dim};
  c.alg = orthonormalize(data.algebra_basis, data.tol).basis();
  c.add("algebra closure", algebra_closure_residual(data));
  const Index h = data.hilbert_dim;
  CMatrix id = identity(h);
  switch (data.flavor) {
    case Flavor::N1: {
      const CMatrix& D = data.op("D");
      const CMatrix& g = data.op("gamma");
      c.add("D = D*", CMatrix(D - D.adjoint()));
      c.grading(g);
      c.add("{gamma, D} = 0", anticommutator(g, D));
      break;
    }
    case Flavor::N11: {
      c.n11(data.op("d"), data.op("gamma"), data.op("star"), data.zeta, "d");
      break;
    }
    case Flavor::Hermitian:
    case Flavor::Kahler: {
      const CMatrix& del = data.op("del");
      const CMatrix& delbar = data.op("delbar");
      c.hermitian(del, delbar, data.op("T"), data.op("Tbar"), data.op("gamma"), data.op("star"),
                  data.zeta);
      if (data.flavor == Flavor::Kahler) c.kahler(del, delbar);
      break;
    }
    case Flavor::N44: {
      // the N=(2,2) subset; the T^3 of the N=4 relations carries charge 1/2 on G^1+,
      // so the U(1) generators of the subset are 2 T^3 and 2 Tbar^3
      const CMatrix& del = data.op("G1+");
      const CMatrix& delbar = data.op("Gbar1+");
      c.hermitian(del, delbar, 2.0 * data.op("T3"), 2.0 * data.op("Tbar3"), data.op("gamma"),
                  data.op("star"), data.zeta);
      c.kahler(del, delbar);
      const CMatrix& box = data.op("box");
      c.add("box = box*", CMatrix(box - box.adjoint()));
      c.n4_copy("G", "T");
      c.n4_copy("Gbar", "Tbar");
      double cross = 0;
      for (const std::string g : {"G1+", "G2+", "G1-", "G2-"})
        for (const std::string gb : {"Gbar1+", "Gbar2+", "Gbar1-", "Gbar2-"})
          cross = std::max(cross, hs_norm(anticommutator(data.op(g), data.op(gb))));
      for (const std::string t : {"T1", "T2", "T3"}) {
        for (const std::string gb : {"Gbar1+", "Gbar2+", "Gbar1-", "Gbar2-"})
          cross = std::max(cross, hs_norm(commutator(data.op(t), data.op(gb))));
        for (const std::string tb : {"Tbar1", "Tbar2", "Tbar3"})
          cross = std::max(cross, hs_norm(commutator(data.op(t), data.op(tb))));
      }
      for (const std::string tb : {"Tbar1", "Tbar2", "Tbar3"})
        for (const std::string g : {"G1+", "G2+", "G1-", "G2-"})
          cross = std::max(cross, hs_norm(commutator(data.op(tb), data.op(g))));
      c.add("barred and unbarred generators (anti)commute", cross);
      break;
    }
    case Flavor::Symplectic: {
      const CMatrix& d = data.op("d");
      const CMatrix& L3 = data.op("L3");
      const CMatrix& Lp = data.op("L+");
      const CMatrix& Lm = data.op("L-");
      const CMatrix& g = data.op("gamma");
      const CMatrix& star = data.op("star");
      c.n11(d, g, star, data.zeta, "d");
      c.add("[L3, L+] = 2 L+", CMatrix(commutator(L3, Lp) - 2.0 * Lp));
      c.add("[L3, L-] = -2 L-", CMatrix(commutator(L3, Lm) + 2.0 * Lm));
      c.add("[L+, L-] = L3", CMatrix(commutator(Lp, Lm) - L3));
      c.add("L3 = L3*", CMatrix(L3 - L3.adjoint()));
      c.add("(L+)* = L-", CMatrix(Lp.adjoint() - Lm));
      c.add("[L, a] = 0", std::max({c.comm_alg(L3), c.comm_alg(Lp), c.comm_alg(Lm)}));
      c.add("[L, gamma] = 0", std::max({hs_norm(commutator(L3, g)), hs_norm(commutator(Lp, g)),
                                        hs_norm(commutator(Lm, g))}));
      CMatrix dts = commutator(Lm, d);  // dtilde*
      c.add("[L3, d] = d", CMatrix(commutator(L3, d) - d));
      c.add("[L3, dtilde*] = -dtilde*", CMatrix(commutator(L3, dts) + dts));
      c.add("[L+, d] = 0", commutator(Lp, d));
      c.add("[L+, dtilde*] = d", CMatrix(commutator(Lp, dts) - d));
      c.add("[L-, dtilde*] = 0", commutator(Lm, dts));
      if (data.has("J0")) {
        // kahler structure built from the sl2 data and J0
        const CMatrix& J0 = data.op("J0");
        const cplx I(0, 1);
        CMatrix dt = dts.adjoint();
        cplx z2 = data.zeta * data.zeta;
        c.add("* L3 = -L3 *", CMatrix(star * L3 + L3 * star));
        c.add("* L+ = -zeta^2 L- *", CMatrix(star * Lp + z2 * Lm * star));
        c.add("J0 = J0*", CMatrix(J0 - J0.adjoint()));
        c.add("[J0, a] = 0", c.comm_alg(J0));
        c.add("[J0, gamma] = [J0, L3] = 0",
              std::max(hs_norm(commutator(J0, g)), hs_norm(commutator(J0, L3))));
        c.add("[J0, d] = -i dtilde", CMatrix(commutator(J0, d) + I * dt));
        c.add("[J0, dtilde] = i d", CMatrix(commutator(J0, dt) - I * d));
        CMatrix del = 0.5 * (d - I * dt);
        CMatrix delbar = 0.5 * (d + I * dt);
        CMatrix T = 0.5 * (L3 + J0);
        CMatrix Tbar = 0.5 * (L3 - J0);
        AxiomReport sub;
        Checker k{data, sub, c.alg, h};
        k.hermitian(del, delbar, T, Tbar, g, star, data.zeta);
        k.kahler(del, delbar);
        for (auto& [name, v] : sub.residuals) c.add("derived kahler: " + name, v);
      }
      break;
    }
  }
  (void)id;
  return rep;
}

// integration and Hermitian structure

cplx integral(const SpectralData& data, const CMatrix& x) {
  if (x.rows() != data.hilbert_dim || x.cols() != data.hilbert_dim)
    throw dimension_error("integral: wrong size");
  return x.trace() / double(data.hilbert_dim);
}

double cyclicity_check(const SpectralData& data, const FormComplex& fc, int samples, unsigned seed) {
  std::mt19937_64 rng(seed);
  double r = 0;
  Index top = Index(fc.canon.size());
  std::uniform_int_distribution<Index> deg(0, top - 1);
  for (int s = 0; s < samples; ++s) {
    const FormSpace& a = fc.pi[deg(rng)];
    const FormSpace& b = fc.pi[deg(rng)];
    if (a.dim() == 0 || b.dim() == 0) continue;
    CMatrix w = random_element(a, rng);
    CMatrix e = random_element(b, rng);
    w /= std::max(hs_norm(w), 1e-300);
    e /= std::max(hs_norm(e), 1e-300);
    CMatrix es = e.adjoint();
    r = std::max(r, std::abs(integral(data, w * es) - integral(data, es * w)));
  }
  return r;
}

CMatrix algebra_projection(const SpectralData& data, const CMatrix& x) {
  if (data.blocks) {
    Index n = data.blocks->n, m = data.blocks->m;
    CMatrix a(n, n);
    for (Index p = 0; p < n; ++p)
      for (Index q = 0; q < n; ++q) a(p, q) = x.block(p * m, q * m, m, m).trace() / double(m);
    return kron(a, identity(m));
  }
  return orthonormalize(data.algebra_basis, data.tol).project(x);
}

CMatrix hermitian_structure(const SpectralData& data, const CMatrix& w, const CMatrix& e) {
  return algebra_projection(data, w * e.adjoint());
}

CMatrix natural_involution(const SpectralData& data, Index k, const CMatrix& w) {
  if (!data.has("star")) throw configuration_error("natural_involution needs a Hodge operator");
  const CMatrix& star = data.op("star");
  cplx ph = std::pow(-data.zeta, double(k));
  return ph * star * w.adjoint() * star.adjoint();
}

double reality_check(const SpectralData& data, const FormComplex& fc, int samples, unsigned seed) {
  std::mt19937_64 rng(seed);
  double r = 0;
  Index top = Index(fc.pi.size());
  for (int s = 0; s < samples; ++s) {
    for (Index p = 0; p < top; ++p)
      for (Index q = 0; q < top; ++q) {
        if (fc.pi[p].dim() == 0 || fc.pi[q].dim() == 0) continue;
        CMatrix w = random_element(fc.pi[p], rng);
        CMatrix e = random_element(fc.pi[q], rng);
        w /= std::max(hs_norm(w), 1e-300);
        e /= std::max(hs_norm(e), 1e-300);
        cplx lhs = integral(data, natural_involution(data, p, w) *
                                      natural_involution(data, q, e).adjoint());
        cplx rhs = std::conj(integral(data, w * e.adjoint()));
        r = std::max(r, std::abs(lhs - rhs));
      }
    if (s > 0 && top * top * s > 200) break;
  }
  return r;
}

// bigraded decomposition

namespace {

struct ComplexStructure {
  CMatrix del, delbar, T, Tbar;
};

ComplexStructure complex_structure(const SpectralData& data) {
  switch (data.flavor) {
    case Flavor::Hermitian:
    case Flavor::Kahler:
      return {data.op("del"), data.op("delbar"), data.op("T"), data.op("Tbar")};
    case Flavor::N44:
      return {data.op("G1+"), data.op("Gbar1+"), 2.0 * data.op("T3"), 2.0 * data.op("Tbar3")};
    default:
      throw configuration_error("bigrade_decompose needs T and Tbar (" + to_string(data.flavor) + ")");
  }
}

CMatrix orth_list(const std::vector<CMatrix>& g, Index side, double tol, double floor) {
  if (g.empty()) return CMatrix(side * side, 0);
  CMatrix cols(side * side, Index(g.size()));
  for (std::size_t j = 0; j < g.size(); ++j) cols.col(Index(j)) = vec(g[j]);
  return orth_columns(cols, tol, floor);
}

// pi(Omega^k) generated by both [del, a] and [delbar, a]
std::vector<FormSpace> bigraded_pi(const SpectralData& data, const ComplexStructure& cs, Index kmax) {
  const Index h = data.hilbert_dim;
  const double floor = std::max({hs_norm(cs.del), hs_norm(cs.delbar), 1e-300});
  std::vector<FormSpace> out;
  if (data.blocks) {
    const Index n = data.blocks->n, m = data.blocks->m;
    std::vector<CMatrix> gens;
    for (const CMatrix* d : {&cs.del, &cs.delbar})
      for (Index p = 0; p < n; ++p)
        for (Index r = 0; r < n; ++r) {
          if (p != r) gens.push_back(d->block(p * m, r * m, m, m));
          else if (p > 0) gens.push_back(d->block(p * m, p * m, m, m) - d->block(0, 0, m, m));
        }
    std::vector<CMatrix> T;
    T.push_back(vec(identity(m)) / std::sqrt(double(m)));
    if (kmax >= 1) T.push_back(orth_list(gens, m, data.tol, floor));
    for (Index k = 2; k <= kmax; ++k) {
      std::vector<CMatrix> g;
      for (Index i = 0; i < T[k - 1].cols(); ++i)
        for (Index j = 0; j < T[1].cols(); ++j)
          g.push_back(unvec(T[k - 1].col(i), m) * unvec(T[1].col(j), m));
      T.push_back(orth_list(g, m, data.tol, 1.0 / double(m)));
    }
    for (auto& t : T) out.push_back(FormSpace::factored(n, m, t));
    return out;
  }
  OperatorSpan cur = orthonormalize(data.algebra_basis, data.tol);
  out.push_back(FormSpace::dense(h, cur.columns()));
  std::vector<CMatrix> dalg;
  for (const auto& b : data.algebra_basis) {
    dalg.push_back(commutator(cs.del, b));
    dalg.push_back(commutator(cs.delbar, b));
  }
  for (Index k = 1; k <= kmax; ++k) {
    std::vector<CMatrix> g;
    for (const auto& s : cur.basis())
      for (const auto& d : dalg) g.push_back(s * d);
    cur = OperatorSpan(h, orth_list(g, h, data.tol, floor), data.tol);
    out.push_back(FormSpace::dense(h, cur.columns()));
  }
  return out;
}

// integer clusters of a hermitian matrix: (eigenvalue, eigenvector columns)
std::vector<std::pair<int, CMatrix>> integer_eigenspaces(const CMatrix& m, double tol) {
  std::vector<std::pair<int, CMatrix>> out;
  if (m.rows() == 0) return out;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()));
  const RVector& ev = es.eigenvalues();
  const CMatrix& vecs = es.eigenvectors();
  for (Index i = 0; i < ev.size(); ++i) {
    double r = std::round(ev(i));
    if (std::abs(ev(i) - r) > tol)
      throw model_error("bigrade_decompose: non-integer eigenvalue " + std::to_string(ev(i)));
    int v = int(r);
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& p) { return p.first == v; });
    if (it == out.end()) {
      out.emplace_back(v, vecs.col(i));
    } else {
      CMatrix grown(vecs.rows(), it->second.cols() + 1);
      grown << it->second, vecs.col(i);
      it->second = grown;
    }
  }
  return out;
}

}  // namespace

Index BigradeReport::rank(int r, int s, Index dim_algebra) const {
  Index total = 0;
  for (const auto& p : parts)
    if (p.r == r && p.s == s) total += p.space.dim();
  if (dim_algebra <= 0 || total % dim_algebra != 0) return -1;
  return total / dim_algebra;
}

BigradeReport bigrade_decompose(const SpectralData& data, const FormComplex& fc, Index kmax) {
  validate(data);
  ComplexStructure cs = complex_structure(data);
  kmax = std::min<Index>(kmax, Index(fc.pi.size()) - 1);
  std::vector<FormSpace> pis = bigraded_pi(data, cs, kmax);
  BigradeReport rep;
  const double cluster_tol = 1e-6;
  for (Index k = 0; k <= kmax; ++k) {
    const FormSpace& pk = pis[k];
    const CMatrix& q = pk.fiber();
    const Index r = q.cols();
    if (r == 0) continue;
    // ad T, ad Tbar on the fiber (factored) or on the whole span (dense)
    Index side = pk.is_factored() ? pk.m() : pk.hilbert_dim();
    CMatrix t = pk.is_factored() ? CMatrix(cs.T.block(0, 0, side, side)) : cs.T;
    CMatrix tb = pk.is_factored() ? CMatrix(cs.Tbar.block(0, 0, side, side)) : cs.Tbar;
    CMatrix adT(side * side, r), adTb(side * side, r);
    for (Index j = 0; j < r; ++j) {
      CMatrix c = unvec(q.col(j), side);
      adT.col(j) = vec(commutator(t, c));
      adTb.col(j) = vec(commutator(tb, c));
    }
    CMatrix mT = q.adjoint() * adT, mTb = q.adjoint() * adTb;
    double scale = std::max({1.0, hs_norm(t), hs_norm(tb)});
    rep.invariance_residual =
        std::max({rep.invariance_residual, (adT - q * mT).norm() / scale, (adTb - q * mTb).norm() / scale});
    for (auto& [ev, e] : integer_eigenspaces(mT, cluster_tol)) {
      CMatrix sub = e.adjoint() * mTb * e;
      for (auto& [evb, f] : integer_eigenspaces(sub, cluster_tol)) {
        CMatrix fiber = q * (e * f);
        Bidegree b;
        b.r = ev;
        b.s = evb;
        b.degree = k;
        b.space = pk.is_factored() ? FormSpace::factored(pk.n(), pk.m(), fiber)
                                   : FormSpace::dense(pk.hilbert_dim(), fiber);
        rep.parts.push_back(std::move(b));
      }
    }
  }
  // cross inner products of unit basis elements; factored spaces share the M_n factor,
  // so the fiber overlaps are the inner products up to the common normalization
  for (std::size_t a = 0; a < rep.parts.size(); ++a)
    for (std::size_t b = a + 1; b < rep.parts.size(); ++b) {
      const Bidegree& x = rep.parts[a];
      const Bidegree& y = rep.parts[b];
      if (x.r == y.r && x.s == y.s) continue;
      if (x.space.fiber().rows() != y.space.fiber().rows()) continue;
      CMatrix g = x.space.fiber().adjoint() * y.space.fiber();
      if (g.size()) rep.orthogonality_residual = std::max(rep.orthogonality_residual, g.cwiseAbs().maxCoeff());
    }
  return rep;
}

}  // namespace ncg
