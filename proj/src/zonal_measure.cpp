#include "zonal/zonal_measure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "zonal/quadutil.hpp"

namespace zonal {

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Gauss-Legendre rule for one segment in its own angular variable t = c cos
// theta, sized to the polynomial degree. Each entry carries the node t and the
// weight including the c sin^m theta substitution factor, so
//   integral q(t) F(t) (1 - (t/c)^2)^{(m-1)/2} dt = sum w_i q(t_i) F(t_i).
struct ThetaRule {
  std::vector<double> t;
  std::vector<double> w;
};

ThetaRule theta_rule(const SegmentDensity& s, int degree) {
  int nodes = std::max(32, degree / 2 + 16);
  QuadratureRule gl = gauss_legendre_rule(nodes);
  double th_hi = std::acos(std::max(-1.0, std::min(1.0, s.a / s.c)));
  double th_lo = std::acos(std::max(-1.0, std::min(1.0, s.b / s.c)));
  ThetaRule r;
  r.t.resize(nodes);
  r.w.resize(nodes);
  double mid = 0.5 * (th_lo + th_hi), half = 0.5 * (th_hi - th_lo);
  for (int i = 0; i < nodes; ++i) {
    double th = mid + half * gl.nodes[i];
    r.t[i] = s.c * std::cos(th);
    r.w[i] = gl.weights[i] * half * s.c * std::pow(std::sin(th), s.m);
  }
  return r;
}

}  // namespace

double ZonalMeasure::segment_q(const Basis& basis, const SegmentDensity& s, double t) {
  const int K = int(s.q.size());
  if (K == 0) return 0.0;
  double pm2 = 1.0, pm1 = t;
  double acc = s.q[0] * pm2;
  if (K > 1) acc += s.q[1] * pm1;
  for (int k = 2; k < K; ++k) {
    double A = (2.0 * k + basis.n - 4.0) / (k + basis.n - 3.0);
    double B = (k - 1.0) / (k + basis.n - 3.0);
    double p = A * t * pm1 - B * pm2;
    acc += s.q[k] * p;
    pm2 = pm1;
    pm1 = p;
  }
  return acc;
}

ZonalMeasure::ZonalMeasure(BasisPtr b)
    : basis(b), density(ZonalFunction::constant(b, 0.0)) {}

ZonalMeasure ZonalMeasure::from_density(ZonalFunction dens, bool allow_signed) {
  if (!allow_signed) {
    double floor = dens.min_value();
    if (floor < -1e-10 * std::max(1.0, dens.sup_norm()))
      throw std::invalid_argument("ZonalMeasure: density is signed; pass allow_signed");
  }
  ZonalMeasure mu(dens.basis());
  mu.density = std::move(dens);
  return mu;
}

ZonalMeasure ZonalMeasure::dirac(BasisPtr basis, double mass) { return ring(basis, 1.0, mass); }

ZonalMeasure ZonalMeasure::ring(BasisPtr basis, double t, double mass) {
  ZonalMeasure mu(basis);
  mu.atoms.push_back({t, mass});
  return mu;
}

ZonalMeasure ZonalMeasure::uniform_prob(BasisPtr basis) {
  double on = omega(basis->n);
  return from_density(ZonalFunction::constant(basis, 1.0 / on));
}

double ZonalMeasure::pair(const ZonalFunction& f) const {
  if (f.basis()->n != basis->n) throw std::invalid_argument("pair: dimension mismatch");
  double acc = 0.0;
  // density part: exact coefficient pairing
  {
    const int K = std::min(basis->N, f.band_limit());
    const auto& d = density.coefficients();
    const auto& c = f.coefficients();
    for (int k = 0; k <= K; ++k) acc += d[k] * c[k] * basis->nu[k];
  }
  for (const auto& s : segments) {
    ThetaRule r = theta_rule(s, f.band_limit() + int(s.q.size()) + s.m);
    double v = 0.0;
    for (std::size_t i = 0; i < r.t.size(); ++i)
      v += r.w[i] * f(r.t[i]) * segment_q(*basis, s, r.t[i]);
    acc += v;
  }
  for (const auto& a : atoms) acc += a.mass * f(a.t);
  return acc;
}

double ZonalMeasure::pair_profile(const std::function<double(double)>& f,
                                  const std::vector<double>& breakpoints) const {
  auto span_cuts = [&](double lo, double hi) {
    std::vector<double> cuts{lo, hi};
    for (double b : breakpoints)
      if (b > lo && b < hi) cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    return cuts;
  };
  double acc = 0.0;
  auto band = [&](double t) { return f(t) * density(t); };
  {
    std::vector<double> cuts = span_cuts(-1.0, 1.0);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      acc += basis->omega_nm1 *
             detail::integrate_weighted(band, cuts[i], cuts[i + 1], basis->n - 2, 1e-12);
  }
  for (const auto& s : segments) {
    // adaptive quadrature in the segment's own angular variable t = c cos th,
    // which keeps the m = 0 edge weight finite
    auto g = [&](double th) {
      double t = s.c * std::cos(th);
      return f(t) * segment_q(*basis, s, t) * s.c * std::pow(std::sin(th), s.m);
    };
    std::vector<double> cuts = span_cuts(s.a, s.b);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      double th_hi = std::acos(std::max(-1.0, std::min(1.0, cuts[i] / s.c)));
      double th_lo = std::acos(std::max(-1.0, std::min(1.0, cuts[i + 1] / s.c)));
      acc += detail::integrate_theta(g, th_lo, th_hi, 1e-12);
    }
  }
  for (const auto& a : atoms) acc += a.mass * f(a.t);
  return acc;
}

std::vector<double> ZonalMeasure::multipliers() const {
  std::vector<double> m(basis->N + 1, 0.0);
  const auto& d = density.coefficients();
  for (int k = 0; k <= basis->N; ++k) m[k] = d[k] * basis->nu[k];

  std::vector<double> p(basis->N + 1);
  for (const auto& s : segments) {
    ThetaRule r = theta_rule(s, basis->N + int(s.q.size()) + s.m);
    for (std::size_t i = 0; i < r.t.size(); ++i) {
      double f = r.w[i] * segment_q(*basis, s, r.t[i]);
      basis->eval_all(r.t[i], p.data());
      for (int k = 0; k <= basis->N; ++k) m[k] += f * p[k];
    }
  }
  for (const auto& a : atoms) {
    basis->eval_all(a.t, p.data());
    for (int k = 0; k <= basis->N; ++k) m[k] += a.mass * p[k];
  }
  return m;
}

double ZonalMeasure::mass() const {
  double acc = density.coefficients()[0] * basis->nu[0];
  for (const auto& s : segments) {
    ThetaRule r = theta_rule(s, int(s.q.size()) + s.m);
    for (std::size_t i = 0; i < r.t.size(); ++i) acc += r.w[i] * segment_q(*basis, s, r.t[i]);
  }
  for (const auto& a : atoms) acc += a.mass;
  return acc;
}

double ZonalMeasure::centroid() const {
  double acc = density.coefficients()[1] * basis->nu[1];
  for (const auto& s : segments) {
    ThetaRule r = theta_rule(s, int(s.q.size()) + 1 + s.m);
    for (std::size_t i = 0; i < r.t.size(); ++i)
      acc += r.w[i] * r.t[i] * segment_q(*basis, s, r.t[i]);
  }
  for (const auto& a : atoms) acc += a.mass * a.t;
  return acc;
}

namespace {

// theta-space content of the absolutely continuous part: the band-limited
// density contributes f~(cos th) omega_{n-1} sin^{n-2} th, a segment
// contributes q(cos th) sin^m th. This stays finite for n = 2 where the
// t-space density has (1-t^2)^{-1/2} endpoints.
double ac_theta_content(const ZonalMeasure& mu, double th) {
  const Basis& B = *mu.basis;
  double t = std::cos(th);
  double s = std::sin(th);
  double v = mu.density(t) * B.omega_nm1 * std::pow(s, B.n - 2);
  for (const auto& seg : mu.segments) {
    if (t < seg.a - 1e-15 || t > seg.b + 1e-15) continue;
    double w;
    if (seg.c == 1.0) {
      w = std::pow(s, seg.m);
    } else {
      // scaled weight in the global angle; the edge singularity at m = 0 is
      // integrable, so the adaptive piece integrals below still converge
      double u = std::max(0.0, 1.0 - (t / seg.c) * (t / seg.c));
      w = std::pow(u, 0.5 * (seg.m - 1)) * s;
    }
    v += ZonalMeasure::segment_q(B, seg, t) * w;
  }
  return v;
}

// breakpoints in theta: segment ends plus sign changes of the a.c. content
std::vector<double> ac_pieces(const ZonalMeasure& mu) {
  std::vector<double> bp{0.0, M_PI};
  for (const auto& s : mu.segments) {
    bp.push_back(std::acos(std::max(-1.0, std::min(1.0, s.a))));
    bp.push_back(std::acos(std::max(-1.0, std::min(1.0, s.b))));
  }
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end(),
                       [](double x, double y) { return std::fabs(x - y) < 1e-14; }),
           bp.end());

  std::vector<double> cuts;
  auto g = [&](double th) { return ac_theta_content(mu, th); };
  for (std::size_t j = 0; j + 1 < bp.size(); ++j) {
    cuts.push_back(bp[j]);
    const int scan = 96;
    double prev_th = bp[j] + 1e-13;
    double prev_v = g(prev_th);
    for (int i = 1; i <= scan; ++i) {
      double th = bp[j] + (bp[j + 1] - bp[j]) * double(i) / scan;
      if (i == scan) th -= 1e-13;
      double v = g(th);
      if (v == 0.0) {
        cuts.push_back(th);
        prev_th = th;
        continue;
      }
      if (prev_v != 0.0 && (prev_v > 0) != (v > 0))
        cuts.push_back(detail::bisect(g, prev_th, th, 1e-12));
      prev_th = th;
      prev_v = v;
    }
  }
  cuts.push_back(M_PI);
  std::sort(cuts.begin(), cuts.end());
  return cuts;
}

}  // namespace

double ZonalMeasure::total_variation() const {
  std::vector<double> cuts = ac_pieces(*this);
  auto g = [&](double th) { return ac_theta_content(*this, th); };
  double acc = 0.0;
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    if (cuts[j + 1] - cuts[j] < 1e-13) continue;
    // each piece carries one sign, so |integral| equals the integral of |.|
    acc += std::fabs(detail::integrate_theta(g, cuts[j], cuts[j + 1], 1e-12));
  }
  for (const auto& a : atoms) acc += std::fabs(a.mass);
  return acc;
}

ZonalMeasure ZonalMeasure::even_part() const {
  ZonalMeasure mu(basis);
  mu.density = density.even_part();
  for (const auto& s : segments) {
    SegmentDensity half = s;
    for (double& c : half.q) c *= 0.5;
    SegmentDensity mirror = half;
    mirror.a = -s.b;
    mirror.b = -s.a;
    for (std::size_t k = 1; k < mirror.q.size(); k += 2) mirror.q[k] = -mirror.q[k];
    mu.segments.push_back(half);
    mu.segments.push_back(mirror);
  }
  for (const auto& a : atoms) {
    if (a.t == 0.0) {
      mu.atoms.push_back(a);
    } else {
      mu.atoms.push_back({a.t, 0.5 * a.mass});
      mu.atoms.push_back({-a.t, 0.5 * a.mass});
    }
  }
  return mu;
}

ZonalMeasure ZonalMeasure::odd_part() const {
  ZonalMeasure mu(basis);
  mu.density = density.odd_part();
  for (const auto& s : segments) {
    SegmentDensity half = s;
    for (double& c : half.q) c *= 0.5;
    SegmentDensity mirror = half;
    mirror.a = -s.b;
    mirror.b = -s.a;
    for (std::size_t k = 1; k < mirror.q.size(); k += 2) mirror.q[k] = -mirror.q[k];
    for (double& c : mirror.q) c = -c;
    mu.segments.push_back(half);
    mu.segments.push_back(mirror);
  }
  for (const auto& a : atoms) {
    if (a.t == 0.0) continue;
    mu.atoms.push_back({a.t, 0.5 * a.mass});
    mu.atoms.push_back({-a.t, -0.5 * a.mass});
  }
  return mu;
}

ZonalMeasure ZonalMeasure::project_o() const {
  double c = centroid();
  ZonalMeasure mu = *this;
  std::vector<double> corr(2, 0.0);
  corr[1] = -c / basis->nu[1];
  mu.density = density + ZonalFunction(basis, corr);
  return mu;
}

RadonPair ZonalMeasure::radon_decompose() const {
  RadonPair out{ZonalMeasure(basis), ZonalMeasure(basis)};
  std::vector<double> cuts = ac_pieces(*this);
  const auto& dc = density.coefficients();
  bool has_band = false;
  for (double c : dc)
    if (c != 0.0) has_band = true;

  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    double th1 = cuts[j], th2 = cuts[j + 1];
    if (th2 - th1 < 1e-12) continue;
    double mid = 0.5 * (th1 + th2);
    bool positive = ac_theta_content(*this, mid) >= 0.0;
    ZonalMeasure& dst = positive ? out.pos : out.neg;
    double sgn = positive ? 1.0 : -1.0;
    double ta = std::cos(th2), tb = std::cos(th1);
    if (has_band) {
      SegmentDensity s;
      s.a = ta;
      s.b = tb;
      s.m = basis->n - 2;
      s.q = dc;
      for (double& c : s.q) c *= sgn * basis->omega_nm1;
      dst.segments.push_back(s);
    }
    for (const auto& seg : segments) {
      double lo = std::max(ta, seg.a), hi = std::min(tb, seg.b);
      if (hi - lo < 1e-14) continue;
      SegmentDensity s = seg;
      s.a = lo;
      s.b = hi;
      for (double& c : s.q) c *= sgn;
      dst.segments.push_back(s);
    }
  }
  for (const auto& a : atoms) {
    if (a.mass >= 0)
      out.pos.atoms.push_back(a);
    else
      out.neg.atoms.push_back({a.t, -a.mass});
  }
  return out;
}

ZonalMeasure ZonalMeasure::operator+(const ZonalMeasure& o) const {
  if (basis.get() != o.basis.get()) throw std::invalid_argument("ZonalMeasure: basis mismatch");
  ZonalMeasure mu(basis);
  mu.density = density + o.density;
  mu.segments = segments;
  mu.segments.insert(mu.segments.end(), o.segments.begin(), o.segments.end());
  mu.atoms = atoms;
  mu.atoms.insert(mu.atoms.end(), o.atoms.begin(), o.atoms.end());
  return mu;
}

ZonalMeasure ZonalMeasure::operator*(double s) const {
  ZonalMeasure mu(basis);
  mu.density = density * s;
  mu.segments = segments;
  for (auto& seg : mu.segments)
    for (double& c : seg.q) c *= s;
  mu.atoms = atoms;
  for (auto& a : mu.atoms) a.mass *= s;
  return mu;
}

std::string ZonalMeasure::serialize() const {
  std::ostringstream os;
  os << "dim " << basis->n << " " << basis->N << "\n";
  const auto& c = density.coefficients();
  for (int k = 0; k <= basis->N; ++k) os << (k ? " " : "") << fmt17(c[k]);
  os << "\n";
  for (const auto& s : segments) {
    os << "segment " << fmt17(s.a) << " " << fmt17(s.b) << " " << s.m << " " << fmt17(s.c);
    for (double q : s.q) os << " " << fmt17(q);
    os << "\n";
  }
  for (const auto& a : atoms) os << "atom " << fmt17(a.t) << " " << fmt17(a.mass) << "\n";
  return os.str();
}

ZonalMeasure ZonalMeasure::deserialize(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("deserialize: empty input");
  std::istringstream head(line);
  std::string tag;
  int n = 0, N = 0;
  head >> tag >> n >> N;
  if (tag != "dim" || n < 2 || N < 1) throw std::invalid_argument("deserialize: bad header");
  auto B = basis_for(n, N);
  if (!std::getline(is, line)) throw std::invalid_argument("deserialize: missing coefficients");
  std::istringstream cs(line);
  std::vector<double> c;
  double x;
  while (cs >> x) c.push_back(x);
  if (int(c.size()) != N + 1) throw std::invalid_argument("deserialize: coefficient count");
  ZonalMeasure mu(B);
  mu.density = ZonalFunction(B, c);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    ls >> tag;
    if (tag == "segment") {
      SegmentDensity s;
      ls >> s.a >> s.b >> s.m >> s.c;
      while (ls >> x) s.q.push_back(x);
      mu.segments.push_back(std::move(s));
    } else if (tag == "atom") {
      RingAtom a{};
      ls >> a.t >> a.mass;
      mu.atoms.push_back(a);
    } else {
      throw std::invalid_argument("deserialize: unknown record " + tag);
    }
  }
  return mu;
}

ZonalMeasure rebase_measure(const ZonalMeasure& mu, BasisPtr fine) {
  if (fine->n != mu.basis->n)
    throw std::invalid_argument("rebase: dimension mismatch");
  ZonalMeasure out(fine);
  out.density = mu.density.refine(fine);
  out.segments = mu.segments;
  out.atoms = mu.atoms;
  return out;
}

}  // namespace zonal
