#include "zonal/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "zonal/body.hpp"
#include "zonal/cones.hpp"
#include "zonal/endomorphism.hpp"
#include "zonal/harmonic.hpp"
#include "zonal/svg.hpp"
#include "zonal/valuation.hpp"

namespace zonal {

namespace {

// ---------------------------------------------------------------------------
// deterministic emitters
// ---------------------------------------------------------------------------

// Minimal JSON value with insertion-ordered objects and doubles printed via
// format17, so identical runs produce identical bytes.
class JValue {
 public:
  static JValue object() { return JValue(kObj); }
  static JValue array() { return JValue(kArr); }
  static JValue null() { return JValue(kNull); }
  static JValue boolean(bool b) {
    JValue v(kBool);
    v.b_ = b;
    return v;
  }
  static JValue integer(long long i) {
    JValue v(kInt);
    v.i_ = i;
    return v;
  }
  static JValue num(double d) {
    if (!std::isfinite(d)) return str(format17(d));
    JValue v(kNum);
    v.d_ = d;
    return v;
  }
  static JValue str(std::string s) {
    JValue v(kStr);
    v.s_ = std::move(s);
    return v;
  }

  JValue& set(const std::string& key, JValue v) {
    obj_.emplace_back(key, std::move(v));
    return *this;
  }
  JValue& push(JValue v) {
    arr_.push_back(std::move(v));
    return *this;
  }

  std::string dump() const {
    std::ostringstream o;
    write(o, 0);
    o << "\n";
    return o.str();
  }

 private:
  enum Kind { kNull, kBool, kInt, kNum, kStr, kObj, kArr };
  explicit JValue(Kind k) : kind_(k) {}

  static void escape(std::ostringstream& o, const std::string& s) {
    o << '"';
    for (char ch : s) {
      switch (ch) {
        case '"': o << "\\\""; break;
        case '\\': o << "\\\\"; break;
        case '\n': o << "\\n"; break;
        case '\t': o << "\\t"; break;
        default:
          if (static_cast<unsigned char>(ch) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", ch);
            o << buf;
          } else {
            o << ch;
          }
      }
    }
    o << '"';
  }

  void write(std::ostringstream& o, int depth) const {
    const std::string pad(2 * std::size_t(depth), ' ');
    const std::string pad1(2 * std::size_t(depth + 1), ' ');
    switch (kind_) {
      case kNull: o << "null"; break;
      case kBool: o << (b_ ? "true" : "false"); break;
      case kInt: o << i_; break;
      case kNum: o << format17(d_); break;
      case kStr: escape(o, s_); break;
      case kObj:
        if (obj_.empty()) {
          o << "{}";
          break;
        }
        o << "{\n";
        for (std::size_t i = 0; i < obj_.size(); ++i) {
          o << pad1;
          escape(o, obj_[i].first);
          o << ": ";
          obj_[i].second.write(o, depth + 1);
          o << (i + 1 < obj_.size() ? ",\n" : "\n");
        }
        o << pad << '}';
        break;
      case kArr:
        if (arr_.empty()) {
          o << "[]";
          break;
        }
        o << "[\n";
        for (std::size_t i = 0; i < arr_.size(); ++i) {
          o << pad1;
          arr_[i].write(o, depth + 1);
          o << (i + 1 < arr_.size() ? ",\n" : "\n");
        }
        o << pad << ']';
        break;
    }
  }

  Kind kind_;
  bool b_ = false;
  long long i_ = 0;
  double d_ = 0.0;
  std::string s_;
  std::vector<std::pair<std::string, JValue>> obj_;
  std::vector<JValue> arr_;
};

class Csv {
 public:
  explicit Csv(const std::vector<std::string>& header) {
    append(header);
    columns_ = header.size();
  }
  void row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_)
      throw std::logic_error("csv row width mismatch");
    append(cells);
  }
  static std::string val(double v) { return format17(v); }
  static std::string num(long long v) { return std::to_string(v); }
  std::string str() const { return o_.str(); }

 private:
  void append(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) o_ << ',';
      o_ << cells[i];
    }
    o_ << '\n';
  }
  std::ostringstream o_;
  std::size_t columns_ = 0;
};

struct Artifacts {
  std::string csv;
  std::string json;
  std::string svg;  // empty: no plot produced
};

JValue envelope(const std::string& command, const ExperimentConfig& cfg) {
  JValue j = JValue::object();
  j.set("command", JValue::str(command));
  j.set("version", JValue::str(kModuleVersion));
  j.set("config_hash", JValue::str(cfg.hash()));
  j.set("n", JValue::integer(cfg.n));
  j.set("band_limit", JValue::integer(cfg.band_limit));
  j.set("seed", JValue::integer(cfg.seed));
  return j;
}

double log10_floor(double v) { return std::log10(std::max(v, 1e-18)); }

ZonalFunction random_even_density(BasisPtr B, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> c(std::size_t(B->N) + 1, 0.0);
  for (int k = 0; k <= B->N; ++k) {
    double v = g(rng) * std::pow(1.0 + k, -2.0) * std::exp(-0.15 * k);
    if (k % 2 == 0) c[std::size_t(k)] = v;
  }
  c[0] = std::fabs(c[0]) + 0.5;  // definite mean keeps the surfaces O(1)
  return ZonalFunction(B, c);
}

// smooth bump of unit height supported on (center-eps, center+eps)
double bump_profile(double t, double center, double eps) {
  double y = (t - center) / eps;
  return std::fabs(y) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - y * y)) : 0.0;
}

double even_bump(double t, double center, double eps) {
  return bump_profile(t, center, eps) + bump_profile(t, -center, eps);
}

JValue serialize_support(const ZonalFunction& h) {
  JValue b = JValue::object();
  b.set("n", JValue::integer(h.dim()));
  b.set("band_limit", JValue::integer(h.band_limit()));
  JValue coef = JValue::array();
  for (double c : h.coefficients()) coef.push(JValue::num(c));
  b.set("coefficients", std::move(coef));
  return b;
}

// ---------------------------------------------------------------------------
// experiments
// ---------------------------------------------------------------------------

int run_integrals(const ExperimentConfig& cfg, Artifacts& art) {
  Csv csv({"n", "integral_abs", "exact_abs", "error_abs", "integral_square",
           "exact_square", "error_square"});
  JValue rows = JValue::array();
  SvgSeries sa{"log10 error of the |t| integral", {}, {}};
  SvgSeries ss{"log10 error of the t^2 integral", {}, {}};
  double worst_abs = 0.0, worst_sq = 0.0;
  for (int n = 2; n <= 8; ++n) {
    auto B = basis_for(n, 16);
    double va = sphere_integral(*B, [](double t) { return std::fabs(t); }, {0.0});
    double ea = 2.0 * omega(n - 1) / (n - 1);
    double vs = sphere_integral(
        ZonalFunction::from_profile(B, [](double t) { return t * t; }));
    double es = omega(n) / n;
    double da = std::fabs(va - ea), ds = std::fabs(vs - es);
    worst_abs = std::max(worst_abs, da);
    worst_sq = std::max(worst_sq, ds);
    csv.row({Csv::num(n), Csv::val(va), Csv::val(ea), Csv::val(da),
             Csv::val(vs), Csv::val(es), Csv::val(ds)});
    JValue r = JValue::object();
    r.set("n", JValue::integer(n));
    r.set("integral_abs", JValue::num(va));
    r.set("integral_square", JValue::num(vs));
    r.set("error_abs", JValue::num(da));
    r.set("error_square", JValue::num(ds));
    rows.push(std::move(r));
    sa.x.push_back(n);
    sa.y.push_back(log10_floor(da));
    ss.x.push_back(n);
    ss.y.push_back(log10_floor(ds));
  }
  bool pass = worst_abs <= 1e-10 && worst_sq <= 1e-10;
  JValue j = envelope("integrals", cfg);
  j.set("rows", std::move(rows));
  j.set("max_error_abs", JValue::num(worst_abs));
  j.set("max_error_square", JValue::num(worst_sq));
  j.set("pass", JValue::boolean(pass));
  art.csv = csv.str();
  art.json = j.dump();
  if (cfg.svg) art.svg = svg_line_chart({sa, ss}, "closed-form sphere integrals");
  return pass ? exit_ok : exit_violation;
}

int run_berg(const ExperimentConfig& cfg, Artifacts& art) {
  if (cfg.n < 3) {
    std::cerr << "berg: needs dimension n >= 3\n";
    return exit_usage;
  }
  std::vector<int> ladder{16, 32, 64, 128, 256};
  if (cfg.band_limit > 256) ladder.push_back(cfg.band_limit);
  auto profile = [](double t) {
    return std::exp(0.6 * t) + 0.3 * std::cos(3.0 * t);
  };
  Csv csv({"band_limit", "identity_error", "projection_error"});
  JValue rows = JValue::array();
  SvgSeries si{"log10 inversion identity error", {}, {}};
  SvgSeries sp{"log10 truncation error of the profile", {}, {}};
  double final_err = 0.0;
  for (int N : ladder) {
    auto B = basis_for(cfg.n, N);
    ZonalFunction f = ZonalFunction::from_profile(B, profile);
    std::vector<double> c = f.coefficients();
    const double c1 = c[1];
    c[1] = 0.0;  // the inversion identity lives away from degree one
    f = ZonalFunction(B, c);
    ZonalFunction back = berg_apply(box_n(f));
    double err = (f - back).sup_norm();
    double proj = 0.0;
    for (int i = 0; i <= 256; ++i) {
      double t = -1.0 + 2.0 * i / 256.0;
      proj = std::max(proj, std::fabs(profile(t) - c1 * t - f(t)));
    }
    final_err = err;
    csv.row({Csv::num(N), Csv::val(err), Csv::val(proj)});
    JValue r = JValue::object();
    r.set("band_limit", JValue::integer(N));
    r.set("identity_error", JValue::num(err));
    r.set("projection_error", JValue::num(proj));
    rows.push(std::move(r));
    si.x.push_back(N);
    si.y.push_back(log10_floor(err));
    sp.x.push_back(N);
    sp.y.push_back(log10_floor(proj));
  }
  bool pass = final_err <= 1e-6;
  JValue j = envelope("berg", cfg);
  j.set("rows", std::move(rows));
  j.set("final_error", JValue::num(final_err));
  j.set("pass", JValue::boolean(pass));
  art.csv = csv.str();
  art.json = j.dump();
  if (cfg.svg)
    art.svg = svg_line_chart({si, sp}, "inversion round-trip vs band limit");
  return pass ? exit_ok : exit_violation;
}

int run_firey(const ExperimentConfig& cfg, Artifacts& art) {
  auto B = basis_for(cfg.n, cfg.band_limit);
  Csv csv({"body", "j", "corrupted", "accepted", "margin_i", "margin_ii",
           "margin_iii"});
  bool all_clean = true, all_rejected = true;
  double worst_clean = std::numeric_limits<double>::infinity();
  std::vector<SvgSeries> series(std::size_t(cfg.n - 1));
  for (int j = 1; j < cfg.n; ++j)
    series[std::size_t(j - 1)].label = "margin iii, order " + std::to_string(j);
  for (int i = 0; i < cfg.bodies; ++i) {
    BodyRev K = sample_body(B, cfg.seed + 137u * unsigned(i));
    for (int j = 1; j < cfg.n; ++j) {
      FireyReport rep = firey_check(area_density(K, j), j);
      all_clean = all_clean && rep.accepted();
      worst_clean = std::min(worst_clean, rep.margins[2]);
      csv.row({Csv::num(i), Csv::num(j), "0",
               rep.accepted() ? "1" : "0", Csv::val(rep.margins[0]),
               Csv::val(rep.margins[1]), Csv::val(rep.margins[2])});
      series[std::size_t(j - 1)].x.push_back(i);
      series[std::size_t(j - 1)].y.push_back(rep.margins[2]);
    }
    // inject a localized dip until the pointwise domination condition fails
    ZonalFunction s1 = area_density(K, 1);
    ZonalFunction dip = ZonalFunction::from_profile(
        s1.basis(),
        [](double t) { return std::exp(-std::pow((t - 0.9) / 0.12, 2.0)); });
    double c = s1.sup_norm();
    FireyReport bad;
    bool rejected = false;
    for (int trial = 0; trial < 10 && !rejected; ++trial, c *= 2.0) {
      bad = firey_check(s1 - dip * c, 1);
      rejected = !bad.accepted() && bad.margins[2] < 0.0;
    }
    all_rejected = all_rejected && rejected;
    csv.row({Csv::num(i), "1", "1", bad.accepted() ? "1" : "0",
             Csv::val(bad.margins[0]), Csv::val(bad.margins[1]),
             Csv::val(bad.margins[2])});
  }
  bool pass = all_clean && all_rejected;
  JValue j = envelope("firey", cfg);
  j.set("bodies", JValue::integer(cfg.bodies));
  j.set("all_clean_accepted", JValue::boolean(all_clean));
  j.set("all_corrupted_rejected", JValue::boolean(all_rejected));
  j.set("worst_clean_margin", JValue::num(worst_clean));
  j.set("pass", JValue::boolean(pass));
  art.csv = csv.str();
  art.json = j.dump();
  if (cfg.svg)
    art.svg = svg_line_chart(series, "area-measure acceptance margins");
  return pass ? exit_ok : exit_violation;
}

int run_weil(const ExperimentConfig& cfg, Artifacts& art) {
  if (cfg.n < 3) {
    std::cerr << "weil: needs dimension n >= 3\n";
    return exit_usage;
  }
  auto B = basis_for(cfg.n, cfg.band_limit);
  ZonalFunction rho = random_even_density(B, cfg.seed + 17u);
  Csv csv({"alpha", "beta", "psi"});
  std::vector<std::vector<double>> grid(
      cfg.beta_grid.size(), std::vector<double>(cfg.alpha_grid.size(), 0.0));
  double vmin = std::numeric_limits<double>::infinity();
  double arg_a = 0.0, arg_b = 0.0, vmax_abs = 0.0;
  bool finite = true;
  for (std::size_t ia = 0; ia < cfg.alpha_grid.size(); ++ia) {
    for (std::size_t ib = 0; ib < cfg.beta_grid.size(); ++ib) {
      double a = cfg.alpha_grid[ia], b = cfg.beta_grid[ib];
      double v = weil_psi(rho, a, b);
      finite = finite && std::isfinite(v);
      grid[ib][ia] = v;
      if (v < vmin) {
        vmin = v;
        arg_a = a;
        arg_b = b;
      }
      vmax_abs = std::max(vmax_abs, std::fabs(v));
      csv.row({Csv::val(a), Csv::val(b), Csv::val(v)});
    }
  }
  JValue j = envelope("weil", cfg);
  j.set("min_psi", JValue::num(vmin));
  j.set("arg_alpha", JValue::num(arg_a));
  j.set("arg_beta", JValue::num(arg_b));
  j.set("max_abs_psi", JValue::num(vmax_abs));
  j.set("pass", JValue::boolean(finite));
  art.csv = csv.str();
  art.json = j.dump();
  if (cfg.svg)
    art.svg = svg_heatmap(grid, cfg.alpha_grid.front(), cfg.alpha_grid.back(),
                          cfg.beta_grid.front(), cfg.beta_grid.back(),
                          "positivity functional surface");
  return finite ? exit_ok : exit_inconclusive;
}

int run_capbound(const ExperimentConfig& cfg, Artifacts& art) {
  auto B = basis_for(cfg.n, cfg.band_limit);
  Csv csv({"body", "j", "angle", "cap_mass", "shape_factor", "ratio"});
  double worst = 0.0;
  bool finite = true;
  std::vector<SvgSeries> series(std::size_t(cfg.n - 1));
  for (int j = 1; j < cfg.n; ++j)
    series[std::size_t(j - 1)].label = "max ratio, order " + std::to_string(j);
  JValue per_j = JValue::array();
  std::vector<double> max_per_j(std::size_t(cfg.n), 0.0);
  for (std::size_t ia = 0; ia < cfg.alpha_grid.size(); ++ia) {
    double angle = 1.5 * cfg.alpha_grid[ia];
    std::vector<double> col(std::size_t(cfg.n), 0.0);
    for (int i = 0; i < cfg.bodies; ++i) {
      BodyRev K = sample_body(B, cfg.seed + 211u * unsigned(i));
      for (int j = 1; j < cfg.n; ++j) {
        CapBound cb = firey_cap_bound(K, j, angle);
        finite = finite && std::isfinite(cb.ratio);
        worst = std::max(worst, cb.ratio);
        max_per_j[std::size_t(j)] = std::max(max_per_j[std::size_t(j)], cb.ratio);
        col[std::size_t(j)] = std::max(col[std::size_t(j)], cb.ratio);
        csv.row({Csv::num(i), Csv::num(j), Csv::val(angle), Csv::val(cb.lhs),
                 Csv::val(cb.rhs_shape), Csv::val(cb.ratio)});
      }
    }
    for (int j = 1; j < cfg.n; ++j) {
      series[std::size_t(j - 1)].x.push_back(angle);
      series[std::size_t(j - 1)].y.push_back(col[std::size_t(j)]);
    }
  }
  for (int j = 1; j < cfg.n; ++j) {
    JValue r = JValue::object();
    r.set("j", JValue::integer(j));
    r.set("max_ratio", JValue::num(max_per_j[std::size_t(j)]));
    per_j.push(std::move(r));
  }
  JValue j = envelope("capbound", cfg);
  j.set("max_ratio", JValue::num(worst));
  j.set("per_order", std::move(per_j));
  j.set("pass", JValue::boolean(finite));
  art.csv = csv.str();
  art.json = j.dump();
  if (cfg.svg)
    art.svg = svg_line_chart(series, "cap concentration ratio vs opening angle");
  return finite ? exit_ok : exit_inconclusive;
}

int run_nonmonotone(const ExperimentConfig& cfg, Artifacts& art) {
  auto B = basis_for(cfg.n, cfg.band_limit);
  NonmonotoneResult nm = nonmonotone_construct(B, cfg.bodies, cfg.seed);
  MonotonicityReport rep = is_weakly_monotone(nm.phi);
  std::optional<WitnessTriple> wit =
      monotonicity_witness(nm.phi, cfg.trials, cfg.seed + 1);
  double gap4 = 0.0;
  if (wit) gap4 = witness_gap_refined(nm.phi, *wit, 4);

  Csv csv({"t", "generating", "h_K", "h_L", "h_phi_K", "h_phi_L"});
  const ZonalFunction& gen = nm.phi.measure().density;
  std::optional<BodyRev> pk, pl;
  if (wit) {
    pk = apply(nm.phi, wit->K);
    pl = apply(nm.phi, wit->L);
  }
  for (int i = 0; i <= 128; ++i) {
    double t = -1.0 + 2.0 * i / 128.0;
    csv.row({Csv::val(t), Csv::val(gen(t)),
             Csv::val(wit ? wit->K.h(t) : 0.0),
             Csv::val(wit ? wit->L.h(t) : 0.0),
             Csv::val(pk ? pk->h(t) : 0.0),
             Csv::val(pl ? pl->h(t) : 0.0)});
  }

  JValue j = envelope("nonmonotone", cfg);
  j.set("C", JValue::num(nm.C));
  j.set("alpha", JValue::num(nm.alpha));
  j.set("min_generating", JValue::num(nm.min_generating));
  j.set("weakly_monotone", JValue::boolean(rep.weakly_monotone));
  j.set("infeasible_t_lower", JValue::num(rep.t_lower));
  j.set("infeasible_t_upper", JValue::num(rep.t_upper));
  j.set("worst_margin", JValue::num(nm.worst_margin));
  j.set("suite_size", JValue::integer(nm.suite_size));
  if (wit) {
    JValue w = JValue::object();
    w.set("u_t", JValue::num(wit->u_t));
    w.set("gap", JValue::num(wit->gap));
    w.set("gap_refined_4x", JValue::num(gap4));
    j.set("witness", std::move(w));
  } else {
    j.set("witness", JValue::null());
  }
  bool pass = nm.min_generating < 0.0 && !rep.weakly_monotone && wit &&
              wit->gap > 0.0 && gap4 > 0.0;
  j.set("pass", JValue::boolean(pass));
  art.csv = csv.str();
  art.json = j.dump();
  if (cfg.svg && wit) {
    SvgSeries a{"h_phi_K - h_phi_L", {}, {}};
    SvgSeries b{"h_L - h_K", {}, {}};
    for (int i = 0; i <= 256; ++i) {
      double t = -1.0 + 2.0 * i / 256.0;
      a.x.push_back(t);
      a.y.push_back(pk->h(t) - pl->h(t));
      b.x.push_back(t);
      b.y.push_back(wit->L.h(t) - wit->K.h(t));
    }
    art.svg = svg_line_chart({a, b}, "monotonicity reversal witness");
  }
  if (pass) return exit_ok;
  return wit ? exit_violation : exit_inconclusive;
}

int run_lipschitz(const ExperimentConfig& cfg, Artifacts& art) {
  auto B = basis_for(cfg.n, cfg.band_limit);
  Csv csv({"family", "param", "estimate", "tv_bound", "width_image_ball",
           "tv_ratio"});
  const double sigma_exact = 2.0 * cfg.n - 3.0;
  double worst_excess = -std::numeric_limits<double>::infinity();
  double sigma_tv_err = 0.0;
  SvgSeries stau{"tau family", {}, {}}, ssig{"sigma family", {}, {}};
  for (double a : cfg.alpha_grid) {
    double p = 2.0 * a - 1.0;  // tail measures over the full latitude range
    ZonalMeasure mu = tau_alpha(B, p);
    LipschitzReport r = lipschitz_estimate(Endomorphism(mu), cfg.trials, cfg.seed);
    double tvr = tv_ratio(mu);
    worst_excess = std::max(worst_excess, r.estimate - r.tv_bound);
    csv.row({"tau", Csv::val(p), Csv::val(r.estimate), Csv::val(r.tv_bound),
             Csv::val(r.width_image_ball), Csv::val(tvr)});
    stau.x.push_back(p);
    stau.y.push_back(r.estimate / r.tv_bound);
  }
  for (double b : cfg.beta_grid) {
    ZonalMeasure mu = sigma_beta(B, b);
    LipschitzReport r = lipschitz_estimate(Endomorphism(mu), cfg.trials, cfg.seed);
    double tvr = tv_ratio(mu);
    sigma_tv_err = std::max(sigma_tv_err, std::fabs(tvr - sigma_exact));
    worst_excess = std::max(worst_excess, r.estimate - r.tv_bound);
    csv.row({"sigma", Csv::val(b), Csv::val(r.estimate), Csv::val(r.tv_bound),
             Csv::val(r.width_image_ball), Csv::val(tvr)});
    ssig.x.push_back(b);
    ssig.y.push_back(r.estimate / r.tv_bound);
  }
  bool pass = worst_excess <= 1e-9 && sigma_tv_err <= 1e-9;
  JValue j = envelope("lipschitz", cfg);
  j.set("max_estimate_minus_bound", JValue::num(worst_excess));
  j.set("sigma_tv_identity_error", JValue::num(sigma_tv_err));
  j.set("sigma_tv_exact", JValue::num(sigma_exact));
  j.set("pass", JValue::boolean(pass));
  art.csv = csv.str();
  art.json = j.dump();
  if (cfg.svg)
    art.svg =
        svg_line_chart({stau, ssig}, "Lipschitz estimate over variation bound");
  return pass ? exit_ok : exit_violation;
}

int run_doublecone(const ExperimentConfig& cfg, Artifacts& art) {
  if (cfg.n < 3) {
    std::cerr << "doublecone: needs dimension n >= 3\n";
    return exit_usage;
  }
  const int n = cfg.n;
  auto Bc = basis_for(n, std::min(cfg.band_limit, 16));
  const double r = 1.0 / std::sqrt(2.0);
  const double ring_bound = std::pow(2.0, -(n - 5) / 2.0) * kappa(n - 1);

  Csv csv({"eps", "pairing", "ring_bound", "mass_ok", "psi_max"});
  bool masses_ok = true;
  double psi_final = 0.0;
  SvgSeries sp{"log10 max positivity pairing", {}, {}};
  std::vector<double> eps_sorted = cfg.eps_grid;
  std::sort(eps_sorted.begin(), eps_sorted.end(), std::greater<double>());
  for (double eps : eps_sorted) {
    auto prof = [=](double t) { return even_bump(t, r, eps); };
    std::vector<double> cuts{-r - eps, -r + eps, r - eps, r + eps};
    double pairing = double_cone_S1_profile(n, prof, cuts);
    bool ok = pairing >= ring_bound - 1e-12;
    masses_ok = masses_ok && ok;
    double psi_max = 0.0;
    for (double a : cfg.alpha_grid)
      for (double b : cfg.beta_grid)
        psi_max = std::max(psi_max, weil_psi_profile(n, prof, a, b, cuts));
    psi_final = psi_max;
    csv.row({Csv::val(eps), Csv::val(pairing), Csv::val(ring_bound),
             ok ? "1" : "0", Csv::val(psi_max)});
    sp.x.push_back(std::log10(eps));
    sp.y.push_back(log10_floor(psi_max));
  }

  std::vector<ZonalMeasure> gens;
  for (double a : clustered_grid(12))
    for (double b : clustered_grid(12)) gens.push_back(weil_measure(Bc, a, b));
  std::vector<TestFunction> tests;
  for (unsigned s = 0; s < 30; ++s)
    tests.push_back(
        TestFunction::from_function(random_even_density(Bc, cfg.seed + 2100 + s)));
  for (double eps : {3e-2, 1e-2}) {
    tests.push_back(TestFunction::from_profile(
        [=](double t) { return even_bump(t, r, eps); },
        {-r - eps, -r + eps, r - eps, r + eps}));
  }
  ConeCertificate cert =
      cone_membership(S1_double_cone(Bc), gens, tests, cfg.tol_identity);

  JValue j = envelope("doublecone", cfg);
  j.set("ring_bound", JValue::num(ring_bound));
  j.set("masses_ok", JValue::boolean(masses_ok));
  j.set("psi_max_smallest_eps", JValue::num(psi_final));
  const char* status = cert.status == ConeStatus::member
                           ? "member"
                           : cert.status == ConeStatus::non_member
                                 ? "non_member"
                                 : "inconclusive";
  JValue c = JValue::object();
  c.set("status", JValue::str(status));
  c.set("target_pairing", JValue::num(cert.target_pairing));
  c.set("worst_generator_pairing", JValue::num(cert.worst_generator_pairing));
  c.set("residual", JValue::num(cert.residual));
  c.set("detail", JValue::str(cert.detail));
  j.set("certificate", std::move(c));
  bool pass = masses_ok && cert.status == ConeStatus::non_member;
  j.set("pass", JValue::boolean(pass));
  art.csv = csv.str();
  art.json = j.dump();
  if (cfg.svg)
    art.svg = svg_line_chart({sp}, "separating functional decay (log-log)");
  if (pass) return exit_ok;
  return cert.status == ConeStatus::inconclusive ? exit_inconclusive
                                                 : exit_violation;
}

int run_decompose(const ExperimentConfig& cfg, Artifacts& art) {
  if (cfg.n < 3) {
    std::cerr << "decompose: needs dimension n >= 3\n";
    return exit_usage;
  }
  auto B = basis_for(cfg.n, cfg.band_limit);
  std::vector<BodyRev> suite;
  JValue skipped = JValue::array();
  auto try_add = [&](const char* name, auto build) {
    try {
      suite.push_back(build());
    } catch (const std::exception&) {
      skipped.push(JValue::str(name));
    }
  };
  try_add("cone_w015", [&] {
    return make_body(mollified_cone_support(B, 0.15, 0.01), false);
  });
  try_add("cone_w020", [&] {
    return make_body(mollified_cone_support(B, 0.20, 0.01), false);
  });
  try_add("cone_w030", [&] {
    return make_body(mollified_cone_support(B, 0.30, 0.01), false);
  });
  try_add("near_segment_even", [&] {
    return make_body(
        sample_body(B, cfg.seed + 6, BodyClass::NearSegment).h.even_part(),
        false);
  });
  try_add("smooth_symmetric", [&] {
    return sample_body(B, cfg.seed + 10, BodyClass::SmoothSymmetric);
  });

  DecompositionReport rep =
      decomposition_experiment(B, cfg.eps_grid, suite, -cfg.tol_margin);

  Csv csv({"eps", "witness_found", "min_margin", "inconclusive_pairs",
           "best_k", "best_l", "best_margin", "best_refined"});
  JValue entries = JValue::array();
  SvgSeries sm{"most negative pair margin", {}, {}};
  SvgSeries sz{"zero line", {}, {}};
  const DecompositionEntry* deepest = nullptr;
  for (const auto& e : rep.entries) {
    csv.row({Csv::val(e.eps), e.witness_found ? "1" : "0",
             Csv::val(e.min_margin), Csv::num(e.inconclusive_pairs),
             e.witness_found ? Csv::num(e.best.k_index) : "-1",
             e.witness_found ? Csv::num(e.best.l_index) : "-1",
             Csv::val(e.witness_found ? e.best.margin : 0.0),
             Csv::val(e.witness_found ? e.best.refined : 0.0)});
    JValue r = JValue::object();
    r.set("eps", JValue::num(e.eps));
    r.set("witness_found", JValue::boolean(e.witness_found));
    r.set("min_margin", JValue::num(e.min_margin));
    r.set("inconclusive_pairs", JValue::integer(e.inconclusive_pairs));
    if (e.witness_found) {
      JValue w = JValue::object();
      w.set("k_index", JValue::integer(e.best.k_index));
      w.set("l_index", JValue::integer(e.best.l_index));
      w.set("margin", JValue::num(e.best.margin));
      w.set("refined_margin", JValue::num(e.best.refined));
      r.set("best", std::move(w));
      if (!deepest || e.best.margin < deepest->best.margin) deepest = &e;
    }
    entries.push(std::move(r));
    sm.x.push_back(std::log10(e.eps));
    sm.y.push_back(e.min_margin);
    sz.x.push_back(std::log10(e.eps));
    sz.y.push_back(0.0);
  }

  JValue j = envelope("decompose", cfg);
  j.set("suite_size", JValue::integer(static_cast<long long>(suite.size())));
  j.set("suite_skipped", std::move(skipped));
  j.set("eps_threshold", JValue::num(rep.eps_threshold));
  j.set("ball_ever_witness", JValue::boolean(rep.ball_ever_witness));
  j.set("entries", std::move(entries));
  if (deepest) {
    JValue w = JValue::object();
    w.set("eps", JValue::num(deepest->eps));
    w.set("margin", JValue::num(deepest->best.margin));
    w.set("refinement_margin", JValue::num(deepest->best.refined));
    w.set("body_k",
          serialize_support(suite[std::size_t(deepest->best.k_index)].h));
    w.set("body_l",
          serialize_support(suite[std::size_t(deepest->best.l_index)].h));
    j.set("witness", std::move(w));
  } else {
    j.set("witness", JValue::null());
  }
  bool any_witness = deepest != nullptr;
  bool pass = any_witness && !rep.ball_ever_witness;
  j.set("pass", JValue::boolean(pass));
  art.csv = csv.str();
  art.json = j.dump();
  if (cfg.svg)
    art.svg = svg_line_chart({sm, sz}, "pair margins vs kernel width");
  if (pass) return exit_ok;
  if (rep.ball_ever_witness) return exit_violation;
  int inconc = 0;
  for (const auto& e : rep.entries) inconc += e.inconclusive_pairs;
  return inconc > 0 ? exit_inconclusive : exit_violation;
}

}  // namespace

std::vector<std::string> experiment_names() {
  return {"integrals", "berg",       "firey",     "weil",     "capbound",
          "nonmonotone", "lipschitz", "doublecone", "decompose"};
}

int run_experiment(const std::string& command, const ExperimentConfig& cfg) {
  try {
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return exit_usage;
  }
  using Runner = int (*)(const ExperimentConfig&, Artifacts&);
  Runner fn = nullptr;
  if (command == "integrals")
    fn = run_integrals;
  else if (command == "berg")
    fn = run_berg;
  else if (command == "firey")
    fn = run_firey;
  else if (command == "weil")
    fn = run_weil;
  else if (command == "capbound")
    fn = run_capbound;
  else if (command == "nonmonotone")
    fn = run_nonmonotone;
  else if (command == "lipschitz")
    fn = run_lipschitz;
  else if (command == "doublecone")
    fn = run_doublecone;
  else if (command == "decompose")
    fn = run_decompose;
  if (!fn) {
    std::cerr << "unknown experiment '" << command << "'\n";
    return exit_usage;
  }
  Artifacts art;
  int code;
  try {
    code = fn(cfg, art);
  } catch (const std::exception& e) {
    std::cerr << command << ": " << e.what() << "\n";
    return exit_violation;
  }
  if (code == exit_usage) return code;
  try {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);
    auto write = [&](const char* ext, const std::string& content) {
      std::ofstream out(fs::path(cfg.out_dir) / (command + ext),
                        std::ios::binary);
      out << content;
      if (!out) throw std::runtime_error("write failed in " + cfg.out_dir);
    };
    write(".csv", art.csv);
    write(".json", art.json);
    if (cfg.svg && !art.svg.empty()) write(".svg", art.svg);
  } catch (const std::exception& e) {
    std::cerr << command << ": " << e.what() << "\n";
    return exit_usage;
  }
  return code;
}

}  // namespace zonal
