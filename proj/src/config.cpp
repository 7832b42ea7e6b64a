#include "zonal/config.hpp"

#include <cstdint>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "zonal/cones.hpp"

namespace zonal {

std::string format17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("config: bad number '" + s + "'");
  return v;
}

long parse_long(const std::string& s) {
  std::size_t pos = 0;
  long v = std::stol(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("config: bad integer '" + s + "'");
  return v;
}

std::vector<double> parse_grid(const std::string& s) {
  std::vector<double> g;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) g.push_back(parse_double(tok));
  return g;
}

std::string join_grid(const std::vector<double>& g) {
  std::string out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i) out += ' ';
    out += format17(g[i]);
  }
  return out;
}

}  // namespace

ExperimentConfig ExperimentConfig::defaults() {
  ExperimentConfig c;
  c.alpha_grid = clustered_grid(16);
  c.beta_grid = clustered_grid(16);
  c.eps_grid = {0.3, 0.1, 0.03, 0.01, 0.003};
  return c;
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  ExperimentConfig c;
  c.alpha_grid.clear();
  c.beta_grid.clear();
  c.eps_grid.clear();
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    if (s.front() == '[') {
      if (s.back() != ']')
        throw std::invalid_argument("config: unterminated section at line " +
                                    std::to_string(lineno));
      section = s.substr(1, s.size() - 2);
      continue;
    }
    std::size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected key = value at line " +
                                  std::to_string(lineno));
    std::string key = trim(s.substr(0, eq));
    std::string val = trim(s.substr(eq + 1));
    std::string qual = section + "." + key;
    if (qual == "core.n")
      c.n = int(parse_long(val));
    else if (qual == "core.band_limit")
      c.band_limit = int(parse_long(val));
    else if (qual == "core.seed")
      c.seed = unsigned(parse_long(val));
    else if (qual == "core.out_dir")
      c.out_dir = val;
    else if (qual == "core.svg")
      c.svg = parse_long(val) != 0;
    else if (qual == "grids.alpha")
      c.alpha_grid = parse_grid(val);
    else if (qual == "grids.beta")
      c.beta_grid = parse_grid(val);
    else if (qual == "grids.eps")
      c.eps_grid = parse_grid(val);
    else if (qual == "tolerances.identity")
      c.tol_identity = parse_double(val);
    else if (qual == "tolerances.margin")
      c.tol_margin = parse_double(val);
    else if (qual == "counts.bodies")
      c.bodies = int(parse_long(val));
    else if (qual == "counts.trials")
      c.trials = int(parse_long(val));
    else
      throw std::invalid_argument("config: unknown key '" + qual + "' at line " +
                                  std::to_string(lineno));
  }
  return c;
}

std::string ExperimentConfig::serialize() const {
  std::ostringstream o;
  o << "[core]\n";
  o << "n = " << n << "\n";
  o << "band_limit = " << band_limit << "\n";
  o << "seed = " << seed << "\n";
  o << "out_dir = " << out_dir << "\n";
  o << "svg = " << (svg ? 1 : 0) << "\n";
  o << "\n[grids]\n";
  o << "alpha = " << join_grid(alpha_grid) << "\n";
  o << "beta = " << join_grid(beta_grid) << "\n";
  o << "eps = " << join_grid(eps_grid) << "\n";
  o << "\n[tolerances]\n";
  o << "identity = " << format17(tol_identity) << "\n";
  o << "margin = " << format17(tol_margin) << "\n";
  o << "\n[counts]\n";
  o << "bodies = " << bodies << "\n";
  o << "trials = " << trials << "\n";
  return o.str();
}

void ExperimentConfig::validate() const {
  if (n < 2 || n > 16) throw std::invalid_argument("config: n outside [2,16]");
  if (band_limit < 8 || band_limit > 4096)
    throw std::invalid_argument("config: band_limit outside [8,4096]");
  if (!(tol_identity > 0.0) || !(tol_margin > 0.0))
    throw std::invalid_argument("config: tolerances must be positive");
  if (alpha_grid.empty() || beta_grid.empty() || eps_grid.empty())
    throw std::invalid_argument("config: grids must be nonempty");
  for (double a : alpha_grid)
    if (!(a > 0.0) || !(a < 1.0))
      throw std::invalid_argument("config: alpha grid values must lie in (0,1)");
  for (double b : beta_grid)
    if (!(b > 0.0) || !(b < 1.0))
      throw std::invalid_argument("config: beta grid values must lie in (0,1)");
  for (double e : eps_grid)
    if (!(e > 0.0) || !(e < 1.0))
      throw std::invalid_argument("config: eps grid values must lie in (0,1)");
  if (bodies < 1 || trials < 1)
    throw std::invalid_argument("config: counts must be positive");
  if (out_dir.empty()) throw std::invalid_argument("config: out_dir must be set");
}

std::string ExperimentConfig::hash() const {
  // where the artifacts land (and whether plots are drawn) does not change
  // the experiment, so it must not change the hash
  ExperimentConfig c = *this;
  c.out_dir = "-";
  c.svg = false;
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : c.serialize()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace zonal
