#include "svpqa/config.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

namespace svpqa {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCategory::config, what); }

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream is(s);
  while (std::getline(is, part, sep)) parts.push_back(trim(part));
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

Real parse_real(const std::string& field, const std::string& text) {
  std::size_t used = 0;
  Real v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    fail("field '" + field + "': cannot parse number '" + text + "'");
  }
  if (used != text.size()) fail("field '" + field + "': trailing characters in '" + text + "'");
  return v;
}

int parse_int(const std::string& field, const std::string& text) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(text, &used);
  } catch (const std::exception&) {
    fail("field '" + field + "': cannot parse integer '" + text + "'");
  }
  if (used != text.size()) fail("field '" + field + "': trailing characters in '" + text + "'");
  return static_cast<int>(v);
}

std::vector<Real> parse_list(const std::string& field, const std::string& text, bool angles) {
  std::vector<Real> values;
  for (const std::string& item : split(text, ',')) {
    if (item.empty()) fail("field '" + field + "': empty list entry");
    if (angles) {
      try {
        values.push_back(parse_angle(item));
      } catch (const Error& e) {
        fail("field '" + field + "': " + e.what());
      }
    } else {
      values.push_back(parse_real(field, item));
    }
  }
  return values;
}

std::string exact(Real v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(const std::vector<Real>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? ", " : "") + exact(values[i]);
  return s;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{"mode",      "b1",         "b2",       "theta",    "gram",    "k",
                                          "bx_ratio",  "bx1",        "bx_range", "T",        "T_grid",  "gs_T_grid",
                                          "theta_grid", "steps",     "rel_tol",  "n_points", "levels",  "out"};
  return keys;
}

void require_increasing(const std::string& field, const std::vector<Real>& grid) {
  if (grid.empty()) fail("field '" + field + "': grid must be nonempty");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) fail("field '" + field + "': grid must be strictly increasing");
}

}  // namespace

KeyValues parse_key_values(std::string_view text) {
  KeyValues kv;
  std::istringstream is{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(is, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) fail("line " + std::to_string(number) + ": expected 'key = value'");
    const std::string key = trim(body.substr(0, eq));
    if (key.empty()) fail("line " + std::to_string(number) + ": empty key");
    kv[key] = trim(body.substr(eq + 1));
  }
  return kv;
}

KeyValues read_key_values_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_key_values(buffer.str());
}

Real parse_angle(std::string_view raw) {
  const std::string text = trim(raw);
  static const std::regex pi_form(R"(^([+-]?(?:\d+(?:\.\d*)?|\.\d+)?)\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d*)?))?$)");
  std::smatch m;
  if (std::regex_match(text, m, pi_form)) {
    Real factor = 1.0;
    const std::string coeff = m[1].str();
    if (coeff == "-") factor = -1.0;
    else if (!coeff.empty() && coeff != "+") factor = std::stod(coeff);
    const Real divisor = m[2].matched ? std::stod(m[2].str()) : 1.0;
    if (divisor == 0.0) fail("angle '" + text + "' divides by zero");
    return factor * M_PI / divisor;
  }
  return parse_real("angle", text);
}

ExperimentConfig parse_config(const KeyValues& file, const KeyValues& flags) {
  KeyValues kv = file;
  for (const auto& [key, value] : flags) kv[key] = value;
  for (const auto& [key, value] : kv)
    if (!known_keys().count(key)) fail("unknown field '" + key + "'");

  ExperimentConfig c;
  auto has = [&](const char* key) { return kv.count(key) > 0; };

  if (has("mode")) {
    for (const std::string& m : split(kv["mode"], ',')) {
      try {
        c.modes.push_back(parse_mode(m));
      } catch (const Error&) {
        fail("field 'mode': unknown mode '" + m + "' (expected gs, ex or sc)");
      }
    }
  }

  if (has("gram")) {
    const std::vector<std::string> rows = split(kv["gram"], ';');
    const int n = static_cast<int>(rows.size());
    MatrixXr g(n, n);
    for (int i = 0; i < n; ++i) {
      const std::vector<Real> row = parse_list("gram", rows[i], false);
      if (static_cast<int>(row.size()) != n) fail("field 'gram': matrix must be square (rows separated by ';')");
      for (int j = 0; j < n; ++j) g(i, j) = row[j];
    }
    try {
      (void)GramMatrix(g);
    } catch (const Error& e) {
      fail(std::string("field 'gram': ") + e.what());
    }
    c.gram = g;
  }
  if (has("b1")) c.b1 = parse_real("b1", kv["b1"]);
  if (has("b2")) c.b2 = parse_real("b2", kv["b2"]);
  if (has("theta")) {
    try {
      c.theta = parse_angle(kv["theta"]);
    } catch (const Error& e) {
      fail(std::string("field 'theta': ") + e.what());
    }
  }
  if (c.gram && c.theta) fail("field 'gram': give either gram or theta, not both");
  if (!c.gram) {
    if (!c.b1) fail("missing required field 'b1' (or give 'gram')");
    if (!c.b2) fail("missing required field 'b2' (or give 'gram')");
  }
  if (c.b1 && !(*c.b1 > 0.0)) fail("field 'b1': must be positive");
  if (c.b2 && !(*c.b2 > 0.0)) fail("field 'b2': must be positive");
  if (c.theta && !(*c.theta > 0.0 && *c.theta < M_PI)) fail("field 'theta': must lie in (0, pi)");

  if (has("k")) c.k = parse_int("k", kv["k"]);
  if (c.k < 1) fail("field 'k': must be >= 1");

  if (has("bx_ratio")) c.bx_ratio = parse_real("bx_ratio", kv["bx_ratio"]);
  if (!(c.bx_ratio > 0.0)) fail("field 'bx_ratio': must be positive");
  for (Mode m : c.modes)
    if (m != Mode::gs && !(c.bx_ratio < 1.0))
      fail("field 'bx_ratio': mode " + to_string(m) + " needs bx_ratio < 1 to break the driver degeneracy");
  if (has("bx1")) {
    c.bx1 = parse_real("bx1", kv["bx1"]);
    if (!(*c.bx1 > 0.0)) fail("field 'bx1': must be positive");
  }
  if (has("bx_range")) {
    const std::vector<Real> range = parse_list("bx_range", kv["bx_range"], false);
    if (range.size() != 2) fail("field 'bx_range': expected 'lo, hi'");
    c.bx_lo = range[0];
    c.bx_hi = range[1];
  }
  if (!(c.bx_lo > 0.0 && c.bx_hi > c.bx_lo)) fail("field 'bx_range': needs 0 < lo < hi");

  if (has("T")) c.T = parse_real("T", kv["T"]);
  if (!(c.T > 0.0)) fail("field 'T': must be positive");
  if (has("T_grid")) c.T_grid = parse_list("T_grid", kv["T_grid"], false);
  require_increasing("T_grid", c.T_grid);
  if (!(c.T_grid.front() > 0.0)) fail("field 'T_grid': values must be positive");
  if (has("gs_T_grid")) c.gs_T_grid = parse_list("gs_T_grid", kv["gs_T_grid"], false);
  require_increasing("gs_T_grid", c.gs_T_grid);
  if (!(c.gs_T_grid.front() > 0.0)) fail("field 'gs_T_grid': values must be positive");
  if (has("theta_grid")) {
    c.theta_grid = parse_list("theta_grid", kv["theta_grid"], true);
    require_increasing("theta_grid", c.theta_grid);
    if (!(c.theta_grid.front() > 0.0 && c.theta_grid.back() < M_PI))
      fail("field 'theta_grid': angles must lie in (0, pi)");
  }

  if (has("steps")) {
    if (kv["steps"] == "converge") {
      c.steps.kind = StepsPolicy::Kind::converge;
    } else {
      c.steps.kind = StepsPolicy::Kind::fixed;
      c.steps.steps = parse_int("steps", kv["steps"]);
      if (c.steps.steps < 1) fail("field 'steps': must be 'converge' or a positive integer");
    }
  }
  if (has("rel_tol")) c.steps.rel_tol = parse_real("rel_tol", kv["rel_tol"]);
  if (!(c.steps.rel_tol > 0.0)) fail("field 'rel_tol': must be positive");

  if (has("n_points")) c.n_points = parse_int("n_points", kv["n_points"]);
  if (c.n_points < 2) fail("field 'n_points': must be >= 2");
  if (has("levels")) c.levels = parse_int("levels", kv["levels"]);
  if (c.levels < 1) fail("field 'levels': must be >= 1");
  if (has("out")) c.out = kv["out"];
  if (c.out.empty()) fail("field 'out': must be nonempty");
  return c;
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream os;
  std::string modes;
  for (std::size_t i = 0; i < c.modes.size(); ++i) modes += (i ? ", " : "") + to_string(c.modes[i]);
  if (!modes.empty()) os << "mode = " << modes << "\n";
  if (c.gram) {
    os << "gram = ";
    for (Eigen::Index i = 0; i < c.gram->rows(); ++i) {
      if (i) os << "; ";
      for (Eigen::Index j = 0; j < c.gram->cols(); ++j) os << (j ? ", " : "") << exact((*c.gram)(i, j));
    }
    os << "\n";
  }
  if (c.b1) os << "b1 = " << exact(*c.b1) << "\n";
  if (c.b2) os << "b2 = " << exact(*c.b2) << "\n";
  if (c.theta) os << "theta = " << exact(*c.theta) << "\n";
  os << "k = " << c.k << "\n";
  os << "bx_ratio = " << exact(c.bx_ratio) << "\n";
  if (c.bx1) os << "bx1 = " << exact(*c.bx1) << "\n";
  os << "bx_range = " << exact(c.bx_lo) << ", " << exact(c.bx_hi) << "\n";
  os << "T = " << exact(c.T) << "\n";
  os << "T_grid = " << join(c.T_grid) << "\n";
  os << "gs_T_grid = " << join(c.gs_T_grid) << "\n";
  if (!c.theta_grid.empty()) os << "theta_grid = " << join(c.theta_grid) << "\n";
  if (c.steps.kind == StepsPolicy::Kind::converge) os << "steps = converge\n";
  else os << "steps = " << c.steps.steps << "\n";
  os << "rel_tol = " << exact(c.steps.rel_tol) << "\n";
  os << "n_points = " << c.n_points << "\n";
  os << "levels = " << c.levels << "\n";
  os << "out = " << c.out << "\n";
  return os.str();
}

std::string config_hash(const ExperimentConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : serialize_config(config)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunManifest RunManifest::create(const ExperimentConfig& config) {
  RunManifest m;
  m.config = config;
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  m.timestamp = buf;
  m.config_hash = svpqa::config_hash(config);
  return m;
}

std::string RunManifest::text() const {
  std::ostringstream os;
  os << "# svpqa run manifest\n";
  os << "# tool_version = " << tool_version << "\n";
  os << "# timestamp = " << timestamp << "\n";
  os << "# config_hash = " << config_hash << "\n";
  os << serialize_config(config);
  return os.str();
}

}  // namespace svpqa
