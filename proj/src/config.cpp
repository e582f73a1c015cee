#include "pkepler/config.hpp"

#include <cmath>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "pkepler/errors.hpp"

namespace pkepler {

namespace {

struct Entry {
  std::string value;
  int line = 0;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& key, int line,
                       const std::string& what) {
  throw config_error("config: key '" + key + "' (line " +
                     std::to_string(line) + "): " + what);
}

double parse_double(const std::string& key, const Entry& e) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(e.value, &pos);
    if (pos != e.value.size()) fail(key, e.line, "unparsable number");
    return v;
  } catch (const config_error&) {
    throw;
  } catch (...) {
    fail(key, e.line, "unparsable number");
  }
}

long parse_long(const std::string& key, const Entry& e) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(e.value, &pos);
    if (pos != e.value.size()) fail(key, e.line, "unparsable integer");
    return v;
  } catch (const config_error&) {
    throw;
  } catch (...) {
    fail(key, e.line, "unparsable integer");
  }
}

std::vector<double> parse_list(const std::string& key, const Entry& e) {
  std::vector<double> out;
  std::stringstream ss(e.value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) fail(key, e.line, "empty list element");
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (pos != item.size()) fail(key, e.line, "unparsable number in list");
    } catch (const config_error&) {
      throw;
    } catch (...) {
      fail(key, e.line, "unparsable number in list");
    }
  }
  return out;
}

SmoothFn4 make_smooth(const std::string& family,
                      const std::array<double, 5>& c, const std::string& key) {
  if (family == "zero") return smooth_constant(0.0);
  if (family == "constant") return smooth_constant(c[0]);
  if (family == "sum") return smooth_sum();
  if (family == "affine")
    return smooth_affine(c[0], {c[1], c[2], c[3], c[4]});
  throw config_error("config: key '" + key + "': unknown family '" + family +
                     "' (expected zero|constant|sum|affine)");
}

}  // namespace

OscillatorParams RunConfig::oscillator_params() const {
  OscillatorParams p;
  p.k = k;
  p.l = l;
  p.h0 = make_smooth(h0_family, h0_coeffs, "params.h0.family");
  p.g0 = make_smooth(g0_family, g0_coeffs, "params.g0.family");
  return p;
}

RunConfig parse_config(const std::string& text) {
  std::map<std::string, Entry> kv;
  {
    std::stringstream ss(text);
    std::string raw;
    int line = 0;
    while (std::getline(ss, raw)) {
      ++line;
      const auto hash = raw.find('#');
      if (hash != std::string::npos) raw = raw.substr(0, hash);
      raw = trim(raw);
      if (raw.empty()) continue;
      const auto eq = raw.find('=');
      if (eq == std::string::npos)
        throw config_error("config: line " + std::to_string(line) +
                           ": expected 'key = value'");
      const std::string key = trim(raw.substr(0, eq));
      const std::string value = trim(raw.substr(eq + 1));
      if (key.empty() || value.empty())
        throw config_error("config: line " + std::to_string(line) +
                           ": expected 'key = value'");
      if (kv.count(key))
        throw config_error("config: key '" + key + "' (line " +
                           std::to_string(line) + "): duplicate key");
      kv[key] = {value, line};
    }
  }

  RunConfig cfg;
  auto take = [&](const std::string& key) -> std::optional<Entry> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    Entry e = it->second;
    kv.erase(it);
    return e;
  };
  auto require = [&](const std::string& key) -> Entry {
    auto e = take(key);
    if (!e) throw config_error("config: missing required key '" + key + "'");
    return *e;
  };

  {
    const Entry e = require("mode");
    if (e.value == "simulate") cfg.mode = RunMode::simulate;
    else if (e.value == "closed-form") cfg.mode = RunMode::closed_form;
    else if (e.value == "compare") cfg.mode = RunMode::compare;
    else if (e.value == "conserve-report") cfg.mode = RunMode::conserve_report;
    else fail("mode", e.line, "expected simulate|closed-form|compare|conserve-report");
  }
  if (auto e = take("chart")) {
    if (e->value == "complex") cfg.chart = Chart::complex_chart;
    else if (e->value == "canonical") cfg.chart = Chart::canonical;
    else if (e->value == "kepler") cfg.chart = Chart::kepler;
    else fail("chart", e->line, "expected complex|canonical|kepler");
  }

  if (auto e = take("params.k")) cfg.k = static_cast<int>(parse_long("params.k", *e));
  if (auto e = take("params.l")) cfg.l = static_cast<int>(parse_long("params.l", *e));
  auto family = [&](const std::string& base, std::string& fam,
                    std::array<double, 5>& coeffs) {
    if (auto e = take(base + ".family")) fam = e->value;
    if (auto e = take(base + ".coeffs")) {
      const auto v = parse_list(base + ".coeffs", *e);
      if (v.size() > coeffs.size())
        fail(base + ".coeffs", e->line, "too many coefficients (max 5)");
      if ((fam == "affine" && v.size() != 5) ||
          (fam == "constant" && v.size() != 1))
        fail(base + ".coeffs", e->line,
             "coefficient count does not match family");
      for (std::size_t i = 0; i < v.size(); ++i) coeffs[i] = v[i];
    } else if (fam == "affine" || fam == "constant") {
      throw config_error("config: missing required key '" + base +
                         ".coeffs' for family '" + fam + "'");
    }
  };
  family("params.h0", cfg.h0_family, cfg.h0_coeffs);
  family("params.g0", cfg.g0_family, cfg.g0_coeffs);

  auto vec_key = [&](const std::string& key, std::size_t want)
      -> std::optional<std::vector<double>> {
    if (auto e = take(key)) {
      const auto v = parse_list(key, *e);
      if (v.size() != want)
        fail(key, e->line,
             "expected " + std::to_string(want) + " comma-separated values");
      return v;
    }
    return std::nullopt;
  };
  if (auto v = vec_key("initial.eta", 4)) {
    auto w = vec_key("initial.xi", 4);
    if (!w) throw config_error("config: missing required key 'initial.xi'");
    std::array<double, 8> a;
    for (int i = 0; i < 4; ++i) a[static_cast<std::size_t>(i)] = (*v)[static_cast<std::size_t>(i)];
    for (int i = 0; i < 4; ++i) a[static_cast<std::size_t>(4 + i)] = (*w)[static_cast<std::size_t>(i)];
    cfg.initial_complex = a;
  }
  if (auto v = vec_key("initial.actions", 4)) {
    auto w = vec_key("initial.angles", 4);
    if (!w) throw config_error("config: missing required key 'initial.angles'");
    std::array<double, 8> a;
    for (int i = 0; i < 4; ++i) a[static_cast<std::size_t>(i)] = (*v)[static_cast<std::size_t>(i)];
    for (int i = 0; i < 4; ++i) a[static_cast<std::size_t>(4 + i)] = (*w)[static_cast<std::size_t>(i)];
    cfg.initial_canonical = a;
  }
  if (auto v = vec_key("initial.x", 3))
    cfg.initial_x = std::array<double, 3>{(*v)[0], (*v)[1], (*v)[2]};
  if (auto v = vec_key("initial.y", 3))
    cfg.initial_y = std::array<double, 3>{(*v)[0], (*v)[1], (*v)[2]};

  {
    ExampleParams ex;
    bool any = false;
    if (auto e = take("example.I0")) { ex.I0 = parse_double("example.I0", *e); any = true; }
    if (auto e = take("example.G0")) { ex.G0 = parse_double("example.G0", *e); any = true; }
    if (auto e = take("example.Hval")) { ex.Hval = parse_double("example.Hval", *e); any = true; }
    if (auto e = take("example.l")) {
      ex.l = static_cast<int>(parse_long("example.l", *e));
      if (ex.l != 1 && ex.l != -1) fail("example.l", e->line, "expected 1 or -1");
      any = true;
    }
    if (auto e = take("example.delta1")) { ex.Delta1 = parse_double("example.delta1", *e); any = true; }
    if (auto e = take("example.delta2")) { ex.Delta2 = parse_double("example.delta2", *e); any = true; }
    if (auto e = take("example.phi0")) { ex.phi0_0 = parse_double("example.phi0", *e); any = true; }
    if (any) cfg.example = ex;
  }

  {
    const Entry e = require("t_end");
    cfg.t_end = parse_double("t_end", e);
    if (!(cfg.t_end > 0)) fail("t_end", e.line, "requires t_end > 0");
  }
  if (auto e = take("samples")) {
    cfg.samples = static_cast<int>(parse_long("samples", *e));
    if (cfg.samples < 2) fail("samples", e->line, "requires samples >= 2");
  }
  if (auto e = take("rel_tol")) {
    cfg.rel_tol = parse_double("rel_tol", *e);
    if (!(cfg.rel_tol > 0)) fail("rel_tol", e->line, "requires rel_tol > 0");
  }
  if (auto e = take("abs_tol")) {
    cfg.abs_tol = parse_double("abs_tol", *e);
    if (!(cfg.abs_tol > 0)) fail("abs_tol", e->line, "requires abs_tol > 0");
  }
  if (auto e = take("seed")) cfg.seed = parse_long("seed", *e);
  if (auto e = take("output")) cfg.output_path = e->value;

  if (!kv.empty()) {
    const auto& [key, e] = *kv.begin();
    fail(key, e.line, "unknown key");
  }

  // Cross-field invariants.
  if (cfg.mode == RunMode::simulate || cfg.mode == RunMode::conserve_report) {
    if (cfg.k == 0 && cfg.l == 0)
      throw config_error("config: key 'params.k': (k, l) != (0, 0) required");
    switch (cfg.chart) {
      case Chart::complex_chart:
        if (!cfg.initial_complex)
          throw config_error(
              "config: missing required key 'initial.eta' for the complex "
              "chart");
        break;
      case Chart::canonical:
        if (!cfg.initial_canonical)
          throw config_error(
              "config: missing required key 'initial.actions' for the "
              "canonical chart");
        break;
      case Chart::kepler: {
        if (!cfg.initial_x || !cfg.initial_y)
          throw config_error(
              "config: missing required key 'initial.x' for the kepler chart");
        const auto& x = *cfg.initial_x;
        if (std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) <= 0)
          throw config_error(
              "config: key 'initial.x': requires ||x|| > 0");
        break;
      }
    }
  } else if (!cfg.example) {
    throw config_error(
        "config: closed-form and compare modes require example.* keys");
  }
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace pkepler
