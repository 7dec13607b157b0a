#include "lofo/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "lofo/errors.hpp"

namespace lofo {
namespace {

// Numbers that may be infinite travel as null.
Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

double get_number(const Json& j, const char* key) {
  if (!j.contains(key)) throw PreconditionError(std::string("missing field '") + key + "'");
  const Json& v = j.at(key);
  if (v.is_null()) return std::numeric_limits<double>::infinity();
  if (!v.is_number()) throw PreconditionError(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

std::vector<double> get_numbers(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw PreconditionError(std::string("field '") + key + "' must be an array of numbers");
  }
  std::vector<double> out;
  for (const Json& v : j.at(key)) {
    if (!v.is_number()) throw PreconditionError(std::string("field '") + key + "' must hold numbers only");
    out.push_back(v.get<double>());
  }
  return out;
}

void dump(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // std::map: keys sorted
        if (!first) out += ',';
        first = false;
        out += Json(it.key()).dump();
        out += ':';
        dump(it.value(), out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        dump(j[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) {
        out += "null";
      } else {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        out += buf;
        // Keep floats recognizable as floats on re-parse.
        if (std::string_view(buf).find_first_of(".eEn") == std::string_view::npos) out += ".0";
      }
      break;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

Method parse_method(const std::string& name) {
  for (Method m : {Method::exact, Method::closed_form, Method::quadrature, Method::monte_carlo}) {
    if (name == to_string(m)) return m;
  }
  throw PreconditionError("unknown method '" + name + "'");
}

AnyDist dist_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
    throw PreconditionError("distribution must be an object with a string field 'type'");
  }
  const std::string type = j.at("type").get<std::string>();
  if (type == "finite") return FiniteDist(get_numbers(j, "atoms"), get_numbers(j, "masses"));
  if (type == "gaussian") return AnalyticDist::gaussian(get_number(j, "sigma"));
  if (type == "stable") return AnalyticDist::stable(get_number(j, "alpha"), get_number(j, "scale"));
  throw PreconditionError("unknown distribution type '" + type + "'");
}

Json to_json(const AnyDist& d) {
  if (const auto* f = std::get_if<FiniteDist>(&d)) {
    return {{"type", "finite"},
            {"atoms", std::vector<double>(f->atoms().begin(), f->atoms().end())},
            {"masses", std::vector<double>(f->masses().begin(), f->masses().end())}};
  }
  const auto& a = std::get<AnalyticDist>(d);
  if (const auto* g = std::get_if<Gaussian>(&a.kind())) return {{"type", "gaussian"}, {"sigma", g->sigma}};
  if (const auto* s = std::get_if<SymmetricStable>(&a.kind())) {
    return {{"type", "stable"}, {"alpha", s->alpha}, {"scale", s->scale}};
  }
  throw PreconditionError("a law given by a user characteristic function has no JSON form");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read error on '" + path + "'");
  return buf.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("write error on '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move output into '" + path + "'");
  }
}

AnyDist read_dist(const std::string& path) {
  const std::string text = read_file(path);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw PreconditionError("'" + path + "' is not valid JSON: " + e.what());
  }
  return dist_from_json(j);
}

WeightVector parse_weights(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw PreconditionError(std::string("weights are not valid JSON: ") + e.what());
    }
    std::vector<double> coords;
    for (const Json& v : j) {
      if (!v.is_number()) throw PreconditionError("weight arrays must hold numbers only");
      coords.push_back(v.get<double>());
    }
    return WeightVector(std::move(coords));
  }
  std::vector<double> coords;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    const std::string token = line.substr(b, e - b + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) {
      throw PreconditionError("weights line " + std::to_string(lineno) + ": '" + token + "' is not a number");
    }
    coords.push_back(v);
  }
  return WeightVector(std::move(coords));
}

WeightVector read_weights(const std::string& path) { return parse_weights(read_file(path)); }

std::string canonical_dump(const Json& j) {
  std::string out;
  dump(j, out);
  return out;
}

// ---------------------------------------------------------------------------

Json to_json(const QEstimate& q) {
  return {{"value", q.value},         {"method", to_string(q.method)}, {"error_radius", q.error_radius},
          {"lambda", q.lambda},       {"window_left", q.window_left},  {"samples", q.samples},
          {"seed", q.seed}};
}

QEstimate q_estimate_from_json(const Json& j) {
  QEstimate q;
  q.value = get_number(j, "value");
  q.method = parse_method(j.at("method").get<std::string>());
  q.error_radius = get_number(j, "error_radius");
  q.lambda = get_number(j, "lambda");
  q.window_left = get_number(j, "window_left");
  q.samples = j.at("samples").get<std::size_t>();
  q.seed = j.at("seed").get<std::uint64_t>();
  return q;
}

Json to_json(const LcdResult& r) {
  return {{"value", r.value},
          {"error_radius", r.error_radius},
          {"witness_t", r.witness_t},
          {"L", r.L},
          {"variant", to_string(r.variant)},
          {"scan_start", r.scan_start},
          {"horizon", number(r.horizon)},
          {"marginal", r.marginal},
          {"evaluations", r.evaluations}};
}

LcdResult lcd_result_from_json(const Json& j) {
  LcdResult r;
  r.value = get_number(j, "value");
  r.error_radius = get_number(j, "error_radius");
  r.witness_t = get_number(j, "witness_t");
  r.L = get_number(j, "L");
  r.variant = parse_variant(j.at("variant").get<std::string>());
  r.scan_start = get_number(j, "scan_start");
  r.horizon = get_number(j, "horizon");
  r.marginal = j.at("marginal").get<bool>();
  r.evaluations = j.at("evaluations").get<std::size_t>();
  return r;
}

Json to_json(const RootSolution& r) {
  return {{"tau0", r.tau0},           {"eps0", r.eps0}, {"residual", r.residual},
          {"iterations", r.iterations}, {"L", r.L},     {"backend", to_string(r.backend)}};
}

RootSolution root_solution_from_json(const Json& j) {
  RootSolution r;
  r.tau0 = get_number(j, "tau0");
  r.eps0 = get_number(j, "eps0");
  r.residual = get_number(j, "residual");
  r.iterations = j.at("iterations").get<std::size_t>();
  r.L = get_number(j, "L");
  r.backend = parse_method(j.at("backend").get<std::string>());
  return r;
}

Json to_json(const BoundShape& s) {
  Json params = Json::object();
  for (const auto& [k, v] : s.params) params[k] = number(v);
  return {{"id", to_string(s.id)}, {"params", params}, {"value", s.value}};
}

BoundShape bound_shape_from_json(const Json& j) {
  BoundShape s;
  s.id = parse_shape(j.at("id").get<std::string>());
  for (auto it = j.at("params").begin(); it != j.at("params").end(); ++it) {
    s.params[it.key()] = it.value().is_null() ? std::numeric_limits<double>::infinity() : it.value().get<double>();
  }
  s.value = get_number(j, "value");
  return s;
}

Json to_json(const CalibrationReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"instance", row.instance},
                    {"eps", row.eps},
                    {"q", row.q},
                    {"shape", row.shape},
                    {"ratio", row.ratio},
                    {"included", row.included},
                    {"branch", row.branch},
                    {"condition", row.condition}});
  }
  return {{"kind", "calibration"}, {"bound", r.bound},         {"family", r.family},
          {"L", r.L},              {"rows", rows},             {"included", r.included},
          {"excluded", r.excluded}, {"ratio_sup", r.ratio_sup}, {"ratio_inf", r.ratio_inf},
          {"fixture", r.fixture},  {"pass", r.pass}};
}

CalibrationReport calibration_report_from_json(const Json& j) {
  if (j.value("kind", "") != "calibration") throw PreconditionError("not a calibration report");
  CalibrationReport r;
  r.bound = j.at("bound").get<std::string>();
  r.family = j.at("family").get<std::string>();
  r.L = get_number(j, "L");
  for (const Json& row : j.at("rows")) {
    CalibrationRow c;
    c.instance = row.at("instance").get<std::string>();
    c.eps = get_number(row, "eps");
    c.q = get_number(row, "q");
    c.shape = get_number(row, "shape");
    c.ratio = get_number(row, "ratio");
    c.included = row.at("included").get<bool>();
    c.branch = row.at("branch").get<std::string>();
    c.condition = row.at("condition").get<std::string>();
    r.rows.push_back(std::move(c));
  }
  r.included = j.at("included").get<std::size_t>();
  r.excluded = j.at("excluded").get<std::size_t>();
  r.ratio_sup = get_number(j, "ratio_sup");
  r.ratio_inf = get_number(j, "ratio_inf");
  r.fixture = get_number(j, "fixture");
  r.pass = j.at("pass").get<bool>();
  return r;
}

Json to_json(const LowerBoundReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"s", row.s},
                    {"p", row.p},
                    {"eps", row.eps},
                    {"q", row.q},
                    {"min_form", row.min_form},
                    {"ratio", row.ratio}});
  }
  Json chain = Json::array();
  for (const auto& c : r.chain) {
    chain.push_back({{"s", c.s},
                     {"p", c.p},
                     {"chebyshev_mass", c.chebyshev_mass},
                     {"chebyshev_ok", c.chebyshev_ok},
                     {"wide_window_ok", c.wide_window_ok},
                     {"linear_ok", c.linear_ok},
                     {"atom_ok", c.atom_ok}});
  }
  return {{"kind", "lower_binomial"}, {"rows", rows},   {"chain", chain},
          {"ratio_inf", r.ratio_inf}, {"c_low", r.c_low}, {"pass", r.pass}};
}

LowerBoundReport lower_bound_report_from_json(const Json& j) {
  if (j.value("kind", "") != "lower_binomial") throw PreconditionError("not a lower-bound report");
  LowerBoundReport r;
  for (const Json& row : j.at("rows")) {
    r.rows.push_back({row.at("s").get<std::size_t>(), get_number(row, "p"), get_number(row, "eps"),
                      get_number(row, "q"), get_number(row, "min_form"), get_number(row, "ratio")});
  }
  for (const Json& c : j.at("chain")) {
    LowerBoundChain x;
    x.s = c.at("s").get<std::size_t>();
    x.p = get_number(c, "p");
    x.chebyshev_mass = get_number(c, "chebyshev_mass");
    x.chebyshev_ok = c.at("chebyshev_ok").get<bool>();
    x.wide_window_ok = c.at("wide_window_ok").get<bool>();
    x.linear_ok = c.at("linear_ok").get<bool>();
    x.atom_ok = c.at("atom_ok").get<bool>();
    r.chain.push_back(x);
  }
  r.ratio_inf = get_number(j, "ratio_inf");
  r.c_low = get_number(j, "c_low");
  r.pass = j.at("pass").get<bool>();
  return r;
}

Json to_json(const ImprovementReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"instance", row.instance},
                    {"M1", row.m1},
                    {"L", row.L},
                    {"D", row.D},
                    {"lcd_shape", row.lcd_shape},
                    {"vershynin_shape", row.vershynin_shape},
                    {"ratio", row.ratio},
                    {"hypothesis", row.hypothesis}});
  }
  return {{"kind", "improvement"}, {"L", r.L}, {"rows", rows}};
}

ImprovementReport improvement_report_from_json(const Json& j) {
  if (j.value("kind", "") != "improvement") throw PreconditionError("not an improvement report");
  ImprovementReport r;
  r.L = get_number(j, "L");
  for (const Json& row : j.at("rows")) {
    ImprovementRow x;
    x.instance = row.at("instance").get<std::string>();
    x.m1 = get_number(row, "M1");
    x.L = get_number(row, "L");
    x.D = get_number(row, "D");
    x.lcd_shape = get_number(row, "lcd_shape");
    x.vershynin_shape = get_number(row, "vershynin_shape");
    x.ratio = get_number(row, "ratio");
    x.hypothesis = row.at("hypothesis").get<bool>();
    r.rows.push_back(std::move(x));
  }
  return r;
}

}  // namespace lofo
