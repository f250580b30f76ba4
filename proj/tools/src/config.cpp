// Copyright 2026 The kspec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "kspec/error.hpp"
#include "kspec_cli/cli.hpp"
#include "keyed_error.hpp"

namespace kspec::cli {
namespace {

using nlohmann::json;

// One JSON object plus the set of keys read from it, so that leftovers can be
// reported as unknown.
class Section {
 public:
  Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw KeyedError(ErrorCode::ParseError, path_, "expected an object");
  }

  std::string key(const std::string& name) const { return path_.empty() ? name : path_ + "." + name; }

  bool has(const std::string& name) {
    used_.insert(name);
    return node_.contains(name) && !node_.at(name).is_null();
  }

  const json& at(const std::string& name) {
    used_.insert(name);
    if (!node_.contains(name)) throw KeyedError(ErrorCode::ValidationError, key(name), "is required");
    return node_.at(name);
  }

  double number(const std::string& name) {
    const json& v = at(name);
    if (!v.is_number()) throw KeyedError(ErrorCode::ParseError, key(name), "expected a number");
    return v.get<double>();
  }
  double number(const std::string& name, double fallback) { return has(name) ? number(name) : fallback; }

  std::optional<double> optional_number(const std::string& name) {
    if (!has(name)) return std::nullopt;
    return number(name);
  }

  long long integer(const std::string& name, long long fallback) {
    if (!has(name)) return fallback;
    const json& v = at(name);
    if (!v.is_number_integer()) throw KeyedError(ErrorCode::ParseError, key(name), "expected an integer");
    return v.get<long long>();
  }

  bool boolean(const std::string& name, bool fallback) {
    if (!has(name)) return fallback;
    const json& v = at(name);
    if (!v.is_boolean()) throw KeyedError(ErrorCode::ParseError, key(name), "expected true or false");
    return v.get<bool>();
  }

  std::string text(const std::string& name, const std::string& fallback) {
    if (!has(name)) return fallback;
    const json& v = at(name);
    if (!v.is_string()) throw KeyedError(ErrorCode::ParseError, key(name), "expected a string");
    return v.get<std::string>();
  }

  /// Exponents may be written as numbers or as strings like "24/11" and "inf".
  std::string exponent(const std::string& name) {
    const json& v = at(name);
    try {
      if (v.is_string()) return Exponent::parse(v.get<std::string>()).to_string();
      if (v.is_number()) return Exponent::real(v.get<double>()).to_string();
    } catch (const Error& e) {
      throw KeyedError(ErrorCode::ParseError, key(name), e.what());
    }
    throw KeyedError(ErrorCode::ParseError, key(name), "expected a number or a string such as \"24/11\"");
  }

  std::optional<Section> child(const std::string& name) {
    if (!has(name)) return std::nullopt;
    return Section(at(name), key(name));
  }

  void finish() const {
    for (const auto& [k, v] : node_.items())
      if (!used_.count(k)) throw KeyedError(ErrorCode::UnknownKey, key(k), "is not a recognised key");
  }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string> used_;
};

void require(bool ok, const std::string& key, const std::string& rule) {
  if (!ok) throw KeyedError(ErrorCode::ValidationError, key, rule);
}

PressureLaw parse_pressure(Section& s) {
  const std::string family = s.text("family", "");
  try {
    if (family == "polytropic") {
      const double a = s.number("A");
      const double g = s.number("gamma_exp");
      s.finish();
      return PressureLaw::polytropic(a, g);
    }
    if (family == "tabulated") {
      const json& table = s.at("table");
      if (!table.is_array()) throw KeyedError(ErrorCode::ParseError, s.key("table"), "expected [[rho, P], ...]");
      std::vector<std::pair<double, double>> rows;
      for (const auto& row : table) {
        if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number())
          throw KeyedError(ErrorCode::ParseError, s.key("table"), "rows must be [rho, P] number pairs");
        rows.emplace_back(row[0].get<double>(), row[1].get<double>());
      }
      s.finish();
      return PressureLaw::tabulated(std::move(rows));
    }
  } catch (const KeyedError&) {
    throw;
  } catch (const Error& e) {
    throw KeyedError(ErrorCode::ValidationError, s.key("family"), e.what(), e.code());
  }
  throw KeyedError(ErrorCode::ValidationError, s.key("family"), "must be \"polytropic\" or \"tabulated\"");
}

Scheme parse_scheme(const std::string& v, const std::string& key) {
  if (v == "etd1") return Scheme::Etd1;
  if (v == "etd2rk") return Scheme::Etd2rk;
  throw KeyedError(ErrorCode::ValidationError, key, "must be \"etd1\" or \"etd2rk\"");
}

GForm parse_form(const std::string& v, const std::string& key) {
  if (v == "conservative") return GForm::Conservative;
  if (v == "divided") return GForm::Divided;
  throw KeyedError(ErrorCode::ValidationError, key, "must be \"conservative\" or \"divided\"");
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw KeyedError(ErrorCode::ParseError, "", std::string("invalid JSON: ") + e.what());
  }
  RunConfig c;
  Section top(root, "");

  {
    Section m(top.at("model"), "model");
    c.model.mu_star = m.number("mu_star");
    c.model.nu_star = m.number("nu_star");
    c.model.kappa_star = m.number("kappa_star");
    c.model.rho_star = m.number("rho_star");
    Section pressure(m.at("pressure"), "model.pressure");
    c.model.pressure = parse_pressure(pressure);
    m.finish();
  }
  {
    Section e(top.at("exponents"), "exponents");
    c.p = e.exponent("p");
    c.q1 = e.exponent("q1");
    c.q2 = e.exponent("q2");
    c.tau = e.number("tau");
    e.finish();
  }
  if (auto g = top.child("grid")) {
    c.grid.dim = static_cast<int>(g->integer("dim", c.grid.dim));
    c.grid.modes = static_cast<int>(g->integer("modes", c.grid.modes));
    c.grid.box_length = g->number("box_length", c.grid.box_length);
    g->finish();
  }
  require(c.grid.dim >= 1 && c.grid.dim <= 3, "grid.dim", "must be 1, 2 or 3");
  require(c.grid.modes >= 2 && c.grid.modes % 2 == 0, "grid.modes", "must be even and >= 2");
  require(c.grid.box_length > 0.0, "grid.box_length", "must be positive");

  if (auto s = top.child("integrator")) {
    auto& it = c.integrator;
    it.dt = s->number("dt", it.dt);
    it.t_end = s->number("t_end", it.t_end);
    it.scheme = parse_scheme(s->text("scheme", "etd2rk"), "integrator.scheme");
    it.form = parse_form(s->text("form", "conservative"), "integrator.form");
    it.linear_only = s->boolean("linear_only", it.linear_only);
    it.output_stride = static_cast<int>(s->integer("output_stride", it.output_stride));
    it.record_script_N = s->boolean("record_script_N", it.record_script_N);
    if (auto pc = s->child("picard")) {
      it.picard.enabled = pc->boolean("enabled", it.picard.enabled);
      it.picard.max_iters = static_cast<int>(pc->integer("max_iters", it.picard.max_iters));
      it.picard.contraction_tol = pc->number("contraction_tol", it.picard.contraction_tol);
      pc->finish();
    }
    s->finish();
  }
  try {
    c.integrator.validate();
  } catch (const Error& e) {
    throw KeyedError(ErrorCode::ValidationError, "integrator", e.what(), e.code());
  }

  if (auto s = top.child("initial")) {
    auto& in = c.initial;
    in.kind = s->text("kind", in.kind);
    in.width = s->optional_number("width");
    in.theta_amp = s->number("theta_amp", in.theta_amp);
    in.u_amp = s->number("u_amp", in.u_amp);
    in.data_norm = s->optional_number("data_norm");
    in.q = s->number("q", in.q);
    in.max_wavenumber = static_cast<int>(s->integer("max_wavenumber", in.max_wavenumber));
    s->finish();
  }
  require(c.initial.kind == "gaussian" || c.initial.kind == "critical" || c.initial.kind == "random" ||
              c.initial.kind == "zero",
          "initial.kind", "must be gaussian, critical, random or zero");
  require(!c.initial.width || *c.initial.width > 0.0, "initial.width", "must be positive");
  require(!c.initial.data_norm || *c.initial.data_norm >= 0.0, "initial.data_norm", "must be nonnegative");
  require(c.initial.q > 1.0, "initial.q", "must exceed 1");
  require(c.initial.max_wavenumber >= 1, "initial.max_wavenumber", "must be >= 1");

  if (auto s = top.child("eigen")) {
    c.eigen.xi_min = s->number("xi_min", c.eigen.xi_min);
    c.eigen.xi_max = s->number("xi_max", c.eigen.xi_max);
    c.eigen.points_per_decade = static_cast<int>(s->integer("points_per_decade", c.eigen.points_per_decade));
    s->finish();
  }
  require(c.eigen.xi_min > 0.0 && c.eigen.xi_max >= c.eigen.xi_min, "eigen.xi_min",
          "need 0 < xi_min <= xi_max");
  require(c.eigen.points_per_decade >= 1, "eigen.points_per_decade", "must be >= 1");

  if (auto s = top.child("decay")) {
    auto& d = c.decay;
    d.data = s->text("data", d.data);
    if (s->has("p")) d.p = s->exponent("p");
    if (s->has("q")) d.q = s->exponent("q");
    d.j = static_cast<int>(s->integer("j", d.j));
    d.t_min = s->number("t_min", d.t_min);
    d.t_max = s->number("t_max", d.t_max);
    d.samples = static_cast<int>(s->integer("samples", d.samples));
    d.high_frequency_epsilon = s->number("high_frequency_epsilon", d.high_frequency_epsilon);
    s->finish();
  }
  require(c.decay.data == "critical" || c.decay.data == "gaussian", "decay.data", "must be critical or gaussian");
  require(c.decay.j >= 0, "decay.j", "must be >= 0");
  require(c.decay.t_min > 0.0 && c.decay.t_max > c.decay.t_min, "decay.t_min", "need 0 < t_min < t_max");
  require(c.decay.samples >= 2, "decay.samples", "must be >= 2");
  require(c.decay.high_frequency_epsilon >= 0.0, "decay.high_frequency_epsilon", "must be >= 0");

  if (auto s = top.child("resolvent")) {
    auto& r = c.resolvent;
    r.epsilon_angle = s->number("epsilon_angle", r.epsilon_angle);
    r.lambda0 = s->number("lambda0", r.lambda0);
    r.lambda_max = s->number("lambda_max", r.lambda_max);
    r.angles = static_cast<int>(s->integer("angles", r.angles));
    r.radii_per_decade = static_cast<int>(s->integer("radii_per_decade", r.radii_per_decade));
    r.q = s->number("q", r.q);
    r.gamma0 = s->optional_number("gamma0");
    r.gamma1 = s->optional_number("gamma1");
    r.gamma2 = s->optional_number("gamma2");
    s->finish();
  }
  require(c.resolvent.epsilon_angle > 0.0 && c.resolvent.epsilon_angle < 1.5707963267948966,
          "resolvent.epsilon_angle", "must lie in (0, pi/2)");
  require(c.resolvent.lambda0 >= 1.0, "resolvent.lambda0", "must be >= 1");
  require(c.resolvent.lambda_max >= c.resolvent.lambda0, "resolvent.lambda_max", "must be >= lambda0");
  require(c.resolvent.angles >= 1 && c.resolvent.radii_per_decade >= 1, "resolvent.angles",
          "angles and radii_per_decade must be >= 1");
  require(c.resolvent.q >= 1.0, "resolvent.q", "must be >= 1");

  if (auto s = top.child("asymptotics")) {
    auto& a = c.asymptotics;
    a.low_from = s->number("low_from", a.low_from);
    a.low_to = s->number("low_to", a.low_to);
    a.high_from = s->number("high_from", a.high_from);
    a.high_to = s->number("high_to", a.high_to);
    a.points_per_decade = static_cast<int>(s->integer("points_per_decade", a.points_per_decade));
    s->finish();
  }
  require(c.asymptotics.points_per_decade >= 1, "asymptotics.points_per_decade", "must be >= 1");

  if (auto s = top.child("output")) {
    c.output.directory = s->text("directory", c.output.directory);
    c.output.checkpoint = s->boolean("checkpoint", c.output.checkpoint);
    s->finish();
  }
  if (top.has("seed")) {
    const json& v = top.at("seed");
    if (!v.is_number_unsigned()) throw KeyedError(ErrorCode::ParseError, "seed", "expected a nonnegative integer");
    c.seed = v.get<std::uint64_t>();
  }
  top.finish();
  return c;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw KeyedError(ErrorCode::IoError, "", "cannot open config file " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config_text(ss.str());
}

std::string emit_canonical(const RunConfig& c) {
  json root;
  json pressure;
  if (c.model.pressure.family() == PressureLaw::Family::Polytropic) {
    pressure = {{"family", "polytropic"}, {"A", c.model.pressure.coefficient()},
                {"gamma_exp", c.model.pressure.exponent()}};
  } else {
    json table = json::array();
    for (const auto& [r, p] : c.model.pressure.table()) table.push_back({r, p});
    pressure = {{"family", "tabulated"}, {"table", table}};
  }
  root["model"] = {{"mu_star", c.model.mu_star},
                   {"nu_star", c.model.nu_star},
                   {"kappa_star", c.model.kappa_star},
                   {"rho_star", c.model.rho_star},
                   {"pressure", pressure}};
  root["exponents"] = {{"p", c.p}, {"q1", c.q1}, {"q2", c.q2}, {"tau", c.tau}};
  root["grid"] = {{"dim", c.grid.dim}, {"modes", c.grid.modes}, {"box_length", c.grid.box_length}};
  const auto& it = c.integrator;
  root["integrator"] = {{"dt", it.dt},
                        {"t_end", it.t_end},
                        {"scheme", it.scheme == Scheme::Etd1 ? "etd1" : "etd2rk"},
                        {"form", it.form == GForm::Divided ? "divided" : "conservative"},
                        {"linear_only", it.linear_only},
                        {"output_stride", it.output_stride},
                        {"record_script_N", it.record_script_N},
                        {"picard",
                         {{"enabled", it.picard.enabled},
                          {"max_iters", it.picard.max_iters},
                          {"contraction_tol", it.picard.contraction_tol}}}};
  const auto& in = c.initial;
  root["initial"] = {{"kind", in.kind},         {"width", optional_json(in.width)},
                     {"theta_amp", in.theta_amp}, {"u_amp", in.u_amp},
                     {"data_norm", optional_json(in.data_norm)}, {"q", in.q},
                     {"max_wavenumber", in.max_wavenumber}};
  root["eigen"] = {{"xi_min", c.eigen.xi_min},
                   {"xi_max", c.eigen.xi_max},
                   {"points_per_decade", c.eigen.points_per_decade}};
  const auto& d = c.decay;
  root["decay"] = {{"data", d.data},   {"p", d.p},         {"q", d.q},
                   {"j", d.j},         {"t_min", d.t_min}, {"t_max", d.t_max},
                   {"samples", d.samples}, {"high_frequency_epsilon", d.high_frequency_epsilon}};
  const auto& r = c.resolvent;
  root["resolvent"] = {{"epsilon_angle", r.epsilon_angle},
                       {"lambda0", r.lambda0},
                       {"lambda_max", r.lambda_max},
                       {"angles", r.angles},
                       {"radii_per_decade", r.radii_per_decade},
                       {"q", r.q},
                       {"gamma0", optional_json(r.gamma0)},
                       {"gamma1", optional_json(r.gamma1)},
                       {"gamma2", optional_json(r.gamma2)}};
  const auto& a = c.asymptotics;
  root["asymptotics"] = {{"low_from", a.low_from},
                         {"low_to", a.low_to},
                         {"high_from", a.high_from},
                         {"high_to", a.high_to},
                         {"points_per_decade", a.points_per_decade}};
  root["output"] = {{"directory", c.output.directory}, {"checkpoint", c.output.checkpoint}};
  root["seed"] = c.seed;
  return root.dump(2) + "\n";
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ModelParams checked_params(const RunConfig& config) {
  try {
    return validate_params(config.model);
  } catch (const Error& e) {
    std::string key = "model";
    switch (e.code()) {
      case ErrorCode::ViolatesViscosity:
        key = config.model.mu_star > 0.0 ? "model.nu_star" : "model.mu_star";
        break;
      case ErrorCode::ViolatesCapillarity:
      case ErrorCode::DegenerateDiscriminant:
        key = "model.kappa_star";
        break;
      case ErrorCode::ViolatesPressure:
      case ErrorCode::InvalidPressureLaw:
        key = "model.pressure";
        break;
      default:
        key = "model.rho_star";
        for (const char* name : {"mu_star", "nu_star", "kappa_star"})
          if (std::string(e.what()).rfind(name, 0) == 0) key = std::string("model.") + name;
        break;
    }
    throw KeyedError(ErrorCode::ValidationError, key, e.what(), e.code());
  }
}

ExponentSet checked_exponents(const RunConfig& config) {
  try {
    return validate_exponents(Exponent::parse(config.p), Exponent::parse(config.q1), Exponent::parse(config.q2),
                              config.tau, config.grid.dim);
  } catch (const Error& e) {
    std::string key = "exponents";
    switch (e.code()) {
      case ErrorCode::DimensionTooSmall:
        key = "grid.dim";
        break;
      case ErrorCode::ExponentPRange:
      case ErrorCode::ExponentScaling:
        key = "exponents.p";
        break;
      case ErrorCode::ExponentQ1BelowDimension:
      case ErrorCode::ExponentHolderRelation:
      case ErrorCode::ExponentQ1HalfNotNorm:
        key = "exponents.q1";
        break;
      case ErrorCode::ExponentQ2AboveDimension:
        key = "exponents.q2";
        break;
      case ErrorCode::ExponentTauRange:
        key = "exponents.tau";
        break;
      default:
        break;
    }
    throw KeyedError(ErrorCode::ValidationError, key, e.what(), e.code());
  }
}

}  // namespace kspec::cli
