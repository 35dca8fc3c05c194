#include "polaron/io.hpp"

#include <fstream>
#include <set>

#include "polaron/error.hpp"

namespace polaron {

namespace {

const std::set<std::string> kModelKeys = {"N",      "eta",     "psi_minus", "psi_plus", "a_minus",
                                          "a_plus", "b_minus", "b_plus",    "theta"};
const std::set<std::string> kRunKeys = {"fourier_grid", "fd_step", "tol_identity", "seed",
                                        "samples", "debug_corrupt_r", "model"};

template <class T>
T get_number(const json& j, const char* key) {
  if (!j.is_number()) throw Error(ErrorCode::ConfigError, std::string(key) + " must be a number");
  return j.get<T>();
}

}  // namespace

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw Error(ErrorCode::ConfigError, "complex value must be [re, im], got " + j.dump());
}

json grassmann_to_json(const Grassmann& x) {
  json out = json::object();
  for (int m = 0; m < kMonomials; ++m)
    if (x[m] != cplx{}) out[std::string(monomial_name(m))] = complex_to_json(x[m]);
  return out;
}

Grassmann grassmann_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ConfigError, "Grassmann value must be an object");
  Grassmann x;
  for (const auto& [key, value] : j.items()) {
    const int m = monomial_from_name(key);
    if (m < 0) throw Error(ErrorCode::ConfigError, "unknown monomial '" + key + "'");
    x[m] = complex_from_json(value);
  }
  return x;
}

json matrix_to_json(const GradedMatrix& m) {
  const GradedSpace& s = m.space();
  json parity = json::array();
  for (int i = 0; i < s.dim(); ++i) parity.push_back(s.parity(i));
  json factors = json::array();
  for (const Parities& f : s.factors()) factors.push_back(std::vector<int>(f.begin(), f.end()));
  json entries = json::array();
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c) {
      const Grassmann v = m.at(r, c);
      if (v.norm() == 0.0) continue;
      entries.push_back({{"row", r}, {"col", c}, {"value", grassmann_to_json(v)}});
    }
  return {{"dim", m.dim()}, {"parity", parity}, {"factors", factors}, {"entries", entries}};
}

GradedMatrix matrix_from_json(const json& j) {
  try {
    std::vector<Parities> factors;
    for (const auto& f : j.at("factors")) factors.push_back(f.get<Parities>());
    GradedMatrix m{GradedSpace(std::move(factors))};
    if (j.at("dim").get<int>() != m.dim())
      throw Error(ErrorCode::DimMismatch, "dim does not match the factor list");
    for (int i = 0; i < m.dim(); ++i)
      if (j.at("parity").at(i).get<int>() != m.space().parity(i))
        throw Error(ErrorCode::DimMismatch, "parity header does not match the factor list");
    for (const auto& e : j.at("entries")) {
      const int r = e.at("row").get<int>(), c = e.at("col").get<int>();
      if (r < 0 || c < 0 || r >= m.dim() || c >= m.dim())
        throw Error(ErrorCode::DimMismatch, "entry index out of range");
      m.set(r, c, grassmann_from_json(e.at("value")));
    }
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("malformed matrix: ") + e.what());
  }
}

json params_to_json(const ModelParams& p) {
  json theta = json::array();
  for (cplx t : p.theta) theta.push_back(complex_to_json(t));
  return {{"N", p.N},
          {"eta", complex_to_json(p.eta)},
          {"psi_minus", complex_to_json(p.psi_minus)},
          {"psi_plus", complex_to_json(p.psi_plus)},
          {"a_minus", complex_to_json(p.a_minus)},
          {"a_plus", complex_to_json(p.a_plus)},
          {"b_minus", complex_to_json(p.b_minus)},
          {"b_plus", complex_to_json(p.b_plus)},
          {"theta", theta}};
}

ModelParams params_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ConfigError, "model config must be an object");
  ModelParams p;
  for (const auto& [key, value] : j.items()) {
    if (!kModelKeys.count(key)) throw Error(ErrorCode::ConfigError, "unknown model key '" + key + "'");
    if (key == "N") {
      if (!value.is_number_integer()) throw Error(ErrorCode::ConfigError, "N must be an integer");
      p.N = value.get<int>();
    } else if (key == "theta") {
      if (!value.is_array()) throw Error(ErrorCode::ConfigError, "theta must be an array");
      p.theta.clear();
      for (const auto& t : value) p.theta.push_back(complex_from_json(t));
    } else {
      const cplx z = complex_from_json(value);
      if (key == "eta") p.eta = z;
      else if (key == "psi_minus") p.psi_minus = z;
      else if (key == "psi_plus") p.psi_plus = z;
      else if (key == "a_minus") p.a_minus = z;
      else if (key == "a_plus") p.a_plus = z;
      else if (key == "b_minus") p.b_minus = z;
      else if (key == "b_plus") p.b_plus = z;
    }
  }
  p.validate();
  return p;
}

RunConfig run_config_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ConfigError, "config must be an object");
  RunConfig c;
  json model = j.contains("model") ? j.at("model") : json::object();
  for (const auto& [key, value] : j.items()) {
    if (kModelKeys.count(key)) {
      if (j.contains("model"))
        throw Error(ErrorCode::ConfigError, "model key '" + key + "' given outside \"model\"");
      model[key] = value;
    } else if (!kRunKeys.count(key)) {
      throw Error(ErrorCode::ConfigError, "unknown config key '" + key + "'");
    }
  }
  c.model = params_from_json(model);
  if (j.contains("fourier_grid")) c.fourier_grid = get_number<int>(j["fourier_grid"], "fourier_grid");
  if (j.contains("fd_step")) c.fd_step = get_number<double>(j["fd_step"], "fd_step");
  if (j.contains("tol_identity")) c.tol_identity = get_number<double>(j["tol_identity"], "tol_identity");
  if (j.contains("seed")) c.seed = get_number<std::uint64_t>(j["seed"], "seed");
  if (j.contains("samples")) c.samples = get_number<int>(j["samples"], "samples");
  if (j.contains("debug_corrupt_r")) {
    if (!j["debug_corrupt_r"].is_boolean())
      throw Error(ErrorCode::ConfigError, "debug_corrupt_r must be a boolean");
    c.model.corrupt_r = j["debug_corrupt_r"].get<bool>();
  }
  if (c.fourier_grid < 0) throw Error(ErrorCode::ConfigError, "fourier_grid must be non-negative");
  if (!(c.fd_step > 0.0)) throw Error(ErrorCode::ConfigError, "fd_step must be positive");
  if (c.tol_identity < 0.0) throw Error(ErrorCode::ConfigError, "tol_identity must be non-negative");
  if (c.samples < 1) throw Error(ErrorCode::ConfigError, "samples must be at least 1");
  return c;
}

json run_config_to_json(const RunConfig& c) {
  return {{"model", params_to_json(c.model)},
          {"fourier_grid", c.fourier_grid},
          {"fd_step", c.fd_step},
          {"tol_identity", c.tol_identity},
          {"seed", c.seed},
          {"samples", c.samples},
          {"debug_corrupt_r", c.model.corrupt_r}};
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot open config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ConfigError, std::string("config parse error: ") + e.what());
  }
  return run_config_from_json(j);
}

}  // namespace polaron
