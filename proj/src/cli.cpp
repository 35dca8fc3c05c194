#include "polaron/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "polaron/error.hpp"
#include "polaron/pipeline.hpp"
#include "polaron/spectra.hpp"
#include "polaron/transfer.hpp"
#include "polaron/verify.hpp"

namespace polaron {

namespace {

const char* kBaeIdentity =
    "a(mu_j) Q(mu_j-eta) + d(mu_j) Q(mu_j+eta) + sigma cbar sin(2mu_j) sin(2mu_j+2eta) "
    "Abar(mu_j) Abar(-mu_j-eta) = 0";

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

// Non-finite numbers are stored as null in JSON.
std::string sci(const json& j) { return j.is_number() ? sci(j.get<double>()) : std::string("n/a"); }

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::string cnum(cplx z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10f%+.10fi", z.real(), z.imag());
  return buf;
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

json dual_json(const Dual& d) {
  return {{"body", complex_to_json(d.v)}, {"g", complex_to_json(d.e)}};
}

json complex_list(const std::vector<cplx>& xs) {
  json a = json::array();
  for (cplx x : xs) a.push_back(complex_to_json(x));
  return a;
}

cplx as_cplx(const json& j) { return complex_from_json(j); }

double tolerance_or(const RunConfig& c, double fallback) {
  return c.tol_identity > 0.0 ? c.tol_identity : fallback;
}

CurveOptions curve_options(const RunConfig& c) {
  CurveOptions o;
  o.grid_points = c.fourier_grid;
  return o;
}

json level_json(const SolvedLevel& l) {
  json j = {{"sector", l.sector}, {"ok", l.ok}};
  if (!l.ok) {
    j["error"] = l.error;
    return j;
  }
  const BetheState& s = l.state;
  j["roots0"] = complex_list(s.roots0);
  j["roots1"] = complex_list(s.roots1());
  j["amplitude"] = complex_to_json(s.amplitude());
  j["q1_coefficients"] = complex_list(s.q1.coeffs());
  j["full_form"] = s.full_form();
  j["finite_roots"] = s.n_finite();
  if (l.energy) {
    j["E_body"] = complex_to_json(l.energy->v);
    j["E_g"] = complex_to_json(l.energy->e);
  } else {
    j["E_body"] = nullptr;
    j["E_g"] = nullptr;
  }
  j["residual_max"] = l.residual_max;
  j["residual_identity"] = kBaeIdentity;
  j["lambda_roundtrip"] = l.roundtrip;
  return j;
}

// ------------------------------------------------------------------ renderers

std::string text_verify(const Report& r) {
  std::ostringstream out;
  out << pad("check", 24) << pad("residual", 12) << pad("tol", 12) << pad("n", 5) << "status  identity\n";
  for (const auto& c : r.data["checks"]) {
    out << pad(c["name"].get<std::string>(), 24) << pad(sci(c["residual"].get<double>()), 12)
        << pad(sci(c["tolerance"].get<double>()), 12) << pad(std::to_string(c["samples"].get<int>()), 5)
        << pad(c["passed"].get<bool>() ? "PASS" : "FAIL", 8) << c["identity"].get<std::string>();
    if (c.contains("note")) out << "  [" << c["note"].get<std::string>() << "]";
    out << "\n";
  }
  out << (r.ok ? "all checks passed" : "some checks FAILED") << "\n";
  return out.str();
}

std::string csv_verify(const Report& r) {
  std::ostringstream out;
  out << "name,residual,tolerance,samples,passed,identity\n";
  for (const auto& c : r.data["checks"])
    out << c["name"].get<std::string>() << "," << sci(c["residual"].get<double>()) << ","
        << sci(c["tolerance"].get<double>()) << "," << c["samples"].get<int>() << ","
        << (c["passed"].get<bool>() ? 1 : 0) << ",\"" << c["identity"].get<std::string>() << "\"\n";
  return out.str();
}

std::string text_spectrum(const Report& r) {
  std::ostringstream out;
  out << "Hamiltonian levels (homogeneous chain, N = " << r.data["model"]["N"] << ")\n";
  out << pad("level", 7) << pad("sector", 8) << pad("E_body", 34) << "E_g\n";
  int k = 0;
  for (const auto& l : r.data["hamiltonian"]["levels"]) {
    out << pad(std::to_string(k++), 7) << pad(std::to_string(l["sector"].get<int>()), 8)
        << pad(cnum(as_cplx(l["E_body"])), 34) << cnum(as_cplx(l["E_g"])) << "\n";
  }
  out << "\nTransfer eigencurves (" << r.data["transfer"]["grid_points"] << " grid points, |k| <= "
      << r.data["transfer"]["max_mode"] << ")\n";
  out << pad("level", 7) << pad("sector", 8) << pad("Lambda(0.5)", 34) << "fit residual\n";
  k = 0;
  for (const auto& l : r.data["transfer"]["levels"])
    out << pad(std::to_string(k++), 7) << pad(std::to_string(l["sector"].get<int>()), 8)
        << pad(cnum(as_cplx(l["value_at_half"])), 34) << sci(l["fit_residual"].get<double>()) << "\n";
  return out.str();
}

std::string csv_spectrum(const Report& r) {
  std::ostringstream out;
  const int kmax = r.data["transfer"]["max_mode"].get<int>();
  out << "level,sector,monomial";
  for (int k = -kmax; k <= kmax; ++k) out << ",re_" << k << ",im_" << k;
  out << "\n";
  int level = 0;
  for (const auto& l : r.data["transfer"]["levels"]) {
    for (int m = 0; m < kMonomials; ++m) {
      const std::string name(monomial_name(m));
      out << level << "," << l["sector"].get<int>() << "," << name;
      for (const auto& c : l["fourier"]) {
        const cplx z = c.contains(name) ? as_cplx(c[name]) : cplx{};
        char buf[64];
        std::snprintf(buf, sizeof buf, ",%.15e,%.15e", z.real(), z.imag());
        out << buf;
      }
      out << "\n";
    }
    ++level;
  }
  return out.str();
}

std::string text_bae(const Report& r) {
  std::ostringstream out;
  out << pad("level", 7) << pad("sector", 8) << pad("roots", 7) << pad("residual", 12)
      << pad("roundtrip", 12) << pad("E_body", 34) << "E_g\n";
  int k = 0;
  for (const auto& l : r.data["levels"]) {
    out << pad(std::to_string(k++), 7) << pad(std::to_string(l["sector"].get<int>()), 8);
    if (!l["ok"].get<bool>()) {
      out << "FAILED: " << l["error"].get<std::string>() << "\n";
      continue;
    }
    out << pad(std::to_string(l["finite_roots"].get<int>()), 7)
        << pad(sci(l["residual_max"].get<double>()), 12)
        << pad(sci(l["lambda_roundtrip"].get<double>()), 12);
    if (l["E_body"].is_null())
      out << "(energy needs theta = 0)";
    else
      out << pad(cnum(as_cplx(l["E_body"])), 34) << cnum(as_cplx(l["E_g"]));
    out << "\n";
  }
  out << (r.ok ? "all levels solved" : "some levels FAILED") << "\n";
  return out.str();
}

std::string csv_bae(const Report& r) {
  std::ostringstream out;
  out << "level,sector,ok,finite_roots,residual_max,lambda_roundtrip,E_body_re,E_body_im,E_g_re,E_g_im\n";
  int k = 0;
  for (const auto& l : r.data["levels"]) {
    out << k++ << "," << l["sector"].get<int>() << "," << (l["ok"].get<bool>() ? 1 : 0);
    if (!l["ok"].get<bool>()) {
      out << ",,,,,,,\n";
      continue;
    }
    out << "," << l["finite_roots"].get<int>() << "," << sci(l["residual_max"].get<double>()) << ","
        << sci(l["lambda_roundtrip"].get<double>());
    for (const char* key : {"E_body", "E_g"}) {
      if (l[key].is_null()) {
        out << ",,";
      } else {
        const cplx z = as_cplx(l[key]);
        char buf[64];
        std::snprintf(buf, sizeof buf, ",%.12e,%.12e", z.real(), z.imag());
        out << buf;
      }
    }
    out << "\n";
  }
  return out.str();
}

std::string text_compare(const Report& r) {
  std::ostringstream out;
  out << pad("ed", 5) << pad("bae", 5) << pad("E_ed body", 34) << pad("E_ed g", 34)
      << pad("dE body", 12) << "dE g\n";
  for (const auto& m : r.data["matches"]) {
    out << pad(std::to_string(m["ed_index"].get<int>()), 5)
        << pad(std::to_string(m["bae_index"].get<int>()), 5)
        << pad(cnum(as_cplx(m["ed"]["body"])), 34) << pad(cnum(as_cplx(m["ed"]["g"])), 34)
        << pad(sci(m["delta_body"]), 12) << sci(m["delta_g"]) << "\n";
  }
  out << "max |dE body| = " << sci(r.data["max_delta_body"])
      << ", max |dE g| = " << sci(r.data["max_delta_g"]) << ", tolerance "
      << sci(r.data["tolerance"].get<double>()) << ": " << (r.ok ? "PASS" : "FAIL") << "\n";
  return out.str();
}

std::string csv_compare(const Report& r) {
  std::ostringstream out;
  out << "ed_index,bae_index,ed_body_re,ed_body_im,ed_g_re,ed_g_im,delta_body,delta_g\n";
  for (const auto& m : r.data["matches"]) {
    const cplx b = as_cplx(m["ed"]["body"]), g = as_cplx(m["ed"]["g"]);
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d,%d,%.12e,%.12e,%.12e,%.12e,", m["ed_index"].get<int>(),
                  m["bae_index"].get<int>(), b.real(), b.imag(), g.real(), g.imag());
    out << buf << sci(m["delta_body"]) << "," << sci(m["delta_g"]) << "\n";
  }
  return out.str();
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  if (name == "text") return Format::Text;
  throw Error(ErrorCode::ConfigError, "unknown format '" + name + "' (json, csv, text)");
}

Report cmd_verify(const RunConfig& config) {
  Report r;
  r.command = "verify";
  const std::vector<Check> checks = verify_suite(config);
  json list = json::array();
  bool ok = true;
  double worst = 0.0;
  for (const Check& c : checks) {
    json j = {{"name", c.name},           {"identity", c.identity}, {"residual", c.residual},
              {"tolerance", c.tolerance}, {"samples", c.samples},   {"passed", c.passed}};
    if (c.components) {
      json comp = json::object();
      for (int m = 0; m < kMonomials; ++m) comp[std::string(monomial_name(m))] = (*c.components)[m];
      j["components"] = comp;
    }
    if (!c.note.empty()) j["note"] = c.note;
    list.push_back(j);
    ok = ok && c.passed;
    worst = std::max(worst, c.residual);
  }
  r.data = {{"config", run_config_to_json(config)}, {"checks", list}, {"max_residual", worst},
            {"passed", ok}};
  r.ok = ok;
  return r;
}

Report cmd_spectrum(const RunConfig& config, const std::string& dump_operator) {
  Report r;
  r.command = "spectrum";
  const ModelParams& p = config.model;
  p.validate();
  if (p.N > 8) throw Error(ErrorCode::ConfigError, "spectrum supports N <= 8");

  const ModelParams hom = p.with_zero_theta();
  const GradedMatrix h = hamiltonian_explicit(hom);
  if (!dump_operator.empty()) {
    std::ofstream f(dump_operator);
    if (!f) throw Error(ErrorCode::ConfigError, "cannot write " + dump_operator);
    f << matrix_to_json(h).dump(1) << "\n";
  }
  GrassmannSpectrum spec = nilpotent_eigenvalues(h);
  sector_split(spec, u_z(p.N));
  json hl = json::array();
  const Grassmann g = p.g();
  for (std::size_t k = 0; k < spec.values.size(); ++k) {
    const GPart gp = g_part(spec.values[k], g);
    hl.push_back({{"sector", spec.sector[k]},
                  {"value", grassmann_to_json(spec.values[k])},
                  {"E_body", complex_to_json(spec.values[k].body())},
                  {"E_g", complex_to_json(gp.coefficient)},
                  {"soul_off_g", gp.off_g}});
  }

  const std::vector<LevelCurve> curves = transfer_eigencurves(p, curve_options(config));
  json tl = json::array();
  int max_mode = 0;
  for (const LevelCurve& c : curves) {
    max_mode = c.fourier.max_mode();
    json coeffs = json::array();
    for (int k = -max_mode; k <= max_mode; ++k) coeffs.push_back(grassmann_to_json(c.fourier.coefficient(k)));
    tl.push_back({{"sector", c.sector},
                  {"fourier", coeffs},
                  {"fit_residual", c.fourier.fit_residual()},
                  {"value_at_half", complex_to_json(c.fourier.evaluate(0.5).body())}});
  }
  r.data = {{"config", run_config_to_json(config)},
            {"model", params_to_json(p)},
            {"hamiltonian", {{"levels", hl}, {"theta_ignored", !p.homogeneous()}}},
            {"transfer",
             {{"levels", tl},
              {"max_mode", max_mode},
              {"grid_points", curves.empty() ? 0 : static_cast<int>(curves[0].grid.size())}}}};
  r.ok = true;
  return r;
}

Report cmd_bae(const RunConfig& config) {
  Report r;
  r.command = "bae";
  SolveOptions opt;
  opt.tol = tolerance_or(config, opt.tol);
  const std::vector<SolvedLevel> levels = solve_all(config.model, curve_options(config), opt);
  json list = json::array();
  bool ok = true;
  for (const SolvedLevel& l : levels) {
    list.push_back(level_json(l));
    ok = ok && l.ok && l.residual_max < opt.tol;
  }
  r.data = {{"config", run_config_to_json(config)}, {"levels", list}, {"tolerance", opt.tol},
            {"passed", ok}};
  r.ok = ok;
  return r;
}

Report cmd_compare(const RunConfig& config) {
  Report r;
  r.command = "compare";
  SolveOptions opt;
  const double tol = tolerance_or(config, 1e-8);
  const Comparison cmp = compare_energies(config.model, curve_options(config), opt);
  json matches = json::array();
  for (const LevelMatch& m : cmp.matches)
    matches.push_back({{"ed_index", m.ed_index},
                       {"bae_index", m.bae_index},
                       {"ed", dual_json(m.ed)},
                       {"bae", dual_json(m.bae)},
                       {"delta_body", finite_or_null(m.delta_body)},
                       {"delta_g", finite_or_null(m.delta_g)}});
  json levels = json::array();
  for (const SolvedLevel& l : cmp.levels) levels.push_back(level_json(l));
  r.ok = cmp.complete && cmp.max_delta_body < tol && cmp.max_delta_g < tol;
  r.data = {{"config", run_config_to_json(config)},
            {"compared_model", params_to_json(cmp.params)},
            {"matches", matches},
            {"levels", levels},
            {"complete", cmp.complete},
            {"max_delta_body", finite_or_null(cmp.max_delta_body)},
            {"max_delta_g", finite_or_null(cmp.max_delta_g)},
            {"tolerance", tol},
            {"passed", r.ok}};
  return r;
}

std::string render(const Report& report, Format format) {
  if (format == Format::Json) return report.data.dump(2) + "\n";
  const bool csv = format == Format::Csv;
  if (report.command == "verify") return csv ? csv_verify(report) : text_verify(report);
  if (report.command == "spectrum") return csv ? csv_spectrum(report) : text_spectrum(report);
  if (report.command == "bae") return csv ? csv_bae(report) : text_bae(report);
  if (report.command == "compare") return csv ? csv_compare(report) : text_compare(report);
  throw Error(ErrorCode::ConfigError, "unknown report kind " + report.command);
}

}  // namespace polaron
