#include <string>

#include "doctest.h"
#include "polaron/cli.hpp"
#include "polaron/error.hpp"
#include "polaron/io.hpp"
#include "support.hpp"

using namespace polaron;

namespace {

ErrorCode config_code(const json& j) {
  try {
    run_config_from_json(j);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::RankDeficient;  // sentinel: accepted
}

RunConfig generic_config(int n) {
  RunConfig c;
  c.model = polaron::testing::generic(n);
  c.samples = 4;
  return c;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("formats") {
  CHECK(parse_format("json") == Format::Json);
  CHECK(parse_format("csv") == Format::Csv);
  CHECK(parse_format("text") == Format::Text);
  CHECK_THROWS_AS(parse_format("xml"), Error);
}

TEST_CASE("config parsing") {
  const json flat = {{"N", 3}, {"eta", {0.4, 0.1}}, {"a_plus", 0.2}, {"seed", 9}};
  const RunConfig c = run_config_from_json(flat);
  CHECK(c.model.N == 3);
  CHECK(c.model.eta == cplx(0.4, 0.1));
  CHECK(c.model.a_plus == cplx(0.2));
  CHECK(c.seed == 9);
  CHECK(!c.model.corrupt_r);

  const json nested = {{"model", {{"N", 2}, {"theta", {0.1, {-0.2, 0.0}}}}}, {"samples", 3}};
  const RunConfig d = run_config_from_json(nested);
  CHECK(d.model.theta.size() == 2);
  CHECK(d.model.theta[1] == cplx(-0.2));
  CHECK(d.samples == 3);

  const RunConfig e = run_config_from_json(run_config_to_json(d));
  CHECK(e.model.theta == d.model.theta);
  CHECK(e.samples == d.samples);
  CHECK(params_to_json(params_from_json(params_to_json(d.model))) == params_to_json(d.model));

  CHECK(config_code(json{{"N", 2}, {"bogus", 1}}) == ErrorCode::ConfigError);
  CHECK(config_code(json{{"model", {{"N", 2}}}, {"eta", 0.3}}) == ErrorCode::ConfigError);
  CHECK(config_code(json{{"N", 0}}) == ErrorCode::ConfigError);
  CHECK(config_code(json{{"N", 2}, {"theta", {0.1}}}) == ErrorCode::ConfigError);
  CHECK(config_code(json{{"eta", "x"}}) == ErrorCode::ConfigError);
  CHECK(config_code(json{{"eta", 0.0}}) == ErrorCode::SingularCoupling);
  CHECK(config_code(json{{"psi_minus", 0.0}}) == ErrorCode::SingularBoundary);
  CHECK(config_code(json{{"fd_step", -1.0}}) == ErrorCode::ConfigError);
  CHECK(config_code(json{{"samples", 0}}) == ErrorCode::ConfigError);
  CHECK(config_code(json{{"debug_corrupt_r", 1}}) == ErrorCode::ConfigError);
  CHECK(config_code(json::array()) == ErrorCode::ConfigError);
  CHECK(run_config_from_json(json{{"debug_corrupt_r", true}}).model.corrupt_r);
  CHECK_THROWS_AS(load_run_config("/nonexistent/config.json"), Error);
}

TEST_CASE("verify passes on generic parameters and is deterministic") {
  const RunConfig c = generic_config(2);
  const Report a = cmd_verify(c);
  CHECK(a.ok);
  CHECK(exit_code(a) == 0);
  CHECK(a.data["checks"].size() >= 20);
  const Report b = cmd_verify(c);
  CHECK(a.data.dump() == b.data.dump());
  for (Format f : {Format::Json, Format::Csv, Format::Text}) CHECK(!render(a, f).empty());
  CHECK(render(a, Format::Csv).rfind("name,residual,tolerance", 0) == 0);
  CHECK(json::parse(render(a, Format::Json))["checks"].size() == a.data["checks"].size());
}

TEST_CASE("verify fails with a corrupted R-matrix") {
  RunConfig c = generic_config(2);
  c.model.corrupt_r = true;
  const Report r = cmd_verify(c);
  CHECK(!r.ok);
  CHECK(exit_code(r) == 1);
  bool ybe_failed = false;
  for (const auto& check : r.data["checks"])
    if (check["name"].get<std::string>() == "yang_baxter")
      ybe_failed = !check["passed"].get<bool>();
  CHECK(ybe_failed);
}

TEST_CASE("spectrum of a single site has two levels") {
  RunConfig c = generic_config(1);
  const Report r = cmd_spectrum(c);
  CHECK(r.ok);
  CHECK(r.data["hamiltonian"]["levels"].size() == 2);
  CHECK(r.data["transfer"]["levels"].size() == 2);
  CHECK(!render(r, Format::Text).empty());
  CHECK(!render(r, Format::Csv).empty());
}

TEST_CASE("bae and compare succeed at N = 2") {
  const RunConfig c = generic_config(2);
  const Report b = cmd_bae(c);
  CHECK(b.ok);
  CHECK(b.data["levels"].size() == 4);
  const Report m = cmd_compare(c);
  CHECK(m.ok);
  CHECK(m.data["matches"].size() == 4);
  CHECK(!render(m, Format::Text).empty());
  CHECK(!render(b, Format::Csv).empty());
}

}  // TEST_SUITE
