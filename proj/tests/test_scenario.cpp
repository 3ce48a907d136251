#include <doctest.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <string>

#include <json.hpp>

#include "vdw/scenario.hpp"

using namespace vdw;
using namespace vdw::scenario;

namespace {

std::string render(const Table &t, const ScenarioConfig &cfg) {
  std::ostringstream os;
  write(os, t, cfg);
  return os.str();
}

ScenarioConfig small_half_space() {
  auto cfg = parse_config(R"({"geometry":{"heights":[0.3]},"sweep":{"from":0.1,"to":1.0,"points":2}})");
  return cfg;
}

std::string message_of(const std::string &json_text) {
  try {
    check(parse_config(json_text));
  } catch (const ConfigError &e) {
    return e.what();
  }
  return "";
}

} // namespace

TEST_CASE("defaults") {
  const auto c = default_config();
  CHECK(c.medium == MediumChoice::dielectric);
  CHECK(c.eps.omega_p == 3.0);
  CHECK(c.eps.omega_t == 1.0);
  CHECK(c.eps.gamma == 0.001);
  CHECK(c.heights == std::vector<double>{0.01, 0.2, 1.0});
  CHECK(c.sweep.log);
  CHECK(c.format == Format::csv);
  CHECK_NOTHROW(check(c));
}

TEST_CASE("partial configuration keeps the remaining defaults") {
  const auto c = parse_config(R"({"rel_tol":1e-5,"medium":{"kind":"magnetic"},"sweep":{"scale":"linear"}})");
  CHECK(c.rel_tol == 1e-5);
  CHECK(c.medium == MediumChoice::magnetic);
  CHECK_FALSE(c.sweep.log);
  CHECK(c.sweep.points == 25);
  CHECK(make_medium(c).has_magnetic_response());
  CHECK_FALSE(make_medium(c).has_electric_response());
  CHECK(make_medium(parse_config(R"({"medium":{"kind":"conducting"}})")).is_perfect());
  CHECK(make_medium(parse_config(R"({"medium":{"kind":"vacuum"}})")).is_vacuum());
}

TEST_CASE("configuration errors name the offending field") {
  CHECK(message_of(R"({"bogus":1})").find("bogus") != std::string::npos);
  CHECK(message_of(R"({"sweep":{"step":2}})").find("sweep.step") != std::string::npos);
  CHECK(message_of(R"({"medium":{"kind":"plasma"}})").find("medium.kind") != std::string::npos);
  CHECK(message_of(R"({"sweep":{"points":"many"}})").find("sweep.points") != std::string::npos);
  CHECK(message_of(R"({"sweep":{"points":0}})").find("sweep.points") != std::string::npos);
  CHECK(message_of(R"({"sweep":{"from":2,"to":1}})").find("sweep") != std::string::npos);
  CHECK(message_of(R"({"rel_tol":2})").find("rel_tol") != std::string::npos);
  CHECK(message_of(R"({"geometry":{"heights":[]}})").find("geometry.heights") != std::string::npos);
  CHECK(message_of(R"({"geometry":{"heights":[-1]}})").find("geometry.heights") != std::string::npos);
  CHECK(message_of(R"({"atoms":{"a":{"omega":-1}}})").find("atoms.a") != std::string::npos);
  CHECK(message_of(R"({"medium":{"eps":{"omega_t":0}}})").find("medium.eps") != std::string::npos);
  CHECK(!message_of("{not json").empty());
  CHECK(message_of(R"({"rel_tol":1e-4})").empty());
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("effective configuration round-trips") {
  auto c = parse_config(R"({"medium":{"kind":"magnetodielectric","mu":{"omega_p":2.5}},
                            "geometry":{"family":"general","x_B":0.4,"z_B":0.3},
                            "sweep":{"points":7,"scale":"linear"},"threads":2,"forces":true,
                            "output":{"format":"json"}})");
  const std::string once = effective_config(c);
  const auto again = parse_config(once);
  CHECK(effective_config(again) == once);
  CHECK(again.mu.omega_p == 2.5);
  CHECK(again.family == Family::general);
  CHECK(again.format == Format::json);
  CHECK(again.forces);
  CHECK(parse_config(effective_config(c, true)).sweep.points == 7);
}

TEST_CASE("sweep points") {
  const auto lg = sweep_points({1.0, 100.0, 3, true});
  REQUIRE(lg.size() == 3);
  CHECK(lg[0] == 1.0);
  CHECK(lg[1] == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(lg[2] == 100.0);
  const auto ln = sweep_points({1.0, 100.0, 3, false});
  CHECK(ln[1] == doctest::Approx(50.5));
  CHECK(ln[2] == 100.0);
  CHECK(sweep_points({0.5, 0.5, 1, true}) == std::vector<double>{0.5});
}

TEST_CASE("parallel_map keeps index order and visits each index once") {
  std::atomic<int> calls{0};
  const auto v = parallel_map<std::size_t>(100, 4, [&](std::size_t i) {
    ++calls;
    return i * i;
  });
  REQUIRE(v.size() == 100);
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == i * i);
  CHECK(calls == 100);
  CHECK(parallel_map<int>(0, 3, [](std::size_t) { return 1; }).empty());
}

TEST_CASE("free-space table") {
  auto cfg = parse_config(R"({"sweep":{"from":1e-3,"to":1e3,"points":7}})");
  const auto t = free_space(cfg);
  CHECK(t.kind == "free-space");
  CHECK(t.columns.front() == "l");
  REQUIRE(t.rows.size() == 7);
  CHECK(t.all_ok());
  const auto pw = std::find(t.columns.begin(), t.columns.end(), "power") - t.columns.begin();
  const auto u = std::find(t.columns.begin(), t.columns.end(), "U") - t.columns.begin();
  CHECK(t.rows.front()[pw] == doctest::Approx(6.0).epsilon(0.01));
  CHECK(t.rows.back()[pw] == doctest::Approx(7.0).epsilon(0.01));
  for (const auto &r : t.rows) CHECK(r[u] < 0.0);
}

TEST_CASE("half-space table is deterministic and independent of the thread count") {
  auto one = small_half_space();
  one.threads = 1;
  auto many = small_half_space();
  many.threads = 3;
  const auto a = half_space(one), b = half_space(many);
  CHECK(a.all_ok());
  CHECK(a.rows.size() == 2);
  CHECK(a.rows == b.rows);
  // The embedded configuration line differs only in the thread count.
  CHECK(render(a, many) == render(b, many));
  const auto ratio = std::find(a.columns.begin(), a.columns.end(), "ratio") - a.columns.begin();
  REQUIRE(ratio < static_cast<long>(a.columns.size()));
  for (const auto &r : a.rows) CHECK(r[ratio] < 1.0);
}

TEST_CASE("CSV output: header comments, embedded configuration, status column") {
  const auto cfg = small_half_space();
  const std::string csv = render(half_space(cfg), cfg);
  CHECK(csv.rfind("# vdwcalc half-space", 0) == 0);
  CHECK(csv.find("# units:") != std::string::npos);
  const auto pos = csv.find("# config: ");
  REQUIRE(pos != std::string::npos);
  const auto eol = csv.find('\n', pos);
  const auto embedded = parse_config(csv.substr(pos + 10, eol - pos - 10));
  CHECK(effective_config(embedded) == effective_config(cfg));
  CHECK(csv.find("height,l,") != std::string::npos);
  CHECK(csv.find(",status\n") != std::string::npos);
}

TEST_CASE("JSON output parses and carries the table") {
  auto cfg = small_half_space();
  cfg.format = Format::json;
  const auto j = nlohmann::json::parse(render(half_space(cfg), cfg));
  CHECK(j.at("kind") == "half-space");
  CHECK(j.at("rows").size() == 2);
  for (const auto &col : j.at("columns")) CHECK(j.at("rows")[0].contains(col.get<std::string>()));
  CHECK(j.at("rows")[0].at("status") == "ok");
  CHECK(j.at("config").at("sweep").at("points") == 2);
}

TEST_CASE("rows outside a closed form's regime fail individually") {
  auto cfg = parse_config(R"({"geometry":{"heights":[0.01]},"sweep":{"from":1e-5,"to":10,"points":3}})");
  const auto t = limits(LimitCase::nonretarded_medium, cfg);
  REQUIRE(t.rows.size() == 3);
  CHECK_FALSE(t.all_ok());
  CHECK(t.status.front() == "ok");
  CHECK(t.status.back() != "ok");
  CHECK(std::isnan(t.rows.back().back()));
  cfg.format = Format::json;
  const auto j = nlohmann::json::parse(render(t, cfg));
  CHECK(j.at("rows")[2].at("status") != "ok");
  CHECK(j.at("rows")[2].at("U").is_null());
}

TEST_CASE("limits and thresholds") {
  const auto t = limits(LimitCase::all, default_config());
  CHECK(t.all_ok());
  REQUIRE(t.rows.size() == 6);
  CHECK(t.rows[0][1] == doctest::Approx(40.0 / 23.0).epsilon(1e-9));
  CHECK(t.rows[1][1] == doctest::Approx(52.0 / 23.0).epsilon(1e-9));
  CHECK(t.rows[2][1] == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  CHECK(t.rows[4][1] == doctest::Approx(4.90).epsilon(0.002));
  CHECK(t.rows[5][1] == doctest::Approx(14.82).epsilon(0.001));
  const auto p = limits(LimitCase::nonretarded_parallel, default_config(), PerfectPlate::permeable);
  CHECK(p.rows.at(0)[1] == doctest::Approx(10.0 / 3.0).epsilon(1e-9));
  CHECK(parse_limit_case("threshold-vertical-permeable") == LimitCase::threshold_vertical_permeable);
  CHECK_THROWS_AS(parse_limit_case("sideways"), ConfigError);
  CHECK(thresholds(default_config()).all_ok());
}
