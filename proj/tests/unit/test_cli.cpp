#include <sstream>
#include <string>

#include "chiral_casimir/cli.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace chiral_casimir;
using namespace chiral_casimir::cli;
using nlohmann::ordered_json;

namespace {
std::string data_dir() { return std::string(CHIRAL_CASIMIR_SOURCE_DIR) + "/data"; }

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_text(const std::string& text, std::optional<Command> cmd = std::nullopt) {
  std::ostringstream out;
  std::ostringstream err;
  int code = 0;
  try {
    code = run(parse_config(text, cmd, data_dir()), out, err);
  } catch (const ConfigError& e) {
    err << e.what();
    code = 2;
  }
  return {code, out.str(), err.str()};
}
}  // namespace

TEST_CASE("cli: minimal config takes defaults") {
  const auto c = parse_config(R"({"command": "casimir", "params": "REF1"})");
  CHECK(c.command == Command::casimir);
  CHECK(c.rel_tol == 1e-8);
  CHECK(c.basis_cutoff == 12);
  CHECK(c.output_format == Format::json);
  CHECK(c.params.omega == model::ref1().omega);
  CHECK(c.params_label == "REF1");
}

TEST_CASE("cli: schema violations name the key") {
  CHECK_THROWS_WITH_AS(parse_config(R"({"command": "casimir", "omega_w": 1})"), doctest::Contains("omega_w"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"command": "casimir", "params": {"preset": "REF1", "omega_w": 1}})"),
                       doctest::Contains("omega_w"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"command": "casimir", "rel_tol": 1})"), doctest::Contains("rel_tol"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"command": "casimir", "basis_cutoff": 31})"),
                       doctest::Contains("basis_cutoff"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"command": "casimir", "basis_cutoff": 4})"),
                       doctest::Contains("basis_cutoff"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"command": "casimir", "basis_cutoff": 10.5})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"command": "teleport"})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"params": "REF1"})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"command": "casimir", "include_doppler": true})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"command": "casimir", "output_format": "xml"})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"command": "casimir", "params": {"omega_x": 1e14}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"command": "sweep"})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"command": "estimate"})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"command": "derive"})", Command::casimir), ConfigError);
}

TEST_CASE("cli: unphysical parameters are rejected while parsing") {
  CHECK_THROWS_AS(parse_config(R"({"command": "derive", "params": {"preset": "REF1", "omega_y": -1}})"),
                  ConfigError);
  CHECK_THROWS_AS(
      parse_config(R"({"command": "sweep", "sweep": {"parameter": "omega_x", "values": [2e14, 0]}})"),
      ConfigError);
  CHECK_THROWS_WITH_AS(
      parse_config(R"({"command": "sweep", "sweep": {"parameter": "omega_q", "values": [1]}})"),
      doctest::Contains("omega_q"), ConfigError);
}

TEST_CASE("cli: malformed JSON reports line and column") {
  CHECK_THROWS_WITH_AS(parse_config("{\n  \"command\": \"casimir\",,\n}"), doctest::Contains("line 2"), ConfigError);
}

TEST_CASE("cli: command from the command line fills in a missing key") {
  const auto c = parse_config(R"({"params": "REF1"})", Command::derive);
  CHECK(c.command == Command::derive);
}

TEST_CASE("cli: casimir with C = 0 emits zero vectors") {
  const auto o = run_text(R"({"command": "casimir", "basis_cutoff": 6, "params": {"preset": "REF1", "C": 0}})");
  CHECK(o.code == 0);
  const auto doc = ordered_json::parse(o.out);
  for (const auto* key : {"quadrature", "closed_form"}) {
    for (const auto& v : doc["longitudinal"][key]) {
      CHECK(v.get<double>() == 0.0);
    }
  }
  CHECK(o.out.find("-0.0") == std::string::npos);
}

TEST_CASE("cli: casimir reports quadrature and closed form side by side") {
  const auto o = run_text(R"({"command": "casimir", "basis_cutoff": 6})");
  REQUIRE(o.code == 0);
  const auto doc = ordered_json::parse(o.out);
  const auto& l = doc["longitudinal"];
  CHECK(l["quadrature"].size() == 3);
  CHECK(l["closed_form"].size() == 3);
  CHECK(l["ratio_quadrature_to_closed_form"].get<double>() > 0.0);
  CHECK(l["diagnostics"]["estimated_quadrature_error"].get<double>() <= 1e-8);
}

TEST_CASE("cli: estimate on the bundled compound file") {
  const auto o = run_text(R"({"command": "estimate", "compound_file": "compounds.json"})");
  REQUIRE(o.code == 0);
  const auto doc = ordered_json::parse(o.out);
  const auto& row = doc["estimates"][0];
  CHECK(row["name"] == "2-octanol");
  CHECK(test_support::close_rel(std::abs(row["momentum"].get<double>()), 1.4e-34, 0.10));
}

TEST_CASE("cli: missing compound file is a computation error") {
  const auto o = run_text(R"({"command": "estimate", "compound_file": "nope.json"})");
  CHECK(o.code == 1);
  CHECK(o.err.find("nope.json") != std::string::npos);
}

TEST_CASE("cli: sweep rows follow input order and match a serial run") {
  const std::string text =
      R"({"command": "sweep", "basis_cutoff": 6, "output_format": "csv",
          "sweep": {"parameter": "C", "values": [3e6, -1e6, 0, 4.5e6]}})";
  const auto o = run_text(text);
  REQUIRE(o.code == 0);
  std::istringstream lines(o.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header.rfind("C,quadrature_x", 0) == 0);
  std::vector<std::string> firsts;
  for (std::string line; std::getline(lines, line);) {
    firsts.push_back(line.substr(0, line.find(',')));
  }
  CHECK(firsts == std::vector<std::string>{"3.00000000e+06", "-1.00000000e+06", "0.00000000e+00", "4.50000000e+06"});

  // each row equals a single-value sweep
  const auto doc = ordered_json::parse(run_text(
      R"({"command": "sweep", "basis_cutoff": 6, "sweep": {"parameter": "C", "values": [-1e6, 4.5e6, 3e6, 0]}})").out);
  const auto single = ordered_json::parse(
      run_text(R"({"command": "sweep", "basis_cutoff": 6, "sweep": {"parameter": "C", "values": [3e6]}})").out);
  CHECK(doc["rows"][2] == single["rows"][0]);
}

TEST_CASE("cli: csv has a header and nine significant digits") {
  const auto o = run_text(R"({"command": "derive", "output_format": "csv"})");
  REQUIRE(o.code == 0);
  std::istringstream lines(o.out);
  std::string header;
  std::string row;
  std::getline(lines, header);
  std::getline(lines, row);
  CHECK(header.rfind("M_total,mu,mu_star", 0) == 0);
  const std::string first = row.substr(0, row.find(','));
  CHECK(first.size() == std::string("1.99273782e-26").size());
  CHECK(first.find('e') == 10);
}

TEST_CASE("cli: ground-state table carries order tags") {
  const auto o = run_text(R"({"command": "ground-state", "basis_cutoff": 6})");
  REQUIRE(o.code == 0);
  const auto doc = ordered_json::parse(o.out);
  CHECK(doc["rs_vs_analytic_max_relative_difference"].get<double>() <= 1e-10);
  for (const auto& row : doc["amplitudes"]) {
    if (row["state"] != "|000>") {
      CHECK(row["order_C"].get<int>() + row["order_B0"].get<int>() >= 1);
    }
  }
}

TEST_CASE("cli: verify on REF1 passes and is byte-identical across runs") {
  const std::string text = R"({"command": "verify", "params": "REF1", "basis_cutoff": 8})";
  const auto a = run_text(text);
  const auto b = run_text(text);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto doc = ordered_json::parse(a.out);
  CHECK(doc["all_passed"] == true);
}

TEST_CASE("cli: command names round-trip") {
  for (const auto c : {Command::derive, Command::ground_state, Command::casimir, Command::response,
                       Command::estimate, Command::sweep, Command::verify}) {
    CHECK(parse_command(command_name(c)) == c);
  }
  CHECK(!parse_command("ground_state").has_value());
  CHECK(parse_format("csv") == Format::csv);
  CHECK(!parse_format("tsv").has_value());
}
