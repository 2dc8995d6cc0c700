#include <gtest/gtest.h>

#include "dsop/cli/commands.hpp"

using namespace dsop;
using namespace dsop::cli;

namespace {

Config ordered_config() {
  return parse_config(json::parse(R"({
    "measure": {"weight_coeffs": ["1"]},
    "masses": [{"c": "2", "order": 0, "eta": "1"}, {"c": "3", "order": 1, "eta": "1"}],
    "nmax": 8, "k": 1,
    "points": [{"re": "2", "im": "1"}, {"re": "5", "im": "0"}],
    "n_range": [5, 12]
  })"));
}

}  // namespace

TEST(Config, ParsesLosslessly) {
  Config c = parse_config(json::parse(R"({"measure": {"weight_coeffs": ["1/3", "-0.25", 2]},
                                          "masses": [{"c": "-7/2", "order": 2, "eta": "1e-3", "lower_eta": ["0", "1/2"]}],
                                          "points": [{"re": "0.1", "im": "-2"}]})"));
  EXPECT_EQ(c.weight_coeffs[0], Rational(1, 3));
  EXPECT_EQ(c.weight_coeffs[1], Rational(-1, 4));
  EXPECT_EQ(c.weight_coeffs[2], 2);
  EXPECT_EQ(c.masses[0].c, Rational(-7, 2));
  EXPECT_EQ(c.masses[0].eta, Rational(1, 1000));
  EXPECT_EQ(c.masses[0].lower_eta[1], Rational(1, 2));
  EXPECT_EQ(c.points[0].re_q, Rational(1, 10));
  EXPECT_EQ(echo(parse_config(echo(c))), echo(c));
}

TEST(Config, Rejects) {
  EXPECT_THROW(parse_config(json::parse(R"({"nmax": 2.5})")), parse_error);
  EXPECT_THROW(parse_config(json::parse(R"({"masses": [{"c": 2.5}]})")), parse_error);
  EXPECT_THROW(parse_config(json::parse(R"({"masses": [{"order": 1}]})")), parse_error);
  EXPECT_THROW(parse_config(json::parse(R"({"typo": 1})")), parse_error);
  EXPECT_THROW(parse_config(json::parse(R"({"precision_bits": 16})")), parse_error);
  Config c;
  c.format = "xml";
  EXPECT_THROW(validate(c), parse_error);
}

TEST(Commands, CheckOrderExampleOne) {
  Config c = parse_config(json::parse(R"({"masses": [{"c": "3", "order": 1}, {"c": "2", "order": 2}]})"));
  Report r = run("check-order", c);
  EXPECT_FALSE(r.results["ordered"].get<bool>());
  EXPECT_EQ(r.tables[0].rows[0][1], "not ordered");
}

TEST(Commands, OrthSingleMass) {
  Config c = parse_config(json::parse(R"({"masses": [{"c": "6", "order": 0, "eta": "1"}], "nmax": 1})"));
  Report r = run("orth", c);
  EXPECT_EQ(r.results["polynomials"][1]["S"].get<std::string>(), "S_1 = x - 2");
  EXPECT_EQ(r.tables[0].rows.back(), (std::vector<std::string>{"1", "1", "1"}));
}

TEST(Commands, CoefficientsAreRationalStrings) {
  Config c = ordered_config();
  for (const char* cmd : {"orth", "assoc"}) {
    Report r = run(cmd, c);
    for (const auto& p : r.results["polynomials"])
      for (const auto& s : p["coeffs"]) {
        const std::string v = s.get<std::string>();
        EXPECT_EQ(v.find_first_of(".eE"), std::string::npos) << v;
        EXPECT_EQ(parse_rational(v).get_str(), v);
      }
  }
}

TEST(Commands, ZerosSchema) {
  Report r = run("zeros", ordered_config());
  EXPECT_EQ(r.tables[0].columns,
            (std::vector<std::string>{"n", "kind", "value_re", "value_im", "enclosure_lo", "enclosure_hi"}));
  EXPECT_FALSE(r.tables[0].rows.empty());
}

TEST(Commands, MarkovSchema) {
  Report r = run("markov", ordered_config());
  EXPECT_EQ(r.tables[0].columns,
            (std::vector<std::string>{"k", "z_re", "z_im", "n", "error", "ratio", "root_test", "predicted"}));
  EXPECT_EQ(r.tables[0].rows.size(), 16u);
}

TEST(Commands, VerifyPasses) {
  Report r = run("verify", ordered_config());
  for (const auto& a : r.assertions) EXPECT_TRUE(a.pass) << a.name << " " << a.detail;
}

TEST(Commands, DeterministicRoundTrip) {
  const Config c = ordered_config();
  for (const auto& cmd : command_names()) {
    const std::string a = render(run(cmd, c), "json");
    const std::string b = render(run(cmd, parse_config(echo(c))), "json");
    EXPECT_EQ(a, b) << cmd;
  }
}

TEST(Commands, ExitCodes) {
  Config inside = parse_config(json::parse(R"({"masses": [{"c": "1/2"}]})"));
  try {
    run("zeros", inside);
    FAIL();
  } catch (const std::exception& e) {
    EXPECT_EQ(exit_code_for(e), 3);
  }
  Config unordered = parse_config(json::parse(R"({"masses": [{"c": "3", "order": 1}, {"c": "2", "order": 2}]})"));
  try {
    run("quadrature", unordered);
    FAIL();
  } catch (const std::exception& e) {
    EXPECT_EQ(exit_code_for(e), 3);
  }
  try {
    run("nope", unordered);
    FAIL();
  } catch (const std::exception& e) {
    EXPECT_EQ(exit_code_for(e), 2);
  }
}
