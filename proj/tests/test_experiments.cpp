#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "disint/errors.hpp"
#include "disint/experiments.hpp"

using namespace disint;

namespace {

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST(Config, ParsesKeysCommentsAndLists) {
  const auto c = parse_config(
      "# comment\n"
      "experiment = hoeffding\n"
      "\n"
      "n=1e3\n"
      "t=550, 600\n"
      "q01=0.25\r\n"
      "seed=18446744073709551615\n");
  EXPECT_EQ(c.experiment, "hoeffding");
  EXPECT_EQ(c.n, 1000u);
  EXPECT_EQ(c.t, (std::vector<double>{550, 600}));
  EXPECT_EQ(c.q[0][1], 0.25);
  EXPECT_EQ(c.seed, 18446744073709551615ull);
}

TEST(Config, OverridesReplaceFileValues) {
  const std::vector<std::string> o{"n=20", "seed=9"};
  const auto c = parse_config("experiment=submartingale\nn=5\n", o);
  EXPECT_EQ(c.n, 20u);
  EXPECT_EQ(c.seed, 9u);
}

TEST(Config, Rejections) {
  EXPECT_THROW((void)parse_config("colour=blue\n"), ConfigError);
  EXPECT_THROW((void)parse_config("n=10\nn=20\n"), ConfigError);
  EXPECT_THROW((void)parse_config("n\n"), ConfigError);
  EXPECT_THROW((void)parse_config("n=-3\n"), ConfigError);
  EXPECT_THROW((void)parse_config("n=2.5\n"), ConfigError);
  EXPECT_THROW((void)parse_config("beta=abc\n"), ConfigError);
  const std::vector<std::string> bad{"nope=1"};
  EXPECT_THROW((void)parse_config("", bad), ConfigError);
  EXPECT_THROW((void)load_config("/nonexistent/file.conf"), ConfigError);
}

TEST(Config, PairsCoverEveryKey) {
  const auto pairs = config_pairs(ExperimentConfig{});
  ASSERT_EQ(pairs.size(), config_keys().size());
  for (std::size_t i = 0; i < pairs.size(); ++i) EXPECT_EQ(pairs[i].first, config_keys()[i]);
}

TEST(Validate, Errors) {
  auto c = parse_config("experiment=nonsense\n");
  EXPECT_THROW(validate_config(c), ConfigError);
  c = parse_config("experiment=regime-switch\nq00=1\nq01=0\nq10=0\nq11=1\n");
  EXPECT_THROW(validate_config(c), NonErgodicError);
  c = parse_config("experiment=regime-switch\nmu1=0.2\nlambda1=0.3\n");
  EXPECT_THROW(validate_config(c), ConfigError);
  c = parse_config("experiment=stochvol\nbeta=1\n");
  EXPECT_THROW(validate_config(c), ConfigError);
  c = parse_config("experiment=exchangeable\ntrials=10\n");
  EXPECT_THROW(validate_config(c), ConfigError);
  c = parse_config("experiment=hoeffding\nfamily=regime-switch\n");
  EXPECT_THROW(validate_config(c), ConfigError);
  c = parse_config("experiment=hoeffding\nhoeffding=classical\nn=100\nt=50\n");
  EXPECT_THROW(validate_config(c), ConfigError);
  c = parse_config("experiment=characterization-forward\nfamily=submartingale\n");
  EXPECT_THROW(validate_config(c), ConfigError);
  c = parse_config("experiment=characterization-converse\nfamily=stochvol\nz_levels=3\n");
  EXPECT_THROW(validate_config(c), ConfigError);
  c = parse_config("experiment=residual\nf=cube\n");
  EXPECT_THROW(validate_config(c), ConfigError);
  c = parse_config("experiment=submartingale\nn=0\n");
  EXPECT_THROW(validate_config(c), ConfigError);
}

TEST(StateFunctions, Parse) {
  EXPECT_EQ(parse_state_function("identity")(-2.5), -2.5);
  EXPECT_EQ(parse_state_function("square")(-3.0), 9.0);
  EXPECT_EQ(parse_state_function("positive")(0.0), 0.0);
  EXPECT_EQ(parse_state_function("positive")(0.1), 1.0);
  EXPECT_EQ(parse_state_function("indicator:1")(1.0), 1.0);
  EXPECT_EQ(parse_state_function("indicator:1")(-1.0), 0.0);
  EXPECT_EQ(parse_state_function("const:0.7")(123.0), 0.7);
  const auto table = parse_state_function("table:-1=0.5;1=2");
  EXPECT_EQ(table(-1.0), 0.5);
  EXPECT_EQ(table(1.0), 2.0);
  EXPECT_THROW((void)table(0.0), DomainError);
  EXPECT_THROW((void)parse_state_function("cube"), ConfigError);
}

TEST(Catalog, NineStableLines) {
  const auto text = lines(catalog_text());
  ASSERT_EQ(text.size(), 9u);
  EXPECT_EQ(text[0].rfind("random-walk", 0), 0u);
  EXPECT_NE(catalog_text().find("submartingale — Figure 1"), std::string::npos);
  EXPECT_EQ(catalog_text(), catalog_text());
}

TEST(Catalog, JsonLinesMatchText) {
  const auto json = lines(catalog_json_lines());
  ASSERT_EQ(json.size(), 9u);
  for (std::size_t i = 0; i < json.size(); ++i) {
    const auto record = nlohmann::json::parse(json[i]);
    EXPECT_EQ(record.at("name").get<std::string>(), experiment_catalog()[i].name);
    EXPECT_EQ(record.at("reference").get<std::string>(), experiment_catalog()[i].reference);
  }
}

TEST(Csv, HeaderAndSeventeenDigits) {
  CsvTable t;
  t.add_column("a", {0.1, 1.0});
  t.add_column("b", {1.0 / 3.0, -2.5e-300});
  EXPECT_EQ(render_csv(t), "a,b\n0.10000000000000001,0.33333333333333331\n1,-2.5e-300\n");
  EXPECT_THROW(t.add_column("c", {1.0}), DomainError);
}

TEST(Svg, FixedViewBoxNoExternalAssets) {
  LineChart chart{"t", "x", "y", {{"s", {0, 1, 2}, {1, 0, 1}}, {"m", {0, 1}, {0, 1}, true}}};
  const std::string svg = render_svg(chart);
  EXPECT_NE(svg.find("viewBox=\"0 0 960 540\""), std::string::npos);
  EXPECT_EQ(svg.find("href"), std::string::npos);
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
  EXPECT_NE(svg.find("<circle"), std::string::npos);
  EXPECT_EQ(svg, render_svg(chart));
}

TEST(Run, SubmartingaleFigureColumns) {
  const auto out = run_experiment(parse_config("experiment=submartingale\nn=20\nseed=7\n"));
  const auto csv = lines(render_csv(out.csv));
  ASSERT_EQ(csv.size(), 21u);
  EXPECT_EQ(csv[0], "k,theta_k,x_k,running_mean");
  EXPECT_TRUE(out.report.pass());
  EXPECT_EQ(out.chart.series.size(), 3u);
}

TEST(Run, ReportPassIsConjunction) {
  auto out = run_experiment(parse_config("experiment=random-walk\nn=1000\ntrials=1\n"));
  const bool all = out.report.pass();
  out.report.metrics.push_back(at_most("forced", 2.0, 1.0));
  EXPECT_FALSE(out.report.pass());
  EXPECT_TRUE(all);
  const auto text = format_report(out.report);
  EXPECT_NE(text.find("pass=false"), std::string::npos);
  EXPECT_NE(text.find("config.experiment=random-walk"), std::string::npos);
}

TEST(Run, DeterministicWithAndWithoutParallel) {
  const char* configs[] = {"experiment=random-walk\nn=20000\ntrials=4\nseed=3\n",
                           "experiment=residual\nfamily=regime-switch\nf=positive\nn=2000\ntrials=8\n",
                           "experiment=hoeffding\nn=100\ntrials=3000\nt=55,60\n",
                           "experiment=exchangeable\nn=200\ntrials=300\n"};
  for (const char* text : configs) {
    const auto c = parse_config(text);
    ::unsetenv("NO_PARALLEL");
    const std::string a = render_csv(run_experiment(c).csv);
    const std::string b = render_csv(run_experiment(c).csv);
    ::setenv("NO_PARALLEL", "1", 1);
    const std::string serial = render_csv(run_experiment(c).csv);
    ::unsetenv("NO_PARALLEL");
    EXPECT_EQ(a, b) << text;
    EXPECT_EQ(a, serial) << text;
  }
}

TEST(Run, OutputPaths) {
  auto c = parse_config("experiment=stochvol\nseed=12\noutput_dir=out\n");
  const auto p = output_paths(c);
  EXPECT_EQ(p.csv, std::filesystem::path("out/stochvol-12.csv"));
  EXPECT_EQ(p.svg, std::filesystem::path("out/stochvol-12.svg"));
  EXPECT_EQ(p.report, std::filesystem::path("out/stochvol-12.report.txt"));
}
