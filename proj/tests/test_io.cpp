#include <doctest.h>

#include <sstream>

#include "iq/io.hpp"

using namespace iq;

TEST_CASE("sample text parsing: separators, comments, garbage") {
  std::istringstream ok("# header\n1.5, 2.5\n3\t4\n 5e-1 \n");
  const Sample s = parse_sample_text(ok);
  CHECK(s.size() == 5);
  CHECK(s.min() == 0.5);
  CHECK(s.max() == 4.0);

  std::istringstream bad("1.0 2.0 oops\n");
  CHECK_THROWS_AS((void)parse_sample_text(bad), std::invalid_argument);
  std::istringstream empty("# only a comment\n");
  CHECK_THROWS_AS((void)parse_sample_text(empty), std::domain_error);
}

TEST_CASE("dist json parsing round trips every family") {
  CHECK(mean(dist_from_json_text(R"({"dist":"uniform","a":0,"b":2})")) == 1.0);
  CHECK(quantile(dist_from_json_text(R"({"dist":"pareto1","x0":1,"alpha":3})"), 0.875) ==
        doctest::Approx(2.0).epsilon(1e-14));
  CHECK(cdf(dist_from_json_text(R"({"dist":"gapped","a":0.5})"), 1.0) == 0.5);
  CHECK(mean(dist_from_json_text(R"({"dist":"normal","mu":3,"sigma":2})")) == 3.0);
  CHECK(mean(dist_from_json_text(R"({"dist":"logistic","mu":1,"s":2})")) == 1.0);
  const auto mix = dist_from_json_text(
      R"({"dist":"mixture","delta":0.5,"base":{"dist":"uniform","a":0,"b":1},
          "contam":{"dist":"uniform","a":1,"b":3}})");
  CHECK(mean(mix) == doctest::Approx(0.5 * 0.5 + 0.5 * 2.0).epsilon(1e-14));
  const auto step = dist_from_json_text(R"({"dist":"step","atoms":[0,1],"masses":[0.5,0.5]})");
  CHECK(quantile(step, 0.5) == 0.0);
  CHECK_THROWS_AS((void)dist_from_json_text(R"({"dist":"cauchy"})"), std::invalid_argument);
}

TEST_CASE("experiment report json round trip") {
  ExperimentReport rep;
  rep.experiment = "normality";
  rep.p = 0.5;
  rep.replications = 7;
  rep.seed = 42;
  rep.rows = {{100, -0.125, -0.1, 1.0 / 3, 0.02}, {200, 0.0625, 0.05, 0.25, 0.01}};
  const auto j = to_json(rep);
  const auto back = nlohmann::json::parse(j.dump());
  CHECK(back["experiment"] == "normality");
  CHECK(back["m"].get<std::size_t>() == rep.replications);
  CHECK(back["seed"].get<std::uint64_t>() == rep.seed);
  REQUIRE(back["rows"].size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(back["rows"][i]["n"].get<std::size_t>() == rep.rows[i].n);
    CHECK(back["rows"][i]["mean"].get<double>() == rep.rows[i].mean);
    CHECK(back["rows"][i]["median"].get<double>() == rep.rows[i].median);
    CHECK(back["rows"][i]["sd"].get<double>() == rep.rows[i].sd);
    CHECK(back["rows"][i]["ks"].get<double>() == rep.rows[i].ks);
  }
}

TEST_CASE("csv emission carries the table shape") {
  ExperimentReport rep;
  rep.experiment = "bias";
  rep.rows = {{40, -0.004855, -0.002482, 0.013, 0.0}};
  const std::string csv = report_csv(rep);
  CHECK(csv.find("n,mean,median,sd") == 0);
  CHECK(csv.find("40,") != std::string::npos);
}

TEST_CASE("measure estimate json fields") {
  MeasureEstimate e;
  e.measure = Measure::lorenz;
  e.p = 0.25;
  e.estimate = 0.0625;
  e.stderr_ = 0.001;
  e.ci_lo = 0.0605;
  e.ci_hi = 0.0645;
  e.n = 1234;
  const auto j = to_json(e);
  CHECK(j["measure"] == "lorenz");
  CHECK(j["n"].get<std::size_t>() == 1234);
  CHECK(j["estimate"].get<double>() == e.estimate);
  CHECK(j["method"] == "plugin");
}

TEST_CASE("histogram dat: mass integrates to one") {
  std::vector<double> v;
  for (int i = 0; i < 1000; ++i) v.push_back(i / 999.0);
  const std::string dat = histogram_dat(v, 20);
  std::istringstream in(dat);
  double center, freq, mass = 0.0;
  int rows = 0;
  while (in >> center >> freq) {
    mass += freq;
    ++rows;
  }
  CHECK(rows == 20);
  CHECK(mass * (1.0 / 20) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS((void)histogram_dat({}, 10), std::domain_error);
}

TEST_CASE("vervaat dat emission: two columns, blank-line separated paths") {
  VervaatResult v;
  v.grid = {0.0, 0.5, 1.0};
  v.paths = {{0.0, 0.1, 0.0}, {0.0, 0.2, 0.0}};
  std::ostringstream os;
  write_dat(os, v);
  CHECK(os.str() == "0 0\n0.5 0.1\n1 0\n\n0 0\n0.5 0.2\n1 0\n");
}
