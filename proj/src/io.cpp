#include "iq/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace iq {

Sample parse_sample_text(std::istream& in) {
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') continue;
    for (char& c : line)
      if (c == ',' || c == ';' || c == '\t') c = ' ';
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      double v;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("sample file: cannot parse '" + tok + "'");
      }
      if (used != tok.size())
        throw std::invalid_argument("sample file: cannot parse '" + tok + "'");
      values.push_back(v);
    }
  }
  return Sample(std::move(values));
}

Sample read_sample_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open sample file: " + path);
  return parse_sample_text(in);
}

Dist dist_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("dist").get<std::string>();
  if (kind == "uniform") return Dist(Uniform(j.at("a").get<double>(), j.at("b").get<double>()));
  if (kind == "pareto1")
    return Dist(ParetoI(j.at("x0").get<double>(), j.at("alpha").get<double>()));
  if (kind == "gapped") return Dist(GappedUniform(j.at("a").get<double>()));
  if (kind == "normal")
    return Dist(NormalDist(j.at("mu").get<double>(), j.at("sigma").get<double>()));
  if (kind == "logistic")
    return Dist(LogisticDist(j.at("mu").get<double>(), j.at("s").get<double>()));
  if (kind == "mixture")
    return Dist(Mixture(j.at("delta").get<double>(), dist_from_json(j.at("base")),
                        dist_from_json(j.at("contam"))));
  if (kind == "step")
    return Dist(StepCdf(j.at("atoms").get<std::vector<double>>(),
                        j.at("masses").get<std::vector<double>>()));
  throw std::invalid_argument("unknown dist kind: " + kind);
}

Dist dist_from_json_text(const std::string& text) {
  return dist_from_json(nlohmann::json::parse(text));
}

nlohmann::json to_json(const MeasureEstimate& e) {
  return nlohmann::json{{"measure", measure_name(e.measure)},
                        {"p", e.p},
                        {"estimate", e.estimate},
                        {"stderr", e.stderr_},
                        {"ci_lo", e.ci_lo},
                        {"ci_hi", e.ci_hi},
                        {"n", e.n},
                        {"confidence", e.confidence},
                        {"method", e.method == VarianceMethod::plugin ? "plugin" : "bootstrap"}};
}

nlohmann::json to_json(const ExperimentReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    nlohmann::json jr{{"n", row.n}, {"mean", row.mean}, {"median", row.median}, {"sd", row.sd}};
    if (r.experiment == "normality") jr["ks"] = row.ks;
    rows.push_back(jr);
  }
  nlohmann::json out{{"experiment", r.experiment},
                     {"p", r.p},
                     {"m", r.replications},
                     {"seed", r.seed},
                     {"rows", rows}};
  if (!r.raw.empty()) {
    nlohmann::json raw = nlohmann::json::array();
    for (const auto& v : r.raw) raw.push_back(v);
    out["raw"] = raw;
  }
  return out;
}

std::string report_csv(const ExperimentReport& r) {
  std::ostringstream os;
  os.precision(12);
  const bool with_ks = r.experiment == "normality";
  os << "n,mean,median,sd" << (with_ks ? ",ks" : "") << "\n";
  for (const auto& row : r.rows) {
    os << row.n << "," << row.mean << "," << row.median << "," << row.sd;
    if (with_ks) os << "," << row.ks;
    os << "\n";
  }
  return os.str();
}

void write_dat(std::ostream& out, const VervaatResult& v) {
  out.precision(12);
  for (std::size_t p = 0; p < v.paths.size(); ++p) {
    if (p > 0) out << "\n";
    for (std::size_t i = 0; i < v.grid.size(); ++i)
      out << v.grid[i] << " " << v.paths[p][i] << "\n";
  }
}

std::string histogram_dat(const std::vector<double>& values, int bins) {
  if (values.empty()) throw std::domain_error("histogram_dat: empty input");
  if (bins < 1) throw std::invalid_argument("histogram_dat: need bins >= 1");
  double lo = values[0], hi = values[0];
  for (double v : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi == lo) hi = lo + 1.0;
  const double width = (hi - lo) / bins;
  std::vector<std::size_t> count(static_cast<std::size_t>(bins), 0);
  for (double v : values) {
    auto b = static_cast<long>((v - lo) / width);
    if (b < 0) b = 0;
    if (b >= bins) b = bins - 1;
    ++count[static_cast<std::size_t>(b)];
  }
  std::ostringstream os;
  os.precision(12);
  const double norm = 1.0 / (width * static_cast<double>(values.size()));
  for (int b = 0; b < bins; ++b) {
    os << lo + (b + 0.5) * width << " " << static_cast<double>(count[static_cast<std::size_t>(b)]) * norm
       << "\n";
  }
  return os.str();
}

}  // namespace iq
