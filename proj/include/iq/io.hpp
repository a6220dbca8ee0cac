#ifndef IQ_IO_HPP
#define IQ_IO_HPP

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "iq/distribution.hpp"
#include "iq/experiments.hpp"
#include "iq/risk.hpp"
#include "iq/sample.hpp"

namespace iq {

// Plain-text numeric ingestion: one value per line, or whitespace/comma
// separated. Lines starting with '#' are skipped.
Sample read_sample_file(const std::string& path);
Sample parse_sample_text(std::istream& in);

// {"dist":"uniform","a":0,"b":2} | {"dist":"pareto1","x0":1,"alpha":3}
// {"dist":"gapped","a":0.5}      | {"dist":"normal","mu":0,"sigma":1}
// {"dist":"logistic","mu":0,"s":1}
// {"dist":"mixture","delta":0.1,"base":{...},"contam":{...}}
// {"dist":"step","atoms":[...],"masses":[...]}
Dist dist_from_json(const nlohmann::json& j);
Dist dist_from_json_text(const std::string& text);

nlohmann::json to_json(const MeasureEstimate& e);
nlohmann::json to_json(const ExperimentReport& r);
std::string report_csv(const ExperimentReport& r);

// Two-column (grid, value) emission for plotting; paths are separated by
// blank lines.
void write_dat(std::ostream& out, const VervaatResult& v);

// Two-column relative histogram (bin center, relative frequency per unit).
std::string histogram_dat(const std::vector<double>& values, int bins = 80);

}  // namespace iq

#endif  // IQ_IO_HPP
