#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace cubicshape::cli {

// One output row. Integer-valued fields are kept as decimal strings so that
// 128-bit counts survive JSON.
struct ReportRecord {
  std::string experiment;
  std::optional<std::string> D, r, s, t, X;
  std::string stage;
  std::string empirical;
  std::optional<double> predicted, second_term, ratio, tol;
  double seconds = 0;

  friend bool operator==(const ReportRecord&, const ReportRecord&) = default;
};

inline const std::vector<std::string> kCsvColumns = {"experiment", "D",     "r",           "s",     "t",
                                                     "X",          "stage", "empirical",   "predicted",
                                                     "second_term", "ratio", "tol",        "seconds"};

void to_json(nlohmann::json& j, const ReportRecord& r);
void from_json(const nlohmann::json& j, ReportRecord& r);

std::string format_double(double v);  // shortest round-trip form
std::string to_csv(const std::vector<ReportRecord>& records);
std::string to_json_text(const std::vector<ReportRecord>& records);

// Entry point shared by the executable and the tests. Exit codes: 0 success,
// 1 invalid input, 2 overflow or budget exhaustion.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cubicshape::cli
