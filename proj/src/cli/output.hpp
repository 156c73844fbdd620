#pragma once

#include <string>
#include <utility>
#include <vector>

#include "config.hpp"

namespace polariton::cli {

inline constexpr int kSignificantDigits = 12;

std::string fmt(double x);
// JSON number rounded to kSignificantDigits; null when not finite.
json number(double x);

struct Table {
  std::string stem;
  std::vector<std::string> header;  // "name [unit]"
  std::vector<std::vector<double>> rows;
};

struct Plot {
  std::string stem;
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<double> x;
  std::vector<double> y;
};

std::string to_csv(const Table& table);
std::string to_svg(const Plot& plot);
std::string to_json_text(const json& doc);

// Output of one computation (one sweep point, or the whole run without a sweep).
struct PointResult {
  json summary = json::object();
  std::vector<Table> tables;
  std::vector<Plot> plots;
  std::vector<std::pair<std::string, double>> scalars;  // columns of the sweep summary
  bool verification_failed = false;
};

}  // namespace polariton::cli
