#pragma once

#include <optional>
#include <vector>

namespace polariton {

/// Sampled spectrum: ascending frequencies, non-negative intensities.
class SpectrumSeries {
 public:
  SpectrumSeries() = default;
  /// Throws ConfigError on unequal lengths, non-ascending frequencies or
  /// negative intensities.
  SpectrumSeries(std::vector<double> frequencies, std::vector<double> intensities);

  const std::vector<double>& frequencies() const { return freq_; }
  const std::vector<double>& intensities() const { return inten_; }
  std::size_t size() const { return freq_.size(); }

  /// Smallest grid spacing.
  double bin_width() const;
  double total() const;
  /// Frequency of the largest intensity.
  double argmax() const;

 private:
  std::vector<double> freq_;
  std::vector<double> inten_;
};

enum class PeakStatus { split, no_splitting, multi_peak };

struct PeakReport {
  std::vector<double> frequencies;  // ascending, parabolically refined
  std::vector<double> heights;
  std::optional<double> splitting;  // set iff exactly two peaks
  PeakStatus status = PeakStatus::no_splitting;
};

inline constexpr double kDefaultProminenceFloor = 0.01;

/// Strict interior local maxima whose height and topographic prominence both
/// reach `prominence_floor` times the global maximum.
PeakReport peak_splitting(const SpectrumSeries& spectrum,
                          double prominence_floor = kDefaultProminenceFloor);

const char* to_string(PeakStatus status);

}  // namespace polariton
