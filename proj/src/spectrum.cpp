#include "polariton/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "polariton/errors.hpp"

namespace polariton {

SpectrumSeries::SpectrumSeries(std::vector<double> frequencies, std::vector<double> intensities)
    : freq_(std::move(frequencies)), inten_(std::move(intensities)) {
  if (freq_.size() != inten_.size())
    throw ConfigError("SpectrumSeries: frequency and intensity lengths differ");
  for (std::size_t i = 1; i < freq_.size(); ++i)
    if (!(freq_[i] > freq_[i - 1])) throw ConfigError("SpectrumSeries: frequencies not ascending");
  for (double v : inten_)
    if (!(v >= 0.0)) throw ConfigError("SpectrumSeries: negative or NaN intensity");
}

double SpectrumSeries::bin_width() const {
  double w = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < freq_.size(); ++i) w = std::min(w, freq_[i] - freq_[i - 1]);
  return w;
}

double SpectrumSeries::total() const { return std::accumulate(inten_.begin(), inten_.end(), 0.0); }

double SpectrumSeries::argmax() const {
  if (inten_.empty()) throw ConfigError("SpectrumSeries: empty");
  return freq_[std::max_element(inten_.begin(), inten_.end()) - inten_.begin()];
}

PeakReport peak_splitting(const SpectrumSeries& spectrum, double prominence_floor) {
  const auto& f = spectrum.frequencies();
  const auto& y = spectrum.intensities();
  if (y.size() < 3) throw ConfigError("peak_splitting: need at least 3 samples");
  PeakReport report;
  const double top = *std::max_element(y.begin(), y.end());
  if (!(top > 0.0)) return report;
  const double floor = prominence_floor * top;
  const std::size_t n = y.size();

  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(y[i] > y[i - 1] && y[i] > y[i + 1]) || y[i] < floor) continue;
    // Topographic prominence: descend each side until a higher sample.
    double left_min = y[i];
    for (std::size_t k = i; k-- > 0;) {
      if (y[k] > y[i]) break;
      left_min = std::min(left_min, y[k]);
    }
    double right_min = y[i];
    for (std::size_t k = i + 1; k < n; ++k) {
      if (y[k] > y[i]) break;
      right_min = std::min(right_min, y[k]);
    }
    if (y[i] - std::max(left_min, right_min) < floor) continue;

    const double ym = y[i - 1], y0 = y[i], yp = y[i + 1];
    const double denom = ym - 2.0 * y0 + yp;
    double delta = denom != 0.0 ? 0.5 * (ym - yp) / denom : 0.0;
    delta = std::clamp(delta, -0.5, 0.5);
    const double step = delta >= 0.0 ? f[i + 1] - f[i] : f[i] - f[i - 1];
    report.frequencies.push_back(f[i] + delta * step);
    report.heights.push_back(y0 - 0.25 * (ym - yp) * delta);
  }

  if (report.frequencies.size() == 2) {
    report.status = PeakStatus::split;
    report.splitting = report.frequencies[1] - report.frequencies[0];
  } else if (report.frequencies.size() > 2) {
    report.status = PeakStatus::multi_peak;
  }
  return report;
}

const char* to_string(PeakStatus status) {
  switch (status) {
    case PeakStatus::split: return "split";
    case PeakStatus::no_splitting: return "no-splitting";
    case PeakStatus::multi_peak: return "multi-peak";
  }
  return "unknown";
}

}  // namespace polariton
