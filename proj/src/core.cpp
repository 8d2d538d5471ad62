#include "tsad/core.hpp"

#include <algorithm>
#include <cmath>

namespace tsad {

std::vector<double> Series::values() const {
    std::vector<double> out;
    out.reserve(samples.size());
    for (const auto& s : samples) out.push_back(s.value);
    return out;
}

void RunConfig::validate() const {
    if (!(confidence_level > 0.0 && confidence_level < 1.0))
        throw std::invalid_argument("confidence out of range (0,1)");
    if (n_segments == 0) throw std::invalid_argument("n_segments must be positive");
    if (min_segment_length == 0)
        throw std::invalid_argument("min_segment_length must be positive");
    if (!(windows.short_w > 0 && windows.short_w < windows.medium_w &&
          windows.medium_w < windows.long_w))
        throw std::invalid_argument("windows must be strictly increasing");
    if (filter_percentile &&
        !(*filter_percentile > 0.0 && *filter_percentile < 1.0))
        throw std::invalid_argument("filter percentile out of range (0,1)");
    if (!(baseline_percentile > 0.0 && baseline_percentile < 1.0))
        throw std::invalid_argument("baseline percentile out of range (0,1)");
}

double mean_of(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("empty sample");
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

double sample_std(const std::vector<double>& values) {
    const std::size_t n = values.size();
    if (n <= 1) return 0.0;
    const double m = mean_of(values);
    double ss = 0.0;
    for (double v : values) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(n - 1));
}

double percentile(std::vector<double> values, double p) {
    if (values.empty()) throw std::invalid_argument("empty sample");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("percentile p out of [0,1]");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    const double rank = p * static_cast<double>(n - 1);
    const auto lo = static_cast<std::size_t>(std::floor(rank));
    const auto hi = static_cast<std::size_t>(std::ceil(rank));
    const double frac = rank - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

}  // namespace tsad
