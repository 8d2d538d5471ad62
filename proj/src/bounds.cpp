#include "tsad/bounds.hpp"

namespace tsad {

double bound_width(double std_score, double confidence_level) {
    const double base = 1.5 * std_score;
    if (confidence_level > 0.95) return base * 1.2;
    if (confidence_level < 0.90) return base * 0.8;
    return base;
}

ConfidenceBand band_from_stats(double mean, double std, double confidence_level) {
    ConfidenceBand band;
    band.width = bound_width(std, confidence_level);
    band.lower = mean - band.width;
    band.upper = mean + band.width;
    return band;
}

ConfidenceBand band_for(const std::vector<double>& values, double confidence_level) {
    if (values.empty()) throw std::invalid_argument("empty sample");
    return band_from_stats(mean_of(values), sample_std(values), confidence_level);
}

}  // namespace tsad
