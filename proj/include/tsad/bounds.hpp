#pragma once

#include <vector>

#include "tsad/core.hpp"

namespace tsad {

// 1.5 * std, scaled x1.2 above 95% confidence and x0.8 below 90%.
double bound_width(double std_score, double confidence_level);

ConfidenceBand band_for(const std::vector<double>& values, double confidence_level);

ConfidenceBand band_from_stats(double mean, double std, double confidence_level);

}  // namespace tsad
