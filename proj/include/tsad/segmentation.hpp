#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "tsad/core.hpp"

namespace tsad {

struct ApcaParams {
    std::size_t min_segment_length = 10;
    double cv_flat_threshold = 0.1;
    double improvement_high = 0.7;
    double improvement_moderate = 0.5;
    double high_variance_cv = 0.5;
};

struct KmeansParams {
    std::size_t k = 5;
    std::size_t window = 20;
    std::size_t stride = 10;
    std::size_t max_iters = 100;
    std::size_t min_segment_length = 10;
    std::uint64_t seed = 0;

    // k = 5, window = max(20, n/50), stride = window/2.
    static KmeansParams defaults_for(std::size_t n, std::size_t k, std::uint64_t seed);
};

// std/|mean|; 0 for zero spread, +inf sentinel ("not flat") for zero mean.
double coefficient_of_variation(const std::vector<double>& values);

// Sum of squared deviations from the mean.
double sse(const std::vector<double>& values);

// (mean, sample std, median, Fisher-Pearson skewness with population std).
std::array<double, 4> window_features(const std::vector<double>& window);

// Row-wise mean; identity for d = 1.
std::vector<double> reduce_multidim(const std::vector<std::vector<double>>& data);

std::vector<Segment> apca_segment(const std::vector<double>& scores,
                                  const ApcaParams& params);

std::vector<Segment> kmeans_segment(const std::vector<double>& scores,
                                    const KmeansParams& params);

}  // namespace tsad
