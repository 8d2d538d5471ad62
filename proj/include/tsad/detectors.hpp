#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "tsad/core.hpp"

namespace tsad {

struct Verdicts {
    std::vector<std::uint8_t> raw_anomaly;
    std::vector<std::uint8_t> percentile_pass;
    std::vector<std::uint8_t> final_anomaly;

    // Per-point decision band, for traces (baseline has no lower bound).
    std::vector<double> lower;
    std::vector<double> upper;

    // Diagnostics: segment ids (SCS) or weights/regime flags (MACS).
    std::vector<std::size_t> segment_id;
    std::vector<AttentionWeights> weights;
    std::vector<std::uint8_t> regime;

    std::size_t size() const { return final_anomaly.size(); }
    std::vector<std::size_t> anomaly_indices() const;
};

// --- baseline percentile rule ---

double baseline_fit(const std::vector<double>& train_scores, double p = 0.99);

Verdicts baseline_detect(const std::vector<double>& scores, double threshold);

// Mask of scores strictly above a threshold materialized from the fit data.
std::vector<std::uint8_t> percentile_filter(const std::vector<double>& scores,
                                            double threshold);

// --- SCS ---

struct ScsModel {
    std::vector<Segment> segments;
    double confidence_level = 0.99;
    std::optional<double> filter_percentile;
    std::optional<double> filter_threshold;
    std::size_t fitted_n = 0;
    std::size_t min_segment_length = 10;

    const Segment& segment_at(std::size_t index, std::size_t* id = nullptr) const;
};

ScsModel scs_fit(const std::vector<double>& scores, const RunConfig& config);

Verdicts scs_detect(const std::vector<double>& scores, const ScsModel& model);

// Streaming continuation past the fitted range: new points append to the last
// segment, whose band is recomputed over a tail capped at
// 10 * min_segment_length points.
class ScsStream {
  public:
    ScsStream(ScsModel model, const std::vector<double>& fit_scores);

    struct Point {
        bool raw_anomaly = false;
        bool percentile_pass = true;
        bool final_anomaly = false;
        std::size_t segment_id = 0;
        ConfidenceBand band;
    };

    Point push(double score);
    const ScsModel& model() const { return model_; }

  private:
    ScsModel model_;
    std::deque<double> tail_;
};

// --- MACS ---

Verdicts macs_detect(const std::vector<double>& scores, const RunConfig& config);

// Weight table keyed by min-max-normalized local variance.
AttentionWeights attention_weights(double normalized_variance);

}  // namespace tsad
