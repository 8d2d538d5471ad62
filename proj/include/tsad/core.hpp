#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tsad {

struct SeriesSample {
    std::size_t index = 0;
    std::string timestamp;  // opaque, carried through from input
    double value = 0.0;
};

struct Series {
    std::vector<SeriesSample> samples;

    std::size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }

    std::vector<double> values() const;
};

struct ScoreSeries {
    std::vector<double> scores;
    std::string scorer_id;

    std::size_t size() const { return scores.size(); }
};

enum class Label : std::uint8_t { normal = 0, anomalous = 1 };

struct LabelSeries {
    std::vector<Label> labels;

    std::size_t size() const { return labels.size(); }
};

struct ConfidenceBand {
    double lower = 0.0;
    double upper = 0.0;
    double width = 0.0;
};

// Half-open index range [start, end) with its local score statistics.
struct Segment {
    std::size_t start = 0;
    std::size_t end = 0;
    double mean = 0.0;
    double std = 0.0;
    ConfidenceBand band;

    std::size_t length() const { return end - start; }
    bool contains(std::size_t i) const { return i >= start && i < end; }
};

struct AttentionWeights {
    double w_short = 0.0;
    double w_medium = 0.0;
    double w_long = 0.0;
};

struct ConfusionCounts {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t tn = 0;
    std::uint64_t fn = 0;

    std::uint64_t total() const { return tp + fp + tn + fn; }
    bool operator==(const ConfusionCounts&) const = default;
};

struct MetricSet {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    bool operator==(const MetricSet&) const = default;
};

enum class SegmentationMethod { apca, kmeans };

struct WindowSet {
    std::size_t short_w = 50;
    std::size_t medium_w = 100;
    std::size_t long_w = 500;
};

struct RunConfig {
    double confidence_level = 0.99;
    SegmentationMethod segmentation_method = SegmentationMethod::apca;
    std::size_t n_segments = 5;
    std::size_t min_segment_length = 10;
    WindowSet windows;
    std::optional<double> filter_percentile;  // absent = filter disabled
    double baseline_percentile = 0.99;
    std::string scorer_id = "abs_diff";
    std::uint64_t seed = 0;

    void validate() const;
};

double mean_of(const std::vector<double>& values);

// Sample standard deviation (n-1 denominator); 0 for n <= 1.
double sample_std(const std::vector<double>& values);

// Linear interpolation between closest ranks: rank r = p*(n-1) on the
// ascending sort, result v[floor(r)] + frac*(v[ceil(r)] - v[floor(r)]).
double percentile(std::vector<double> values, double p);

}  // namespace tsad
