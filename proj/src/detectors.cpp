#include "tsad/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tsad/bounds.hpp"
#include "tsad/segmentation.hpp"

namespace tsad {

std::vector<std::size_t> Verdicts::anomaly_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < final_anomaly.size(); ++i)
        if (final_anomaly[i]) out.push_back(i);
    return out;
}

double baseline_fit(const std::vector<double>& train_scores, double p) {
    if (train_scores.empty()) throw std::invalid_argument("empty train split");
    return percentile(train_scores, p);
}

Verdicts baseline_detect(const std::vector<double>& scores, double threshold) {
    if (!std::isfinite(threshold))
        throw std::invalid_argument("non-finite threshold");
    Verdicts v;
    const std::size_t n = scores.size();
    v.raw_anomaly.resize(n);
    v.percentile_pass.assign(n, 1);
    v.final_anomaly.resize(n);
    v.lower.assign(n, -std::numeric_limits<double>::infinity());
    v.upper.assign(n, threshold);
    for (std::size_t t = 0; t < n; ++t) {
        v.raw_anomaly[t] = scores[t] > threshold ? 1 : 0;
        v.final_anomaly[t] = v.raw_anomaly[t];
    }
    return v;
}

std::vector<std::uint8_t> percentile_filter(const std::vector<double>& scores,
                                            double threshold) {
    std::vector<std::uint8_t> mask(scores.size());
    for (std::size_t t = 0; t < scores.size(); ++t)
        mask[t] = scores[t] > threshold ? 1 : 0;
    return mask;
}

const Segment& ScsModel::segment_at(std::size_t index, std::size_t* id) const {
    // Points past the fitted range belong to the last segment.
    std::size_t lo = 0, hi = segments.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (segments[mid].end <= index)
            lo = mid + 1;
        else
            hi = mid;
    }
    if (id) *id = lo;
    return segments[lo];
}

ScsModel scs_fit(const std::vector<double>& scores, const RunConfig& config) {
    if (scores.empty()) throw std::invalid_argument("empty series");
    ScsModel model;
    model.confidence_level = config.confidence_level;
    model.filter_percentile = config.filter_percentile;
    model.fitted_n = scores.size();
    model.min_segment_length = config.min_segment_length;

    if (config.segmentation_method == SegmentationMethod::apca) {
        ApcaParams params;
        params.min_segment_length = config.min_segment_length;
        model.segments = apca_segment(scores, params);
    } else {
        KmeansParams params = KmeansParams::defaults_for(
            scores.size(), config.n_segments, config.seed);
        params.min_segment_length = config.min_segment_length;
        model.segments = kmeans_segment(scores, params);
    }
    for (auto& seg : model.segments)
        seg.band = band_from_stats(seg.mean, seg.std, config.confidence_level);
    if (config.filter_percentile)
        model.filter_threshold = percentile(scores, *config.filter_percentile);
    return model;
}

Verdicts scs_detect(const std::vector<double>& scores, const ScsModel& model) {
    if (model.segments.empty()) throw std::invalid_argument("model not fitted");
    Verdicts v;
    const std::size_t n = scores.size();
    v.raw_anomaly.resize(n);
    v.percentile_pass.resize(n);
    v.final_anomaly.resize(n);
    v.lower.resize(n);
    v.upper.resize(n);
    v.segment_id.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        std::size_t id = 0;
        const Segment& seg = model.segment_at(t, &id);
        v.segment_id[t] = id;
        v.lower[t] = seg.band.lower;
        v.upper[t] = seg.band.upper;
        const bool raw = scores[t] < seg.band.lower || scores[t] > seg.band.upper;
        const bool pass =
            !model.filter_threshold || scores[t] > *model.filter_threshold;
        v.raw_anomaly[t] = raw ? 1 : 0;
        v.percentile_pass[t] = pass ? 1 : 0;
        v.final_anomaly[t] = (raw && pass) ? 1 : 0;
    }
    return v;
}

ScsStream::ScsStream(ScsModel model, const std::vector<double>& fit_scores)
    : model_(std::move(model)) {
    const Segment& last = model_.segments.back();
    const std::size_t cap = 10 * model_.min_segment_length;
    const std::size_t take = std::min(last.length(), cap);
    for (std::size_t i = last.end - take; i < last.end; ++i)
        tail_.push_back(fit_scores[i]);
}

ScsStream::Point ScsStream::push(double score) {
    Segment& last = model_.segments.back();
    Point p;
    p.segment_id = model_.segments.size() - 1;
    p.band = last.band;
    p.raw_anomaly = score < last.band.lower || score > last.band.upper;
    p.percentile_pass =
        !model_.filter_threshold || score > *model_.filter_threshold;
    p.final_anomaly = p.raw_anomaly && p.percentile_pass;

    tail_.push_back(score);
    const std::size_t cap = 10 * model_.min_segment_length;
    while (tail_.size() > cap) tail_.pop_front();
    std::vector<double> window(tail_.begin(), tail_.end());
    last.mean = mean_of(window);
    last.std = sample_std(window);
    last.band = band_from_stats(last.mean, last.std, model_.confidence_level);
    last.end += 1;
    return p;
}

AttentionWeights attention_weights(double normalized_variance) {
    if (normalized_variance > 0.7) return {0.6, 0.3, 0.1};
    if (normalized_variance > 0.3) return {0.2, 0.6, 0.2};
    return {0.1, 0.3, 0.6};
}

namespace {

struct Prefix {
    std::vector<double> sum;
    std::vector<double> sumsq;

    explicit Prefix(const std::vector<double>& x)
        : sum(x.size() + 1, 0.0), sumsq(x.size() + 1, 0.0) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            sum[i + 1] = sum[i] + x[i];
            sumsq[i + 1] = sumsq[i] + x[i] * x[i];
        }
    }

    double mean(std::size_t l, std::size_t r) const {
        return (sum[r] - sum[l]) / static_cast<double>(r - l);
    }

    double var(std::size_t l, std::size_t r) const {
        const std::size_t n = r - l;
        if (n < 2) return 0.0;
        const double s = sum[r] - sum[l];
        const double ss = (sumsq[r] - sumsq[l]) - s * s / static_cast<double>(n);
        return std::max(0.0, ss) / static_cast<double>(n - 1);
    }

    double std(std::size_t l, std::size_t r) const { return std::sqrt(var(l, r)); }
};

}  // namespace

Verdicts macs_detect(const std::vector<double>& scores, const RunConfig& config) {
    const std::size_t n = scores.size();
    if (n < 2) throw std::invalid_argument("series too short");
    const std::size_t ws[3] = {config.windows.short_w, config.windows.medium_w,
                               config.windows.long_w};
    const Prefix pre(scores);

    // Rolling local variance, min-max normalized over the whole series so the
    // attention cutoffs are scale-free.
    const std::size_t var_w =
        std::max<std::size_t>(1, std::min(config.windows.short_w, n / 10));
    std::vector<double> local_var(n);
    for (std::size_t t = 0; t < n; ++t) {
        const std::size_t m = std::min(var_w, t + 1);
        local_var[t] = pre.var(t + 1 - m, t + 1);
    }
    const auto [vmin_it, vmax_it] =
        std::minmax_element(local_var.begin(), local_var.end());
    const double vmin = *vmin_it, vmax = *vmax_it;
    const double vspan = vmax - vmin;

    std::optional<double> filter_threshold;
    if (config.filter_percentile)
        filter_threshold = percentile(scores, *config.filter_percentile);

    Verdicts v;
    v.raw_anomaly.resize(n);
    v.percentile_pass.resize(n);
    v.final_anomaly.resize(n);
    v.lower.resize(n);
    v.upper.resize(n);
    v.weights.resize(n);
    v.regime.resize(n);

    const std::size_t regime_start = ws[2] + ws[0];
    for (std::size_t t = 0; t < n; ++t) {
        const double norm_var =
            vspan > 0.0 ? (local_var[t] - vmin) / vspan : 0.0;
        const AttentionWeights aw = attention_weights(norm_var);
        const double weight_of[3] = {aw.w_short, aw.w_medium, aw.w_long};
        v.weights[t] = aw;

        // Per-scale bands over strictly-past trailing windows.
        double combined_lower = 0.0, combined_upper = 0.0, active_weight = 0.0;
        std::size_t violations = 0;
        bool any_active = false;
        for (std::size_t i = 0; i < 3; ++i) {
            const std::size_t m = std::min(ws[i], t);
            if (m < 2) continue;  // warm-up: no verdict from this scale
            const ConfidenceBand band = band_from_stats(
                pre.mean(t - m, t), pre.std(t - m, t), config.confidence_level);
            combined_lower += weight_of[i] * band.lower;
            combined_upper += weight_of[i] * band.upper;
            active_weight += weight_of[i];
            if (scores[t] < band.lower || scores[t] > band.upper) ++violations;
            any_active = true;
        }
        bool attention_anomaly = false;
        if (any_active) {
            combined_lower /= active_weight;
            combined_upper /= active_weight;
            attention_anomaly =
                scores[t] < combined_lower || scores[t] > combined_upper;
            v.lower[t] = combined_lower;
            v.upper[t] = combined_upper;
        } else {
            v.lower[t] = scores[t];
            v.upper[t] = scores[t];
        }

        // CUSUM-style regime check: short window ending at t against the long
        // window ending at t - short.
        bool regime = false;
        if (t >= regime_start) {
            const double cur_mean = pre.mean(t + 1 - ws[0], t + 1);
            const double cur_std = pre.std(t + 1 - ws[0], t + 1);
            const std::size_t hist_end = t + 1 - ws[0];
            const double hist_mean = pre.mean(hist_end - ws[2], hist_end);
            const double hist_std = pre.std(hist_end - ws[2], hist_end);
            const double denom = hist_std + 1e-8;
            const double mean_change = (cur_mean - hist_mean) / denom;
            const double std_change = (cur_std - hist_std) / denom;
            regime = std::abs(mean_change) > 2.0 || std::abs(std_change) > 1.5;
        }
        v.regime[t] = regime ? 1 : 0;

        const bool raw =
            regime ? (violations >= 2 && attention_anomaly) : attention_anomaly;
        const bool pass = !filter_threshold || scores[t] > *filter_threshold;
        v.raw_anomaly[t] = raw ? 1 : 0;
        v.percentile_pass[t] = pass ? 1 : 0;
        v.final_anomaly[t] = (raw && pass) ? 1 : 0;
    }
    return v;
}

}  // namespace tsad
