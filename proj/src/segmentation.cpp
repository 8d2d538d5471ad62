#include "tsad/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace tsad {
namespace {

constexpr double kZeroMeanEps = 1e-12;

// Prefix sums for O(1) range SSE during recursive splitting.
struct RangeStats {
    std::vector<double> sum;
    std::vector<double> sumsq;

    explicit RangeStats(const std::vector<double>& x)
        : sum(x.size() + 1, 0.0), sumsq(x.size() + 1, 0.0) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            sum[i + 1] = sum[i] + x[i];
            sumsq[i + 1] = sumsq[i] + x[i] * x[i];
        }
    }

    double range_sse(std::size_t l, std::size_t r) const {
        const double n = static_cast<double>(r - l);
        const double s = sum[r] - sum[l];
        return std::max(0.0, (sumsq[r] - sumsq[l]) - s * s / n);
    }

    double range_mean(std::size_t l, std::size_t r) const {
        return (sum[r] - sum[l]) / static_cast<double>(r - l);
    }

    double range_cv(std::size_t l, std::size_t r) const {
        const std::size_t n = r - l;
        const double ss = range_sse(l, r);
        const double std =
            n >= 2 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
        if (std == 0.0) return 0.0;
        const double m = std::abs(range_mean(l, r));
        if (m < kZeroMeanEps) return std::numeric_limits<double>::infinity();
        return std / m;
    }
};

Segment make_segment(const std::vector<double>& scores, std::size_t start,
                     std::size_t end) {
    Segment seg;
    seg.start = start;
    seg.end = end;
    std::vector<double> slice(scores.begin() + static_cast<std::ptrdiff_t>(start),
                              scores.begin() + static_cast<std::ptrdiff_t>(end));
    seg.mean = mean_of(slice);
    seg.std = sample_std(slice);
    return seg;
}

void split_recursive(const RangeStats& stats, std::size_t start, std::size_t end,
                     const ApcaParams& params,
                     std::vector<std::pair<std::size_t, std::size_t>>& out) {
    const std::size_t len = end - start;
    if (len < 2 * params.min_segment_length) {
        out.emplace_back(start, end);
        return;
    }
    double min_error = std::numeric_limits<double>::infinity();
    std::size_t best_split = 0;
    for (std::size_t p = start + params.min_segment_length;
         p <= end - params.min_segment_length; ++p) {
        const double err = stats.range_sse(start, p) + stats.range_sse(p, end);
        if (err < min_error) {  // strict: ties keep the smallest p
            min_error = err;
            best_split = p;
        }
    }
    const double no_split_error = stats.range_sse(start, end);
    const double cv = stats.range_cv(start, end);
    const double theta = cv >= params.high_variance_cv ? params.improvement_high
                                                       : params.improvement_moderate;
    if (min_error < no_split_error * theta) {
        split_recursive(stats, start, best_split, params, out);
        split_recursive(stats, best_split, end, params, out);
    } else {
        out.emplace_back(start, end);
    }
}

}  // namespace

KmeansParams KmeansParams::defaults_for(std::size_t n, std::size_t k,
                                        std::uint64_t seed) {
    KmeansParams p;
    p.k = k;
    p.window = std::max<std::size_t>(20, n / 50);
    p.stride = std::max<std::size_t>(1, p.window / 2);
    p.seed = seed;
    return p;
}

double coefficient_of_variation(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("empty sample");
    const double std = sample_std(values);
    if (std == 0.0) return 0.0;
    const double m = std::abs(mean_of(values));
    if (m < kZeroMeanEps) return std::numeric_limits<double>::infinity();
    return std / m;
}

double sse(const std::vector<double>& values) {
    if (values.empty()) return 0.0;
    const double m = mean_of(values);
    double acc = 0.0;
    for (double v : values) acc += (v - m) * (v - m);
    return acc;
}

std::array<double, 4> window_features(const std::vector<double>& window) {
    const std::size_t n = window.size();
    const double m = mean_of(window);
    const double s = sample_std(window);

    std::vector<double> sorted = window;
    std::sort(sorted.begin(), sorted.end());
    const double median = n % 2 == 1
                              ? sorted[n / 2]
                              : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

    // Fisher-Pearson skewness with population std.
    double pop_var = 0.0;
    for (double v : window) pop_var += (v - m) * (v - m);
    pop_var /= static_cast<double>(n);
    const double pop_std = std::sqrt(pop_var);
    double skew = 0.0;
    if (pop_std >= kZeroMeanEps) {
        for (double v : window) {
            const double z = (v - m) / pop_std;
            skew += z * z * z;
        }
        skew /= static_cast<double>(n);
    }
    return {m, s, median, skew};
}

std::vector<double> reduce_multidim(const std::vector<std::vector<double>>& data) {
    std::vector<double> out;
    out.reserve(data.size());
    for (const auto& row : data) {
        if (row.empty()) throw std::invalid_argument("empty row");
        double sum = 0.0;
        for (double v : row) sum += v;
        out.push_back(sum / static_cast<double>(row.size()));
    }
    return out;
}

std::vector<Segment> apca_segment(const std::vector<double>& scores,
                                  const ApcaParams& params) {
    const std::size_t n = scores.size();
    if (n == 0) throw std::invalid_argument("empty series");

    std::vector<Segment> segments;
    if (coefficient_of_variation(scores) < params.cv_flat_threshold) {
        // Flat series: fixed-length segments, last one absorbs the remainder.
        const std::size_t s = std::max<std::size_t>(200, n / 15);
        std::size_t start = 0;
        while (start < n) {
            std::size_t end = start + s;
            if (n - start < 2 * s) end = n;
            segments.push_back(make_segment(scores, start, end));
            start = end;
        }
        return segments;
    }

    RangeStats stats(scores);
    std::vector<std::pair<std::size_t, std::size_t>> ranges;
    split_recursive(stats, 0, n, params, ranges);
    segments.reserve(ranges.size());
    for (const auto& [l, r] : ranges) segments.push_back(make_segment(scores, l, r));
    return segments;
}

namespace {

using FeatureVec = std::array<double, 4>;

double sq_dist(const FeatureVec& a, const FeatureVec& b) {
    double d = 0.0;
    for (std::size_t j = 0; j < 4; ++j) {
        const double diff = a[j] - b[j];
        d += diff * diff;
    }
    return d;
}

std::vector<Segment> single_segment(const std::vector<double>& scores) {
    return {make_segment(scores, 0, scores.size())};
}

}  // namespace

std::vector<Segment> kmeans_segment(const std::vector<double>& scores,
                                    const KmeansParams& params) {
    const std::size_t n = scores.size();
    if (n == 0) throw std::invalid_argument("empty series");
    if (params.stride == 0 || params.stride > params.window)
        throw std::invalid_argument("stride must be in [1, window]");

    // Sliding windows; the final window is clipped, length-1 tails dropped.
    std::vector<std::pair<std::size_t, std::size_t>> windows;
    for (std::size_t o = 0; o < n; o += params.stride) {
        const std::size_t end = std::min(o + params.window, n);
        if (end - o >= 2) windows.emplace_back(o, end);
        if (end == n) break;
    }
    if (windows.size() < params.k || params.k < 2) return single_segment(scores);

    std::vector<FeatureVec> features;
    features.reserve(windows.size());
    for (const auto& [l, r] : windows) {
        std::vector<double> w(scores.begin() + static_cast<std::ptrdiff_t>(l),
                              scores.begin() + static_cast<std::ptrdiff_t>(r));
        features.push_back(window_features(w));
    }

    // Standardize feature columns; near-constant columns become all-zero.
    for (std::size_t j = 0; j < 4; ++j) {
        std::vector<double> col;
        col.reserve(features.size());
        for (const auto& f : features) col.push_back(f[j]);
        const double m = mean_of(col);
        const double s = sample_std(col);
        for (auto& f : features) f[j] = s < kZeroMeanEps ? 0.0 : (f[j] - m) / s;
    }

    std::vector<FeatureVec> distinct = features;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < params.k) return single_segment(scores);

    // Farthest-point seeding: random first center, then max-min-distance picks.
    std::mt19937_64 rng(params.seed);
    const std::size_t m = features.size();
    std::vector<FeatureVec> centers;
    centers.push_back(features[rng() % m]);
    std::vector<double> min_dist(m);
    while (centers.size() < params.k) {
        std::size_t best = 0;
        double best_d = -1.0;
        for (std::size_t i = 0; i < m; ++i) {
            double d = std::numeric_limits<double>::infinity();
            for (const auto& c : centers) d = std::min(d, sq_dist(features[i], c));
            if (d > best_d) {
                best_d = d;
                best = i;
            }
        }
        centers.push_back(features[best]);
    }

    std::vector<std::size_t> assign(m, 0);
    for (std::size_t iter = 0; iter < params.max_iters; ++iter) {
        bool changed = false;
        for (std::size_t i = 0; i < m; ++i) {
            std::size_t best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < centers.size(); ++c) {
                const double d = sq_dist(features[i], centers[c]);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            if (assign[i] != best) {
                assign[i] = best;
                changed = true;
            }
        }
        std::vector<FeatureVec> sums(params.k, FeatureVec{});
        std::vector<std::size_t> counts(params.k, 0);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < 4; ++j) sums[assign[i]][j] += features[i][j];
            counts[assign[i]]++;
        }
        for (std::size_t c = 0; c < params.k; ++c) {
            if (counts[c] == 0) {
                // Reseed an empty cluster with the point farthest from its center.
                std::size_t far = m;
                double far_d = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    const double d = sq_dist(features[i], centers[assign[i]]);
                    if (d > far_d) {
                        far_d = d;
                        far = i;
                    }
                }
                if (far == m) return single_segment(scores);
                centers[c] = features[far];
                assign[far] = c;
                counts[c] = 1;
                changed = true;
                continue;
            }
            for (std::size_t j = 0; j < 4; ++j)
                centers[c][j] = sums[c][j] / static_cast<double>(counts[c]);
        }
        if (!changed) break;
    }

    // Per-point label: majority over covering windows, earliest window on ties.
    std::vector<std::size_t> point_label(n, 0);
    std::size_t wi_lo = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (wi_lo < windows.size() && windows[wi_lo].second <= i) ++wi_lo;
        std::vector<std::size_t> votes(params.k, 0);
        std::size_t earliest = params.k;
        for (std::size_t w = wi_lo; w < windows.size() && windows[w].first <= i; ++w) {
            if (i < windows[w].second) {
                votes[assign[w]]++;
                if (earliest == params.k) earliest = assign[w];
            }
        }
        if (earliest == params.k) {
            // Uncovered tail point: inherit the previous point's label.
            point_label[i] = i > 0 ? point_label[i - 1] : 0;
            continue;
        }
        std::size_t best = earliest;
        for (std::size_t c = 0; c < params.k; ++c)
            if (votes[c] > votes[best]) best = c;
        point_label[i] = best;
    }

    // Runs of equal labels become segments; short runs merge left (first merges
    // forward).
    std::vector<std::pair<std::size_t, std::size_t>> runs;
    std::size_t run_start = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        if (i == n || point_label[i] != point_label[run_start]) {
            runs.emplace_back(run_start, i);
            run_start = i;
        }
    }
    std::vector<std::pair<std::size_t, std::size_t>> merged;
    for (const auto& run : runs) {
        if (run.second - run.first < params.min_segment_length && !merged.empty()) {
            merged.back().second = run.second;
        } else {
            merged.push_back(run);
        }
    }
    if (merged.size() >= 2 &&
        merged.front().second - merged.front().first < params.min_segment_length) {
        merged[1].first = merged[0].first;
        merged.erase(merged.begin());
    }

    std::vector<Segment> segments;
    segments.reserve(merged.size());
    for (const auto& [l, r] : merged) segments.push_back(make_segment(scores, l, r));
    return segments;
}

}  // namespace tsad
