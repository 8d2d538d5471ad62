#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "tsad/segmentation.hpp"

using namespace tsad;

namespace {

void check_partition(const std::vector<Segment>& segments, std::size_t n) {
    REQUIRE(!segments.empty());
    CHECK(segments.front().start == 0);
    CHECK(segments.back().end == n);
    for (std::size_t i = 0; i < segments.size(); ++i) {
        CHECK(segments[i].start < segments[i].end);
        if (i > 0) CHECK(segments[i].start == segments[i - 1].end);
    }
}

// Independent split oracle: exhaustive scan of sse(left) + sse(right).
std::size_t brute_force_split(const std::vector<double>& x, std::size_t min_len) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_p = min_len;
    for (std::size_t p = min_len; p + min_len <= x.size(); ++p) {
        const std::vector<double> left(x.begin(), x.begin() + (std::ptrdiff_t)p);
        const std::vector<double> right(x.begin() + (std::ptrdiff_t)p, x.end());
        const double err = sse(left) + sse(right);
        if (err < best) {
            best = err;
            best_p = p;
        }
    }
    return best_p;
}

}  // namespace

TEST_CASE("coefficient_of_variation") {
    CHECK(coefficient_of_variation({5, 5, 5}) == 0);
    CHECK(coefficient_of_variation({8, 12}) ==
          doctest::Approx(std::sqrt(8.0) / 10.0).epsilon(1e-12));
    CHECK(std::isinf(coefficient_of_variation({-1, 1})));  // zero-mean guard
    CHECK_THROWS_AS(coefficient_of_variation({}), std::invalid_argument);
}

TEST_CASE("sse") {
    CHECK(sse({1, 1, 1}) == 0);
    CHECK(sse({0, 2}) == doctest::Approx(2).epsilon(1e-12));
    CHECK(sse({1, 2, 3}) == doctest::Approx(2).epsilon(1e-12));
}

TEST_CASE("window_features") {
    const auto f = window_features({1, 2, 3, 4});
    CHECK(f[0] == doctest::Approx(2.5));
    CHECK(f[1] == doctest::Approx(std::sqrt(5.0 / 3.0)));
    CHECK(f[2] == doctest::Approx(2.5));
    CHECK(f[3] == doctest::Approx(0.0));

    const auto c = window_features({7, 7, 7});
    CHECK(c[0] == 7);
    CHECK(c[1] == 0);
    CHECK(c[2] == 7);
    CHECK(c[3] == 0);  // skew guard on zero spread

    const auto g = window_features({0, 0, 0, 4});
    CHECK(g[0] == doctest::Approx(1.0));
    CHECK(g[1] == doctest::Approx(2.0));
    CHECK(g[2] == doctest::Approx(0.0));
    CHECK(g[3] == doctest::Approx(1.1547).epsilon(1e-4));
}

TEST_CASE("reduce_multidim") {
    CHECK(reduce_multidim({{1, 3}, {2, 4}}) == std::vector<double>{2, 3});
    CHECK(reduce_multidim({{5}, {6}}) == std::vector<double>{5, 6});
    CHECK(reduce_multidim({{2, 2, 2}}) == std::vector<double>{2});
}

TEST_CASE("apca: flat series takes the fixed-length rule") {
    const std::vector<double> constant(3000, 42.0);
    const auto segments = apca_segment(constant, ApcaParams{});
    REQUIRE(segments.size() == 15);
    for (const auto& seg : segments) CHECK(seg.length() == 200);
    check_partition(segments, 3000);
}

TEST_CASE("apca: step series splits exactly at the step") {
    std::vector<double> step(1000, 0.0);
    for (std::size_t i = 500; i < 1000; ++i) step[i] = 100.0;
    const auto segments = apca_segment(step, ApcaParams{});
    REQUIRE(segments.size() == 2);
    CHECK(segments[0].end == 500);
    CHECK(segments[0].mean == doctest::Approx(0.0));
    CHECK(segments[1].mean == doctest::Approx(100.0));
}

TEST_CASE("apca: short variable series stays one segment") {
    const std::vector<double> x = {1, 10, 1, 10, 1, 10, 1, 10, 1, 10, 1, 10};
    REQUIRE(x.size() < 2 * ApcaParams{}.min_segment_length);
    const auto segments = apca_segment(x, ApcaParams{});
    CHECK(segments.size() == 1);
}

TEST_CASE("apca: first split matches the exhaustive sse oracle") {
    std::mt19937_64 rng(77);
    std::normal_distribution<double> noise(0.0, 0.5);
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t n = 200 + rng() % 600;
        const std::size_t change = n / 4 + rng() % (n / 2);
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i)
            x[i] = (i < change ? 0.0 : 20.0) + noise(rng);
        const std::size_t oracle = brute_force_split(x, 10);
        CHECK(std::llabs((long long)oracle - (long long)change) <= 1);

        const auto segments = apca_segment(x, ApcaParams{});
        bool has_boundary = false;
        for (const auto& seg : segments)
            if (std::llabs((long long)seg.start - (long long)change) <= 1)
                has_boundary = true;
        CHECK(has_boundary);
        check_partition(segments, n);
    }
}

TEST_CASE("apca: accepted splits never increase total sse") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> noise(10.0, 3.0);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> x(50 + rng() % 300);
        for (auto& v : x) v = noise(rng);
        const auto segments = apca_segment(x, ApcaParams{});
        check_partition(segments, x.size());
        double total = 0.0;
        for (const auto& seg : segments) {
            std::vector<double> slice(x.begin() + (std::ptrdiff_t)seg.start,
                                      x.begin() + (std::ptrdiff_t)seg.end);
            total += sse(slice);
        }
        CHECK(total <= sse(x) + 1e-6);
    }
}

TEST_CASE("kmeans: degenerate inputs fall back to one segment") {
    KmeansParams params = KmeansParams::defaults_for(2000, 2, 1);
    const std::vector<double> constant(2000, 5.0);
    CHECK(kmeans_segment(constant, params).size() == 1);

    // One clipped window: fewer feature vectors than k.
    KmeansParams small = KmeansParams::defaults_for(30, 5, 1);
    small.window = 50;
    small.stride = 25;
    std::vector<double> x(30);
    for (std::size_t i = 0; i < 30; ++i) x[i] = (double)(i % 7);
    CHECK(kmeans_segment(x, small).size() == 1);
}

TEST_CASE("kmeans: two well-separated levels give two segments") {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> noise(0.0, 0.05);
    std::vector<double> x(2000);
    for (std::size_t i = 0; i < 2000; ++i)
        x[i] = (i < 1000 ? 0.0 : 50.0) + noise(rng);
    KmeansParams params;
    params.k = 2;
    params.window = 50;
    params.stride = 25;
    params.seed = 4;
    // The window straddling the jump is a feature outlier; a minimum segment
    // length above the stride folds its short run into a neighbor.
    params.min_segment_length = 30;
    const auto segments = kmeans_segment(x, params);
    check_partition(segments, 2000);
    REQUIRE(segments.size() == 2);
    CHECK(std::llabs((long long)segments[0].end - 1000) <= 50);
}

TEST_CASE("kmeans: deterministic for a fixed seed, partitions random input") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> dist(0, 100);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> x(100 + rng() % 800);
        for (auto& v : x) v = dist(rng);
        KmeansParams params = KmeansParams::defaults_for(x.size(), 3, 123);
        const auto a = kmeans_segment(x, params);
        const auto b = kmeans_segment(x, params);
        check_partition(a, x.size());
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].start == b[i].start);
            CHECK(a[i].end == b[i].end);
        }
    }
}

TEST_CASE("segment stats recompute from covered scores") {
    std::mt19937_64 rng(41);
    std::normal_distribution<double> noise(3.0, 2.0);
    std::vector<double> x(600);
    for (auto& v : x) v = noise(rng);
    for (const auto& seg : apca_segment(x, ApcaParams{})) {
        std::vector<double> slice(x.begin() + (std::ptrdiff_t)seg.start,
                                  x.begin() + (std::ptrdiff_t)seg.end);
        CHECK(seg.mean == doctest::Approx(mean_of(slice)).epsilon(1e-12));
        CHECK(seg.std == doctest::Approx(sample_std(slice)).epsilon(1e-12));
    }
}
