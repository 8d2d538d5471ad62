#include <cmath>
#include <random>

#include "doctest.h"
#include "tsad/bounds.hpp"

using namespace tsad;

TEST_CASE("bound_width: confidence-level multipliers") {
    CHECK(bound_width(2.0, 0.99) == doctest::Approx(3.6).epsilon(1e-12));
    CHECK(bound_width(2.0, 0.92) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(bound_width(2.0, 0.85) == doctest::Approx(2.4).epsilon(1e-12));
    CHECK(bound_width(0.0, 0.99) == 0);
    // Boundaries are strict: 0.95 and 0.90 both take the middle branch.
    CHECK(bound_width(2.0, 0.95) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(bound_width(2.0, 0.90) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("band_for: hand-worked examples") {
    const auto flat = band_for({4, 4, 4}, 0.99);
    CHECK(flat.lower == 4);
    CHECK(flat.upper == 4);

    const auto mid = band_for({0, 2}, 0.95);
    CHECK(mid.width == doctest::Approx(1.5 * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(mid.lower == doctest::Approx(1.0 - 1.5 * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(mid.upper == doctest::Approx(1.0 + 1.5 * std::sqrt(2.0)).epsilon(1e-12));

    const auto wide = band_for({0, 2}, 0.99);
    CHECK(wide.width == doctest::Approx(1.8 * std::sqrt(2.0)).epsilon(1e-12));

    CHECK_THROWS_AS(band_for({}, 0.95), std::invalid_argument);
}

TEST_CASE("band_for: contains mean, translation equivariant") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> dist(-50, 50);
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<double> values(2 + rng() % 50);
        for (auto& v : values) v = dist(rng);
        const double conf = 0.5 + 0.49 * dist(rng) / 50.0;
        const auto band = band_for(values, conf);
        const double m = mean_of(values);
        CHECK(band.lower <= m);
        CHECK(band.upper >= m);

        std::vector<double> shifted = values;
        for (auto& v : shifted) v += 12.25;
        const auto band2 = band_for(shifted, conf);
        CHECK(band2.lower == doctest::Approx(band.lower + 12.25).epsilon(1e-9));
        CHECK(band2.upper == doctest::Approx(band.upper + 12.25).epsilon(1e-9));
    }
}

TEST_CASE("bound_width: monotone in std") {
    for (double conf : {0.85, 0.92, 0.99}) {
        double prev = bound_width(0.0, conf);
        for (double s = 0.1; s < 5.0; s += 0.1) {
            const double w = bound_width(s, conf);
            CHECK(w >= prev);
            prev = w;
        }
    }
}
