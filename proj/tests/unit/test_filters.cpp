#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "pour/errors.hpp"
#include "pour/signal/filters.hpp"

using namespace pour;
using namespace pour::signal;

TEST_CASE("downsample index map oracle") {
    // constant invariance
    std::vector<double> constant(1000, 0.3);
    auto out = downsample_force(constant);
    CHECK(out.size() == 60);
    for (double v : out) CHECK(v == 0.3);

    // ramp: output k reads input round(k * 1000/60); k=1 -> index 17
    std::vector<double> ramp(1000);
    for (std::size_t i = 0; i < ramp.size(); ++i) ramp[i] = static_cast<double>(i);
    out = downsample_force(ramp);
    CHECK(out.size() == 60);
    CHECK(out[0] == 0.0);
    CHECK(out[1] == 17.0);
    for (std::size_t k = 0; k < out.size(); ++k) {
        const auto idx = static_cast<std::size_t>(std::llround(k * 1000.0 / 60.0));
        CHECK(out[k] == ramp[std::min(idx, ramp.size() - 1)]);
    }

    CHECK(downsample_force({4.2}) == std::vector<double>{4.2});
    CHECK_THROWS_AS(downsample_force({}), insufficient_data_error);
}

TEST_CASE("causal median filter") {
    CHECK(causal_median_filter({1, 1, 9, 1, 1}) == 1.0);
    CHECK(causal_median_filter({2}) == 2.0);
    // sort-based oracle for the window [0,1,2,3,100]
    {
        std::vector<double> tail = {0, 1, 2, 3, 100};
        std::sort(tail.begin(), tail.end());
        CHECK(causal_median_filter({0, 1, 2, 3, 100}) == tail[2]);
        CHECK(causal_median_filter({0, 1, 2, 3, 100}) == 2.0);
    }
    // window never looks past the last min(5, t) samples
    CHECK(causal_median_filter({100, 100, 100, 0, 0, 0, 1, 1, 1}) == 1.0);
    CHECK_THROWS_AS(causal_median_filter({}), insufficient_data_error);
}

TEST_CASE("causal gaussian filter kernel-sum oracle") {
    // constant invariance: weights sum to one
    std::vector<double> constant(40, 3.7);
    CHECK(causal_gaussian_filter(constant) == doctest::Approx(3.7).epsilon(1e-12));

    // impulse at t: output is w_0 = 1 / sum_{i=0..8} exp(-i^2/8)
    double norm = 0.0;
    for (int i = 0; i <= 8; ++i) norm += std::exp(-i * i / 8.0);
    const double w0 = 1.0 / norm;
    CHECK(w0 == doctest::Approx(0.3326032).epsilon(1e-6));
    std::vector<double> impulse(20, 0.0);
    impulse.back() = 1.0;
    CHECK(causal_gaussian_filter(impulse) == doctest::Approx(w0).epsilon(1e-12));

    CHECK(causal_gaussian_filter({0.42}) == doctest::Approx(0.42).epsilon(1e-15));
}

TEST_CASE("filters are causal: prefix extension never changes past outputs") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> series;
    std::vector<double> med_out, gauss_out;
    for (int t = 0; t < 120; ++t) {
        series.push_back(u(rng));
        med_out.push_back(causal_median_filter(series));
        gauss_out.push_back(causal_gaussian_filter(series));
    }
    // mutate the future, recompute past outputs from prefixes
    for (int t = 0; t < 120; t += 17) {
        std::vector<double> prefix(series.begin(), series.begin() + t + 1);
        CHECK(causal_median_filter(prefix) == med_out[t]);
        CHECK(causal_gaussian_filter(prefix) == gauss_out[t]);
    }
}

TEST_CASE("filters are convex combinations of their window") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<double> series;
    for (int t = 0; t < 200; ++t) {
        series.push_back(u(rng));
        const double lo = *std::min_element(series.begin(), series.end());
        const double hi = *std::max_element(series.begin(), series.end());
        const double med = causal_median_filter(series);
        const double gau = causal_gaussian_filter(series);
        CHECK(med >= lo);
        CHECK(med <= hi);
        CHECK(gau >= lo - 1e-12);
        CHECK(gau <= hi + 1e-12);
    }
}

TEST_CASE("streaming chain equals prefix functions") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    StreamingForceFilter chain;
    std::vector<double> raw, medians;
    for (int t = 0; t < 300; ++t) {
        raw.push_back(u(rng));
        const double streamed = chain.push(raw.back());
        medians.push_back(causal_median_filter(raw));
        CHECK(streamed == doctest::Approx(causal_gaussian_filter(medians)).epsilon(1e-12));
    }
    chain.reset();
    CHECK(chain.push(0.5) == doctest::Approx(0.5).epsilon(1e-15));
}
