#include <doctest.h>

#include <cmath>
#include <random>

#include "pour/container.hpp"
#include "pour/errors.hpp"
#include "pour/units.hpp"

using namespace pour;

TEST_CASE("physical constants") {
    PhysicalConstants c;
    CHECK(c.water_density_g_per_ml == 0.997);
    CHECK(c.gravity_m_per_s2 == 9.80665);
    CHECK(c.lbf_to_newton == 4.4482216152605);
    CHECK(c.sample_rate_hz == 60.0);
    CHECK(std::abs(c.dt_s * c.sample_rate_hz - 1.0) < 1e-12);
}

TEST_CASE("weight_to_volume hand conversion oracle") {
    // 1 lbf -> 4.4482216152605 N -> 0.45359237 kg -> 453.59237 g of water
    // at 0.997 g/mL -> 454.957242... mL
    const double grams = 4.4482216152605 / 9.80665 * 1000.0;
    CHECK(grams == doctest::Approx(453.59237).epsilon(1e-12));
    const double oracle_ml = grams / 0.997;

    CHECK(weight_to_volume(1.0) == doctest::Approx(oracle_ml).epsilon(1e-12));
    CHECK(weight_to_volume(1.0) == doctest::Approx(454.96).epsilon(2.5e-5)); // +/- 0.01 mL
    // 0.01 lbf of sensor error is about 5 mL of volume error
    CHECK(weight_to_volume(0.01) == doctest::Approx(4.5496).epsilon(1e-3));
    CHECK(weight_to_volume(0.0) == 0.0);
}

TEST_CASE("weight/volume round trip to 1e-9 relative") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> lbf(0.0, 10.0);
    for (int k = 0; k < 1000; ++k) {
        const double f = lbf(rng);
        const double back = volume_to_weight(weight_to_volume(f));
        CHECK(std::abs(back - f) <= 1e-9 * std::max(1.0, std::abs(f)));
    }
}

TEST_CASE("negative measurements rejected") {
    CHECK_THROWS_AS(weight_to_volume(-0.1), validation_error);
    CHECK_THROWS_AS(volume_to_weight(-1.0), validation_error);
}

TEST_CASE("curvature") {
    CHECK(curvature({"a", 100.0, 60.0}) == doctest::Approx(2.0 / 60.0).epsilon(1e-15));
    CHECK(curvature({"b", 100.0, 2.0}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(curvature({"c", 100.0, 82.0}) == doctest::Approx(0.024390243902439025).epsilon(1e-12));
    CHECK_THROWS_AS(curvature({"d", 100.0, 0.0}), validation_error);
    CHECK_THROWS_AS(curvature({"e", 100.0, -5.0}), validation_error);

    // strictly decreasing in diameter
    double prev = curvature({"f", 100.0, 10.0});
    for (double d = 11.0; d < 200.0; d += 7.0) {
        const double k = curvature({"f", 100.0, d});
        CHECK(k < prev);
        prev = k;
    }
}

TEST_CASE("container validation and capacity") {
    ContainerSpec ok{"ok", 110.0, 74.0};
    ok.validate();
    CHECK(capacity_ml(ok) == doctest::Approx(473.047).epsilon(1e-4));
    ContainerSpec bad{"bad", 0.0, 74.0};
    CHECK_THROWS_AS(bad.validate(), validation_error);
}
