#include <doctest.h>

#include "pour/control/termination.hpp"

using namespace pour::control;

TEST_CASE("monotone forward-only trajectory times out") {
    TerminationPolicy policy(2.0);
    Decision last = Decision::Continue;
    double theta = 2.0;
    for (int t = 0; t <= 15 * 60 + 1; ++t) {
        theta += 0.2;
        last = policy.push(theta, 12.0, t / 60.0);
        if (last != Decision::Continue) break;
    }
    CHECK(last == Decision::Timeout);
}

TEST_CASE("forward-then-return trajectory settles") {
    TerminationPolicy policy(2.0);
    Decision last = Decision::Continue;
    double theta = 2.0;
    int t = 0;
    for (; theta < 40.0; ++t) {
        theta += 0.5;
        last = policy.push(theta, 30.0, t / 60.0);
        REQUIRE(last == Decision::Continue);
    }
    for (; theta > 1.0; ++t) {
        theta -= 0.5;
        last = policy.push(theta, -30.0, t / 60.0);
        REQUIRE(last == Decision::Continue);
    }
    for (int k = 0; k < 60; ++k, ++t) {
        last = policy.push(theta, 0.0, t / 60.0);
        if (last != Decision::Continue) break;
    }
    CHECK(last == Decision::Settled);
}

TEST_CASE("returned but still moving keeps going") {
    TerminationPolicy policy(2.0);
    double theta = 40.0;
    Decision last = policy.push(theta, 0.0, 0.0);
    // theta swings near the start angle but omega stays large
    for (int t = 1; t < 300; ++t) {
        theta = 2.0 + (t % 2 == 0 ? 0.5 : -0.5);
        last = policy.push(theta, 5.0, t / 60.0);
        CHECK(last == Decision::Continue);
    }
}

TEST_CASE("peak clause prevents cutting an untilted pour") {
    TerminationPolicy policy(1.0);
    // never exceeds 15 degrees: zero motion alone must not settle it
    Decision last = Decision::Continue;
    for (int t = 0; t < 120; ++t) {
        last = policy.push(1.0, 0.0, t / 60.0);
        CHECK(last == Decision::Continue);
    }
}
