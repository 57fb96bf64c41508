#include <doctest.h>

#include <cmath>

#include "ftsim/reliability.hpp"

using namespace ftsim;

TEST_CASE("transistor form") {
    ReliabilityParams p;
    CHECK(fault_free_prob_transistors(12345, p, 0) == doctest::Approx(1.0));
    CHECK(fault_free_prob_transistors(1, p, 1e5) == doctest::Approx(std::exp(-1.0)));
    // multiplicativity: two transistors = one transistor squared
    double one = fault_free_prob_transistors(1, p, 321.5);
    CHECK(fault_free_prob_transistors(2, p, 321.5) == doctest::Approx(one * one));
    CHECK_THROWS_AS(fault_free_prob_transistors(1, p, -1), std::invalid_argument);
}

TEST_CASE("gate form") {
    ReliabilityParams p;
    CHECK(fault_free_prob_gates(0, p, 1e9) == doctest::Approx(1.0));
    CHECK(fault_free_prob_gates(83417, p, 1.0) == doctest::Approx(std::exp(-3.33668)));
    // identity with the transistor form
    for (double t : {0.0, 0.5, 2.0})
        CHECK(fault_free_prob_gates(10, p, t) ==
              doctest::Approx(fault_free_prob_transistors(40, p, t)));
}

TEST_CASE("log P is linear in t") {
    ReliabilityParams p;
    double gates = 84106;
    double slope = -p.transistors_per_gate * p.lambda_sum * gates;
    for (double t = 0; t <= 4; t += 0.25) {
        double lp = std::log(fault_free_prob_gates(gates, p, t));
        CHECK(lp == doctest::Approx(slope * t).epsilon(1e-12));
    }
}

TEST_CASE("monotone decreasing in gates, time, and rate") {
    ReliabilityParams p;
    CHECK(fault_free_prob_gates(100, p, 1) > fault_free_prob_gates(200, p, 1));
    CHECK(fault_free_prob_gates(100, p, 1) > fault_free_prob_gates(100, p, 2));
    ReliabilityParams hot = p;
    hot.lambda_sum *= 10;
    CHECK(fault_free_prob_gates(100, p, 1) > fault_free_prob_gates(100, hot, 1));
}

TEST_CASE("curves: smallest gate count is pointwise highest") {
    ReliabilityParams p;
    std::vector<double> grid;
    for (int i = 0; i <= 16; ++i) grid.push_back(i * 0.25);

    for (auto counts : {std::map<Architecture, double>{{Architecture::HardwareRedundancy, 170692},
                                                       {Architecture::SoftwareRedundancy, 120000},
                                                       {Architecture::Proposed, 84106}},
                        std::map<Architecture, double>{{Architecture::HardwareRedundancy, 151789},
                                                       {Architecture::SoftwareRedundancy, 120000},
                                                       {Architecture::Proposed, 83417}}}) {
        auto curves = reliability_curves(counts, p, grid);
        REQUIRE(curves.size() == 3);
        const auto* proposed = &curves[2];
        REQUIRE(proposed->architecture == Architecture::Proposed);
        for (size_t i = 0; i < grid.size(); ++i) {
            CHECK(proposed->samples[i].first == grid[i]);
            for (const auto& other : curves) {
                if (other.architecture == Architecture::Proposed) continue;
                if (grid[i] == 0) {
                    CHECK(proposed->samples[i].second == doctest::Approx(1.0));
                } else {
                    CHECK(proposed->samples[i].second > other.samples[i].second);
                }
            }
        }
    }
}

TEST_CASE("single architecture at t=0") {
    auto curves = reliability_curves({{Architecture::Proposed, 1000}}, {}, {0.0});
    REQUIRE(curves.size() == 1);
    REQUIRE(curves[0].samples.size() == 1);
    CHECK(curves[0].samples[0] == std::pair<double, double>{0.0, 1.0});
}
