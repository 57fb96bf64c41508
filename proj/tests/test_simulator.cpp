#include <doctest.h>

#include "ftsim/simulator.hpp"

using namespace ftsim;

namespace {

RunConfig base_config() {
    RunConfig cfg;
    cfg.spec.t_s1 = 700;
    cfg.spec.t_sf = 6014;
    cfg.spec.t_hf = 714;
    cfg.spec.n_patterns = 256;
    cfg.spec.p_fault = 0.01;
    cfg.spec.power[Architecture::Proposed] = 2.0;
    cfg.test_cycles_per_pattern = 2;  // 512 test cycles, hidden inside t_s1
    return cfg;
}

const SimEvent* find_event(const SimTrace& tr, SimEventKind k) {
    for (const auto& e : tr.events)
        if (e.kind == k) return &e;
    return nullptr;
}

}  // namespace

TEST_CASE("fully overlapped fault-free run is t_s1 + t_hf") {
    auto cfg = base_config();
    auto tr = simulate_run(cfg);
    CHECK_FALSE(tr.fault_bit);
    CHECK(tr.total_cycles == doctest::Approx(700 + 714));
    CHECK(find_event(tr, SimEventKind::HwExec));
    CHECK_FALSE(find_event(tr, SimEventKind::SwWait));
    CHECK_FALSE(find_event(tr, SimEventKind::SwFallback));
}

TEST_CASE("forced fault takes the fallback branch") {
    auto cfg = base_config();
    cfg.fault_mode = FaultMode::Forced;
    auto tr = simulate_run(cfg);
    CHECK(tr.fault_bit);
    CHECK(tr.total_cycles == doctest::Approx(700 + 6014));
    CHECK(find_event(tr, SimEventKind::SwFallback));
    CHECK_FALSE(find_event(tr, SimEventKind::HwExec));
}

TEST_CASE("BIST overshoot produces an exact SwWait") {
    auto cfg = base_config();
    // request fired so late that the test overshoots the software by 7 cycles
    cfg.bist_request_offset = cfg.spec.t_s1 - 512 + 7;
    auto tr = simulate_run(cfg);
    const auto* wait = find_event(tr, SimEventKind::SwWait);
    REQUIRE(wait);
    CHECK(tr.total_cycles == doctest::Approx(700 + 7 + 714));
}

TEST_CASE("spare-core speedup divides the fallback time") {
    auto cfg = base_config();
    cfg.fault_mode = FaultMode::Forced;
    cfg.spare_cores = 3;
    cfg.parallel_efficiency = 1.0;
    auto tr = simulate_run(cfg);
    CHECK(tr.total_cycles == doctest::Approx(700 + 6014.0 / 3));
}

TEST_CASE("trace invariants") {
    auto cfg = base_config();
    cfg.fault_mode = FaultMode::Bernoulli;
    for (uint64_t seed = 0; seed < 50; ++seed) {
        cfg.seed = seed;
        auto tr = simulate_run(cfg);
        // events nondecreasing in cycle
        for (size_t i = 1; i < tr.events.size(); ++i)
            CHECK(tr.events[i].cycle >= tr.events[i - 1].cycle);
        // exactly one ack, followed by exactly one of HwExec/SwFallback
        int acks = 0, hw = 0, sw = 0;
        for (const auto& e : tr.events) {
            acks += e.kind == SimEventKind::BistAck;
            hw += e.kind == SimEventKind::HwExec;
            sw += e.kind == SimEventKind::SwFallback;
        }
        CHECK(acks == 1);
        CHECK(hw + sw == 1);
        CHECK((hw == 1) == !tr.fault_bit);
    }
}

TEST_CASE("identical config and seed give identical traces") {
    auto cfg = base_config();
    cfg.fault_mode = FaultMode::Bernoulli;
    cfg.seed = 77;
    auto a = simulate_run(cfg);
    auto b = simulate_run(cfg);
    CHECK(a.total_cycles == b.total_cycles);
    REQUIRE(a.events.size() == b.events.size());
    for (size_t i = 0; i < a.events.size(); ++i) {
        CHECK(a.events[i].cycle == b.events[i].cycle);
        CHECK(a.events[i].kind == b.events[i].kind);
        CHECK(a.events[i].detail == b.events[i].detail);
    }
}

TEST_CASE("silent escape proceeds to hardware execution") {
    auto cfg = base_config();
    cfg.fault_mode = FaultMode::Forced;
    cfg.detect_coverage = 0.0;
    auto tr = simulate_run(cfg);
    CHECK(tr.fault_present);
    CHECK_FALSE(tr.fault_bit);
    CHECK(tr.silent_escape);
    CHECK(find_event(tr, SimEventKind::HwExec));
}

TEST_CASE("monte carlo: degenerate probabilities are exact") {
    auto cfg = base_config();
    cfg.fault_mode = FaultMode::Bernoulli;

    cfg.spec.p_fault = 0;
    auto r0 = monte_carlo(cfg, 500);
    CHECK(r0.mean_cycles == doctest::Approx(700 + 714));
    CHECK(r0.stderr_cycles == doctest::Approx(0.0));

    cfg.spec.p_fault = 1;
    auto r1 = monte_carlo(cfg, 500);
    CHECK(r1.mean_cycles == doctest::Approx(700 + 6014));
    CHECK(r1.stderr_cycles == doctest::Approx(0.0));
}

TEST_CASE("monte carlo converges to the expected-runtime model") {
    auto cfg = base_config();
    cfg.fault_mode = FaultMode::Bernoulli;
    cfg.seed = 2718;
    for (double p : {0.001, 0.01, 0.1}) {
        cfg.spec.p_fault = p;
        auto r = monte_carlo(cfg, 100000);
        CHECK(r.analytic_cycles == doctest::Approx(runtime(cfg.spec, Architecture::Proposed)));
        CHECK(std::abs(r.mean_cycles - r.analytic_cycles) <= 3 * r.stderr_cycles);
    }
}

TEST_CASE("monte carlo requires bernoulli mode") {
    auto cfg = base_config();
    CHECK_THROWS_AS(monte_carlo(cfg, 10), std::invalid_argument);
    cfg.fault_mode = FaultMode::Bernoulli;
    CHECK_THROWS_AS(monte_carlo(cfg, 0), std::invalid_argument);
}

TEST_CASE("frame_rate arithmetic") {
    CHECK(frame_rate(21680195, 550e6) == doctest::Approx(25.37).epsilon(0.001));
    CHECK(frame_rate(23321460, 550e6) == doctest::Approx(23.58).epsilon(0.001));
    CHECK(frame_rate(11269878, 550e6) == doctest::Approx(48.80).epsilon(0.001));
    CHECK(frame_rate(1000, 1e6) * 1000 == doctest::Approx(1e6));
    CHECK_THROWS_AS(frame_rate(0, 550e6), std::invalid_argument);
}

namespace {

std::vector<QosRow> qos_table() {
    return {{"1920x1080", 23321460, 21680195},
            {"1280x720", 11269878, 9881389},
            {"720x576", 4963147, 4483583},
            {"352x288", 1345557, 1166834},
            {"176x144", 440084, 396953}};
}

}  // namespace

TEST_CASE("qos_adapt") {
    auto table = qos_table();

    SUBCASE("no fault keeps full HD at 25 fps") {
        auto row = qos_adapt(table, 550e6, 25, false);
        REQUIRE(row);
        CHECK(row->frame_label == "1920x1080");
    }
    SUBCASE("fault downscales to 1280x720") {
        auto row = qos_adapt(table, 550e6, 25, true);
        REQUIRE(row);
        CHECK(row->frame_label == "1280x720");
    }
    SUBCASE("unreachable target returns none") {
        CHECK_FALSE(qos_adapt(table, 550e6, 1e9, false).has_value());
    }
    SUBCASE("raising the target never selects a larger frame") {
        size_t prev_index = 0;
        for (double target : {1.0, 20.0, 25.0, 40.0, 100.0, 400.0}) {
            auto row = qos_adapt(table, 550e6, target, true);
            size_t idx = table.size();
            if (row)
                for (size_t i = 0; i < table.size(); ++i)
                    if (table[i].frame_label == row->frame_label) idx = i;
            CHECK(idx >= prev_index);
            prev_index = idx;
        }
    }
    SUBCASE("empty table is an error") {
        CHECK_THROWS_AS(qos_adapt({}, 550e6, 25, false), std::invalid_argument);
    }
}
