#include <doctest.h>

#include "ftsim/costmodel.hpp"

using namespace ftsim;

namespace {

// sequential case-study fixture (matches fixtures/workbench.json "idct")
ModuleCostSpec idct_fixture() {
    ModuleCostSpec s;
    s.t_s1 = 700;
    s.t_sf = 6014;
    s.t_hf = 714;
    s.c_c = 1;
    s.h_p = 40000;
    s.h_h = 43564;
    s.m_s1 = 20000;
    s.m_s2 = 8000;
    s.m_tp = 542;
    s.n_patterns = 256;
    s.p_fault = 0.01;
    s.power = {{Architecture::HardwareRedundancy, 0.984452296819788},
               {Architecture::SoftwareRedundancy, 10.902591599642538},
               {Architecture::Proposed, 2.0}};
    return s;
}

// combinational case-study fixture (matches "sorting")
ModuleCostSpec sorting_fixture() {
    ModuleCostSpec s;
    s.t_s1 = 2000;
    s.t_sf = 7490;
    s.t_hf = 2018.2828282828282;
    s.c_c = 0.7171717171717172;
    s.h_p = 40000;
    s.h_h = 37263;
    s.m_s1 = 20000;
    s.m_s2 = 8000;
    s.m_tp = 6154;
    s.n_patterns = 4;
    s.p_fault = 0.01;
    return s;
}

}  // namespace

TEST_CASE("runtime models") {
    ModuleCostSpec s;
    s.t_s1 = 2000;
    s.t_hf = 1900;
    s.c_c = 119;
    s.t_sf = 7490;
    CHECK(runtime(s, Architecture::HardwareRedundancy) == doctest::Approx(4019));
    CHECK(runtime(s, Architecture::SoftwareRedundancy) == doctest::Approx(9490));

    s.p_fault = 0;
    CHECK(runtime(s, Architecture::Proposed) == doctest::Approx(s.t_s1 + s.t_hf));
    s.p_fault = 1;
    CHECK(runtime(s, Architecture::Proposed) ==
          doctest::Approx(runtime(s, Architecture::SoftwareRedundancy)));
}

TEST_CASE("proposed runtime is monotone in p_fault when fallback is slower") {
    auto s = idct_fixture();
    double prev = runtime(s, Architecture::Proposed);
    for (double p = 0.1; p <= 1.0; p += 0.1) {
        s.p_fault = p;
        double r = runtime(s, Architecture::Proposed);
        CHECK(r >= prev);
        prev = r;
    }
}

TEST_CASE("resource models reproduce the case-study totals") {
    auto seq = idct_fixture();
    CHECK(resources(seq, Architecture::HardwareRedundancy).onchip_gates == doctest::Approx(170692));
    CHECK(resources(seq, Architecture::SoftwareRedundancy).onchip_gates == doctest::Approx(120000));
    CHECK(resources(seq, Architecture::Proposed).onchip_gates == doctest::Approx(84106));

    auto comb = sorting_fixture();
    CHECK(resources(comb, Architecture::HardwareRedundancy).onchip_gates ==
          doctest::Approx(151789));
    CHECK(resources(comb, Architecture::Proposed).onchip_gates == doctest::Approx(83417));
}

TEST_CASE("off-chip classification") {
    auto s = idct_fixture();
    auto hw = resources(s, Architecture::HardwareRedundancy);
    CHECK(hw.offchip_memory_gates == doctest::Approx(s.m_s2));
    auto sw = resources(s, Architecture::SoftwareRedundancy);
    CHECK(sw.offchip_memory_gates == doctest::Approx(3 * s.m_s2 + s.m_s1));
    auto pr = resources(s, Architecture::Proposed);
    CHECK(pr.offchip_memory_gates == doctest::Approx(s.m_s1 + s.m_s2 + 255 * s.m_tp));

    s.n_patterns = 0;
    CHECK_THROWS_AS(resources(s, Architecture::Proposed), CostModelError);
}

TEST_CASE("energy is power times time") {
    auto s = idct_fixture();
    s.clock_hz = 100e6;

    SUBCASE("zero power gives zero energy") {
        s.power[Architecture::Proposed] = 0;
        CHECK(energy(s, Architecture::Proposed) == 0.0);
    }
    SUBCASE("fitted powers reproduce the case-study energies") {
        CHECK(energy(s, Architecture::HardwareRedundancy) == doctest::Approx(0.01393e-3));
        CHECK(energy(s, Architecture::SoftwareRedundancy) == doctest::Approx(0.73200e-3));
        CHECK(energy(s, Architecture::Proposed) == doctest::Approx(0.02934e-3));
        double ratio = energy(s, Architecture::Proposed) / energy(s, Architecture::HardwareRedundancy);
        CHECK(ratio == doctest::Approx(2.11).epsilon(0.01));
    }
    SUBCASE("linearity in runtime") {
        double e1 = energy(s, Architecture::HardwareRedundancy);
        s.t_s1 *= 2;
        s.t_hf *= 2;
        s.c_c *= 2;
        CHECK(energy(s, Architecture::HardwareRedundancy) == doctest::Approx(2 * e1));
    }
    SUBCASE("missing power entry") {
        s.power.erase(Architecture::Proposed);
        CHECK_THROWS_AS(energy(s, Architecture::Proposed), CostModelError);
    }
}

TEST_CASE("perf_ratio reproduces the printed ratio triples") {
    // sequential case: 12.4209 : 3.7236 : 24.3144
    CHECK(perf_ratio(1415, 170692) == doctest::Approx(12.4209).epsilon(0.001));
    CHECK(perf_ratio(6714, 120000) == doctest::Approx(3.7236).epsilon(0.001));
    CHECK(perf_ratio(1467, 84106) == doctest::Approx(24.3144).epsilon(0.001));
    // combinational case: 4.9026 : 2.6344 : 8.8299 (first entry looser)
    CHECK(perf_ratio(4019, 151789) == doctest::Approx(4.9026).epsilon(0.005));
    CHECK(perf_ratio(9490, 120000) == doctest::Approx(2.6344).epsilon(0.001));
    CHECK(perf_ratio(4073, 83417) == doctest::Approx(8.8299).epsilon(0.001));
}

TEST_CASE("perf_ratio symmetry and errors") {
    CHECK(perf_ratio(100, 200) == perf_ratio(100, 200));
    CHECK_THROWS_AS(perf_ratio(0, 200), CostModelError);
    CHECK_THROWS_AS(perf_ratio(100, 0), CostModelError);
}

TEST_CASE("proposed architecture uses less on-chip logic than FTMR when m_tp < 2*h_h") {
    for (const auto& s : {idct_fixture(), sorting_fixture()}) {
        REQUIRE(s.m_tp < 2 * s.h_h);
        CHECK(resources(s, Architecture::Proposed).onchip_gates <
              resources(s, Architecture::HardwareRedundancy).onchip_gates);
    }
}

TEST_CASE("comm_cost") {
    DmaConfig cfg;
    cfg.setup_cycles = 8;
    cfg.beats_per_burst = 8;
    cfg.bytes_per_beat = 4;
    cfg.energy_per_fetch_optimized = 720.37e-9;
    cfg.energy_per_fetch_unoptimized = 1195.4e-9;

    SUBCASE("zero fetches") {
        auto [cyc, j] = comm_cost(0, 256, cfg, false);
        CHECK(cyc == 0.0);
        CHECK(j == 0.0);
    }
    SUBCASE("one unoptimized fetch") {
        auto [cyc, j] = comm_cost(1, 256, cfg, false);
        CHECK(cyc == doctest::Approx(128));
        CHECK(j == doctest::Approx(1195.4e-9));
    }
    SUBCASE("one optimized fetch is hidden") {
        auto [cyc, j] = comm_cost(1, 256, cfg, true);
        CHECK(cyc == 0.0);
        CHECK(j == doctest::Approx(720.37e-9));
    }
    SUBCASE("energy linear in fetch count") {
        auto [cyc, j] = comm_cost(10, 256, cfg, true);
        CHECK(cyc == 0.0);
        CHECK(j == doctest::Approx(10 * 720.37e-9));
    }
}

TEST_CASE("cost_report is internally consistent") {
    auto s = idct_fixture();
    auto r = cost_report(s, Architecture::Proposed);
    CHECK(r.runtime_cycles == doctest::Approx(runtime(s, Architecture::Proposed)));
    CHECK(r.perf_per_logic_ratio ==
          doctest::Approx(kRatioScale / (r.runtime_cycles * r.onchip_gates)));
}
