#include "ftsim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace ftsim {

std::string to_string(SimEventKind k) {
    switch (k) {
        case SimEventKind::SwSegment: return "sw_segment";
        case SimEventKind::BistRequest: return "bist_request";
        case SimEventKind::DmaBurst: return "dma_burst";
        case SimEventKind::BistStart: return "bist_start";
        case SimEventKind::SwWait: return "sw_wait";
        case SimEventKind::BistAck: return "bist_ack";
        case SimEventKind::HwExec: return "hw_exec";
        case SimEventKind::SwFallback: return "sw_fallback";
    }
    return "?";
}

SimTrace simulate_run(const RunConfig& cfg) {
    const ModuleCostSpec& s = cfg.spec;
    if (cfg.bist_request_offset < 0 || cfg.bist_request_offset > s.t_s1)
        throw std::invalid_argument("bist_request_offset must lie within t_s1");
    if (cfg.spare_cores < 1) throw std::invalid_argument("spare_cores must be >= 1");

    SimTrace tr;
    auto ev = [&](double cycle, SimEventKind k, std::string detail = {}) {
        tr.events.push_back({cycle, k, std::move(detail)});
    };

    double offset = cfg.bist_request_offset;
    double slack = s.t_s1 - offset;

    ev(0, SimEventKind::SwSegment, "cycles=" + std::to_string(s.t_s1));
    ev(offset, SimEventKind::BistRequest);

    auto dma = dma_timeline(cfg.dma_total_bytes, cfg.dma,
                            static_cast<long>(std::floor(slack)));
    if (cfg.dma_total_bytes > 0)
        ev(offset, SimEventKind::DmaBurst,
           "transfer_cycles=" + std::to_string(dma.total_transfer_cycles) +
               " stall=" + std::to_string(dma.visible_stall_cycles));

    double bist_start = offset + static_cast<double>(dma.visible_stall_cycles);
    double bist_cycles =
        static_cast<double>(s.n_patterns) * static_cast<double>(cfg.test_cycles_per_pattern);
    double bist_finish = bist_start + bist_cycles;
    ev(bist_start, SimEventKind::BistStart, "patterns=" + std::to_string(s.n_patterns));

    double wait = std::max(0.0, bist_finish - s.t_s1);
    if (wait > 0) ev(s.t_s1, SimEventKind::SwWait, "cycles=" + std::to_string(wait));
    double ack_cycle = s.t_s1 + wait;

    // fault presence drawn once per run
    std::mt19937_64 rng(cfg.seed);
    switch (cfg.fault_mode) {
        case FaultMode::None: tr.fault_present = false; break;
        case FaultMode::Forced: tr.fault_present = true; break;
        case FaultMode::Bernoulli:
            tr.fault_present = std::bernoulli_distribution(s.p_fault)(rng);
            break;
    }
    tr.fault_bit = tr.fault_present;
    if (tr.fault_present && cfg.detect_coverage < 1.0)
        tr.fault_bit = std::bernoulli_distribution(cfg.detect_coverage)(rng);
    tr.silent_escape = tr.fault_present && !tr.fault_bit;

    ev(ack_cycle, SimEventKind::BistAck, tr.fault_bit ? "fault_bit=1" : "fault_bit=0");

    double exec;
    if (tr.fault_bit) {
        double speedup = 1.0 + cfg.parallel_efficiency * (cfg.spare_cores - 1);
        exec = s.t_sf / speedup;
        ev(ack_cycle, SimEventKind::SwFallback,
           "cores=" + std::to_string(cfg.spare_cores) + " cycles=" + std::to_string(exec));
    } else {
        exec = s.t_hf;
        ev(ack_cycle, SimEventKind::HwExec, "cycles=" + std::to_string(exec));
    }

    tr.total_cycles = ack_cycle + exec;
    double watts = 0;
    if (auto it = s.power.find(Architecture::Proposed); it != s.power.end()) watts = it->second;
    tr.total_energy = watts * tr.total_cycles / s.clock_hz + dma.total_energy;
    return tr;
}

MonteCarloResult monte_carlo(const RunConfig& cfg, long trials) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (cfg.fault_mode != FaultMode::Bernoulli)
        throw std::invalid_argument("monte_carlo requires bernoulli fault mode");

    double sum = 0, sumsq = 0;
    for (long t = 0; t < trials; ++t) {
        RunConfig trial = cfg;
        // per-trial seed derived deterministically from (master seed, index)
        std::seed_seq seq{cfg.seed, static_cast<uint64_t>(t)};
        std::vector<uint32_t> out(2);
        seq.generate(out.begin(), out.end());
        trial.seed = (static_cast<uint64_t>(out[0]) << 32) | out[1];
        double cycles = simulate_run(trial).total_cycles;
        sum += cycles;
        sumsq += cycles * cycles;
    }
    MonteCarloResult r;
    double n = static_cast<double>(trials);
    r.mean_cycles = sum / n;
    double var = std::max(0.0, (sumsq - sum * sum / n) / (n > 1 ? n - 1 : 1));
    r.stderr_cycles = std::sqrt(var / n);
    r.analytic_cycles = runtime(cfg.spec, Architecture::Proposed);
    return r;
}

double frame_rate(double cycles_per_frame, double clock_hz) {
    if (cycles_per_frame <= 0) throw std::invalid_argument("cycles_per_frame must be > 0");
    return clock_hz / cycles_per_frame;
}

std::optional<QosRow> qos_adapt(const std::vector<QosRow>& table, double clock_hz,
                                double target_fps, bool fault_present) {
    if (table.empty()) throw std::invalid_argument("QoS table is empty");
    for (const auto& row : table) {
        double cycles = fault_present ? row.cycles_per_frame_fault : row.cycles_per_frame_nofault;
        if (frame_rate(cycles, clock_hz) >= target_fps) return row;
    }
    return std::nullopt;
}

}  // namespace ftsim
