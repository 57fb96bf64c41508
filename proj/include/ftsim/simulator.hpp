#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ftsim/bist.hpp"
#include "ftsim/costmodel.hpp"

namespace ftsim {

enum class FaultMode { None, Forced, Bernoulli };

/// One run of the detect-and-fallback protocol: software segment, BIST
/// request, DMA fetch, optional wait, ack with the fault bit, then
/// hardware execution or spare-core software fallback.
struct RunConfig {
    ModuleCostSpec spec;
    double bist_request_offset = 0;  // cycles into t_s1
    long test_cycles_per_pattern = 2;
    DmaConfig dma;
    long dma_total_bytes = 0;
    int spare_cores = 1;
    double parallel_efficiency = 0.0;  // 0 disables spare-core speedup
    FaultMode fault_mode = FaultMode::None;
    uint64_t seed = 0;
    double detect_coverage = 1.0;  // chance BIST catches a present fault
};

enum class SimEventKind {
    SwSegment,
    BistRequest,
    DmaBurst,
    BistStart,
    SwWait,
    BistAck,
    HwExec,
    SwFallback,
};

std::string to_string(SimEventKind k);

struct SimEvent {
    double cycle = 0;
    SimEventKind kind;
    std::string detail;
};

struct SimTrace {
    std::vector<SimEvent> events;
    double total_cycles = 0;
    double total_energy = 0;  // joules
    bool fault_present = false;
    bool fault_bit = false;
    bool silent_escape = false;  // fault present, not detected within budget
};

struct QosRow {
    std::string frame_label;
    double cycles_per_frame_fault = 0;
    double cycles_per_frame_nofault = 0;
};

SimTrace simulate_run(const RunConfig& cfg);

struct MonteCarloResult {
    double mean_cycles = 0;
    double stderr_cycles = 0;
    double analytic_cycles = 0;  // expected total per the runtime model
};

MonteCarloResult monte_carlo(const RunConfig& cfg, long trials);

double frame_rate(double cycles_per_frame, double clock_hz);

/// Largest frame size (table is sorted descending) whose applicable
/// cycles column still meets target_fps.
std::optional<QosRow> qos_adapt(const std::vector<QosRow>& table, double clock_hz,
                                double target_fps, bool fault_present);

}  // namespace ftsim
