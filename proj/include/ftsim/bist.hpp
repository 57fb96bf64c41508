#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ftsim/netlist.hpp"

namespace ftsim {

enum class DmaMode { Overlapped, Blocking };

struct DmaConfig {
    long setup_cycles = 8;
    long beats_per_burst = 8;
    long bytes_per_beat = 4;
    double energy_per_fetch_optimized = 0.0;    // joules
    double energy_per_fetch_unoptimized = 0.0;  // joules
    DmaMode mode = DmaMode::Overlapped;
};

struct DmaTimeline {
    long total_transfer_cycles = 0;
    long visible_stall_cycles = 0;
    double total_energy = 0.0;  // joules
};

struct BistResult {
    bool fault_bit = false;
    long patterns_applied = 0;
    std::optional<long> first_detecting_pattern;
    long test_cycles = 0;
    long dma_stall_cycles = 0;
};

/// Greedy coverage ordering: repeatedly pick the pattern detecting the
/// largest weighted mass of not-yet-detected faults. Ties break toward
/// the lower original index; patterns adding nothing are appended in
/// original order. Result priorities are 0..k-1.
std::vector<TestPattern> prioritize_patterns(
    const Netlist& n, const std::vector<TestPattern>& candidates,
    const std::map<FaultSite, double>* weights = nullptr);

/// One BIST session: apply up to budget_n priority-ordered patterns,
/// stop at the first detection when a fault is injected.
BistResult run_bist(const Netlist& n, const std::vector<TestPattern>& ordered, long budget_n,
                    std::optional<FaultSite> fault, long cycles_per_pattern,
                    const DmaConfig& dma, long total_bytes = 0, long software_slack_cycles = 0);

DmaTimeline dma_timeline(long total_bytes, const DmaConfig& cfg, long software_slack_cycles);

/// Coverage after each prefix of block_size patterns (block_size 0 means
/// per-pattern resolution).
std::vector<std::pair<long, double>> coverage_curve(const Netlist& n,
                                                    const std::vector<TestPattern>& ordered,
                                                    const std::vector<FaultSite>& faults,
                                                    long block_size = 0);

// .tpat serialization: `pattern <priority> stim <hexvec>[,<hexvec>...] golden <hexvec>[,...]`
std::string emit_patterns(const Netlist& n, const std::vector<TestPattern>& patterns);
std::vector<TestPattern> parse_patterns(const Netlist& n, const std::string& text);

/// Uniform random single-cycle patterns with golden responses from the
/// fault-free simulator. For sequential circuits `cycles` stretches each
/// pattern; golden is observed at the final cycle.
std::vector<TestPattern> random_patterns(const Netlist& n, size_t count, uint64_t seed,
                                         size_t cycles = 1);

inline bool operator<(const FaultSite& a, const FaultSite& b) {
    return a.net != b.net ? a.net < b.net : a.polarity < b.polarity;
}

}  // namespace ftsim
