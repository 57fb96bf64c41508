#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ftsim {

using NetId = int;

struct NandGate {
    NetId out;
    NetId a;
    NetId b;
};

struct Dff {
    NetId q;
    NetId d;
    bool init;
};

enum class StuckAt : uint8_t { Zero = 0, One = 1 };

struct FaultSite {
    NetId net;
    StuckAt polarity;

    bool operator==(const FaultSite&) const = default;
};

/// Gate-level circuit restricted to 2-input NANDs and D flip-flops.
/// Nets are dense integer ids; names are kept for diagnostics and
/// round-tripping. The NAND evaluation order is fixed (topological)
/// at construction time.
class Netlist {
public:
    std::string name;
    std::vector<NetId> primary_inputs;
    std::vector<NetId> primary_outputs;
    std::vector<NandGate> nand_gates;
    std::vector<Dff> dffs;
    std::vector<std::string> net_names;

    // nand_gates indices in topological order, combinational subgraph only
    // (DFF q treated as source, DFF d as sink).
    std::vector<size_t> topo_order;

    int net_count() const { return static_cast<int>(net_names.size()); }

    NetId find_net(const std::string& n) const;  // -1 if absent
};

class NetlistError : public std::runtime_error {
public:
    explicit NetlistError(const std::string& what) : std::runtime_error(what) {}
};

using BitVec = std::vector<bool>;

struct TestPattern {
    std::vector<BitVec> stimulus;  // one vector per cycle, width = |inputs|
    std::vector<BitVec> golden;    // expected outputs, width = |outputs|
    int priority = 0;
};

struct DetectionMatrix {
    std::vector<FaultSite> faults;
    std::vector<TestPattern> patterns;
    // detects[p][f]: pattern p observes fault f at some output cycle
    std::vector<std::vector<bool>> detects;

    /// Fraction of faults detected by the first k patterns.
    double coverage(size_t k) const;
};

Netlist parse_netlist(const std::string& text);
std::string emit_netlist(const Netlist& n);

/// Cycle-accurate fault-free simulation. DFF update is two-phase:
/// all d nets sampled, then all q nets written between cycles.
std::vector<BitVec> simulate(const Netlist& n, const std::vector<BitVec>& stim);

/// Same, with one stuck-at fault forced on its net every cycle before
/// fan-out evaluation. Empty fault -> identical to simulate().
std::vector<BitVec> simulate_faulty(const Netlist& n, const std::vector<BitVec>& stim,
                                    std::optional<FaultSite> fault);

/// Uncollapsed single-stuck-at universe: s-a-0 and s-a-1 on every net,
/// in net-id order.
std::vector<FaultSite> enumerate_faults(const Netlist& n);

DetectionMatrix fault_simulate(const Netlist& n, const std::vector<TestPattern>& patterns,
                               const std::vector<FaultSite>& faults);

/// NAND-equivalent count: |nands| + kDffGateEquivalents * |dffs|.
inline constexpr int kDffGateEquivalents = 6;
long gate_equivalents(const Netlist& n);

struct SorterParams {
    int elements = 4;  // <= 8
    int width = 4;     // <= 8
};

struct MaccParams {
    int width = 4;  // <= 8
    int terms = 8;  // <= 16, cycles of accumulation
};

/// Combinational odd-even sorting network of compare-exchange cells.
Netlist build_sorter(const SorterParams& p);

/// Sequential multiply-accumulate datapath with a DFF accumulator.
Netlist build_macc(const MaccParams& p);

// Stimulus helpers for the generated circuits.
BitVec pack_sorter_input(const SorterParams& p, const std::vector<unsigned>& values);
std::vector<unsigned> unpack_sorter_output(const SorterParams& p, const BitVec& out);
BitVec pack_macc_input(const MaccParams& p, unsigned a, unsigned b);
unsigned unpack_macc_output(const MaccParams& p, const BitVec& out);

}  // namespace ftsim
