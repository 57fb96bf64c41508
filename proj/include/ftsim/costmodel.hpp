#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>

#include "ftsim/bist.hpp"

namespace ftsim {

enum class Architecture { HardwareRedundancy, SoftwareRedundancy, Proposed };

constexpr std::array<Architecture, 3> kAllArchitectures = {
    Architecture::HardwareRedundancy, Architecture::SoftwareRedundancy, Architecture::Proposed};

std::string to_string(Architecture a);

/// Per-module analytic cost inputs. Times in cycles, hardware and memory
/// sizes in NAND gate equivalents.
struct ModuleCostSpec {
    double t_s1 = 0;   // software runtime excluding the accelerated function
    double t_sf = 0;   // software fallback runtime of the accelerated function
    double t_hf = 0;   // hardware runtime of the accelerated function
    double c_c = 0;    // processor <-> accelerator communication cycles
    double h_p = 0;    // processor gates
    double h_h = 0;    // hardware module gates
    double m_s1 = 0;   // memory, full software code
    double m_s2 = 0;   // memory, module-equivalent software code
    double m_tp = 0;   // memory per test pattern
    long n_patterns = 1;
    double p_fault = 0.0;
    double clock_hz = 100e6;
    std::map<Architecture, double> power;  // watts, per architecture
};

struct Resources {
    double onchip_gates = 0;
    double offchip_memory_gates = 0;
};

struct CostReport {
    double runtime_cycles = 0;
    double onchip_gates = 0;
    double offchip_memory_gates = 0;
    double energy_joules = 0;
    double perf_per_logic_ratio = 0;
};

class CostModelError : public std::runtime_error {
public:
    explicit CostModelError(const std::string& what) : std::runtime_error(what) {}
};

/// Fitted scale for the performance-per-logic ratio, overridable.
inline constexpr double kRatioScale = 3e9;

double runtime(const ModuleCostSpec& spec, Architecture arch);
Resources resources(const ModuleCostSpec& spec, Architecture arch);
double energy(const ModuleCostSpec& spec, Architecture arch);

double perf_ratio(double runtime_cycles, double onchip_gates, double ratio_scale = kRatioScale);

CostReport cost_report(const ModuleCostSpec& spec, Architecture arch,
                       double ratio_scale = kRatioScale);

/// Aggregate communication cost of `fetches` DMA fetches of
/// `bytes_per_fetch` each. Optimized means overlapped transfers at the
/// optimized per-fetch energy; unoptimized means blocking transfers.
std::pair<double, double> comm_cost(long fetches, long bytes_per_fetch, const DmaConfig& cfg,
                                    bool optimized);

}  // namespace ftsim
