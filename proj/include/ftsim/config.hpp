#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ftsim/costmodel.hpp"
#include "ftsim/reliability.hpp"
#include "ftsim/selector.hpp"
#include "ftsim/simulator.hpp"

namespace ftsim {

/// Netlist source: a .gnl file path, or generator parameters.
struct NetlistSource {
    std::string path;  // empty when generated
    std::string kind;  // "sorter" | "macc" when generated
    SorterParams sorter;
    MaccParams macc;
};

/// Pattern source: a .tpat file path, or random generation parameters.
struct PatternSource {
    std::string path;
    long count = 16;
    long cycles = 1;
    uint64_t seed = 1;
    bool prioritize = true;
};

struct ModuleEntry {
    ModuleCostSpec spec;
    Constraints constraints;
};

struct QosConfig {
    double clock_hz = 550e6;
    double target_fps = 25.0;
    std::vector<QosRow> table;  // sorted by descending frame size
};

struct WorkbenchConfig {
    std::optional<NetlistSource> netlist;
    std::optional<PatternSource> patterns;
    std::vector<std::pair<std::string, ModuleEntry>> modules;  // declaration order
    ReliabilityParams reliability;
    DmaConfig dma;
    RunConfig run;  // spec copied from run_module at load time
    std::string run_module;
    std::optional<QosConfig> qos;
};

/// Carries every violation found, not just the first.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> problems);
    const std::vector<std::string>& problems() const { return problems_; }

private:
    std::vector<std::string> problems_;
};

WorkbenchConfig load_config(const std::string& path);
WorkbenchConfig parse_config(const std::string& json_text, const std::string& base_dir);

Netlist load_netlist(const NetlistSource& src);
std::vector<TestPattern> load_patterns(const Netlist& n, const PatternSource& src);

}  // namespace ftsim
