// ftsim: batch front-end for the fault-tolerance workbench.
// Subcommands load a JSON config, run the analysis or simulation, and
// write deterministic CSV files under --out.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "ftsim/config.hpp"
#include "ftsim/reliability.hpp"

namespace fs = std::filesystem;
using namespace ftsim;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    uint64_t seed = 0;
    bool seed_set = false;
};

uint64_t effective_seed(const CommonOpts& o, uint64_t config_seed) {
    if (o.seed_set) return o.seed;
    if (const char* env = std::getenv("FTSIM_SEED")) return std::strtoull(env, nullptr, 10);
    return config_seed;
}

std::ofstream open_csv(const CommonOpts& o, const std::string& name) {
    fs::create_directories(o.out_dir);
    fs::path p = fs::path(o.out_dir) / name;
    std::ofstream f(p, std::ios::binary);  // LF line endings everywhere
    if (!f) throw std::runtime_error("cannot open output file: " + p.string());
    std::cerr << "wrote " << p.string() << "\n";
    return f;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

void cmd_cost(const CommonOpts& o) {
    auto cfg = load_config(o.config_path);
    for (const auto& [name, entry] : cfg.modules) {
        auto f = open_csv(o, "cost_" + name + ".csv");
        f << "architecture,runtime_cycles,onchip_gates,offchip_gates,energy_joules,ratio\n";
        for (Architecture a : kAllArchitectures) {
            auto r = cost_report(entry.spec, a);
            f << to_string(a) << ',' << fmt(r.runtime_cycles) << ',' << fmt(r.onchip_gates) << ','
              << fmt(r.offchip_memory_gates) << ',' << fmt(r.energy_joules) << ','
              << fmt(r.perf_per_logic_ratio) << '\n';
        }
    }
}

void cmd_select(const CommonOpts& o, std::optional<double> ht_override,
                std::optional<double> tt_override) {
    auto cfg = load_config(o.config_path);
    auto f = open_csv(o, "select.csv");
    f << "module,decision,guard_ftmr,guard_proposed,guard_sw_time,guard_sw_gates\n";
    for (const auto& [name, entry] : cfg.modules) {
        Constraints c = entry.constraints;
        if (ht_override) c.ht = *ht_override;
        if (tt_override) c.tt = *tt_override;
        auto d = select_architecture(entry.spec, c);
        f << name << ',' << to_string(d.kind) << ',' << fmt(d.guard_ftmr_gates) << ','
          << fmt(d.guard_proposed_gates) << ',' << fmt(d.guard_sw_time) << ','
          << fmt(d.guard_sw_gates) << '\n';
    }
}

void cmd_reliability(const CommonOpts& o, const std::string& module, double t_max, int steps) {
    auto cfg = load_config(o.config_path);
    std::string pick = module.empty() ? cfg.run_module : module;
    const ModuleCostSpec* spec = nullptr;
    for (const auto& [name, entry] : cfg.modules)
        if (name == pick) spec = &entry.spec;
    if (!spec) throw std::runtime_error("module not found in config: " + pick);

    std::map<Architecture, double> gates;
    for (Architecture a : kAllArchitectures) gates[a] = resources(*spec, a).onchip_gates;
    std::vector<double> grid;
    for (int i = 0; i <= steps; ++i) grid.push_back(t_max * i / steps);

    auto f = open_csv(o, "reliability.csv");
    f << "architecture,t_hours,probability\n";
    for (const auto& c : reliability_curves(gates, cfg.reliability, grid))
        for (auto [t, p] : c.samples)
            f << to_string(c.architecture) << ',' << fmt(t) << ',' << fmt(p) << '\n';
}

void cmd_coverage(const CommonOpts& o, long blocks, long sample_faults) {
    auto cfg = load_config(o.config_path);
    if (!cfg.netlist || !cfg.patterns)
        throw std::runtime_error("coverage needs 'netlist' and 'patterns' in the config");
    auto n = load_netlist(*cfg.netlist);
    auto pats = load_patterns(n, *cfg.patterns);
    auto faults = enumerate_faults(n);
    uint64_t seed = effective_seed(o, cfg.run.seed);
    if (sample_faults > 0 && sample_faults < static_cast<long>(faults.size())) {
        std::mt19937_64 rng(seed);
        std::shuffle(faults.begin(), faults.end(), rng);
        faults.resize(static_cast<size_t>(sample_faults));
    }
    long block = blocks > 0 ? std::max<long>(1, static_cast<long>(pats.size()) / blocks) : 1;
    auto f = open_csv(o, "coverage.csv");
    f << "k,coverage\n";
    for (auto [k, cov] : coverage_curve(n, pats, faults, block))
        f << k << ',' << fmt(cov) << '\n';
}

void cmd_bist(const CommonOpts& o, const std::string& fault_arg, long budget) {
    auto cfg = load_config(o.config_path);
    if (!cfg.netlist || !cfg.patterns)
        throw std::runtime_error("bist needs 'netlist' and 'patterns' in the config");
    auto n = load_netlist(*cfg.netlist);
    auto pats = load_patterns(n, *cfg.patterns);

    std::optional<FaultSite> fault;
    if (!fault_arg.empty()) {
        auto colon = fault_arg.rfind(':');
        if (colon == std::string::npos)
            throw std::runtime_error("--fault expects <net>:<0|1>");
        NetId id = n.find_net(fault_arg.substr(0, colon));
        if (id < 0) throw std::runtime_error("unknown net in --fault: " + fault_arg);
        fault = FaultSite{id, fault_arg.substr(colon + 1) == "1" ? StuckAt::One : StuckAt::Zero};
    }
    if (budget <= 0) budget = static_cast<long>(pats.size());
    long slack = static_cast<long>(cfg.run.spec.t_s1 - cfg.run.bist_request_offset);
    auto r = run_bist(n, pats, budget, fault, cfg.run.test_cycles_per_pattern, cfg.dma,
                      cfg.run.dma_total_bytes, slack);
    auto f = open_csv(o, "bist.csv");
    f << "fault_bit,patterns_applied,first_detecting_pattern,test_cycles,dma_stall_cycles\n";
    f << (r.fault_bit ? 1 : 0) << ',' << r.patterns_applied << ','
      << (r.first_detecting_pattern ? std::to_string(*r.first_detecting_pattern) : "") << ','
      << r.test_cycles << ',' << r.dma_stall_cycles << '\n';
}

void cmd_sim(const CommonOpts& o) {
    auto cfg = load_config(o.config_path);
    RunConfig rc = cfg.run;
    rc.seed = effective_seed(o, rc.seed);
    auto tr = simulate_run(rc);
    auto f = open_csv(o, "trace.csv");
    f << "cycle,event,detail\n";
    for (const auto& e : tr.events)
        f << fmt(e.cycle) << ',' << to_string(e.kind) << ',' << e.detail << '\n';
    f << fmt(tr.total_cycles) << ",total,energy_j=" << fmt(tr.total_energy)
      << (tr.silent_escape ? " silent_escape=1" : "") << '\n';
}

void cmd_montecarlo(const CommonOpts& o, long trials) {
    auto cfg = load_config(o.config_path);
    RunConfig rc = cfg.run;
    rc.fault_mode = FaultMode::Bernoulli;
    rc.seed = effective_seed(o, rc.seed);
    auto r = monte_carlo(rc, trials);
    auto f = open_csv(o, "montecarlo.csv");
    f << "p_fault,trials,mean_cycles,stderr,analytic_cycles\n";
    f << fmt(rc.spec.p_fault) << ',' << trials << ',' << fmt(r.mean_cycles) << ','
      << fmt(r.stderr_cycles) << ',' << fmt(r.analytic_cycles) << '\n';
}

void cmd_qos(const CommonOpts& o, double target_fps, bool fault_present, bool target_set) {
    auto cfg = load_config(o.config_path);
    if (!cfg.qos) throw std::runtime_error("qos needs a 'qos' section in the config");
    const QosConfig& q = *cfg.qos;
    double target = target_set ? target_fps : q.target_fps;
    auto row = qos_adapt(q.table, q.clock_hz, target, fault_present);
    auto f = open_csv(o, "qos.csv");
    f << "fault_present,target_fps,frame_label,fps\n";
    if (row) {
        double cycles =
            fault_present ? row->cycles_per_frame_fault : row->cycles_per_frame_nofault;
        f << (fault_present ? 1 : 0) << ',' << fmt(target) << ',' << row->frame_label << ','
          << fmt(frame_rate(cycles, q.clock_hz)) << '\n';
    } else {
        f << (fault_present ? 1 : 0) << ',' << fmt(target) << ",none,\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fault-tolerance architecture workbench"};
    app.require_subcommand(1);

    CommonOpts common;
    double ht = 0, tt = 0;
    std::string module_name, fault_arg;
    double t_max = 2.0, target_fps = 25.0;
    int steps = 8;
    long blocks = 3, sample_faults = 0, budget = 0, trials = 100000;
    bool fault_present = false;
    bool target_set = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", common.config_path, "JSON config file")->required();
        sub->add_option("--out", common.out_dir, "output directory");
        sub->add_option("--seed", common.seed, "RNG seed (overrides config and FTSIM_SEED)")
            ->each([&](const std::string&) { common.seed_set = true; });
    };

    auto* c_cost = app.add_subcommand("cost", "per-architecture cost comparison CSV");
    add_common(c_cost);

    auto* c_select = app.add_subcommand("select", "architecture selection CSV");
    add_common(c_select);
    auto* ht_opt = c_select->add_option("--ht", ht, "override on-chip gate budget");
    auto* tt_opt = c_select->add_option("--tt", tt, "override runtime deadline");

    auto* c_rel = app.add_subcommand("reliability", "fault-free probability curves CSV");
    add_common(c_rel);
    c_rel->add_option("--module", module_name, "module whose gate counts feed the curves");
    c_rel->add_option("--t-max", t_max, "last grid point, hours");
    c_rel->add_option("--steps", steps, "grid steps")->check(CLI::PositiveNumber);

    auto* c_cov = app.add_subcommand("coverage", "coverage-vs-k CSV from netlist+patterns");
    add_common(c_cov);
    c_cov->add_option("--blocks", blocks, "number of pattern blocks");
    c_cov->add_option("--sample-faults", sample_faults, "random fault sample size (0 = all)");

    auto* c_bist = app.add_subcommand("bist", "single BIST run report");
    add_common(c_bist);
    c_bist->add_option("--fault", fault_arg, "injected fault, <net>:<0|1>");
    c_bist->add_option("--budget", budget, "pattern budget N (0 = all)");

    auto* c_sim = app.add_subcommand("sim", "one protocol run trace CSV");
    add_common(c_sim);

    auto* c_mc = app.add_subcommand("montecarlo", "Monte Carlo convergence CSV");
    add_common(c_mc);
    c_mc->add_option("--trials", trials, "trial count")->check(CLI::PositiveNumber);

    auto* c_qos = app.add_subcommand("qos", "QoS adaptation decision");
    add_common(c_qos);
    c_qos->add_option("--target-fps", target_fps, "frame-rate target")
        ->each([&](const std::string&) { target_set = true; });
    c_qos->add_flag("--fault", fault_present, "assume a hardware fault is present");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    std::optional<double> ht_override, tt_override;
    if (ht_opt->count() > 0) ht_override = ht;
    if (tt_opt->count() > 0) tt_override = tt;

    try {
        if (c_cost->parsed()) cmd_cost(common);
        if (c_select->parsed()) cmd_select(common, ht_override, tt_override);
        if (c_rel->parsed()) cmd_reliability(common, module_name, t_max, steps);
        if (c_cov->parsed()) cmd_coverage(common, blocks, sample_faults);
        if (c_bist->parsed()) cmd_bist(common, fault_arg, budget);
        if (c_sim->parsed()) cmd_sim(common);
        if (c_mc->parsed()) cmd_montecarlo(common, trials);
        if (c_qos->parsed()) cmd_qos(common, target_fps, fault_present, target_set);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
