#include "ftsim/config.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ftsim {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& p : v) {
        if (!s.empty()) s += "; ";
        s += p;
    }
    return s;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error("config invalid: " + join(problems)), problems_(std::move(problems)) {}

namespace {

class Checker {
public:
    std::vector<std::string> problems;

    double num(const json& j, const std::string& ctx, const std::string& key, double def,
               bool required = false) {
        if (!j.contains(key)) {
            if (required) problems.push_back(ctx + ": missing required key '" + key + "'");
            return def;
        }
        if (!j[key].is_number()) {
            problems.push_back(ctx + "." + key + ": expected a number");
            return def;
        }
        return j[key].get<double>();
    }

    void require_nonneg(double v, const std::string& what) {
        if (v < 0) problems.push_back(what + " must be >= 0 (got " + std::to_string(v) + ")");
    }
    void require_pos(double v, const std::string& what) {
        if (v <= 0) problems.push_back(what + " must be > 0 (got " + std::to_string(v) + ")");
    }
};

ModuleCostSpec parse_spec(const json& j, const std::string& ctx, Checker& ck) {
    ModuleCostSpec s;
    s.t_s1 = ck.num(j, ctx, "t_s1", 0, true);
    s.t_sf = ck.num(j, ctx, "t_sf", 0, true);
    s.t_hf = ck.num(j, ctx, "t_hf", 0, true);
    s.c_c = ck.num(j, ctx, "c_c", 0);
    s.h_p = ck.num(j, ctx, "h_p", 0, true);
    s.h_h = ck.num(j, ctx, "h_h", 0, true);
    s.m_s1 = ck.num(j, ctx, "m_s1", 0);
    s.m_s2 = ck.num(j, ctx, "m_s2", 0);
    s.m_tp = ck.num(j, ctx, "m_tp", 0);
    s.n_patterns = static_cast<long>(ck.num(j, ctx, "n_patterns", 1));
    s.p_fault = ck.num(j, ctx, "p_fault", 0);
    s.clock_hz = ck.num(j, ctx, "clock_hz", 100e6);

    for (double v : {s.t_s1, s.t_sf, s.t_hf, s.c_c, s.h_p, s.h_h, s.m_s1, s.m_s2, s.m_tp})
        ck.require_nonneg(v, ctx + " time/resource field");
    if (s.p_fault < 0 || s.p_fault > 1)
        ck.problems.push_back(ctx + ".p_fault must be in [0,1] (got " + std::to_string(s.p_fault) +
                              ")");
    ck.require_pos(s.clock_hz, ctx + ".clock_hz");
    if (s.n_patterns < 1) ck.problems.push_back(ctx + ".n_patterns must be >= 1");

    if (j.contains("power")) {
        const json& p = j["power"];
        for (Architecture a : kAllArchitectures)
            if (p.contains(to_string(a))) s.power[a] = p[to_string(a)].get<double>();
    }
    return s;
}

DmaConfig parse_dma(const json& j, Checker& ck) {
    DmaConfig d;
    d.setup_cycles = static_cast<long>(ck.num(j, "dma", "setup_cycles", d.setup_cycles));
    d.beats_per_burst = static_cast<long>(ck.num(j, "dma", "beats_per_burst", d.beats_per_burst));
    d.bytes_per_beat = static_cast<long>(ck.num(j, "dma", "bytes_per_beat", d.bytes_per_beat));
    d.energy_per_fetch_optimized = ck.num(j, "dma", "energy_per_fetch_optimized", 0);
    d.energy_per_fetch_unoptimized = ck.num(j, "dma", "energy_per_fetch_unoptimized", 0);
    if (j.contains("mode")) {
        std::string m = j["mode"].get<std::string>();
        if (m == "overlapped")
            d.mode = DmaMode::Overlapped;
        else if (m == "blocking")
            d.mode = DmaMode::Blocking;
        else
            ck.problems.push_back("dma.mode must be 'overlapped' or 'blocking'");
    }
    ck.require_pos(static_cast<double>(d.setup_cycles), "dma.setup_cycles");
    ck.require_pos(static_cast<double>(d.beats_per_burst), "dma.beats_per_burst");
    ck.require_pos(static_cast<double>(d.bytes_per_beat), "dma.bytes_per_beat");
    if (d.energy_per_fetch_optimized > 0 && d.energy_per_fetch_unoptimized > 0 &&
        d.energy_per_fetch_optimized >= d.energy_per_fetch_unoptimized)
        ck.problems.push_back("dma: optimized per-fetch energy must be below unoptimized");
    return d;
}

}  // namespace

WorkbenchConfig parse_config(const std::string& json_text, const std::string& base_dir) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError({std::string("JSON parse error: ") + e.what()});
    }

    Checker ck;
    WorkbenchConfig cfg;

    auto resolve = [&](const std::string& p) {
        fs::path fp(p);
        if (fp.is_relative() && !base_dir.empty()) fp = fs::path(base_dir) / fp;
        return fp.string();
    };

    if (j.contains("netlist")) {
        NetlistSource src;
        const json& n = j["netlist"];
        if (n.is_string()) {
            src.path = resolve(n.get<std::string>());
            if (!fs::exists(src.path))
                ck.problems.push_back("netlist file does not exist: " + src.path);
        } else if (n.is_object()) {
            src.kind = n.value("kind", "");
            if (src.kind == "sorter") {
                src.sorter.elements = static_cast<int>(ck.num(n, "netlist", "elements", 4));
                src.sorter.width = static_cast<int>(ck.num(n, "netlist", "width", 4));
            } else if (src.kind == "macc") {
                src.macc.width = static_cast<int>(ck.num(n, "netlist", "width", 4));
                src.macc.terms = static_cast<int>(ck.num(n, "netlist", "terms", 8));
            } else {
                ck.problems.push_back("netlist.kind must be 'sorter' or 'macc'");
            }
        } else {
            ck.problems.push_back("netlist must be a path string or a generator object");
        }
        cfg.netlist = src;
    }

    if (j.contains("patterns")) {
        PatternSource src;
        const json& p = j["patterns"];
        if (p.is_string()) {
            src.path = resolve(p.get<std::string>());
            if (!fs::exists(src.path))
                ck.problems.push_back("pattern file does not exist: " + src.path);
        } else if (p.is_object()) {
            src.count = static_cast<long>(ck.num(p, "patterns", "count", 16));
            src.cycles = static_cast<long>(ck.num(p, "patterns", "cycles", 1));
            src.seed = static_cast<uint64_t>(ck.num(p, "patterns", "seed", 1));
            src.prioritize = p.value("prioritize", true);
            if (src.count < 1) ck.problems.push_back("patterns.count must be >= 1");
        } else {
            ck.problems.push_back("patterns must be a path string or a generator object");
        }
        cfg.patterns = src;
    }

    if (j.contains("modules")) {
        for (const auto& [name, m] : j["modules"].items()) {
            ModuleEntry e;
            if (!m.contains("spec")) {
                ck.problems.push_back("module '" + name + "': missing required key 'spec'");
            } else {
                e.spec = parse_spec(m["spec"], "module '" + name + "'", ck);
            }
            if (m.contains("constraints")) {
                e.constraints.ht = ck.num(m["constraints"], "module '" + name + "' constraints",
                                          "ht", 0);
                e.constraints.tt = ck.num(m["constraints"], "module '" + name + "' constraints",
                                          "tt", 0);
                ck.require_nonneg(e.constraints.ht, "module '" + name + "'.constraints.ht");
                ck.require_nonneg(e.constraints.tt, "module '" + name + "'.constraints.tt");
            }
            cfg.modules.emplace_back(name, std::move(e));
        }
    }

    if (j.contains("reliability")) {
        const json& r = j["reliability"];
        cfg.reliability.lambda_sum = ck.num(r, "reliability", "lambda_sum", 1e-5);
        cfg.reliability.transistors_per_gate =
            static_cast<int>(ck.num(r, "reliability", "transistors_per_gate", 4));
        ck.require_pos(cfg.reliability.lambda_sum, "reliability.lambda_sum");
        if (cfg.reliability.transistors_per_gate < 1)
            ck.problems.push_back("reliability.transistors_per_gate must be >= 1");
    }

    if (j.contains("dma")) cfg.dma = parse_dma(j["dma"], ck);
    cfg.run.dma = cfg.dma;

    if (j.contains("run")) {
        const json& r = j["run"];
        cfg.run_module = r.value("module", "");
        cfg.run.bist_request_offset = ck.num(r, "run", "bist_request_offset", 0);
        cfg.run.test_cycles_per_pattern =
            static_cast<long>(ck.num(r, "run", "test_cycles_per_pattern", 2));
        cfg.run.dma_total_bytes = static_cast<long>(ck.num(r, "run", "dma_total_bytes", 0));
        cfg.run.spare_cores = static_cast<int>(ck.num(r, "run", "spare_cores", 1));
        cfg.run.parallel_efficiency = ck.num(r, "run", "parallel_efficiency", 0);
        cfg.run.detect_coverage = ck.num(r, "run", "detect_coverage", 1.0);
        cfg.run.seed = static_cast<uint64_t>(ck.num(r, "run", "seed", 0));
        std::string fm = r.value("fault_mode", "none");
        if (fm == "none")
            cfg.run.fault_mode = FaultMode::None;
        else if (fm == "forced")
            cfg.run.fault_mode = FaultMode::Forced;
        else if (fm == "bernoulli")
            cfg.run.fault_mode = FaultMode::Bernoulli;
        else
            ck.problems.push_back("run.fault_mode must be none, forced, or bernoulli");
        if (cfg.run.parallel_efficiency < 0 || cfg.run.parallel_efficiency > 1)
            ck.problems.push_back("run.parallel_efficiency must be in [0,1]");
    }
    if (cfg.run_module.empty() && !cfg.modules.empty()) cfg.run_module = cfg.modules.front().first;
    for (const auto& [name, e] : cfg.modules)
        if (name == cfg.run_module) cfg.run.spec = e.spec;
    if (!cfg.run_module.empty()) {
        bool found = false;
        for (const auto& [name, e] : cfg.modules) found = found || name == cfg.run_module;
        if (!found) ck.problems.push_back("run.module '" + cfg.run_module + "' is not defined");
    }
    if (cfg.run.bist_request_offset > cfg.run.spec.t_s1)
        ck.problems.push_back("run.bist_request_offset exceeds the module's t_s1");

    if (j.contains("qos")) {
        QosConfig q;
        const json& jq = j["qos"];
        q.clock_hz = ck.num(jq, "qos", "clock_hz", 550e6);
        q.target_fps = ck.num(jq, "qos", "target_fps", 25.0);
        ck.require_pos(q.clock_hz, "qos.clock_hz");
        if (jq.contains("table")) {
            for (const auto& row : jq["table"]) {
                QosRow r;
                r.frame_label = row.value("frame_label", "");
                r.cycles_per_frame_fault = ck.num(row, "qos.table row", "cycles_fault", 0, true);
                r.cycles_per_frame_nofault = ck.num(row, "qos.table row", "cycles_nofault", 0, true);
                if (r.cycles_per_frame_fault < r.cycles_per_frame_nofault)
                    ck.problems.push_back("qos row '" + r.frame_label +
                                          "': fault cycles below no-fault cycles");
                q.table.push_back(std::move(r));
            }
        }
        cfg.qos = std::move(q);
    }

    if (!ck.problems.empty()) throw ConfigError(std::move(ck.problems));
    return cfg;
}

WorkbenchConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"cannot open config file: " + path});
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), fs::path(path).parent_path().string());
}

Netlist load_netlist(const NetlistSource& src) {
    if (!src.path.empty()) {
        std::ifstream in(src.path);
        if (!in) throw NetlistError("cannot open netlist file: " + src.path);
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse_netlist(buf.str());
    }
    if (src.kind == "sorter") return build_sorter(src.sorter);
    if (src.kind == "macc") return build_macc(src.macc);
    throw NetlistError("netlist source has neither path nor generator kind");
}

std::vector<TestPattern> load_patterns(const Netlist& n, const PatternSource& src) {
    if (!src.path.empty()) {
        std::ifstream in(src.path);
        if (!in) throw NetlistError("cannot open pattern file: " + src.path);
        std::ostringstream buf;
        buf << in.rdbuf();
        auto pats = parse_patterns(n, buf.str());
        std::stable_sort(pats.begin(), pats.end(),
                         [](const TestPattern& a, const TestPattern& b) {
                             return a.priority < b.priority;
                         });
        return pats;
    }
    auto pats = random_patterns(n, static_cast<size_t>(src.count), src.seed,
                                static_cast<size_t>(src.cycles));
    if (src.prioritize) pats = prioritize_patterns(n, pats);
    return pats;
}

}  // namespace ftsim
