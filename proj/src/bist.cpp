#include "ftsim/bist.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace ftsim {

std::vector<TestPattern> prioritize_patterns(const Netlist& n,
                                             const std::vector<TestPattern>& candidates,
                                             const std::map<FaultSite, double>* weights) {
    auto universe = enumerate_faults(n);
    if (weights) {
        for (const auto& [site, w] : *weights) {
            (void)w;
            if (std::find(universe.begin(), universe.end(), site) == universe.end())
                throw NetlistError("weight given for unknown fault on net id " +
                                   std::to_string(site.net));
        }
    }
    auto m = fault_simulate(n, candidates, universe);

    std::vector<double> weight(universe.size(), 1.0);
    if (weights)
        for (size_t f = 0; f < universe.size(); ++f)
            if (auto it = weights->find(universe[f]); it != weights->end()) weight[f] = it->second;

    std::vector<bool> covered(universe.size(), false);
    std::vector<bool> taken(candidates.size(), false);
    std::vector<size_t> order;
    order.reserve(candidates.size());

    for (;;) {
        double best_gain = 0.0;
        size_t best = candidates.size();
        for (size_t p = 0; p < candidates.size(); ++p) {
            if (taken[p]) continue;
            double gain = 0.0;
            for (size_t f = 0; f < universe.size(); ++f)
                if (m.detects[p][f] && !covered[f]) gain += weight[f];
            if (gain > best_gain) {
                best_gain = gain;
                best = p;
            }
        }
        if (best == candidates.size()) break;
        taken[best] = true;
        order.push_back(best);
        for (size_t f = 0; f < universe.size(); ++f)
            if (m.detects[best][f]) covered[f] = true;
    }
    for (size_t p = 0; p < candidates.size(); ++p)
        if (!taken[p]) order.push_back(p);

    std::vector<TestPattern> out;
    out.reserve(order.size());
    for (size_t i = 0; i < order.size(); ++i) {
        TestPattern t = candidates[order[i]];
        t.priority = static_cast<int>(i);
        out.push_back(std::move(t));
    }
    return out;
}

DmaTimeline dma_timeline(long total_bytes, const DmaConfig& cfg, long software_slack_cycles) {
    DmaTimeline t;
    if (total_bytes <= 0) return t;
    long per_burst = cfg.beats_per_burst * cfg.bytes_per_beat;
    long bursts = (total_bytes + per_burst - 1) / per_burst;
    t.total_transfer_cycles = bursts * (cfg.setup_cycles + cfg.beats_per_burst);
    t.visible_stall_cycles = cfg.mode == DmaMode::Blocking
                                 ? t.total_transfer_cycles
                                 : std::max(0L, t.total_transfer_cycles - software_slack_cycles);
    t.total_energy = cfg.mode == DmaMode::Blocking ? cfg.energy_per_fetch_unoptimized
                                                   : cfg.energy_per_fetch_optimized;
    return t;
}

BistResult run_bist(const Netlist& n, const std::vector<TestPattern>& ordered, long budget_n,
                    std::optional<FaultSite> fault, long cycles_per_pattern, const DmaConfig& dma,
                    long total_bytes, long software_slack_cycles) {
    if (budget_n > static_cast<long>(ordered.size()))
        throw NetlistError("BIST budget exceeds available patterns");
    if (cycles_per_pattern < 1) throw NetlistError("cycles_per_pattern must be >= 1");

    BistResult r;
    r.dma_stall_cycles = dma_timeline(total_bytes, dma, software_slack_cycles).visible_stall_cycles;
    for (long p = 0; p < budget_n; ++p) {
        const auto& pat = ordered[static_cast<size_t>(p)];
        ++r.patterns_applied;
        r.test_cycles += static_cast<long>(pat.stimulus.size()) * cycles_per_pattern;
        if (fault) {
            auto faulty = simulate_faulty(n, pat.stimulus, fault);
            size_t off = pat.stimulus.size() - pat.golden.size();
            for (size_t c = 0; c < pat.golden.size(); ++c) {
                if (faulty[off + c] != pat.golden[c]) {
                    r.fault_bit = true;
                    r.first_detecting_pattern = p;
                    return r;
                }
            }
        }
    }
    return r;
}

std::vector<std::pair<long, double>> coverage_curve(const Netlist& n,
                                                    const std::vector<TestPattern>& ordered,
                                                    const std::vector<FaultSite>& faults,
                                                    long block_size) {
    auto m = fault_simulate(n, ordered, faults);
    long total = static_cast<long>(ordered.size());
    if (block_size <= 0) block_size = 1;
    std::vector<std::pair<long, double>> curve;
    curve.emplace_back(0, 0.0);
    for (long k = block_size; k < total + block_size; k += block_size) {
        long kk = std::min(k, total);
        curve.emplace_back(kk, m.coverage(static_cast<size_t>(kk)));
        if (kk == total) break;
    }
    return curve;
}

namespace {

std::string to_hex(const BitVec& bits) {
    size_t digits = (bits.size() + 3) / 4;
    std::string s(digits, '0');
    for (size_t i = 0; i < bits.size(); ++i) {
        if (!bits[i]) continue;
        size_t d = digits - 1 - i / 4;
        int v = (s[d] <= '9' ? s[d] - '0' : s[d] - 'a' + 10) | (1 << (i % 4));
        s[d] = static_cast<char>(v < 10 ? '0' + v : 'a' + v - 10);
    }
    return s;
}

BitVec from_hex(const std::string& s, size_t width) {
    BitVec bits(width, false);
    for (size_t i = 0; i < width; ++i) {
        size_t d = s.size() - 1 - i / 4;
        if (d >= s.size()) throw NetlistError("hex vector too short for width");
        char c = s[d];
        int v = c >= '0' && c <= '9'   ? c - '0'
                : c >= 'a' && c <= 'f' ? c - 'a' + 10
                : c >= 'A' && c <= 'F' ? c - 'A' + 10
                                       : throw NetlistError("bad hex digit in pattern file");
        bits[i] = (v >> (i % 4)) & 1;
    }
    return bits;
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string t; std::getline(is, t, ',');) out.push_back(t);
    return out;
}

}  // namespace

std::string emit_patterns(const Netlist& n, const std::vector<TestPattern>& patterns) {
    (void)n;
    std::ostringstream os;
    for (const auto& p : patterns) {
        os << "pattern " << p.priority << " stim ";
        for (size_t c = 0; c < p.stimulus.size(); ++c)
            os << (c ? "," : "") << to_hex(p.stimulus[c]);
        os << " golden ";
        for (size_t c = 0; c < p.golden.size(); ++c) os << (c ? "," : "") << to_hex(p.golden[c]);
        os << '\n';
    }
    return os.str();
}

std::vector<TestPattern> parse_patterns(const Netlist& n, const std::string& text) {
    std::vector<TestPattern> out;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        std::string stim_kw, stim_str, golden_kw, golden_str;
        TestPattern p;
        if (kw != "pattern" || !(ls >> p.priority >> stim_kw >> stim_str >> golden_kw >> golden_str) ||
            stim_kw != "stim" || golden_kw != "golden")
            throw NetlistError("pattern file line " + std::to_string(lineno) +
                               ": expected `pattern <prio> stim <hex>[,..] golden <hex>[,..]`");
        for (const auto& h : split_commas(stim_str))
            p.stimulus.push_back(from_hex(h, n.primary_inputs.size()));
        for (const auto& h : split_commas(golden_str))
            p.golden.push_back(from_hex(h, n.primary_outputs.size()));
        if (p.golden.size() > p.stimulus.size())
            throw NetlistError("pattern file line " + std::to_string(lineno) +
                               ": golden longer than stimulus");
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<TestPattern> random_patterns(const Netlist& n, size_t count, uint64_t seed,
                                         size_t cycles) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution bit(0.5);
    std::vector<TestPattern> out;
    out.reserve(count);
    for (size_t i = 0; i < count; ++i) {
        TestPattern p;
        p.priority = static_cast<int>(i);
        for (size_t c = 0; c < cycles; ++c) {
            BitVec v(n.primary_inputs.size());
            for (size_t b = 0; b < v.size(); ++b) v[b] = bit(rng);
            p.stimulus.push_back(std::move(v));
        }
        auto good = simulate(n, p.stimulus);
        p.golden.push_back(good.back());  // observe the final cycle
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace ftsim
