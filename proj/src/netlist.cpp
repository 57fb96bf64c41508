#include "ftsim/netlist.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <unordered_map>

namespace ftsim {

NetId Netlist::find_net(const std::string& n) const {
    for (size_t i = 0; i < net_names.size(); ++i)
        if (net_names[i] == n) return static_cast<NetId>(i);
    return -1;
}

namespace {

bool valid_net_name(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw NetlistError("line " + std::to_string(line) + ": " + msg);
}

// Kahn topological sort over the combinational NAND subgraph.
// DFF q nets are sources, DFF d nets are sinks.
std::vector<size_t> topo_sort(const Netlist& n) {
    const size_t g = n.nand_gates.size();
    std::vector<int> driver_gate(n.net_names.size(), -1);
    for (size_t i = 0; i < g; ++i) driver_gate[n.nand_gates[i].out] = static_cast<int>(i);

    std::vector<std::vector<size_t>> consumers(g);
    std::vector<int> indeg(g, 0);
    for (size_t i = 0; i < g; ++i) {
        for (NetId in : {n.nand_gates[i].a, n.nand_gates[i].b}) {
            int d = driver_gate[in];
            if (d >= 0) {
                consumers[static_cast<size_t>(d)].push_back(i);
                ++indeg[i];
            }
        }
    }

    std::vector<size_t> order;
    order.reserve(g);
    std::vector<size_t> ready;
    for (size_t i = 0; i < g; ++i)
        if (indeg[i] == 0) ready.push_back(i);
    while (!ready.empty()) {
        size_t i = ready.back();
        ready.pop_back();
        order.push_back(i);
        for (size_t c : consumers[i])
            if (--indeg[c] == 0) ready.push_back(c);
    }
    if (order.size() != g) throw NetlistError("combinational cycle through NAND gates");
    return order;
}

void finalize(Netlist& n) {
    std::vector<int> drivers(n.net_names.size(), 0);
    for (NetId i : n.primary_inputs) ++drivers[i];
    for (const auto& gt : n.nand_gates) ++drivers[gt.out];
    for (const auto& ff : n.dffs) ++drivers[ff.q];
    for (size_t i = 0; i < drivers.size(); ++i) {
        if (drivers[i] > 1) throw NetlistError("multiply-driven net " + n.net_names[i]);
        if (drivers[i] == 0) throw NetlistError("undriven net " + n.net_names[i]);
    }
    for (NetId o : n.primary_outputs)
        if (drivers[o] == 0) throw NetlistError("undriven output " + n.net_names[o]);
    n.topo_order = topo_sort(n);
}

}  // namespace

Netlist parse_netlist(const std::string& text) {
    Netlist n;
    std::unordered_map<std::string, NetId> ids;
    auto net = [&](const std::string& name, int line) {
        if (!valid_net_name(name)) fail(line, "bad net name '" + name + "'");
        auto it = ids.find(name);
        if (it != ids.end()) return it->second;
        NetId id = static_cast<NetId>(n.net_names.size());
        n.net_names.push_back(name);
        ids.emplace(name, id);
        return id;
    };

    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        std::vector<std::string> args;
        for (std::string t; ls >> t;) args.push_back(t);

        if (kw == "input" || kw == "output") {
            if (args.empty()) fail(lineno, kw + " needs at least one net");
            for (const auto& a : args)
                (kw == "input" ? n.primary_inputs : n.primary_outputs).push_back(net(a, lineno));
        } else if (kw == "nand") {
            if (args.size() != 3) fail(lineno, "nand needs <out> <a> <b>");
            n.nand_gates.push_back({net(args[0], lineno), net(args[1], lineno), net(args[2], lineno)});
        } else if (kw == "dff") {
            if (args.size() != 3) fail(lineno, "dff needs <q> <d> <0|1>");
            if (args[2] != "0" && args[2] != "1") fail(lineno, "dff initial value must be 0 or 1");
            n.dffs.push_back({net(args[0], lineno), net(args[1], lineno), args[2] == "1"});
        } else {
            fail(lineno, "unknown keyword '" + kw + "'");
        }
    }
    if (n.primary_outputs.empty()) throw NetlistError("netlist declares no outputs");
    finalize(n);
    return n;
}

std::string emit_netlist(const Netlist& n) {
    std::ostringstream os;
    os << "input";
    for (NetId i : n.primary_inputs) os << ' ' << n.net_names[i];
    os << "\noutput";
    for (NetId o : n.primary_outputs) os << ' ' << n.net_names[o];
    os << '\n';
    for (const auto& g : n.nand_gates)
        os << "nand " << n.net_names[g.out] << ' ' << n.net_names[g.a] << ' ' << n.net_names[g.b]
           << '\n';
    for (const auto& ff : n.dffs)
        os << "dff " << n.net_names[ff.q] << ' ' << n.net_names[ff.d] << ' ' << (ff.init ? 1 : 0)
           << '\n';
    return os.str();
}

std::vector<BitVec> simulate_faulty(const Netlist& n, const std::vector<BitVec>& stim,
                                    std::optional<FaultSite> fault) {
    NetId fnet = fault ? fault->net : -1;
    bool fval = fault && fault->polarity == StuckAt::One;
    if (fault && (fnet < 0 || fnet >= n.net_count()))
        throw NetlistError("fault site names unknown net");

    std::vector<char> vals(n.net_names.size(), 0);
    auto set = [&](NetId id, bool v) { vals[id] = (id == fnet) ? fval : v; };

    for (const auto& ff : n.dffs) set(ff.q, ff.init);

    std::vector<BitVec> out;
    out.reserve(stim.size());
    for (const auto& vec : stim) {
        if (vec.size() != n.primary_inputs.size())
            throw NetlistError("stimulus width " + std::to_string(vec.size()) + " != " +
                               std::to_string(n.primary_inputs.size()) + " inputs");
        for (size_t i = 0; i < vec.size(); ++i) set(n.primary_inputs[i], vec[i]);
        for (size_t gi : n.topo_order) {
            const auto& g = n.nand_gates[gi];
            set(g.out, !(vals[g.a] && vals[g.b]));
        }
        BitVec o(n.primary_outputs.size());
        for (size_t i = 0; i < o.size(); ++i) o[i] = vals[n.primary_outputs[i]] != 0;
        out.push_back(std::move(o));
        // two-phase update: sample every d, then write every q
        std::vector<char> next(n.dffs.size());
        for (size_t i = 0; i < n.dffs.size(); ++i) next[i] = vals[n.dffs[i].d];
        for (size_t i = 0; i < n.dffs.size(); ++i) set(n.dffs[i].q, next[i] != 0);
    }
    return out;
}

std::vector<BitVec> simulate(const Netlist& n, const std::vector<BitVec>& stim) {
    return simulate_faulty(n, stim, std::nullopt);
}

std::vector<FaultSite> enumerate_faults(const Netlist& n) {
    std::vector<FaultSite> f;
    f.reserve(2 * n.net_names.size());
    for (NetId id = 0; id < n.net_count(); ++id) {
        f.push_back({id, StuckAt::Zero});
        f.push_back({id, StuckAt::One});
    }
    return f;
}

namespace {

// Golden vectors are aligned to the tail of the stimulus: a golden
// sequence of length g is checked against the last g output cycles.
bool detects(const std::vector<BitVec>& faulty, const TestPattern& p) {
    size_t off = p.stimulus.size() - p.golden.size();
    for (size_t c = 0; c < p.golden.size(); ++c)
        if (faulty[off + c] != p.golden[c]) return true;
    return false;
}

}  // namespace

DetectionMatrix fault_simulate(const Netlist& n, const std::vector<TestPattern>& patterns,
                               const std::vector<FaultSite>& faults) {
    for (const auto& p : patterns) {
        if (p.golden.size() > p.stimulus.size())
            throw NetlistError("pattern golden longer than stimulus");
        auto good = simulate(n, p.stimulus);
        if (!std::equal(p.golden.begin(), p.golden.end(),
                        good.begin() + static_cast<long>(p.stimulus.size() - p.golden.size())))
            throw NetlistError("pattern golden response does not match fault-free simulation");
    }
    DetectionMatrix m;
    m.faults = faults;
    m.patterns = patterns;
    m.detects.assign(patterns.size(), std::vector<bool>(faults.size(), false));
    for (size_t pi = 0; pi < patterns.size(); ++pi) {
        for (size_t fi = 0; fi < faults.size(); ++fi) {
            auto faulty = simulate_faulty(n, patterns[pi].stimulus, faults[fi]);
            m.detects[pi][fi] = detects(faulty, patterns[pi]);
        }
    }
    return m;
}

double DetectionMatrix::coverage(size_t k) const {
    if (faults.empty()) return 0.0;
    k = std::min(k, patterns.size());
    std::vector<bool> hit(faults.size(), false);
    for (size_t p = 0; p < k; ++p)
        for (size_t f = 0; f < faults.size(); ++f)
            if (detects[p][f]) hit[f] = true;
    size_t c = static_cast<size_t>(std::count(hit.begin(), hit.end(), true));
    return static_cast<double>(c) / static_cast<double>(faults.size());
}

long gate_equivalents(const Netlist& n) {
    return static_cast<long>(n.nand_gates.size()) +
           kDffGateEquivalents * static_cast<long>(n.dffs.size());
}

namespace {

// Incremental NAND-logic builder used by the circuit generators.
class Builder {
public:
    explicit Builder(std::string name) { n_.name = std::move(name); }

    NetId named(const std::string& name) {
        NetId id = static_cast<NetId>(n_.net_names.size());
        n_.net_names.push_back(name);
        return id;
    }
    NetId input(const std::string& name) {
        NetId id = named(name);
        n_.primary_inputs.push_back(id);
        return id;
    }
    void output(NetId id) { n_.primary_outputs.push_back(id); }

    NetId nand(NetId a, NetId b) {
        NetId out = named("n" + std::to_string(n_.net_names.size()));
        n_.nand_gates.push_back({out, a, b});
        return out;
    }
    NetId not_(NetId a) { return nand(a, a); }
    NetId and_(NetId a, NetId b) { return not_(nand(a, b)); }
    NetId or_(NetId a, NetId b) { return nand(not_(a), not_(b)); }
    NetId xor_(NetId a, NetId b) {
        NetId t = nand(a, b);
        return nand(nand(a, t), nand(b, t));
    }
    NetId xnor_(NetId a, NetId b) { return not_(xor_(a, b)); }
    NetId mux(NetId sel, NetId when_true, NetId when_false) {
        return nand(nand(sel, when_true), nand(not_(sel), when_false));
    }
    NetId dff(const std::string& q_name, NetId d, bool init) {
        NetId q = named(q_name);
        n_.dffs.push_back({q, d, init});
        return q;
    }

    // (sum, carry_out)
    std::pair<NetId, NetId> half_add(NetId a, NetId b) { return {xor_(a, b), and_(a, b)}; }
    std::pair<NetId, NetId> full_add(NetId a, NetId b, NetId cin) {
        NetId axb = xor_(a, b);
        NetId s = xor_(axb, cin);
        NetId cout = nand(nand(a, b), nand(cin, axb));
        return {s, cout};
    }

    // w-bit add, carry out discarded (mod 2^w). Bits LSB-first.
    std::vector<NetId> add_mod(const std::vector<NetId>& a, const std::vector<NetId>& b) {
        std::vector<NetId> s(a.size());
        NetId carry = -1;
        for (size_t i = 0; i < a.size(); ++i) {
            if (i == 0) {
                auto [sum, c] = half_add(a[i], b[i]);
                s[i] = sum;
                carry = c;
            } else if (i + 1 == a.size()) {
                s[i] = xor_(xor_(a[i], b[i]), carry);
            } else {
                auto [sum, c] = full_add(a[i], b[i], carry);
                s[i] = sum;
                carry = c;
            }
        }
        return s;
    }

    // unsigned a > b, bits LSB-first
    NetId greater_than(const std::vector<NetId>& a, const std::vector<NetId>& b) {
        int msb = static_cast<int>(a.size()) - 1;
        NetId gt = and_(a[msb], not_(b[msb]));
        NetId eqp = xnor_(a[msb], b[msb]);
        for (int i = msb - 1; i >= 0; --i) {
            NetId here = and_(a[i], not_(b[i]));
            gt = or_(gt, and_(eqp, here));
            if (i > 0) eqp = and_(eqp, xnor_(a[i], b[i]));
        }
        return gt;
    }

    Netlist take() {
        finalize(n_);
        return std::move(n_);
    }

private:
    Netlist n_;
};

void check_range(bool ok, const std::string& what) {
    if (!ok) throw NetlistError("generator parameter out of range: " + what);
}

}  // namespace

Netlist build_sorter(const SorterParams& p) {
    check_range(p.elements >= 2 && p.elements <= 8, "elements in [2,8]");
    check_range(p.width >= 1 && p.width <= 8, "width in [1,8]");
    Builder b("sorter" + std::to_string(p.elements) + "x" + std::to_string(p.width));

    std::vector<std::vector<NetId>> lane(p.elements);
    for (int e = 0; e < p.elements; ++e)
        for (int bit = 0; bit < p.width; ++bit)
            lane[e].push_back(b.input("in" + std::to_string(e) + "_" + std::to_string(bit)));

    auto exchange = [&](int lo, int hi) {
        NetId gt = b.greater_than(lane[lo], lane[hi]);
        std::vector<NetId> small(p.width), big(p.width);
        for (int bit = 0; bit < p.width; ++bit) {
            small[bit] = b.mux(gt, lane[hi][bit], lane[lo][bit]);
            big[bit] = b.mux(gt, lane[lo][bit], lane[hi][bit]);
        }
        lane[lo] = small;
        lane[hi] = big;
    };

    // odd-even transposition network: n rounds of adjacent exchanges
    for (int round = 0; round < p.elements; ++round)
        for (int i = round % 2; i + 1 < p.elements; i += 2) exchange(i, i + 1);

    for (int e = 0; e < p.elements; ++e)
        for (int bit = 0; bit < p.width; ++bit) b.output(lane[e][bit]);
    return b.take();
}

Netlist build_macc(const MaccParams& p) {
    check_range(p.width >= 1 && p.width <= 8, "width in [1,8]");
    check_range(p.terms >= 1 && p.terms <= 16, "terms in [1,16]");
    Builder b("macc" + std::to_string(p.width) + "x" + std::to_string(p.terms));

    std::vector<NetId> a(p.width), bb(p.width);
    for (int i = 0; i < p.width; ++i) a[i] = b.input("a" + std::to_string(i));
    for (int i = 0; i < p.width; ++i) bb[i] = b.input("b" + std::to_string(i));

    // truncated array multiplier, product mod 2^w
    std::vector<NetId> prod;
    for (int j = 0; j < p.width; ++j) prod.push_back(b.and_(a[0], bb[j]));
    for (int i = 1; i < p.width; ++i) {
        // row i shifted left by i, bits beyond w-1 dropped
        std::vector<NetId> upper(prod.begin() + i, prod.end());
        std::vector<NetId> row;
        for (int j = 0; j + i < p.width; ++j) row.push_back(b.and_(a[i], bb[j]));
        auto sum = b.add_mod(upper, row);
        std::copy(sum.begin(), sum.end(), prod.begin() + i);
    }

    // accumulator register; outputs tap the adder so the running sum is
    // visible in the same cycle the operands are applied
    std::vector<NetId> q(p.width);
    for (int i = 0; i < p.width; ++i) q[i] = b.dff("acc" + std::to_string(i), /*d placeholder*/ 0, false);
    auto next = b.add_mod(q, prod);
    Netlist n = [&] {
        // rebind dff d inputs now that the adder nets exist
        for (int i = 0; i < p.width; ++i) b.output(next[i]);
        Netlist raw = b.take();
        for (int i = 0; i < p.width; ++i) raw.dffs[static_cast<size_t>(i)].d = next[i];
        return raw;
    }();
    return n;
}

BitVec pack_sorter_input(const SorterParams& p, const std::vector<unsigned>& values) {
    BitVec v;
    v.reserve(static_cast<size_t>(p.elements) * p.width);
    for (int e = 0; e < p.elements; ++e)
        for (int bit = 0; bit < p.width; ++bit) v.push_back((values[static_cast<size_t>(e)] >> bit) & 1u);
    return v;
}

std::vector<unsigned> unpack_sorter_output(const SorterParams& p, const BitVec& out) {
    std::vector<unsigned> v(static_cast<size_t>(p.elements), 0);
    for (int e = 0; e < p.elements; ++e)
        for (int bit = 0; bit < p.width; ++bit)
            if (out[static_cast<size_t>(e * p.width + bit)]) v[static_cast<size_t>(e)] |= 1u << bit;
    return v;
}

BitVec pack_macc_input(const MaccParams& p, unsigned a, unsigned b) {
    BitVec v;
    for (int i = 0; i < p.width; ++i) v.push_back((a >> i) & 1u);
    for (int i = 0; i < p.width; ++i) v.push_back((b >> i) & 1u);
    return v;
}

unsigned unpack_macc_output(const MaccParams& p, const BitVec& out) {
    unsigned v = 0;
    for (int i = 0; i < p.width; ++i)
        if (out[static_cast<size_t>(i)]) v |= 1u << i;
    return v;
}

}  // namespace ftsim
