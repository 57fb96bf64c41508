#include "ftsim/reliability.hpp"

#include <cmath>
#include <stdexcept>

namespace ftsim {

double fault_free_prob_transistors(double n_transistors, const ReliabilityParams& p,
                                   double t_hours) {
    if (t_hours < 0) throw std::invalid_argument("time must be >= 0");
    return std::exp(-n_transistors * p.lambda_sum * t_hours);
}

double fault_free_prob_gates(double gates, const ReliabilityParams& p, double t_hours) {
    return fault_free_prob_transistors(gates * p.transistors_per_gate, p, t_hours);
}

std::vector<ReliabilityCurve> reliability_curves(const std::map<Architecture, double>& gate_counts,
                                                 const ReliabilityParams& p,
                                                 const std::vector<double>& t_grid) {
    std::vector<ReliabilityCurve> curves;
    for (Architecture a : kAllArchitectures) {
        auto it = gate_counts.find(a);
        if (it == gate_counts.end()) continue;
        ReliabilityCurve c{a, {}};
        c.samples.reserve(t_grid.size());
        for (double t : t_grid) c.samples.emplace_back(t, fault_free_prob_gates(it->second, p, t));
        curves.push_back(std::move(c));
    }
    return curves;
}

}  // namespace ftsim
