#pragma once

#include <string>
#include <vector>

#include "ftsim/costmodel.hpp"

namespace ftsim {

struct ReliabilityParams {
    double lambda_sum = 1e-5;      // per-transistor failure rate, 1/h
    int transistors_per_gate = 4;  // MOS transistors per NAND
};

struct ReliabilityCurve {
    Architecture architecture;
    std::vector<std::pair<double, double>> samples;  // (t hours, probability)
};

/// exp(-n * lambda * t), the fault-free probability of n transistors.
double fault_free_prob_transistors(double n_transistors, const ReliabilityParams& p, double t_hours);

/// Gate form: exp(-transistors_per_gate * lambda * gates * t).
double fault_free_prob_gates(double gates, const ReliabilityParams& p, double t_hours);

/// One curve per architecture, emitted in the kAllArchitectures order.
std::vector<ReliabilityCurve> reliability_curves(const std::map<Architecture, double>& gate_counts,
                                                 const ReliabilityParams& p,
                                                 const std::vector<double>& t_grid);

}  // namespace ftsim
