#pragma once

#include <string>
#include <vector>

#include "ftsim/costmodel.hpp"

namespace ftsim {

struct Constraints {
    double ht = 0;  // on-chip gate budget for this module
    double tt = 0;  // runtime deadline, cycles
};

enum class DecisionKind { Ftmr, Proposed, ThreeVersionSoftware, NeedsRepartition };

std::string to_string(DecisionKind d);

struct Decision {
    DecisionKind kind = DecisionKind::NeedsRepartition;
    // guard values actually compared, in branch order
    double guard_ftmr_gates = 0;      // h_p + 3*h_h
    double guard_proposed_gates = 0;  // h_p + h_h + m_tp
    double guard_sw_time = 0;         // t_s1 + t_sf
    double guard_sw_gates = 0;        // 3*h_p
};

struct SystemPlan {
    std::vector<Decision> decisions;
    bool repartition_required = false;
};

/// First-match architecture selection under a gate budget and deadline.
/// Branches, in order: FTMR, proposed, 3-version software, repartition.
/// All comparisons are strict.
Decision select_architecture(const ModuleCostSpec& spec, const Constraints& c);

SystemPlan plan_system(const std::vector<std::pair<ModuleCostSpec, Constraints>>& modules);

}  // namespace ftsim
