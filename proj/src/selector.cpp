#include "ftsim/selector.hpp"

namespace ftsim {

std::string to_string(DecisionKind d) {
    switch (d) {
        case DecisionKind::Ftmr: return "ftmr";
        case DecisionKind::Proposed: return "proposed";
        case DecisionKind::ThreeVersionSoftware: return "three_version_software";
        case DecisionKind::NeedsRepartition: return "needs_repartition";
    }
    return "?";
}

Decision select_architecture(const ModuleCostSpec& s, const Constraints& c) {
    Decision d;
    d.guard_ftmr_gates = s.h_p + 3 * s.h_h;
    d.guard_proposed_gates = s.h_p + s.h_h + s.m_tp;
    d.guard_sw_time = s.t_s1 + s.t_sf;
    d.guard_sw_gates = 3 * s.h_p;

    if (c.ht > d.guard_ftmr_gates)
        d.kind = DecisionKind::Ftmr;
    else if (c.ht > d.guard_proposed_gates)
        d.kind = DecisionKind::Proposed;
    else if (c.tt > d.guard_sw_time && c.ht > d.guard_sw_gates)
        d.kind = DecisionKind::ThreeVersionSoftware;
    else
        d.kind = DecisionKind::NeedsRepartition;
    return d;
}

SystemPlan plan_system(const std::vector<std::pair<ModuleCostSpec, Constraints>>& modules) {
    SystemPlan plan;
    plan.decisions.reserve(modules.size());
    for (const auto& [spec, cons] : modules) {
        plan.decisions.push_back(select_architecture(spec, cons));
        if (plan.decisions.back().kind == DecisionKind::NeedsRepartition)
            plan.repartition_required = true;
    }
    return plan;
}

}  // namespace ftsim
