#include "d2dsim/dais.hpp"

#include <array>
#include <cmath>

namespace d2dsim {

const char* to_string(DecisionBranch branch) {
    switch (branch) {
        case DecisionBranch::ConnectAsClient: return "connect-as-client";
        case DecisionBranch::PromoteMhrToRelayAndJoin: return "promote-mhr-to-relay-and-join";
        case DecisionBranch::DemoteRelayToMhrAndJoinAsRelay:
            return "demote-relay-to-mhr-and-join-as-relay";
        case DecisionBranch::BecomeMhrAndAdoptRelay: return "become-mhr-and-adopt-relay";
        case DecisionBranch::BecomeRelayUnderMhr: return "become-relay-under-mhr";
        case DecisionBranch::DefaultMhrToBs: return "default-mhr-to-bs";
    }
    return "unknown";
}

namespace {

constexpr std::size_t kBranchCount = 5;

// Feasibility of one advertised candidate for branch index 0..4
// (ConnectAsClient .. BecomeRelayUnderMhr). The UE-side battery gate of
// branch 3 (BecomeMhrAndAdoptRelay) is applied by the callers.
bool candidate_feasible(std::size_t branch, const NeighborAdvert& cand, double d, double self_wdr,
                        const DaisParams& p) {
    const double uplift = (1.0 + p.perc_data_rate) * self_wdr;
    const double downgrade = (1.0 - p.perc_data_rate) * self_wdr;
    const bool battery_ok = !p.battery_option_enabled || cand.battery >= p.battery_threshold;

    switch (branch) {
        case 0:  // maxD2DR
            return cand.mode == TransmissionMode::D2dRelay &&
                   d <= p.max_distance_form_cluster_m && cand.wdr >= uplift &&
                   cand.served_count + 1 <= p.d_serving_cap;
        case 1:  // maxD2DMHRNoConnections
            return cand.mode == TransmissionMode::D2dMultiHopRelay &&
                   d <= p.max_distance_form_cluster_m && cand.wdr >= uplift &&
                   cand.served_count == 0;
        case 2:  // maxD2DRNoConnectionsToBeD2DMHR
            return cand.mode == TransmissionMode::D2dRelay &&
                   d >= p.max_distance_form_cluster_m && d <= p.max_query_d2dr_distance_m &&
                   cand.wdr >= uplift && cand.served_count == 0 && battery_ok;
        case 3:  // maxD2DRToUseUED2DMHR ("<<" read as <= with the margin)
            return cand.mode == TransmissionMode::D2dRelay &&
                   d >= p.max_distance_form_cluster_m && d <= p.max_query_d2dr_distance_m &&
                   !std::isinf(self_wdr) && cand.wdr <= downgrade;
        case 4:  // maxD2DMHRToUseAsMultiHop
            return cand.mode == TransmissionMode::D2dMultiHopRelay &&
                   d >= p.max_query_d2dr_distance_m && d <= p.max_distance_multihop_m &&
                   cand.wdr >= uplift && cand.served_count == 0 && battery_ok;
    }
    return false;
}

struct Best {
    bool set = false;
    NodeId id = 0;
    double wdr = 0.0;
    double d = 0.0;

    // max advertised WDR, ties by smaller distance then smaller id
    bool beats(double wdr_, double d_, NodeId id_) const {
        if (!set) return true;
        if (wdr_ != wdr) return wdr_ > wdr;
        if (d_ != d) return d_ < d;
        return id_ < id;
    }

    void take(NodeId id_, double wdr_, double d_) {
        set = true;
        id = id_;
        wdr = wdr_;
        d = d_;
    }
};

// One pass over the belief table, maintaining the per-branch argmax.
std::array<Best, kBranchCount> scan_candidates(const UeNode& ue, const Beliefs& beliefs,
                                               const DaisParams& params, DecisionStats* stats) {
    const double self_wdr = beliefs.self_wdr.value;
    const bool ue_battery_ok =
        !params.battery_option_enabled || ue.battery >= params.battery_threshold;

    std::array<Best, kBranchCount> best;
    for (const auto& [id, cand] : beliefs.neighbors) {
        if (stats != nullptr) {
            ++stats->neighbors_scanned;
        }
        const double d = distance(ue.pos, cand.pos);
        for (std::size_t branch = 0; branch < kBranchCount; ++branch) {
            if (branch == 3 && !ue_battery_ok) {
                continue;  // the UE itself would take the serving role
            }
            if (candidate_feasible(branch, cand, d, self_wdr, params) &&
                best[branch].beats(cand.wdr, d, id)) {
                best[branch].take(id, cand.wdr, d);
            }
        }
    }
    return best;
}

std::optional<NodeId> single_predicate(std::size_t branch, const UeNode& ue,
                                       const Beliefs& beliefs, const DaisParams& params) {
    const auto best = scan_candidates(ue, beliefs, params, nullptr);
    if (!best[branch].set) {
        return std::nullopt;
    }
    return best[branch].id;
}

}  // namespace

std::optional<NodeId> find_max_d2dr(const UeNode& ue, const Beliefs& beliefs,
                                    const DaisParams& params) {
    return single_predicate(0, ue, beliefs, params);
}

std::optional<NodeId> find_max_d2dmhr_no_connections(const UeNode& ue, const Beliefs& beliefs,
                                                     const DaisParams& params) {
    return single_predicate(1, ue, beliefs, params);
}

std::optional<NodeId> find_max_d2dr_no_connections_to_be_d2dmhr(const UeNode& ue,
                                                                const Beliefs& beliefs,
                                                                const DaisParams& params) {
    return single_predicate(2, ue, beliefs, params);
}

std::optional<NodeId> find_max_d2dr_to_use_ue_d2dmhr(const UeNode& ue, const Beliefs& beliefs,
                                                     const DaisParams& params) {
    return single_predicate(3, ue, beliefs, params);
}

std::optional<NodeId> find_max_d2dmhr_as_multihop(const UeNode& ue, const Beliefs& beliefs,
                                                  const DaisParams& params) {
    return single_predicate(4, ue, beliefs, params);
}

namespace {

ModeDecision decision_for_branch(std::size_t branch, NodeId target) {
    switch (branch) {
        case 0:
            return {DecisionBranch::ConnectAsClient, target, TransmissionMode::D2dClient,
                    TransmissionMode::D2dRelay};
        case 1:
            return {DecisionBranch::PromoteMhrToRelayAndJoin, target, TransmissionMode::D2dClient,
                    TransmissionMode::D2dRelay};
        case 2:
            return {DecisionBranch::DemoteRelayToMhrAndJoinAsRelay, target,
                    TransmissionMode::D2dRelay, TransmissionMode::D2dMultiHopRelay};
        case 3:
            return {DecisionBranch::BecomeMhrAndAdoptRelay, target,
                    TransmissionMode::D2dMultiHopRelay, TransmissionMode::D2dRelay};
        case 4:
            return {DecisionBranch::BecomeRelayUnderMhr, target, TransmissionMode::D2dRelay,
                    TransmissionMode::D2dMultiHopRelay};
        default:
            return {DecisionBranch::DefaultMhrToBs, std::nullopt,
                    TransmissionMode::D2dMultiHopRelay, std::nullopt};
    }
}

}  // namespace

ModeDecision select_transmission_mode(const UeNode& ue, const Beliefs& beliefs,
                                      const DaisParams& params, DecisionStats* stats) {
    const auto best = scan_candidates(ue, beliefs, params, stats);
    for (std::size_t branch = 0; branch < kBranchCount; ++branch) {
        if (best[branch].set) {
            return decision_for_branch(branch, best[branch].id);
        }
    }
    ModeDecision decision = decision_for_branch(kBranchCount, 0);
    if (params.battery_option_enabled && ue.battery < params.battery_threshold) {
        decision.self_mode = TransmissionMode::Cellular;  // too low to take the MHR role
    }
    return decision;
}

namespace {

void require(bool ok, const char* what) {
    if (!ok) {
        throw StaleDecisionError(what);
    }
}

}  // namespace

void apply_decision(Topology& topology, NodeId ue_id, const ModeDecision& decision,
                    WdrCache* cache) {
    UeNode& ue = topology.node(ue_id);
    require(ue.parent == kBsId, "deciding UE is no longer attached to the BS");

    if (decision.branch == DecisionBranch::DefaultMhrToBs) {
        if (decision.target.has_value()) {
            throw SimError("default branch carries a target");
        }
        ue.mode = decision.self_mode;
        ue.parent = kBsId;
        if (cache != nullptr) {
            cache->invalidate_subtree(topology, ue_id);
        }
        return;
    }

    if (!decision.target.has_value()) {
        throw SimError("branch requires a target");
    }
    const NodeId target_id = *decision.target;
    if (target_id == ue_id) {
        throw SimError("decision targets the deciding node");
    }
    UeNode& target = topology.node(target_id);
    const DaisParams& p = topology.dais;

    switch (decision.branch) {
        case DecisionBranch::ConnectAsClient:
            require(target.mode == TransmissionMode::D2dRelay, "target is no longer a relay");
            require(target.served.size() + 1 <= p.d_serving_cap, "target has no serving slot");
            require(ue.served.empty(), "a serving node cannot become a client");
            ue.mode = TransmissionMode::D2dClient;
            ue.parent = target_id;
            target.served.insert(ue_id);
            break;

        case DecisionBranch::PromoteMhrToRelayAndJoin:
            require(target.mode == TransmissionMode::D2dMultiHopRelay,
                    "target is no longer a multi-hop relay");
            require(target.served.empty(), "target already serves someone");
            require(ue.served.empty(), "a serving node cannot become a client");
            target.mode = TransmissionMode::D2dRelay;
            ue.mode = TransmissionMode::D2dClient;
            ue.parent = target_id;
            target.served.insert(ue_id);
            break;

        case DecisionBranch::DemoteRelayToMhrAndJoinAsRelay:
            require(target.mode == TransmissionMode::D2dRelay, "target is no longer a relay");
            require(target.served.empty(), "target already serves someone");
            target.mode = TransmissionMode::D2dMultiHopRelay;
            ue.mode = TransmissionMode::D2dRelay;
            ue.parent = target_id;
            target.served.insert(ue_id);
            break;

        case DecisionBranch::BecomeMhrAndAdoptRelay: {
            require(target.mode == TransmissionMode::D2dRelay, "target is no longer a relay");
            ue.mode = TransmissionMode::D2dMultiHopRelay;  // stays parented at the BS
            const NodeId old_parent = target.parent;
            if (old_parent != kBsId) {
                topology.node(old_parent).served.erase(target_id);
            }
            target.parent = ue_id;
            ue.served.insert(target_id);
            break;
        }

        case DecisionBranch::BecomeRelayUnderMhr:
            require(target.mode == TransmissionMode::D2dMultiHopRelay,
                    "target is no longer a multi-hop relay");
            require(target.served.empty(), "target already serves someone");
            ue.mode = TransmissionMode::D2dRelay;
            ue.parent = target_id;
            target.served.insert(ue_id);
            break;

        case DecisionBranch::DefaultMhrToBs:
            break;  // handled above
    }

    if (cache != nullptr) {
        cache->invalidate_subtree(topology, ue_id);
        cache->invalidate_subtree(topology, target_id);
    }
}

}  // namespace d2dsim
