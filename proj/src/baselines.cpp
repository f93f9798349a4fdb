#include "d2dsim/baselines.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "d2dsim/channel.hpp"

namespace d2dsim {

Topology no_d2d_assign(const Scenario& scenario) {
    Topology topo = make_topology(scenario);
    for (auto& [id, ue] : topo.nodes) {
        ue.mode = TransmissionMode::Cellular;
        ue.parent = kBsId;
        ue.served.clear();
        link_rate_between(topo, id, kBsId);  // one BS-link check per UE
    }
    return topo;
}

Topology random_cluster_assign(const Scenario& scenario, Rng& rng, double p_ch) {
    Topology topo = make_topology(scenario);

    std::vector<NodeId> heads;
    for (auto& [id, ue] : topo.nodes) {
        if (rng.uniform() < p_ch) {
            ue.mode = TransmissionMode::D2dRelay;
            heads.push_back(id);
        }
    }

    for (auto& [id, ue] : topo.nodes) {
        if (ue.mode == TransmissionMode::D2dRelay) {
            continue;
        }
        NodeId best_head = kBsId;
        double best_d = std::numeric_limits<double>::infinity();
        for (const NodeId head : heads) {
            UeNode& h = topo.node(head);
            if (h.served.size() >= topo.dais.d_serving_cap) {
                continue;
            }
            const double d = distance(ue.pos, h.pos);
            if (d <= topo.radio.wifi_direct_radius_m && d < best_d) {
                best_d = d;
                best_head = head;
            }
        }
        if (best_head != kBsId) {
            ue.mode = TransmissionMode::D2dClient;
            ue.parent = best_head;
            topo.node(best_head).served.insert(id);
        } else {
            ue.mode = TransmissionMode::Cellular;
            ue.parent = kBsId;
        }
    }
    return topo;
}

double network_sum_rate(const Topology& topology) {
    // every parent link priced once, then per-UE bottlenecks from those rates
    std::unordered_map<NodeId, double> link_rate_of;
    link_rate_of.reserve(topology.nodes.size());
    for (const auto& [id, ue] : topology.nodes) {
        link_rate_of[id] = link_rate_between(topology, id, ue.parent);
    }

    std::unordered_map<NodeId, double> bottleneck;
    bottleneck.reserve(topology.nodes.size());
    double total = 0.0;
    for (const auto& [id, ue] : topology.nodes) {
        // walk up until a memoized ancestor or the BS, then fold back down
        std::vector<NodeId> chain;
        NodeId cur = id;
        double upstream = std::numeric_limits<double>::infinity();
        while (cur != kBsId) {
            const auto it = bottleneck.find(cur);
            if (it != bottleneck.end()) {
                upstream = it->second;
                break;
            }
            chain.push_back(cur);
            cur = topology.node(cur).parent;
        }
        for (auto rit = chain.rbegin(); rit != chain.rend(); ++rit) {
            upstream = std::min(upstream, link_rate_of[*rit]);
            bottleneck[*rit] = upstream;
        }
        total += bottleneck[id];
    }
    return total;
}

namespace {

struct Candidate {
    std::size_t branch;  // 0..4 in priority order
    NodeId id;
    double d;
};

ModeDecision decision_for(std::size_t branch, NodeId target) {
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
        default:
            return {DecisionBranch::BecomeRelayUnderMhr, target, TransmissionMode::D2dRelay,
                    TransmissionMode::D2dMultiHopRelay};
    }
}

}  // namespace

ModeDecision sum_rate_select(NodeId ue_id, const Topology& topology, const DaisParams& params) {
    const UeNode& ue = topology.node(ue_id);

    // Global view: every serving-capable node is a candidate source, with
    // its WDR recomputed from the live topology (the expensive part the
    // WDR metric avoids).
    Beliefs view;
    view.self_wdr = node_wdr(topology, ue_id);
    for (const auto& [id, node] : topology.nodes) {
        if (id == ue_id || !is_serving_role(node.mode)) {
            continue;
        }
        NeighborAdvert advert;
        advert.id = id;
        advert.pos = node.pos;
        advert.mode = node.mode;
        advert.wdr = node_wdr(topology, id).value;
        advert.served_count = node.served.size();
        advert.battery = node.battery;
        view.neighbors[id] = advert;
    }

    // same feasibility filters as the DAIS predicates
    static constexpr std::array<std::optional<NodeId> (*)(const UeNode&, const Beliefs&,
                                                          const DaisParams&),
                                5>
        kPredicates{find_max_d2dr, find_max_d2dmhr_no_connections,
                    find_max_d2dr_no_connections_to_be_d2dmhr, find_max_d2dr_to_use_ue_d2dmhr,
                    find_max_d2dmhr_as_multihop};

    std::vector<Candidate> candidates;
    for (const auto& [id, advert] : view.neighbors) {
        Beliefs one;
        one.self_wdr = view.self_wdr;
        one.neighbors[id] = advert;
        for (std::size_t branch = 0; branch < kPredicates.size(); ++branch) {
            if (kPredicates[branch](ue, one, params).has_value()) {
                candidates.push_back({branch, id, distance(ue.pos, advert.pos)});
            }
        }
    }

    if (candidates.empty()) {
        ModeDecision decision{DecisionBranch::DefaultMhrToBs, std::nullopt,
                              TransmissionMode::D2dMultiHopRelay, std::nullopt};
        if (params.battery_option_enabled && ue.battery < params.battery_threshold) {
            decision.self_mode = TransmissionMode::Cellular;
        }
        return decision;
    }

    // score each feasible candidate by the sum rate after hypothetically
    // applying it; the scratch copy keeps the caller's state untouched
    Topology scratch = topology;
    scratch.link_evaluations = 0;

    double best_sum = -std::numeric_limits<double>::infinity();
    const Candidate* best = nullptr;
    for (const auto& cand : candidates) {
        const UeNode saved_ue = scratch.node(ue_id);
        const UeNode saved_target = scratch.node(cand.id);
        const NodeId old_parent = saved_target.parent;
        std::optional<UeNode> saved_old_parent;
        if (old_parent != kBsId) {
            saved_old_parent = scratch.node(old_parent);
        }

        apply_decision(scratch, ue_id, decision_for(cand.branch, cand.id), nullptr);
        const double sum = network_sum_rate(scratch);

        scratch.node(ue_id) = saved_ue;
        scratch.node(cand.id) = saved_target;
        if (saved_old_parent.has_value()) {
            scratch.node(old_parent) = *saved_old_parent;
        }

        const bool better =
            best == nullptr || sum > best_sum ||
            (sum == best_sum && (cand.branch < best->branch ||
                                 (cand.branch == best->branch &&
                                  (cand.d < best->d || (cand.d == best->d && cand.id < best->id)))));
        if (better) {
            best_sum = sum;
            best = &cand;
        }
    }

    topology.link_evaluations += scratch.link_evaluations;
    return decision_for(best->branch, best->id);
}

}  // namespace d2dsim
