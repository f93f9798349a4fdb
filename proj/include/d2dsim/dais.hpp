#pragma once

#include <cstddef>
#include <map>
#include <optional>

#include "d2dsim/core.hpp"
#include "d2dsim/wdr.hpp"

namespace d2dsim {

/// One proximity-service broadcast: the advertised state of a D2D-R or
/// D2D-MHR at broadcast time.
struct NeighborAdvert {
    NodeId id = 0;
    Position pos;
    TransmissionMode mode = TransmissionMode::Cellular;
    double wdr = 0.0;
    std::size_t served_count = 0;
    double battery = 1.0;

    bool operator==(const NeighborAdvert&) const = default;
};

/// The informational state feeding the transmission-mode plan. Never
/// contains the believing node itself.
struct Beliefs {
    Wdr self_wdr = Wdr::finite(0.0);
    std::map<NodeId, NeighborAdvert> neighbors;
};

/// Which arm of the selection plan fired, in priority order.
enum class DecisionBranch {
    ConnectAsClient,                 // join an in-range relay as D2D client
    PromoteMhrToRelayAndJoin,        // idle MHR nearby becomes a relay, join it
    DemoteRelayToMhrAndJoinAsRelay,  // idle relay in the band becomes MHR, attach as relay
    BecomeMhrAndAdoptRelay,          // UE turns MHR and re-parents a weaker relay under itself
    BecomeRelayUnderMhr,             // far idle MHR serves the UE as a relay
    DefaultMhrToBs,                  // no candidate: stay at the BS
};

const char* to_string(DecisionBranch branch);

/// Outcome of the selection plan for one UE. DefaultMhrToBs has no target;
/// every other branch has one.
struct ModeDecision {
    DecisionBranch branch = DecisionBranch::DefaultMhrToBs;
    std::optional<NodeId> target;
    TransmissionMode self_mode = TransmissionMode::D2dMultiHopRelay;
    std::optional<TransmissionMode> target_mode;
};

struct DecisionStats {
    std::size_t neighbors_scanned = 0;
};

// Candidate predicates. Each returns the advertised-WDR argmax over its
// feasible set (ties by smaller distance, then smaller id), or nothing.

/// Relay within the cluster radius, advertised WDR at least (1+perc) times
/// the UE's own, with a free serving slot.
std::optional<NodeId> find_max_d2dr(const UeNode& ue, const Beliefs& beliefs,
                                    const DaisParams& params);

/// As find_max_d2dr but a multi-hop relay with no connections.
std::optional<NodeId> find_max_d2dmhr_no_connections(const UeNode& ue, const Beliefs& beliefs,
                                                     const DaisParams& params);

/// Idle relay in the [cluster, query] distance band that would switch to
/// multi-hop relaying; battery-gated when the option is on.
std::optional<NodeId> find_max_d2dr_no_connections_to_be_d2dmhr(const UeNode& ue,
                                                                const Beliefs& beliefs,
                                                                const DaisParams& params);

/// Relay in the [cluster, query] band whose WDR is at most (1-perc) times
/// the UE's own. The UE would take the multi-hop serving role, so the
/// battery option gates the UE itself here.
std::optional<NodeId> find_max_d2dr_to_use_ue_d2dmhr(const UeNode& ue, const Beliefs& beliefs,
                                                     const DaisParams& params);

/// Idle multi-hop relay in the [query, multihop] band; battery-gated when
/// the option is on.
std::optional<NodeId> find_max_d2dmhr_as_multihop(const UeNode& ue, const Beliefs& beliefs,
                                                  const DaisParams& params);

/// The transmission-mode selection plan: evaluates the five predicates in
/// priority order over a single pass of the belief table and returns the
/// first hit, or the default branch when none qualifies. With the battery
/// option on, a UE below threshold defaults to Cellular instead of taking
/// the multi-hop relay role.
ModeDecision select_transmission_mode(const UeNode& ue, const Beliefs& beliefs,
                                      const DaisParams& params, DecisionStats* stats = nullptr);

/// Applies a decision to the topology: parent links, modes and served sets
/// for the UE and the target, per branch. Throws StaleDecisionError when
/// the target no longer satisfies the branch's preconditions; the caller
/// re-runs selection. Invalidate affected subtrees in *cache when given.
void apply_decision(Topology& topology, NodeId ue, const ModeDecision& decision,
                    WdrCache* cache = nullptr);

}  // namespace d2dsim
