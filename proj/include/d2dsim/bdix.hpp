#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "d2dsim/dais.hpp"
#include "d2dsim/scenario.hpp"
#include "d2dsim/wdr.hpp"

namespace d2dsim {

enum class EventKind {
    AgentStartup,
    NeighborAdvertReceived,
    NeighborWithdrawn,
    RoleChangeRequested,
};

const char* to_string(EventKind kind);

struct Event {
    EventKind kind = EventKind::AgentStartup;
    std::uint64_t seq = 0;  // monotone per agent
    std::optional<NeighborAdvert> advert;        // NeighborAdvertReceived
    std::optional<NodeId> node;                  // NeighborWithdrawn / RoleChangeRequested
    std::optional<TransmissionMode> new_mode;    // RoleChangeRequested
    std::optional<std::size_t> new_served_count; // RoleChangeRequested
};

enum class Goal {
    SelectTransmissionMode,
    ServeAttachedClients,
    Idle,
};

const char* to_string(Goal goal);

struct Intention {
    Goal goal = Goal::Idle;
    int priority = 0;
};

struct Agent;

/// Everything a plan may touch while executing.
struct PlanContext {
    Topology& topology;
    WdrCache& wdr_cache;
    const DaisParams& params;
};

using PlanAction = std::variant<ModeDecision, NeighborAdvert>;
using Plan = std::function<std::vector<PlanAction>(Agent&, PlanContext&)>;

/// One BDIx agent: beliefs fed by perceived events, a fixed priority table
/// of intentions, and a plan library with the DAIS selection plan as the
/// sole transmission-mode plan.
struct Agent {
    NodeId node = 0;
    Beliefs beliefs;
    Intention intention{Goal::Idle, 0};
    std::map<Goal, Plan> plans;
    std::uint64_t last_seq = 0;
    bool startup_pending = false;
    TransmissionMode self_mode = TransmissionMode::Cellular;
    std::size_t self_served = 0;
};

/// Agent with the default plan library; pass a custom selection plan to
/// swap the decision metric (the sum-rate baseline does).
Agent make_agent(NodeId node, Plan select_plan = {});

/// The DAIS selection plan: refreshes self WDR and runs
/// select_transmission_mode over current beliefs.
Plan dais_select_plan();

/// Updates beliefs from one event; no topology side effects. Events must
/// arrive with increasing sequence numbers (SequencingError otherwise).
void perceive(Agent& agent, const Event& event);

/// Re-selects the intention: startup demands mode selection; a serving
/// node with children keeps serving; anything else idles.
Intention deliberate(const Agent& agent);

/// Runs the plan bound to the current intention. ConfigurationError when
/// the plan library lacks the goal.
std::vector<PlanAction> execute_step(Agent& agent, PlanContext& ctx);

/// One perceive/deliberate/execute record, for loop-conformance checks.
struct LoopLogEntry {
    NodeId agent = 0;
    EventKind event = EventKind::AgentStartup;
    Goal goal = Goal::Idle;
    bool plan_ran = false;
    std::size_t action_count = 0;
};

struct LoopOptions {
    Plan select_plan;            // empty = DAIS
    bool record_log = false;
    bool validate_each_step = false;  // test hook: validate after every apply
};

struct LoopResult {
    Topology topology;
    std::uint64_t decisions = 0;
    std::uint64_t stale_retries = 0;
    std::vector<LoopLogEntry> log;
    std::size_t max_belief_size = 0;
};

/// The deterministic arrival loop: agents start in scenario arrival order,
/// perceive the current proximity broadcasts, deliberate, run the selection
/// plan, and the resulting decision is applied to the shared topology
/// (optimistic snapshot with a single retry on staleness). Broadcast
/// delivery is instantaneous and lossless within the LTE-Direct radius.
LoopResult run_selection_loop(const Scenario& scenario, const LoopOptions& options = {});

}  // namespace d2dsim
