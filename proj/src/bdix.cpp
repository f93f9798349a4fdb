#include "d2dsim/bdix.hpp"

#include <algorithm>

namespace d2dsim {

const char* to_string(EventKind kind) {
    switch (kind) {
        case EventKind::AgentStartup: return "agent-startup";
        case EventKind::NeighborAdvertReceived: return "neighbor-advert-received";
        case EventKind::NeighborWithdrawn: return "neighbor-withdrawn";
        case EventKind::RoleChangeRequested: return "role-change-requested";
    }
    return "unknown";
}

const char* to_string(Goal goal) {
    switch (goal) {
        case Goal::SelectTransmissionMode: return "select-transmission-mode";
        case Goal::ServeAttachedClients: return "serve-attached-clients";
        case Goal::Idle: return "idle";
    }
    return "unknown";
}

Plan dais_select_plan() {
    return [](Agent& agent, PlanContext& ctx) -> std::vector<PlanAction> {
        agent.beliefs.self_wdr = ctx.wdr_cache.get(ctx.topology, agent.node);
        const ModeDecision decision =
            select_transmission_mode(ctx.topology.node(agent.node), agent.beliefs, ctx.params);
        agent.startup_pending = false;
        return {PlanAction{decision}};
    };
}

namespace {

Plan serve_clients_plan() {
    return [](Agent& agent, PlanContext& ctx) -> std::vector<PlanAction> {
        const UeNode& self = ctx.topology.node(agent.node);
        NeighborAdvert advert;
        advert.id = agent.node;
        advert.pos = self.pos;
        advert.mode = self.mode;
        advert.wdr = ctx.wdr_cache.get(ctx.topology, agent.node).value;
        advert.served_count = self.served.size();
        advert.battery = self.battery;
        return {PlanAction{advert}};
    };
}

Plan idle_plan() {
    return [](Agent&, PlanContext&) -> std::vector<PlanAction> { return {}; };
}

}  // namespace

Agent make_agent(NodeId node, Plan select_plan) {
    Agent agent;
    agent.node = node;
    agent.plans[Goal::SelectTransmissionMode] =
        select_plan ? std::move(select_plan) : dais_select_plan();
    agent.plans[Goal::ServeAttachedClients] = serve_clients_plan();
    agent.plans[Goal::Idle] = idle_plan();
    return agent;
}

void perceive(Agent& agent, const Event& event) {
    if (event.seq <= agent.last_seq) {
        throw SequencingError("event seq " + std::to_string(event.seq) +
                              " not after " + std::to_string(agent.last_seq));
    }
    agent.last_seq = event.seq;

    switch (event.kind) {
        case EventKind::AgentStartup:
            agent.startup_pending = true;
            break;
        case EventKind::NeighborAdvertReceived:
            if (!event.advert.has_value()) {
                throw ConfigurationError("advert event without advert payload");
            }
            if (event.advert->id != agent.node) {  // beliefs never hold the believer
                agent.beliefs.neighbors[event.advert->id] = *event.advert;
            }
            break;
        case EventKind::NeighborWithdrawn:
            if (!event.node.has_value()) {
                throw ConfigurationError("withdraw event without node id");
            }
            agent.beliefs.neighbors.erase(*event.node);
            break;
        case EventKind::RoleChangeRequested:
            if (event.new_mode.has_value()) {
                agent.self_mode = *event.new_mode;
            }
            if (event.new_served_count.has_value()) {
                agent.self_served = *event.new_served_count;
            }
            break;
    }
}

Intention deliberate(const Agent& agent) {
    if (agent.startup_pending) {
        return {Goal::SelectTransmissionMode, 2};
    }
    if (is_serving_role(agent.self_mode) && agent.self_served > 0) {
        return {Goal::ServeAttachedClients, 1};
    }
    return {Goal::Idle, 0};
}

std::vector<PlanAction> execute_step(Agent& agent, PlanContext& ctx) {
    const auto it = agent.plans.find(agent.intention.goal);
    if (it == agent.plans.end() || !it->second) {
        throw ConfigurationError(std::string("no plan for goal ") + to_string(agent.intention.goal));
    }
    return it->second(agent, ctx);
}

namespace {

NeighborAdvert advert_of(const Topology& topo, WdrCache& cache, NodeId id) {
    const UeNode& node = topo.node(id);
    NeighborAdvert advert;
    advert.id = id;
    advert.pos = node.pos;
    advert.mode = node.mode;
    advert.wdr = cache.get(topo, id).value;
    advert.served_count = node.served.size();
    advert.battery = node.battery;
    return advert;
}

// Feed one event through the perceive / deliberate / execute cycle:
// exactly one deliberation and one plan step (the idle plan is a no-op).
std::vector<PlanAction> process_event(Agent& agent, const Event& event, PlanContext& ctx,
                                      LoopResult& result, bool record_log) {
    perceive(agent, event);
    agent.intention = deliberate(agent);
    std::vector<PlanAction> actions = execute_step(agent, ctx);
    if (record_log) {
        result.log.push_back({agent.node, event.kind, agent.intention.goal, true, actions.size()});
    }
    result.max_belief_size = std::max(result.max_belief_size, agent.beliefs.neighbors.size());
    return actions;
}

}  // namespace

LoopResult run_selection_loop(const Scenario& scenario, const LoopOptions& options) {
    LoopResult result;
    result.topology = make_topology(scenario);
    Topology& topo = result.topology;
    WdrCache cache;
    PlanContext ctx{topo, cache, topo.dais};

    // current proximity-service broadcasts: one advert per serving-capable node
    std::map<NodeId, NeighborAdvert> board;
    const auto refresh_board = [&](NodeId id) {
        if (is_serving_role(topo.node(id).mode)) {
            board[id] = advert_of(topo, cache, id);
        } else {
            board.erase(id);
        }
    };

    std::map<NodeId, Agent> agents;
    std::uint64_t seq = 0;

    const auto deliver_adverts = [&](Agent& agent) {
        const Position pos = topo.node(agent.node).pos;
        for (const auto& [id, advert] : board) {
            if (id == agent.node ||
                distance(pos, advert.pos) > topo.radio.lte_direct_radius_m) {
                continue;
            }
            Event event;
            event.kind = EventKind::NeighborAdvertReceived;
            event.seq = ++seq;
            event.advert = advert;
            process_event(agent, event, ctx, result, options.record_log);
        }
    };

    for (const NodeId ue : arrival_order(scenario)) {
        Agent& agent = agents.emplace(ue, make_agent(ue, options.select_plan)).first->second;

        deliver_adverts(agent);

        Event startup;
        startup.kind = EventKind::AgentStartup;
        startup.seq = ++seq;
        auto actions = process_event(agent, startup, ctx, result, options.record_log);

        std::optional<ModeDecision> decision;
        for (const auto& action : actions) {
            if (const auto* d = std::get_if<ModeDecision>(&action)) {
                decision = *d;
            }
        }
        if (!decision.has_value()) {
            throw ConfigurationError("selection plan produced no decision");
        }

        try {
            apply_decision(topo, ue, *decision, &cache);
        } catch (const StaleDecisionError&) {
            // optimistic snapshot failed; refresh beliefs and retry once
            ++result.stale_retries;
            agent.beliefs.neighbors.clear();
            deliver_adverts(agent);
            Event restart;
            restart.kind = EventKind::AgentStartup;
            restart.seq = ++seq;
            actions = process_event(agent, restart, ctx, result, options.record_log);
            decision.reset();
            for (const auto& action : actions) {
                if (const auto* d = std::get_if<ModeDecision>(&action)) {
                    decision = *d;
                }
            }
            if (!decision.has_value()) {
                throw ConfigurationError("selection plan produced no decision on retry");
            }
            apply_decision(topo, ue, *decision, &cache);
        }
        ++result.decisions;

        agent.self_mode = topo.node(ue).mode;
        agent.self_served = topo.node(ue).served.size();
        refresh_board(ue);

        if (decision->target.has_value()) {
            const NodeId target = *decision->target;
            refresh_board(target);
            if (const auto it = agents.find(target); it != agents.end()) {
                Event role_change;
                role_change.kind = EventKind::RoleChangeRequested;
                role_change.seq = ++seq;
                role_change.node = target;
                role_change.new_mode = topo.node(target).mode;
                role_change.new_served_count = topo.node(target).served.size();
                const auto target_actions =
                    process_event(it->second, role_change, ctx, result, options.record_log);
                for (const auto& action : target_actions) {
                    if (const auto* advert = std::get_if<NeighborAdvert>(&action)) {
                        board[advert->id] = *advert;
                    }
                }
            }
        }

        if (options.validate_each_step) {
            const auto violations = validate_topology(topo);
            if (!violations.empty()) {
                throw TopologyCorruptionError("invariant violated after decision of node " +
                                              std::to_string(ue) + ": " +
                                              violations.front().detail);
            }
        }
    }

    return result;
}

}  // namespace d2dsim
