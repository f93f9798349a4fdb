#include "d2dsim/metrics.hpp"

#include <chrono>

#include "d2dsim/baselines.hpp"
#include "d2dsim/bdix.hpp"
#include "d2dsim/channel.hpp"

namespace d2dsim {

double spectral_efficiency(const Topology& topology) {
    double total = 0.0;
    for (const auto& [id, ue] : topology.nodes) {
        total += link_rate_between(topology, id, ue.parent);
    }
    return total;
}

double total_tx_power_mw(const Topology& topology) {
    double total = 0.0;
    for (const auto& [id, ue] : topology.nodes) {
        total += ue.parent == kBsId ? ue.tx_power_cellular_mw : ue.tx_power_d2d_mw;
    }
    return total;
}

double power_saved_mw(const Topology& topology) {
    double all_cellular = 0.0;
    for (const auto& [id, ue] : topology.nodes) {
        all_cellular += ue.tx_power_cellular_mw;
    }
    return all_cellular - total_tx_power_mw(topology);
}

std::pair<std::size_t, double> cluster_stats(const Topology& topology) {
    std::size_t clusters = 0;
    std::size_t clients = 0;
    for (const auto& [id, ue] : topology.nodes) {
        if (ue.mode == TransmissionMode::D2dClient) {
            ++clients;
        }
        if (ue.mode != TransmissionMode::D2dRelay) {
            continue;
        }
        bool has_client = false;
        for (const NodeId child : ue.served) {
            if (topology.node(child).mode == TransmissionMode::D2dClient) {
                has_client = true;
                break;
            }
        }
        if (has_client) {
            ++clusters;
        }
    }
    const double mean = clusters == 0 ? 0.0 : static_cast<double>(clients) / clusters;
    return {clusters, mean};
}

std::map<TransmissionMode, std::size_t> mode_histogram(const Topology& topology) {
    std::map<TransmissionMode, std::size_t> hist;
    for (const auto& [id, ue] : topology.nodes) {
        ++hist[ue.mode];
    }
    return hist;
}

const char* to_string(Strategy strategy) {
    switch (strategy) {
        case Strategy::Dais: return "dais";
        case Strategy::SumRate: return "sum_rate";
        case Strategy::RandomCluster: return "random_cluster";
        case Strategy::NoD2d: return "no_d2d";
    }
    return "unknown";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
    if (name == "dais") return Strategy::Dais;
    if (name == "sum_rate") return Strategy::SumRate;
    if (name == "random_cluster") return Strategy::RandomCluster;
    if (name == "no_d2d") return Strategy::NoD2d;
    return std::nullopt;
}

Topology run_assignment(Strategy strategy, const Scenario& scenario,
                        const MeasureOptions& options) {
    switch (strategy) {
        case Strategy::Dais:
            return run_selection_loop(scenario).topology;
        case Strategy::SumRate: {
            LoopOptions loop;
            loop.select_plan = [](Agent& agent, PlanContext& ctx) -> std::vector<PlanAction> {
                const ModeDecision decision =
                    sum_rate_select(agent.node, ctx.topology, ctx.params);
                agent.startup_pending = false;
                return {PlanAction{decision}};
            };
            return run_selection_loop(scenario, loop).topology;
        }
        case Strategy::RandomCluster: {
            Rng rng = Rng::stream(scenario.seed, kStreamClusterHeads);
            return random_cluster_assign(scenario, rng, options.p_ch);
        }
        case Strategy::NoD2d:
            return no_d2d_assign(scenario);
    }
    throw ConfigurationError("unknown strategy");
}

RunMetrics measure_decisions(Strategy strategy, const Scenario& scenario,
                             const MeasureOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    const Topology topo = run_assignment(strategy, scenario, options);
    const auto stop = std::chrono::steady_clock::now();

    RunMetrics metrics;
    metrics.decision_time_us = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::microseconds>(stop - start).count());
    metrics.link_evaluations = topo.link_evaluations;  // decision phase only

    metrics.spectral_efficiency = spectral_efficiency(topo);
    metrics.total_tx_power_mw = total_tx_power_mw(topo);
    metrics.power_saved_mw = power_saved_mw(topo);
    const auto [clusters, mean_size] = cluster_stats(topo);
    metrics.cluster_count = clusters;
    metrics.mean_cluster_size = mean_size;
    metrics.mode_histogram = mode_histogram(topo);
    return metrics;
}

}  // namespace d2dsim
