#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <utility>

#include "d2dsim/core.hpp"
#include "d2dsim/scenario.hpp"

namespace d2dsim {

struct RunMetrics {
    double spectral_efficiency = 0.0;  // b/s/Hz, summed over parent links
    double total_tx_power_mw = 0.0;
    double power_saved_mw = 0.0;
    std::size_t cluster_count = 0;
    double mean_cluster_size = 0.0;
    std::map<TransmissionMode, std::size_t> mode_histogram;
    std::uint64_t decision_time_us = 0;  // wall clock of the decision phase
    std::uint64_t link_evaluations = 0;  // counted during the decision phase
};

/// Sum of link spectral efficiency over every parent link (B = 1).
double spectral_efficiency(const Topology& topology);

/// Each UE contributes its D2D power when its parent link is D2D, else its
/// cellular power.
double total_tx_power_mw(const Topology& topology);

/// All-cellular budget minus the actual one.
double power_saved_mw(const Topology& topology);

/// (number of relays with at least one client, clients per such relay).
std::pair<std::size_t, double> cluster_stats(const Topology& topology);

std::map<TransmissionMode, std::size_t> mode_histogram(const Topology& topology);

enum class Strategy {
    Dais,
    SumRate,
    RandomCluster,
    NoD2d,
};

const char* to_string(Strategy strategy);
std::optional<Strategy> parse_strategy(std::string_view name);

struct MeasureOptions {
    double p_ch = kDefaultClusterHeadProbability;  // random clustering only
};

/// Runs the full arrival loop under the strategy and fills every metric.
/// decision_time_us and link_evaluations cover the decision phase only;
/// the metric computations afterwards do not pollute the counters.
RunMetrics measure_decisions(Strategy strategy, const Scenario& scenario,
                             const MeasureOptions& options = {});

/// The topology a strategy produces (the assignment half of
/// measure_decisions), for tests and tools.
Topology run_assignment(Strategy strategy, const Scenario& scenario,
                        const MeasureOptions& options = {});

}  // namespace d2dsim
