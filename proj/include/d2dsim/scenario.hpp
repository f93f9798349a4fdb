#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "d2dsim/core.hpp"
#include "d2dsim/rng.hpp"

namespace d2dsim {

inline constexpr int kScenarioSchemaVersion = 1;

// Substream tags so each generation stage draws independently of the others.
inline constexpr std::uint64_t kStreamPositions = 1;
inline constexpr std::uint64_t kStreamBatteries = 2;
inline constexpr std::uint64_t kStreamShadowing = 3;
inline constexpr std::uint64_t kStreamArrival = 4;
inline constexpr std::uint64_t kStreamClusterHeads = 5;

struct ScenarioNode {
    NodeId id = 0;
    double x = 0.0;
    double y = 0.0;
    double battery = 1.0;

    bool operator==(const ScenarioNode&) const = default;
};

/// A generated experiment instance: placements, batteries and frozen
/// shadowing for n_ues devices around a centered BS.
struct Scenario {
    int version = kScenarioSchemaVersion;
    std::uint64_t seed = 0;
    std::size_t n_ues = 0;
    double area_width_m = 1000.0;
    double area_height_m = 1000.0;
    Position bs_pos{500.0, 500.0};
    RadioParams radio;
    DaisParams dais;
    std::vector<ScenarioNode> nodes;
    ShadowTable shadow;
};

/// Battery fraction: N(0.6, variance 0.4) clipped to [0, 1].
double sample_battery(Rng& rng);

/// Deterministic generation: uniform placements, sampled batteries, one
/// shadowing draw per unordered pair including the BS (omitted entirely
/// when sigma is 0, where every factor is exactly 1). Throws
/// EmptyScenarioError when n == 0.
Scenario generate_scenario(std::size_t n, std::uint64_t seed, double area_width_m,
                           double area_height_m, const RadioParams& radio,
                           const DaisParams& dais);

/// Seeded random permutation of the node ids: the order in which agents
/// run their selection plans.
std::vector<NodeId> arrival_order(const Scenario& scenario);

/// All UEs cellular at the BS, powers from the radio defaults.
Topology make_topology(const Scenario& scenario);

/// JSON round trip; load(save(s)) is bit-exact including the shadow table.
void save_scenario(const Scenario& scenario, const std::string& path);
Scenario load_scenario(const std::string& path);

std::string scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const std::string& text);

std::uint64_t scenario_hash(const Scenario& scenario);

}  // namespace d2dsim
