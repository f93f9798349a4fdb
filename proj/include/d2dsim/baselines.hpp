#pragma once

#include "d2dsim/dais.hpp"
#include "d2dsim/rng.hpp"
#include "d2dsim/scenario.hpp"

namespace d2dsim {

/// Every UE cellular, parent BS. Evaluates each BS link once.
Topology no_d2d_assign(const Scenario& scenario);

/// Bernoulli cluster-head election with probability p_ch (head = relay at
/// the BS); every other UE joins the nearest head within the WiFi-Direct
/// radius that still has a serving slot, else stays cellular.
Topology random_cluster_assign(const Scenario& scenario, Rng& rng, double p_ch);

/// Expected heads ≈ 7 at N = 50.
inline constexpr double kDefaultClusterHeadProbability = 0.14;

/// Total delivered rate: sum over all UEs of the bottleneck rate along
/// each UE's path. Recomputed from scratch; every parent link is evaluated
/// exactly once per call.
double network_sum_rate(const Topology& topology);

/// The costly selection alternative: same five branch types and feasibility
/// filters as DAIS, but every feasible candidate is scored by the full
/// network_sum_rate after hypothetically applying it. The default branch
/// fires only when no candidate is feasible. Hypothetical evaluations never
/// mutate the caller-visible topology state (the link counter advances).
ModeDecision sum_rate_select(NodeId ue, const Topology& topology, const DaisParams& params);

}  // namespace d2dsim
