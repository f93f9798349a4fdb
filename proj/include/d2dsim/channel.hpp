#pragma once

#include "d2dsim/core.hpp"
#include "d2dsim/rng.hpp"

namespace d2dsim {

/// 10^(db/10)
double db_to_linear(double db);

/// Multiplicative log-normal shadowing factor 10^(X/10), X ~ N(0, sigma²).
/// sigma_db = 0 returns exactly 1.0.
double sample_shadowing(Rng& rng, double sigma_db);

/// SNR = P · g_tx · g_rx · shadow / (d^alpha · N0), all powers in mW.
/// Throws DegenerateGeometryError when d == 0.
double link_snr(double tx_power_mw, double tx_gain_db, double rx_gain_db, double distance_m,
                const RadioParams& params, double shadow);

/// Shannon rate B · log2(1 + SNR); b/s/Hz when bandwidth is 1.
double link_rate(double snr, double bandwidth_hz);

/// Rate of the (a, b) link under the topology's frozen shadowing. Either
/// endpoint may be kBsId; BS links use the UE's cellular power and the BS
/// antenna gain, D2D links use the transmitter's D2D power and UE gains.
/// Increments topology.link_evaluations.
double link_rate_between(const Topology& topology, NodeId a, NodeId b);

}  // namespace d2dsim
