#include "d2dsim/channel.hpp"

#include <cmath>

namespace d2dsim {

double db_to_linear(double db) {
    return std::pow(10.0, db / 10.0);
}

double sample_shadowing(Rng& rng, double sigma_db) {
    if (sigma_db <= 0.0) {
        return 1.0;
    }
    return std::pow(10.0, sigma_db * rng.normal() / 10.0);
}

double link_snr(double tx_power_mw, double tx_gain_db, double rx_gain_db, double distance_m,
                const RadioParams& params, double shadow) {
    if (distance_m <= 0.0) {
        throw DegenerateGeometryError("link distance must be > 0");
    }
    const double numerator =
        tx_power_mw * db_to_linear(tx_gain_db) * db_to_linear(rx_gain_db) * shadow;
    return numerator / (std::pow(distance_m, params.pathloss_exponent) * params.noise_n0_mw);
}

double link_rate(double snr, double bandwidth_hz) {
    return bandwidth_hz * std::log2(1.0 + snr);
}

double link_rate_between(const Topology& topology, NodeId a, NodeId b) {
    if (a == b) {
        throw DegenerateGeometryError("link endpoints must differ");
    }
    ++topology.link_evaluations;

    const RadioParams& radio = topology.radio;
    const double d = distance(topology.position_of(a), topology.position_of(b));
    const double shadow = topology.shadow.factor(a, b);

    double tx_power_mw;
    double tx_gain_db;
    double rx_gain_db;
    if (a == kBsId || b == kBsId) {
        const UeNode& ue = topology.node(a == kBsId ? b : a);
        tx_power_mw = ue.tx_power_cellular_mw;
        tx_gain_db = radio.ue_antenna_gain_db;
        rx_gain_db = radio.bs_antenna_gain_db;
    } else {
        tx_power_mw = topology.node(a).tx_power_d2d_mw;
        tx_gain_db = radio.ue_antenna_gain_db;
        rx_gain_db = radio.ue_antenna_gain_db;
    }
    return link_rate(link_snr(tx_power_mw, tx_gain_db, rx_gain_db, d, radio, shadow),
                     radio.bandwidth_hz);
}

}  // namespace d2dsim
