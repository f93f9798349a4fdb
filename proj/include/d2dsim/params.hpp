#pragma once

#include <string>
#include <vector>

namespace d2dsim {

/// Radio constants. Defaults follow the LTE/WiFi-Direct parameter set used
/// throughout the simulations (powers live per node, see UeNode).
struct RadioParams {
    double pathloss_exponent = 3.5;
    double bs_antenna_gain_db = 40.0;
    double ue_antenna_gain_db = 2.0;
    double noise_n0_mw = 1e-4;
    double shadowing_sigma_db = 8.0;
    double bandwidth_hz = 1.0;  // 1 Hz so link rates read as b/s/Hz
    double wifi_direct_radius_m = 200.0;
    double lte_direct_radius_m = 1000.0;
    double bs_range_m = 1000.0;

    bool operator==(const RadioParams&) const = default;
};

/// DAIS thresholds. max_users_ch is a hard protocol ceiling; d_serving_cap
/// is the operative serving limit used by the predicates.
struct DaisParams {
    std::size_t max_users_ch = 255;
    std::size_t d_serving_cap = 200;
    double max_query_d2dr_distance_m = 200.0;
    double max_distance_form_cluster_m = 100.0;
    double max_speed_backhauling_ms = 1.5;   // static scenario: gates nothing
    double max_distance_multihop_m = 1000.0;
    double max_distance_move_away_m = 100.0;  // static scenario: gates nothing
    double perc_data_rate = 0.20;
    double battery_threshold = 0.70;
    bool battery_option_enabled = false;

    bool operator==(const DaisParams&) const = default;
};

/// Human-readable constraint violations; empty means valid.
std::vector<std::string> validate_params(const RadioParams& radio);
std::vector<std::string> validate_params(const DaisParams& dais);

}  // namespace d2dsim
