#include "d2dsim/params.hpp"

namespace d2dsim {

std::vector<std::string> validate_params(const RadioParams& radio) {
    std::vector<std::string> problems;
    if (!(radio.pathloss_exponent > 2.0)) {
        problems.push_back("pathloss_exponent must be > 2");
    }
    if (!(radio.noise_n0_mw > 0.0)) {
        problems.push_back("noise_n0 must be > 0");
    }
    if (!(radio.wifi_direct_radius_m > 0.0) || !(radio.lte_direct_radius_m > 0.0) ||
        !(radio.bs_range_m > 0.0)) {
        problems.push_back("all radii must be > 0");
    }
    if (radio.shadowing_sigma_db < 0.0) {
        problems.push_back("shadowing_sigma_db must be >= 0");
    }
    if (!(radio.bandwidth_hz > 0.0)) {
        problems.push_back("bandwidth_hz must be > 0");
    }
    return problems;
}

std::vector<std::string> validate_params(const DaisParams& dais) {
    std::vector<std::string> problems;
    if (!(dais.max_distance_form_cluster_m <= dais.max_query_d2dr_distance_m)) {
        problems.push_back("max_distance_form_cluster must be <= max_query_d2dr_distance");
    }
    if (!(dais.max_query_d2dr_distance_m <= dais.max_distance_multihop_m)) {
        problems.push_back("max_query_d2dr_distance must be <= max_distance_multihop");
    }
    if (!(dais.perc_data_rate > 0.0) || !(dais.perc_data_rate < 1.0)) {
        problems.push_back("perc_data_rate must be in (0, 1)");
    }
    if (dais.battery_threshold < 0.0 || dais.battery_threshold > 1.0) {
        problems.push_back("battery_threshold must be in [0, 1]");
    }
    if (dais.d_serving_cap > dais.max_users_ch) {
        problems.push_back("d_serving_cap must not exceed the max_users_ch ceiling");
    }
    return problems;
}

}  // namespace d2dsim
