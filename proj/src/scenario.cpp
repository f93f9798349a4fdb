#include "d2dsim/scenario.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "d2dsim/channel.hpp"

namespace d2dsim {

using ordered_json = nlohmann::ordered_json;

double sample_battery(Rng& rng) {
    // N(0.6, variance 0.4), clipped into the valid charge range
    const double raw = 0.6 + std::sqrt(0.4) * rng.normal();
    return std::min(1.0, std::max(0.0, raw));
}

Scenario generate_scenario(std::size_t n, std::uint64_t seed, double area_width_m,
                           double area_height_m, const RadioParams& radio,
                           const DaisParams& dais) {
    if (n == 0) {
        throw EmptyScenarioError("a scenario needs at least one UE");
    }
    Scenario sc;
    sc.seed = seed;
    sc.n_ues = n;
    sc.area_width_m = area_width_m;
    sc.area_height_m = area_height_m;
    sc.bs_pos = {area_width_m / 2.0, area_height_m / 2.0};
    sc.radio = radio;
    sc.dais = dais;

    Rng positions = Rng::stream(seed, kStreamPositions);
    sc.nodes.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) {
        ScenarioNode node;
        node.id = static_cast<NodeId>(i);
        node.x = positions.uniform(0.0, area_width_m);
        node.y = positions.uniform(0.0, area_height_m);
        sc.nodes.push_back(node);
    }

    Rng batteries = Rng::stream(seed, kStreamBatteries);
    for (auto& node : sc.nodes) {
        node.battery = sample_battery(batteries);
    }

    if (radio.shadowing_sigma_db > 0.0) {
        // one draw per unordered pair including the BS, in canonical order
        Rng shadowing = Rng::stream(seed, kStreamShadowing);
        for (NodeId a = kBsId; a <= n; ++a) {
            for (NodeId b = a + 1; b <= n; ++b) {
                sc.shadow.set(a, b, sample_shadowing(shadowing, radio.shadowing_sigma_db));
            }
        }
    }
    return sc;
}

std::vector<NodeId> arrival_order(const Scenario& scenario) {
    std::vector<NodeId> order;
    order.reserve(scenario.n_ues);
    for (std::size_t i = 1; i <= scenario.n_ues; ++i) {
        order.push_back(static_cast<NodeId>(i));
    }
    Rng rng = Rng::stream(scenario.seed, kStreamArrival);
    shuffle(order, rng);
    return order;
}

Topology make_topology(const Scenario& scenario) {
    Topology topo;
    topo.area_width_m = scenario.area_width_m;
    topo.area_height_m = scenario.area_height_m;
    topo.bs_pos = scenario.bs_pos;
    topo.radio = scenario.radio;
    topo.dais = scenario.dais;
    topo.shadow = scenario.shadow;
    for (const auto& node : scenario.nodes) {
        UeNode ue;
        ue.id = node.id;
        ue.pos = {node.x, node.y};
        ue.battery = node.battery;
        ue.mode = TransmissionMode::Cellular;
        ue.parent = kBsId;
        topo.nodes.emplace(node.id, ue);
    }
    return topo;
}

namespace {

ordered_json radio_to_json(const RadioParams& r) {
    return ordered_json{{"pathloss_exponent", r.pathloss_exponent},
                        {"bs_antenna_gain_db", r.bs_antenna_gain_db},
                        {"ue_antenna_gain_db", r.ue_antenna_gain_db},
                        {"noise_n0_mw", r.noise_n0_mw},
                        {"shadowing_sigma_db", r.shadowing_sigma_db},
                        {"bandwidth_hz", r.bandwidth_hz},
                        {"wifi_direct_radius_m", r.wifi_direct_radius_m},
                        {"lte_direct_radius_m", r.lte_direct_radius_m},
                        {"bs_range_m", r.bs_range_m}};
}

ordered_json dais_to_json(const DaisParams& d) {
    return ordered_json{{"max_users_ch", d.max_users_ch},
                        {"d_serving_cap", d.d_serving_cap},
                        {"max_query_d2dr_distance_m", d.max_query_d2dr_distance_m},
                        {"max_distance_form_cluster_m", d.max_distance_form_cluster_m},
                        {"max_speed_backhauling_ms", d.max_speed_backhauling_ms},
                        {"max_distance_multihop_m", d.max_distance_multihop_m},
                        {"max_distance_move_away_m", d.max_distance_move_away_m},
                        {"perc_data_rate", d.perc_data_rate},
                        {"battery_threshold", d.battery_threshold},
                        {"battery_option_enabled", d.battery_option_enabled}};
}

template <typename Json>
void radio_from_json(const Json& j, RadioParams& r) {
    j.at("pathloss_exponent").get_to(r.pathloss_exponent);
    j.at("bs_antenna_gain_db").get_to(r.bs_antenna_gain_db);
    j.at("ue_antenna_gain_db").get_to(r.ue_antenna_gain_db);
    j.at("noise_n0_mw").get_to(r.noise_n0_mw);
    j.at("shadowing_sigma_db").get_to(r.shadowing_sigma_db);
    j.at("bandwidth_hz").get_to(r.bandwidth_hz);
    j.at("wifi_direct_radius_m").get_to(r.wifi_direct_radius_m);
    j.at("lte_direct_radius_m").get_to(r.lte_direct_radius_m);
    j.at("bs_range_m").get_to(r.bs_range_m);
}

template <typename Json>
void dais_from_json(const Json& j, DaisParams& d) {
    j.at("max_users_ch").get_to(d.max_users_ch);
    j.at("d_serving_cap").get_to(d.d_serving_cap);
    j.at("max_query_d2dr_distance_m").get_to(d.max_query_d2dr_distance_m);
    j.at("max_distance_form_cluster_m").get_to(d.max_distance_form_cluster_m);
    j.at("max_speed_backhauling_ms").get_to(d.max_speed_backhauling_ms);
    j.at("max_distance_multihop_m").get_to(d.max_distance_multihop_m);
    j.at("max_distance_move_away_m").get_to(d.max_distance_move_away_m);
    j.at("perc_data_rate").get_to(d.perc_data_rate);
    j.at("battery_threshold").get_to(d.battery_threshold);
    j.at("battery_option_enabled").get_to(d.battery_option_enabled);
}

}  // namespace

std::string scenario_to_json(const Scenario& sc) {
    ordered_json j;
    j["version"] = sc.version;
    j["seed"] = sc.seed;
    j["n_ues"] = sc.n_ues;
    j["area"] = ordered_json{{"w", sc.area_width_m}, {"h", sc.area_height_m}};
    j["bs"] = ordered_json{{"x", sc.bs_pos.x}, {"y", sc.bs_pos.y}};
    j["radio"] = radio_to_json(sc.radio);
    j["dais"] = dais_to_json(sc.dais);
    ordered_json nodes = ordered_json::array();
    for (const auto& node : sc.nodes) {
        nodes.push_back(ordered_json{
            {"id", node.id}, {"x", node.x}, {"y", node.y}, {"battery", node.battery}});
    }
    j["nodes"] = std::move(nodes);
    ordered_json shadow = ordered_json::array();
    for (const auto& [a, b, factor] : sc.shadow.sorted_entries()) {
        shadow.push_back(ordered_json{{"a", a}, {"b", b}, {"factor", factor}});
    }
    j["shadow"] = std::move(shadow);
    return j.dump(2) + "\n";
}

Scenario scenario_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("scenario parse failed: ") + e.what());
    }

    try {
        Scenario sc;
        sc.version = j.at("version").get<int>();
        if (sc.version != kScenarioSchemaVersion) {
            throw VersionError("unsupported scenario version " + std::to_string(sc.version) +
                               " (expected " + std::to_string(kScenarioSchemaVersion) + ")");
        }
        sc.seed = j.at("seed").get<std::uint64_t>();
        sc.n_ues = j.at("n_ues").get<std::size_t>();
        sc.area_width_m = j.at("area").at("w").get<double>();
        sc.area_height_m = j.at("area").at("h").get<double>();
        sc.bs_pos = {j.at("bs").at("x").get<double>(), j.at("bs").at("y").get<double>()};
        radio_from_json(j.at("radio"), sc.radio);
        dais_from_json(j.at("dais"), sc.dais);
        for (const auto& jn : j.at("nodes")) {
            ScenarioNode node;
            node.id = jn.at("id").get<NodeId>();
            node.x = jn.at("x").get<double>();
            node.y = jn.at("y").get<double>();
            node.battery = jn.at("battery").get<double>();
            sc.nodes.push_back(node);
        }
        for (const auto& js : j.at("shadow")) {
            sc.shadow.set(js.at("a").get<NodeId>(), js.at("b").get<NodeId>(),
                          js.at("factor").get<double>());
        }
        if (sc.nodes.size() != sc.n_ues) {
            throw ValidationError("n_ues is " + std::to_string(sc.n_ues) + " but the node list has " +
                                  std::to_string(sc.nodes.size()) + " entries");
        }
        return sc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("scenario field error: ") + e.what());
    }
}

void save_scenario(const Scenario& scenario, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw SimError("cannot open " + path + " for writing");
    }
    out << scenario_to_json(scenario);
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw SimError("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return scenario_from_json(buf.str());
}

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

void mix(std::uint64_t& h, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xff;
        h *= kFnvPrime;
    }
}

void mix(std::uint64_t& h, double v) {
    mix(h, std::bit_cast<std::uint64_t>(v));
}

}  // namespace

std::uint64_t scenario_hash(const Scenario& sc) {
    std::uint64_t h = kFnvOffset;
    mix(h, static_cast<std::uint64_t>(sc.version));
    mix(h, sc.seed);
    mix(h, static_cast<std::uint64_t>(sc.n_ues));
    mix(h, sc.area_width_m);
    mix(h, sc.area_height_m);
    mix(h, sc.bs_pos.x);
    mix(h, sc.bs_pos.y);
    for (const auto& node : sc.nodes) {
        mix(h, static_cast<std::uint64_t>(node.id));
        mix(h, node.x);
        mix(h, node.y);
        mix(h, node.battery);
    }
    for (const auto& [a, b, factor] : sc.shadow.sorted_entries()) {
        mix(h, static_cast<std::uint64_t>(a));
        mix(h, static_cast<std::uint64_t>(b));
        mix(h, factor);
    }
    return h;
}

}  // namespace d2dsim
