#include "d2dsim/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "d2dsim/metrics.hpp"
#include "d2dsim/scenario.hpp"

namespace d2dsim {

const char* const kRunCsvHeader =
    "strategy,n_ues,seed,spectral_efficiency,total_tx_power_mw,power_saved_mw,cluster_count,"
    "mean_cluster_size,decision_time_us,link_evaluations";

std::string format_sig9(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

namespace {

struct CommonFlags {
    std::string config_path;
    double area = 1000.0;
    double sigma_shadow = 8.0;
    double perc_data_rate = 0.2;
    double battery_threshold = 0.7;
    bool battery_option = false;
    double p_ch = kDefaultClusterHeadProbability;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "JSON file with radio/dais parameter overrides");
    cmd->add_option("--area", flags.area, "square area side in meters")->check(CLI::PositiveNumber);
    cmd->add_option("--sigma-shadow", flags.sigma_shadow, "log-normal shadowing sigma in dB");
    cmd->add_option("--perc-data-rate", flags.perc_data_rate, "WDR improvement margin");
    cmd->add_option("--battery-threshold", flags.battery_threshold, "serving-role battery gate");
    cmd->add_flag("--battery-option", flags.battery_option, "enable the battery gate");
    cmd->add_option("--p-ch", flags.p_ch, "cluster-head probability for random clustering");
}

template <typename Json, typename T>
void maybe(const Json& j, const char* key, T& out) {
    if (j.contains(key)) {
        j.at(key).get_to(out);
    }
}

void apply_config_file(const std::string& path, RadioParams& radio, DaisParams& dais) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open config file " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("config parse failed: ") + e.what());
    }
    try {
        if (j.contains("radio")) {
            const auto& r = j.at("radio");
            maybe(r, "pathloss_exponent", radio.pathloss_exponent);
            maybe(r, "bs_antenna_gain_db", radio.bs_antenna_gain_db);
            maybe(r, "ue_antenna_gain_db", radio.ue_antenna_gain_db);
            maybe(r, "noise_n0_mw", radio.noise_n0_mw);
            maybe(r, "shadowing_sigma_db", radio.shadowing_sigma_db);
            maybe(r, "bandwidth_hz", radio.bandwidth_hz);
            maybe(r, "wifi_direct_radius_m", radio.wifi_direct_radius_m);
            maybe(r, "lte_direct_radius_m", radio.lte_direct_radius_m);
            maybe(r, "bs_range_m", radio.bs_range_m);
        }
        if (j.contains("dais")) {
            const auto& d = j.at("dais");
            maybe(d, "max_users_ch", dais.max_users_ch);
            maybe(d, "d_serving_cap", dais.d_serving_cap);
            maybe(d, "max_query_d2dr_distance_m", dais.max_query_d2dr_distance_m);
            maybe(d, "max_distance_form_cluster_m", dais.max_distance_form_cluster_m);
            maybe(d, "max_speed_backhauling_ms", dais.max_speed_backhauling_ms);
            maybe(d, "max_distance_multihop_m", dais.max_distance_multihop_m);
            maybe(d, "max_distance_move_away_m", dais.max_distance_move_away_m);
            maybe(d, "perc_data_rate", dais.perc_data_rate);
            maybe(d, "battery_threshold", dais.battery_threshold);
            maybe(d, "battery_option_enabled", dais.battery_option_enabled);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("config field error: ") + e.what());
    }
}

// flag > config file > built-in defaults
void merge_params(const CLI::App* cmd, const CommonFlags& flags, RadioParams& radio,
                  DaisParams& dais) {
    if (!flags.config_path.empty()) {
        apply_config_file(flags.config_path, radio, dais);
    }
    if (cmd->count("--sigma-shadow") > 0) radio.shadowing_sigma_db = flags.sigma_shadow;
    if (cmd->count("--perc-data-rate") > 0) dais.perc_data_rate = flags.perc_data_rate;
    if (cmd->count("--battery-threshold") > 0) dais.battery_threshold = flags.battery_threshold;
    if (cmd->count("--battery-option") > 0) dais.battery_option_enabled = flags.battery_option;

    for (const auto& problem : validate_params(radio)) {
        throw ParseError("invalid radio parameters: " + problem);
    }
    for (const auto& problem : validate_params(dais)) {
        throw ParseError("invalid dais parameters: " + problem);
    }
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const auto dots = part.find("..");
        if (dots != std::string::npos) {
            const std::uint64_t lo = std::stoull(part.substr(0, dots));
            const std::uint64_t hi = std::stoull(part.substr(dots + 2));
            if (hi < lo) {
                throw ParseError("seed range " + part + " is descending");
            }
            for (std::uint64_t s = lo; s <= hi; ++s) {
                seeds.push_back(s);
            }
        } else if (!part.empty()) {
            seeds.push_back(std::stoull(part));
        }
    }
    if (seeds.empty()) {
        throw ParseError("empty seed list");
    }
    return seeds;
}

std::vector<std::size_t> parse_n_list(const std::string& text) {
    std::vector<std::size_t> ns;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        if (!part.empty()) {
            ns.push_back(std::stoull(part));
        }
    }
    if (ns.empty()) {
        throw ParseError("empty N list");
    }
    return ns;
}

std::vector<Strategy> parse_strategy_list(const std::string& text) {
    std::vector<Strategy> strategies;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        if (part.empty()) {
            continue;
        }
        const auto strategy = parse_strategy(part);
        if (!strategy.has_value()) {
            throw ParseError("unknown strategy: " + part);
        }
        strategies.push_back(*strategy);
    }
    if (strategies.empty()) {
        throw ParseError("empty strategy list");
    }
    return strategies;
}

std::string metrics_row(Strategy strategy, std::size_t n, std::uint64_t seed,
                        const RunMetrics& m) {
    std::ostringstream row;
    row << to_string(strategy) << ',' << n << ',' << seed << ','
        << format_sig9(m.spectral_efficiency) << ',' << format_sig9(m.total_tx_power_mw) << ','
        << format_sig9(m.power_saved_mw) << ',' << m.cluster_count << ','
        << format_sig9(m.mean_cluster_size) << ',' << m.decision_time_us << ','
        << m.link_evaluations;
    return row.str();
}

class OutputFile {
  public:
    OutputFile(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) {
                throw SimError("cannot open " + path + " for writing");
            }
        }
    }

    std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

  private:
    std::ofstream file_;
    std::ostream& fallback_;
};

struct Accumulator {
    std::vector<double> values;

    void add(double v) { values.push_back(v); }

    double mean() const {
        double sum = 0.0;
        for (const double v : values) sum += v;
        return values.empty() ? 0.0 : sum / static_cast<double>(values.size());
    }

    double stddev() const {
        if (values.size() < 2) return 0.0;
        const double m = mean();
        double sq = 0.0;
        for (const double v : values) sq += (v - m) * (v - m);
        return std::sqrt(sq / static_cast<double>(values.size() - 1));
    }
};

struct SummaryKey {
    std::string strategy;
    std::size_t n;

    bool operator<(const SummaryKey& other) const {
        return std::tie(strategy, n) < std::tie(other.strategy, other.n);
    }
};

struct SummaryRow {
    Accumulator se, power, saved, clusters, cluster_size, time_us, links;
    std::size_t runs = 0;
};

void write_summary(std::ostream& out, const std::map<SummaryKey, SummaryRow>& summary) {
    out << "strategy,n_ues,runs,se_mean,se_stddev,tx_power_mean,tx_power_stddev,"
           "power_saved_mean,power_saved_stddev,cluster_count_mean,cluster_count_stddev,"
           "mean_cluster_size_mean,mean_cluster_size_stddev,decision_time_us_mean,"
           "decision_time_us_stddev,link_evaluations_mean,link_evaluations_stddev\n";
    for (const auto& [key, row] : summary) {
        out << key.strategy << ',' << key.n << ',' << row.runs << ','
            << format_sig9(row.se.mean()) << ',' << format_sig9(row.se.stddev()) << ','
            << format_sig9(row.power.mean()) << ',' << format_sig9(row.power.stddev()) << ','
            << format_sig9(row.saved.mean()) << ',' << format_sig9(row.saved.stddev()) << ','
            << format_sig9(row.clusters.mean()) << ',' << format_sig9(row.clusters.stddev()) << ','
            << format_sig9(row.cluster_size.mean()) << ',' << format_sig9(row.cluster_size.stddev())
            << ',' << format_sig9(row.time_us.mean()) << ',' << format_sig9(row.time_us.stddev())
            << ',' << format_sig9(row.links.mean()) << ',' << format_sig9(row.links.stddev())
            << '\n';
    }
}

int cmd_gen(const CLI::App* cmd, const CommonFlags& flags, std::size_t n, std::uint64_t seed,
            const std::string& out_path, std::ostream& out) {
    RadioParams radio;
    DaisParams dais;
    merge_params(cmd, flags, radio, dais);
    const Scenario sc = generate_scenario(n, seed, flags.area, flags.area, radio, dais);
    OutputFile sink(out_path, out);
    sink.stream() << scenario_to_json(sc);
    return kExitOk;
}

Scenario scenario_for_run(const CLI::App* cmd, const CommonFlags& flags,
                          const std::string& scenario_file, std::size_t n, std::uint64_t seed) {
    if (!scenario_file.empty()) {
        for (const char* banned : {"--n", "--seed", "--area", "--sigma-shadow"}) {
            if (cmd->count(banned) > 0) {
                throw CLI::ValidationError(std::string(banned) +
                                           " cannot be combined with --scenario-file");
            }
        }
        Scenario sc = load_scenario(scenario_file);
        // decision-time parameters may still be overridden; frozen radio data may not
        if (cmd->count("--perc-data-rate") > 0) sc.dais.perc_data_rate = flags.perc_data_rate;
        if (cmd->count("--battery-threshold") > 0) sc.dais.battery_threshold = flags.battery_threshold;
        if (cmd->count("--battery-option") > 0) sc.dais.battery_option_enabled = flags.battery_option;
        return sc;
    }
    RadioParams radio;
    DaisParams dais;
    merge_params(cmd, flags, radio, dais);
    return generate_scenario(n, seed, flags.area, flags.area, radio, dais);
}

int cmd_run(const CLI::App* cmd, const CommonFlags& flags, const std::string& scenario_file,
            std::size_t n, std::uint64_t seed, const std::string& strategy_name,
            const std::string& out_path, std::ostream& out) {
    const auto strategy = parse_strategy(strategy_name);
    if (!strategy.has_value()) {
        throw CLI::ValidationError("unknown strategy: " + strategy_name);
    }
    const Scenario sc = scenario_for_run(cmd, flags, scenario_file, n, seed);
    MeasureOptions options;
    options.p_ch = flags.p_ch;
    const RunMetrics metrics = measure_decisions(*strategy, sc, options);
    OutputFile sink(out_path, out);
    sink.stream() << kRunCsvHeader << '\n'
                  << metrics_row(*strategy, sc.n_ues, sc.seed, metrics) << '\n';
    return kExitOk;
}

int cmd_sweep(const CLI::App* cmd, const CommonFlags& flags, const std::string& n_list,
              const std::string& seed_list, const std::string& strategy_list,
              const std::string& out_path, const std::string& summary_path, std::ostream& out) {
    const auto ns = parse_n_list(n_list);
    const auto seeds = parse_seed_list(seed_list);
    const auto strategies = parse_strategy_list(strategy_list);

    RadioParams radio;
    DaisParams dais;
    merge_params(cmd, flags, radio, dais);

    MeasureOptions options;
    options.p_ch = flags.p_ch;

    std::map<SummaryKey, SummaryRow> summary;
    OutputFile sink(out_path, out);
    sink.stream() << kRunCsvHeader << '\n';
    for (const Strategy strategy : strategies) {
        for (const std::size_t n : ns) {
            for (const std::uint64_t seed : seeds) {
                const Scenario sc = generate_scenario(n, seed, flags.area, flags.area, radio, dais);
                const RunMetrics m = measure_decisions(strategy, sc, options);
                sink.stream() << metrics_row(strategy, n, seed, m) << '\n';
                SummaryRow& row = summary[{to_string(strategy), n}];
                ++row.runs;
                row.se.add(m.spectral_efficiency);
                row.power.add(m.total_tx_power_mw);
                row.saved.add(m.power_saved_mw);
                row.clusters.add(static_cast<double>(m.cluster_count));
                row.cluster_size.add(m.mean_cluster_size);
                row.time_us.add(static_cast<double>(m.decision_time_us));
                row.links.add(static_cast<double>(m.link_evaluations));
            }
        }
    }
    if (!summary_path.empty()) {
        OutputFile summary_sink(summary_path, out);
        write_summary(summary_sink.stream(), summary);
    }
    return kExitOk;
}

// --- compare -----------------------------------------------------------

struct SweepRows {
    // (strategy, n) -> accumulators over seeds
    std::map<SummaryKey, SummaryRow> cells;
    std::vector<std::size_t> n_values;
    std::vector<std::string> strategies;
};

SweepRows read_sweep_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path);
    }
    std::string header;
    if (!std::getline(in, header)) {
        throw ValidationError("empty CSV: " + path);
    }
    if (header != kRunCsvHeader) {
        throw ValidationError("unexpected CSV header in " + path);
    }
    SweepRows rows;
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        std::stringstream ss(line);
        std::vector<std::string> fields;
        std::string field;
        while (std::getline(ss, field, ',')) {
            fields.push_back(field);
        }
        if (fields.size() != 10) {
            throw ValidationError("line " + std::to_string(line_no) + ": expected 10 fields, got " +
                                  std::to_string(fields.size()));
        }
        try {
            const std::string& strategy = fields[0];
            const std::size_t n = std::stoull(fields[1]);
            SummaryRow& cell = rows.cells[{strategy, n}];
            ++cell.runs;
            cell.se.add(std::stod(fields[3]));
            cell.power.add(std::stod(fields[4]));
            cell.saved.add(std::stod(fields[5]));
            cell.clusters.add(std::stod(fields[6]));
            cell.cluster_size.add(std::stod(fields[7]));
            cell.time_us.add(std::stod(fields[8]));
            cell.links.add(std::stod(fields[9]));
            if (std::find(rows.n_values.begin(), rows.n_values.end(), n) == rows.n_values.end()) {
                rows.n_values.push_back(n);
            }
            if (std::find(rows.strategies.begin(), rows.strategies.end(), strategy) ==
                rows.strategies.end()) {
                rows.strategies.push_back(strategy);
            }
        } catch (const std::exception& e) {
            throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (rows.cells.empty()) {
        throw ValidationError("no data rows in " + path);
    }
    std::sort(rows.n_values.begin(), rows.n_values.end());
    return rows;
}

int cmd_compare(const std::string& in_path, const std::string& reference,
                const std::string& out_path, std::ostream& out) {
    const SweepRows rows = read_sweep_csv(in_path);

    bool have_reference = false;
    for (const auto& s : rows.strategies) {
        have_reference = have_reference || s == reference;
    }
    if (!have_reference) {
        throw ValidationError("reference strategy '" + reference + "' not present in the sweep");
    }

    OutputFile sink(out_path, out);
    sink.stream() << "n_ues,baseline,se_ratio,power_saved_ratio,link_evals_ratio\n";
    for (const std::size_t n : rows.n_values) {
        const auto ref_it = rows.cells.find({reference, n});
        if (ref_it == rows.cells.end()) {
            continue;
        }
        const SummaryRow& ref = ref_it->second;
        for (const auto& strategy : rows.strategies) {
            const auto it = rows.cells.find({strategy, n});
            if (it == rows.cells.end()) {
                continue;
            }
            const SummaryRow& base = it->second;
            const double se_ratio = ref.se.mean() / base.se.mean();
            const double saved_ratio = ref.saved.mean() / base.saved.mean();
            const double link_ratio = base.links.mean() / ref.links.mean();
            sink.stream() << n << ',' << strategy << ',' << format_sig9(se_ratio) << ','
                          << format_sig9(saved_ratio) << ',' << format_sig9(link_ratio) << '\n';
        }
    }
    return kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"deterministic D2D transmission-mode simulator"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a scenario file");
    CommonFlags gen_flags;
    std::size_t gen_n = 50;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    gen->add_option("--n", gen_n, "number of UEs")->required();
    gen->add_option("--seed", gen_seed, "scenario seed");
    gen->add_option("--out", gen_out, "output path (default stdout)");
    add_common_flags(gen, gen_flags);

    // run
    auto* run = app.add_subcommand("run", "run one strategy on one scenario, emit one CSV row");
    CommonFlags run_flags;
    std::size_t run_n = 50;
    std::uint64_t run_seed = 1;
    std::string run_strategy = "dais";
    std::string run_scenario_file;
    std::string run_out;
    run->add_option("--n", run_n, "number of UEs");
    run->add_option("--seed", run_seed, "scenario seed");
    run->add_option("--strategy", run_strategy, "dais | sum_rate | random_cluster | no_d2d");
    run->add_option("--scenario-file", run_scenario_file, "load a scenario instead of generating");
    run->add_option("--out", run_out, "output path (default stdout)");
    add_common_flags(run, run_flags);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "cross-product of N x seeds x strategies");
    CommonFlags sweep_flags;
    std::string sweep_n = "10,100,1000";
    std::string sweep_seeds = "1..10";
    std::string sweep_strategies = "dais,no_d2d,random_cluster";
    std::string sweep_out;
    std::string sweep_summary;
    sweep->add_option("--n", sweep_n, "comma list of N values");
    sweep->add_option("--seeds", sweep_seeds, "comma list or lo..hi range");
    sweep->add_option("--strategies", sweep_strategies, "comma list of strategies");
    sweep->add_option("--out", sweep_out, "rows CSV path (default stdout)");
    sweep->add_option("--summary-out", sweep_summary, "per (strategy, N) mean/stddev CSV");
    add_common_flags(sweep, sweep_flags);

    // compare
    auto* compare = app.add_subcommand("compare", "ratio table from a completed sweep CSV");
    std::string compare_in;
    std::string compare_reference = "dais";
    std::string compare_out;
    compare->add_option("--in", compare_in, "sweep CSV")->required();
    compare->add_option("--strategy", compare_reference, "reference strategy");
    compare->add_option("--out", compare_out, "output path (default stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed()) {
            return cmd_gen(gen, gen_flags, gen_n, gen_seed, gen_out, out);
        }
        if (run->parsed()) {
            return cmd_run(run, run_flags, run_scenario_file, run_n, run_seed, run_strategy,
                           run_out, out);
        }
        if (sweep->parsed()) {
            return cmd_sweep(sweep, sweep_flags, sweep_n, sweep_seeds, sweep_strategies, sweep_out,
                             sweep_summary, out);
        }
        if (compare->parsed()) {
            return cmd_compare(compare_in, compare_reference, compare_out, out);
        }
        err << "no subcommand given\n";
        return kExitUsage;
    } catch (const CLI::ValidationError& e) {
        err << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        err << e.what() << '\n';
        return kExitInput;
    } catch (const ValidationError& e) {
        err << e.what() << '\n';
        return kExitInput;
    } catch (const VersionError& e) {
        err << e.what() << '\n';
        return kExitInput;
    } catch (const EmptyScenarioError& e) {
        err << e.what() << '\n';
        return kExitInput;
    } catch (const SimError& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}

}  // namespace d2dsim
