// dtcsim: command-line front end for the DTC dephasing-criticality pipeline.
//
// Commands: trace, spectrum, critical, size-scan, heatmap. Every product is
// CSV plus a summary JSON that embeds the resolved configuration and master
// seed; re-running from that configuration reproduces the files byte for
// byte, for any --workers value.
//
// Exit codes: 0 ok, 2 config, 3 capacity, 4 numeric.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "omp.h"

#include "dtc/criticality.hpp"
#include "dtc/io.hpp"
#include "dtc/spectrum.hpp"

namespace {

using dtc::config_error;
using ordered_json = nlohmann::ordered_json;

constexpr const char* kVersion = "1.0.0";

struct RunConfig {
    std::string command;
    std::vector<int> n_list = {10};  // one entry except for size-scan
    double eps = 0.1;
    double eps_min = 0.0;
    double eps_max = 0.5;
    int eps_points = 26;
    double p = 0.0;
    double p_min = 0.0;
    double p_max = 0.1;
    int p_points = 6;
    int steps = 50;
    int realizations = 200;
    double j_min = std::numbers::pi / 4;
    double j_max = 3 * std::numbers::pi / 4;
    std::uint64_t seed = 1;
    std::string backend = "exact";
    int trajectories = 100;
    int batches = 20;
    int workers = 0;  // 0 = library default; scheduling only, never results
    std::string out = "run";
    std::string config_file;

    int n() const { return n_list.front(); }
};

std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
    }
    return out;
}

long long parse_integer(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    long long parsed = 0;
    try {
        parsed = std::stoll(value, &used);
    } catch (const std::exception&) {
        throw config_error("config key '" + key + "': bad integer '" + value + "'");
    }
    if (used != value.size()) {
        throw config_error("config key '" + key + "': bad integer '" + value + "'");
    }
    return parsed;
}

double parse_real(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double parsed = 0;
    try {
        parsed = std::stod(value, &used);
    } catch (const std::exception&) {
        throw config_error("config key '" + key + "': bad number '" + value + "'");
    }
    if (used != value.size()) {
        throw config_error("config key '" + key + "': bad number '" + value + "'");
    }
    return parsed;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

// Flat key=value file; keys are the long flag names without dashes. Values
// already given on the command line win.
void apply_config_file(RunConfig& cfg, const std::set<std::string>& given) {
    std::map<std::string, std::function<void(const std::string&, const std::string&)>> setters;
    setters["n"] = [&cfg](const std::string& k, const std::string& v) {
        cfg.n_list.clear();
        std::string rest = v;
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            cfg.n_list.push_back(static_cast<int>(parse_integer(k, trim(rest.substr(0, comma)))));
            if (comma == std::string::npos) break;
            rest = rest.substr(comma + 1);
        }
        if (cfg.n_list.empty()) throw config_error("config key 'n': empty list");
    };
    setters["eps"] = [&cfg](const std::string& k, const std::string& v) { cfg.eps = parse_real(k, v); };
    setters["eps-min"] = [&cfg](const std::string& k, const std::string& v) { cfg.eps_min = parse_real(k, v); };
    setters["eps-max"] = [&cfg](const std::string& k, const std::string& v) { cfg.eps_max = parse_real(k, v); };
    setters["eps-points"] = [&cfg](const std::string& k, const std::string& v) { cfg.eps_points = static_cast<int>(parse_integer(k, v)); };
    setters["p"] = [&cfg](const std::string& k, const std::string& v) { cfg.p = parse_real(k, v); };
    setters["p-min"] = [&cfg](const std::string& k, const std::string& v) { cfg.p_min = parse_real(k, v); };
    setters["p-max"] = [&cfg](const std::string& k, const std::string& v) { cfg.p_max = parse_real(k, v); };
    setters["p-points"] = [&cfg](const std::string& k, const std::string& v) { cfg.p_points = static_cast<int>(parse_integer(k, v)); };
    setters["K"] = [&cfg](const std::string& k, const std::string& v) { cfg.steps = static_cast<int>(parse_integer(k, v)); };
    setters["realizations"] = [&cfg](const std::string& k, const std::string& v) { cfg.realizations = static_cast<int>(parse_integer(k, v)); };
    setters["j-min"] = [&cfg](const std::string& k, const std::string& v) { cfg.j_min = parse_real(k, v); };
    setters["j-max"] = [&cfg](const std::string& k, const std::string& v) { cfg.j_max = parse_real(k, v); };
    setters["seed"] = [&cfg](const std::string& k, const std::string& v) { cfg.seed = static_cast<std::uint64_t>(parse_integer(k, v)); };
    setters["backend"] = [&cfg](const std::string&, const std::string& v) { cfg.backend = v; };
    setters["trajectories"] = [&cfg](const std::string& k, const std::string& v) { cfg.trajectories = static_cast<int>(parse_integer(k, v)); };
    setters["batches"] = [&cfg](const std::string& k, const std::string& v) { cfg.batches = static_cast<int>(parse_integer(k, v)); };
    setters["workers"] = [&cfg](const std::string& k, const std::string& v) { cfg.workers = static_cast<int>(parse_integer(k, v)); };
    setters["out"] = [&cfg](const std::string&, const std::string& v) { cfg.out = v; };

    std::ifstream in(cfg.config_file);
    if (!in) throw config_error("cannot open config file: " + cfg.config_file);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto equals = stripped.find('=');
        if (equals == std::string::npos) {
            throw config_error("config file line " + std::to_string(lineno) +
                               ": expected key=value, got '" + stripped + "'");
        }
        const std::string key = trim(stripped.substr(0, equals));
        const std::string value = trim(stripped.substr(equals + 1));
        const auto setter = setters.find(key);
        if (setter == setters.end()) throw config_error("unknown config key: '" + key + "'");
        if (given.count(key)) continue;  // flag wins
        setter->second(key, value);
    }
}

void require(bool ok, const std::string& message) {
    if (!ok) throw config_error(message);
}

// Real-valued parameters are resolved to their 12-significant-digit form
// before the run: the summary echoes exactly the values used, so re-running
// from an embedded config reproduces every byte.
void canonicalize(RunConfig& cfg) {
    for (double* v : {&cfg.eps, &cfg.eps_min, &cfg.eps_max, &cfg.p, &cfg.p_min, &cfg.p_max,
                      &cfg.j_min, &cfg.j_max}) {
        *v = dtc::round12(*v);
    }
}

void validate(const RunConfig& cfg) {
    require(!cfg.n_list.empty(), "--n: at least one chain length required");
    for (int n : cfg.n_list) require(n >= 1, "--n: must be >= 1");
    if (cfg.command != "size-scan") {
        require(cfg.n_list.size() == 1, "--n: " + cfg.command + " takes a single chain length");
    }
    require(cfg.eps >= 0.0 && cfg.eps <= 1.0, "--eps: must lie in [0,1]");
    require(cfg.p >= 0.0 && cfg.p <= 1.0, "--p: must lie in [0,1]");
    require(cfg.steps >= 2 && cfg.steps % 2 == 0,
            "--K: the order parameter needs an even number of periods >= 2");
    require(cfg.j_min < cfg.j_max, "--j-min/--j-max: need j-min < j-max");
    require(cfg.backend == "exact" || cfg.backend == "trajectory",
            "--backend: must be 'exact' or 'trajectory'");
    require(cfg.trajectories >= 1, "--trajectories: must be >= 1");
    require(cfg.batches >= 1, "--batches: must be >= 1");
    require(cfg.workers >= 0, "--workers: must be >= 0");
    require(!cfg.out.empty(), "--out: must not be empty");

    const bool grid_eps = cfg.command == "critical" || cfg.command == "size-scan" ||
                          cfg.command == "heatmap";
    if (grid_eps) {
        require(cfg.eps_points >= 2, "--eps-points: must be >= 2");
        require(cfg.eps_min < cfg.eps_max, "--eps-min/--eps-max: need eps-min < eps-max");
        require(cfg.eps_min >= 0.0 && cfg.eps_max <= 1.0, "--eps-min/--eps-max: must lie in [0,1]");
        require(cfg.realizations >= 2, "--realizations: must be >= 2");
        require(cfg.realizations >= 2 * cfg.batches,
                "--realizations: need at least 2*batches realizations for the batched bands");
    }
    if (cfg.command == "heatmap") {
        require(cfg.p_points >= 2, "--p-points: must be >= 2");
        require(cfg.p_min < cfg.p_max, "--p-min/--p-max: need p-min < p-max");
        require(cfg.p_min >= 0.0 && cfg.p_max <= 0.5, "--p-min/--p-max: must lie in [0,0.5]");
        require(cfg.backend == "exact", "--backend: heatmap uses the exact channel only");
    }
}

ordered_json config_json(const RunConfig& cfg) {
    ordered_json j;
    j["command"] = cfg.command;
    if (cfg.command == "size-scan") {
        j["n"] = cfg.n_list;
    } else {
        j["n"] = cfg.n();
    }
    if (cfg.command == "trace" || cfg.command == "spectrum") {
        j["eps"] = dtc::round12(cfg.eps);
        j["p"] = dtc::round12(cfg.p);
    } else {
        j["eps_min"] = dtc::round12(cfg.eps_min);
        j["eps_max"] = dtc::round12(cfg.eps_max);
        j["eps_points"] = cfg.eps_points;
        if (cfg.command == "heatmap") {
            j["p_min"] = dtc::round12(cfg.p_min);
            j["p_max"] = dtc::round12(cfg.p_max);
            j["p_points"] = cfg.p_points;
        } else {
            j["p"] = dtc::round12(cfg.p);
        }
        j["realizations"] = cfg.realizations;
        j["batches"] = cfg.batches;
    }
    j["K"] = cfg.steps;
    j["j_min"] = dtc::round12(cfg.j_min);
    j["j_max"] = dtc::round12(cfg.j_max);
    j["seed"] = cfg.seed;
    j["backend"] = cfg.backend;
    if (cfg.backend == "trajectory") j["trajectories"] = cfg.trajectories;
    j["out"] = cfg.out;
    if (!cfg.config_file.empty()) j["config_file"] = cfg.config_file;
    return j;
}

class OutputSet {
  public:
    explicit OutputSet(const std::string& prefix) : prefix_(prefix) {
        const auto parent = std::filesystem::path(prefix).parent_path();
        if (!parent.empty()) std::filesystem::create_directories(parent);
    }

    std::string path(const std::string& suffix) {
        std::string p = prefix_ + suffix;
        written_.push_back(p);
        return p;
    }

    void discard_all() {
        for (const auto& p : written_) std::filesystem::remove(p);
    }

    const std::vector<std::string>& written() const { return written_; }

  private:
    std::string prefix_;
    std::vector<std::string> written_;
};

dtc::DisorderSpec disorder_of(const RunConfig& cfg) {
    return dtc::DisorderSpec{cfg.realizations, cfg.j_min, cfg.j_max, cfg.seed};
}

dtc::MagnetizationTrace single_trace(const RunConfig& cfg) {
    dtc::FloquetParams params;
    params.n = cfg.n();
    params.eps = cfg.eps;
    params.p = cfg.p;
    params.steps = cfg.steps;
    dtc::DisorderSpec spec = disorder_of(cfg);
    spec.count = 1;
    params.couplings = dtc::sample_disorder(spec, 0, params.n);
    if (cfg.backend == "exact") return dtc::evolve_exact(params);
    dtc::StreamKey key;
    key.master_seed = cfg.seed;
    return dtc::trajectory_average(params, cfg.trajectories, key).mean;
}

void write_summary(OutputSet& outputs, const RunConfig& cfg, ordered_json results) {
    ordered_json j;
    j["version"] = kVersion;
    j["config"] = config_json(cfg);
    j["results"] = std::move(results);
    ordered_json files = ordered_json::array();
    for (const auto& p : outputs.written()) files.push_back(p);
    files.push_back(std::string(cfg.out) + ".summary.json");
    j["outputs"] = files;

    std::ofstream out(outputs.path(".summary.json"));
    out << j.dump(2) << '\n';
}

int run_trace(const RunConfig& cfg, OutputSet& outputs) {
    const auto trace = single_trace(cfg);
    const double h = dtc::order_parameter(trace);
    dtc::write_trace_csv(outputs.path(".trace.csv"), trace);
    ordered_json results;
    results["h"] = dtc::round12(h);
    write_summary(outputs, cfg, std::move(results));
    std::printf("trace: wrote %s.trace.csv  h=%.3f\n", cfg.out.c_str(), h);
    return 0;
}

int run_spectrum(const RunConfig& cfg, OutputSet& outputs) {
    const auto trace = single_trace(cfg);
    const auto spectrum = dtc::dft_spectrum(trace);
    const double h = dtc::order_parameter(trace);
    dtc::write_spectrum_csv(outputs.path(".spectrum.csv"), spectrum);
    ordered_json results;
    results["h"] = dtc::round12(h);
    write_summary(outputs, cfg, std::move(results));
    std::printf("spectrum: wrote %s.spectrum.csv  h=%.3f\n", cfg.out.c_str(), h);
    return 0;
}

int run_critical(const RunConfig& cfg, OutputSet& outputs) {
    const auto eps_grid = linspace(cfg.eps_min, cfg.eps_max, cfg.eps_points);
    const auto backend =
        cfg.backend == "exact" ? dtc::Backend::exact : dtc::Backend::trajectory;
    const auto data = dtc::variance_curve(cfg.n(), eps_grid, cfg.p, disorder_of(cfg), cfg.steps,
                                          backend, cfg.trajectories);
    const auto peak = dtc::batched_peak_estimate(eps_grid, data.h, cfg.batches);
    dtc::write_variance_csv(outputs.path(".variance.csv"), data.curve);
    ordered_json results;
    results["peak"] = dtc::peak_to_json(peak);
    write_summary(outputs, cfg, std::move(results));
    std::printf("critical: peak mean=%.4f sigma=%.4f (batches=%d)%s\n", peak.mean, peak.sigma,
                cfg.batches, peak.boundary ? "  [boundary]" : "");
    return 0;
}

int run_size_scan(const RunConfig& cfg, OutputSet& outputs) {
    const auto eps_grid = linspace(cfg.eps_min, cfg.eps_max, cfg.eps_points);
    const auto rows = dtc::size_scan(cfg.n_list, eps_grid, cfg.p, disorder_of(cfg), cfg.steps,
                                     cfg.batches);
    dtc::write_sizescan_csv(outputs.path(".sizescan.csv"), rows);
    ordered_json results = ordered_json::array();
    for (const auto& row : rows) {
        ordered_json entry;
        entry["n"] = row.n;
        entry["peak"] = dtc::peak_to_json(row.peak);
        results.push_back(entry);
    }
    ordered_json wrapper;
    wrapper["sizes"] = std::move(results);
    write_summary(outputs, cfg, std::move(wrapper));
    for (const auto& row : rows) {
        std::printf("size-scan: n=%d peak mean=%.4f sigma=%.4f\n", row.n, row.peak.mean,
                    row.peak.sigma);
    }
    return 0;
}

int run_heatmap(const RunConfig& cfg, OutputSet& outputs) {
    const auto eps_grid = linspace(cfg.eps_min, cfg.eps_max, cfg.eps_points);
    const auto p_grid = linspace(cfg.p_min, cfg.p_max, cfg.p_points);
    const auto data = dtc::heatmap_sweep(eps_grid, p_grid, disorder_of(cfg), cfg.n(), cfg.steps);
    dtc::write_heatmap_csv(outputs.path(".heatmap.csv"), data.grid);

    // Per-row spline peaks make the ridge trajectory part of the product.
    ordered_json rows = ordered_json::array();
    std::vector<double> row_var(eps_grid.size());
    for (std::size_t pi = 0; pi < p_grid.size(); ++pi) {
        for (std::size_t e = 0; e < eps_grid.size(); ++e) row_var[e] = data.grid.at(pi, e);
        const auto peak = dtc::estimate_peak(eps_grid, row_var);
        ordered_json entry;
        entry["p"] = dtc::round12(p_grid[pi]);
        entry["peak_eps"] = dtc::round12(peak.location);
        entry["boundary"] = peak.boundary;
        rows.push_back(entry);
    }
    ordered_json results;
    results["row_peaks"] = std::move(rows);
    write_summary(outputs, cfg, std::move(results));
    std::printf("heatmap: wrote %s.heatmap.csv (%d x %d grid, %d realizations)\n",
                cfg.out.c_str(), cfg.p_points, cfg.eps_points, cfg.realizations);
    return 0;
}

int dispatch(const RunConfig& cfg) {
    if (cfg.workers > 0) omp_set_num_threads(cfg.workers);
    OutputSet outputs(cfg.out);
    try {
        if (cfg.command == "trace") return run_trace(cfg, outputs);
        if (cfg.command == "spectrum") return run_spectrum(cfg, outputs);
        if (cfg.command == "critical") return run_critical(cfg, outputs);
        if (cfg.command == "size-scan") return run_size_scan(cfg, outputs);
        return run_heatmap(cfg, outputs);
    } catch (...) {
        outputs.discard_all();
        throw;
    }
}

void add_common_options(CLI::App* cmd, RunConfig& cfg, bool n_is_list) {
    if (n_is_list) {
        cmd->add_option("--n", cfg.n_list, "chain lengths");
    } else {
        auto setter = [&cfg](const std::string& v) {
            cfg.n_list = {static_cast<int>(parse_integer("n", v))};
        };
        cmd->add_option_function<std::string>("--n", setter, "chain length");
    }
    cmd->add_option("--eps", cfg.eps, "kick perturbation");
    cmd->add_option("--eps-min", cfg.eps_min, "eps grid start");
    cmd->add_option("--eps-max", cfg.eps_max, "eps grid end (inclusive)");
    cmd->add_option("--eps-points", cfg.eps_points, "eps grid size");
    cmd->add_option("--p", cfg.p, "dephasing probability");
    cmd->add_option("--p-min", cfg.p_min, "p grid start");
    cmd->add_option("--p-max", cfg.p_max, "p grid end (inclusive)");
    cmd->add_option("--p-points", cfg.p_points, "p grid size");
    cmd->add_option("--K", cfg.steps, "stroboscopic periods (even)");
    cmd->add_option("--realizations", cfg.realizations, "disorder realizations");
    cmd->add_option("--j-min", cfg.j_min, "coupling interval start");
    cmd->add_option("--j-max", cfg.j_max, "coupling interval end");
    cmd->add_option("--seed", cfg.seed, "master seed");
    cmd->add_option("--backend", cfg.backend, "exact | trajectory");
    cmd->add_option("--trajectories", cfg.trajectories, "trajectories per point");
    cmd->add_option("--batches", cfg.batches, "batch count for the peak bands");
    cmd->add_option("--workers", cfg.workers, "worker threads (0 = default)");
    cmd->add_option("--out", cfg.out, "output path prefix");
    cmd->add_option("--config", cfg.config_file, "key=value config file");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete time crystal dephasing simulator"};
    app.require_subcommand(1);

    RunConfig cfg;
    const std::vector<std::string> commands = {"trace", "spectrum", "critical", "size-scan",
                                               "heatmap"};
    const std::vector<std::string> descriptions = {
        "magnetization trace of one disorder realization",
        "Fourier spectrum of one magnetization trace",
        "variance curve over an eps grid with batched peak bands",
        "peak location versus chain length",
        "variance over the (eps, p) grid"};
    for (std::size_t i = 0; i < commands.size(); ++i) {
        CLI::App* cmd = app.add_subcommand(commands[i], descriptions[i]);
        add_common_options(cmd, cfg, commands[i] == "size-scan");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::fprintf(stderr, "config error: invalid command line\n");
        return 2;
    } catch (const config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();

    try {
        if (!cfg.config_file.empty()) {
            std::set<std::string> given;
            for (const CLI::Option* opt : sub->get_options()) {
                if (opt->count() > 0 && opt->get_name().size() > 2) {
                    given.insert(opt->get_name().substr(2));
                }
            }
            apply_config_file(cfg, given);
        }
        canonicalize(cfg);
        validate(cfg);
        return dispatch(cfg);
    } catch (const config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const dtc::capacity_error& e) {
        std::fprintf(stderr, "capacity error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return 4;
    }
}
