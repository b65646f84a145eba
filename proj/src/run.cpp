// run.cpp

#include "spinbath/run.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "json.hpp"

#include "spinbath/dynamics.hpp"
#include "spinbath/entropy.hpp"
#include "spinbath/io.hpp"
#include "spinbath/spectrum.hpp"
#include "spinbath/table_cache.hpp"
#include "spinbath/version.hpp"

namespace spinbath::run {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::filesystem::filesystem_error(
            "cannot open output file", path,
            std::make_error_code(std::errc::io_error));
    }
    return out;
}

json config_json(const RunConfig& config) {
    json j;
    j["epsilon"] = config.epsilon;
    j["j0"] = config.j0;
    j["omega"] = config.bath.omega();
    if (config.bath.source()) {
        const MicroscopicBath& m = *config.bath.source();
        j["n_atoms"] = m.n_atoms;
        j["temperature"] = m.temperature;
        j["coordination"] = m.coordination;
        j["exchange"] = m.exchange;
    }
    if (config.amplitudes) {
        j["delta_re"] = config.amplitudes->first.real();
        j["delta_im"] = config.amplitudes->first.imag();
        j["gamma_re"] = config.amplitudes->second.real();
        j["gamma_im"] = config.amplitudes->second.imag();
    } else if (config.mixture) {
        j["p_up"] = config.mixture->first;
        j["p_down"] = config.mixture->second;
    } else {
        j["state"] = config.state;
    }
    j["t_start"] = config.grid.t_start;
    j["t_end"] = config.grid.t_end;
    j["points"] = config.grid.points;
    j["tol"] = config.tol;
    j["threads"] = config.threads;
    return j;
}

struct TableUse {
    LambdaTable table;
    json provenance;
};

TableUse acquire_table(const RunConfig& config) {
    TableUse use;
    if (config.cache_dir) {
        const cache::CachedTable cached =
            cache::cache_lambda(config.bath.omega(), config.tol,
                                *config.cache_dir);
        use.table = cached.table;
        if (cached.rebuilt_corrupt) {
            std::cerr << "warning: corrupt lambda table cache rebuilt: "
                      << cached.path.string() << '\n';
        }
        use.provenance["source"] = cached.hit           ? "cache-hit"
                                   : cached.rebuilt_corrupt ? "cache-rebuilt"
                                                            : "cache-miss";
        use.provenance["path"] = cached.path.string();
    } else {
        use.table = build_lambda_table(config.bath.omega(), config.tol);
        use.provenance["source"] = "built";
    }
    use.provenance["omega"] = use.table.omega;
    use.provenance["tol"] = use.table.tol;
    use.provenance["p_max"] = use.table.p_max();
    use.provenance["cumulative_mass"] = use.table.cumulative_mass;
    return use;
}

void write_manifest(const std::filesystem::path& path, json manifest,
                    Clock::time_point start, RunOutcome& outcome) {
    json outputs = json::array();
    for (const auto& file : outcome.files) {
        outputs.push_back(file.filename().string());
    }
    manifest["outputs"] = std::move(outputs);
    manifest["version"] = version;
    manifest["wall_time_s"] = seconds_since(start);
    auto out = open_output(path);
    out << manifest.dump(2) << '\n';
    outcome.files.push_back(path);
}

double require_number(const json& value, const std::string& key) {
    if (!value.is_number()) {
        throw std::invalid_argument("config field '" + key +
                                    "' must be a number");
    }
    return value.get<double>();
}

} // namespace

std::vector<double> make_time_grid(const TimeGridSpec& spec) {
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(spec.points));
    if (spec.points == 1) {
        grid.push_back(spec.t_start);
        return grid;
    }
    const double step =
        (spec.t_end - spec.t_start) / static_cast<double>(spec.points - 1);
    for (int i = 0; i < spec.points; ++i) {
        grid.push_back(spec.t_start + static_cast<double>(i) * step);
    }
    return grid;
}

QubitState RunConfig::initial_state() const {
    if (amplitudes) {
        return QubitState::pure(amplitudes->first, amplitudes->second);
    }
    if (mixture) {
        return QubitState::mixed_diagonal(mixture->first, mixture->second);
    }
    return state_from_label(state, epsilon, 1.0);
}

void validate(const RunConfig& config) {
    if (!std::isfinite(config.epsilon)) {
        throw std::invalid_argument("config field 'epsilon' must be finite");
    }
    if (!std::isfinite(config.j0)) {
        throw std::invalid_argument("config field 'j0' must be finite");
    }
    if (config.grid.points < 1) {
        throw std::invalid_argument("config field 'points' must be >= 1");
    }
    if (config.grid.t_start < 0.0) {
        throw std::invalid_argument("config field 't_start' must be >= 0");
    }
    if (config.grid.t_end < config.grid.t_start) {
        throw std::invalid_argument(
            "config field 't_end' must be >= t_start");
    }
    if (config.grid.points > 1 && config.grid.t_end == config.grid.t_start) {
        throw std::invalid_argument(
            "config field 'points' > 1 requires t_end > t_start");
    }
    if (!(config.tol > 0.0 && config.tol < 1.0)) {
        throw std::invalid_argument("config field 'tol' must lie in (0, 1)");
    }
    if (config.threads < 0) {
        throw std::invalid_argument("config field 'threads' must be >= 0");
    }
    if (config.n_theta < 1 || config.n_phi < 1) {
        throw std::invalid_argument(
            "config fields 'n_theta' and 'n_phi' must be >= 1");
    }
    if (config.amplitudes && config.mixture) {
        throw std::invalid_argument(
            "config: give either amplitudes or a mixture, not both");
    }
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::filesystem::filesystem_error(
            "cannot open config file", path,
            std::make_error_code(std::errc::no_such_file_or_directory));
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& err) {
        throw std::invalid_argument("config parse error: " +
                                    std::string(err.what()));
    }
    if (!doc.is_object()) {
        throw std::invalid_argument("config must be a JSON object");
    }

    RunConfig config;
    std::optional<double> omega;
    std::optional<double> n_atoms, temperature, coordination, exchange;
    std::optional<double> delta_re, delta_im, gamma_re, gamma_im;
    std::optional<double> p_up, p_down;

    for (const auto& [key, value] : doc.items()) {
        if (key == "epsilon") config.epsilon = require_number(value, key);
        else if (key == "j0") config.j0 = require_number(value, key);
        else if (key == "omega") omega = require_number(value, key);
        else if (key == "n_atoms") n_atoms = require_number(value, key);
        else if (key == "temperature") temperature = require_number(value, key);
        else if (key == "coordination") coordination = require_number(value, key);
        else if (key == "exchange") exchange = require_number(value, key);
        else if (key == "state") config.state = value.get<std::string>();
        else if (key == "delta_re") delta_re = require_number(value, key);
        else if (key == "delta_im") delta_im = require_number(value, key);
        else if (key == "gamma_re") gamma_re = require_number(value, key);
        else if (key == "gamma_im") gamma_im = require_number(value, key);
        else if (key == "p_up") p_up = require_number(value, key);
        else if (key == "p_down") p_down = require_number(value, key);
        else if (key == "t_start") config.grid.t_start = require_number(value, key);
        else if (key == "t_end") config.grid.t_end = require_number(value, key);
        else if (key == "points") config.grid.points = value.get<int>();
        else if (key == "tol") config.tol = require_number(value, key);
        else if (key == "out") config.out = value.get<std::string>();
        else if (key == "cache_dir") config.cache_dir = value.get<std::string>();
        else if (key == "threads") config.threads = value.get<int>();
        else if (key == "n_theta") config.n_theta = value.get<int>();
        else if (key == "n_phi") config.n_phi = value.get<int>();
        else {
            throw std::invalid_argument("unknown config field '" + key + "'");
        }
    }

    const bool any_micro =
        n_atoms || temperature || coordination || exchange;
    if (any_micro) {
        if (omega) {
            throw std::invalid_argument(
                "config: give 'omega' or the microscopic tuple, not both");
        }
        if (!(n_atoms && temperature && coordination && exchange)) {
            throw std::invalid_argument(
                "config: microscopic bath needs n_atoms, temperature, "
                "coordination, exchange");
        }
        config.bath = BathSpec::microscopic(
            {*n_atoms, *temperature, *coordination, *exchange});
    } else if (omega) {
        config.bath = BathSpec::direct(*omega);
    }

    const bool any_amp = delta_re || delta_im || gamma_re || gamma_im;
    if (any_amp) {
        config.amplitudes = {{delta_re.value_or(0.0), delta_im.value_or(0.0)},
                             {gamma_re.value_or(0.0), gamma_im.value_or(0.0)}};
    }
    if (p_up || p_down) {
        if (any_amp) {
            throw std::invalid_argument(
                "config: give amplitudes or a mixture, not both");
        }
        if (!(p_up && p_down)) {
            throw std::invalid_argument(
                "config: mixture needs both p_up and p_down");
        }
        config.mixture = {{*p_up, *p_down}};
    }

    validate(config);
    return config;
}

RunOutcome run_evolve(const RunConfig& config) {
    const auto start = Clock::now();
    validate(config);
    std::filesystem::create_directories(config.out);

    const TableUse use = acquire_table(config);
    const std::vector<double> grid = make_time_grid(config.grid);
    TimeSeries series = evolve_series(config.params(), config.initial_state(),
                                      use.table, grid, config.threads);
    fill_entropy(series);

    RunOutcome outcome;
    const std::filesystem::path csv = config.out / "series.csv";
    {
        auto out = open_output(csv);
        io::write_series_csv(out, series);
    }
    outcome.files.push_back(csv);

    json manifest;
    manifest["command"] = "evolve";
    manifest["config"] = config_json(config);
    manifest["lambda_tables"] = json::array({use.provenance});
    write_manifest(config.out / "manifest.json", std::move(manifest), start,
                   outcome);
    return outcome;
}

RunOutcome run_spectrum(const RunConfig& config) {
    const auto start = Clock::now();
    validate(config);
    std::filesystem::create_directories(config.out);

    const TableUse use = acquire_table(config);
    const DifferenceWeights weights = difference_weights(use.table);
    const std::vector<SpectrumLine> lines =
        frequency_spectrum(config.params(), weights);

    RunOutcome outcome;
    const std::filesystem::path csv = config.out / "spectrum.csv";
    {
        auto out = open_output(csv);
        io::write_spectrum_csv(out, lines, 1.0);
    }
    outcome.files.push_back(csv);

    const SpectrumSummary summary = spectrum_summary(lines);
    json manifest;
    manifest["command"] = "spectrum";
    manifest["config"] = config_json(config);
    manifest["lambda_tables"] = json::array({use.provenance});
    manifest["summary"] = {{"kappa_min", summary.kappa_min},
                           {"kappa_mode", summary.kappa_mode},
                           {"total_weight", summary.total_weight},
                           {"effective_width", summary.effective_width}};
    write_manifest(config.out / "manifest.json", std::move(manifest), start,
                   outcome);
    return outcome;
}

RunOutcome run_entropy_scan(const RunConfig& config) {
    const auto start = Clock::now();
    validate(config);
    std::filesystem::create_directories(config.out);

    const TableUse use = acquire_table(config);
    const std::vector<double> grid = make_time_grid(config.grid);
    const BlochGrid bloch{config.n_theta, config.n_phi};
    const PointerScanResult scan = pointer_scan(config.params(), use.table,
                                                bloch, grid, config.threads);
    const std::vector<EntropyPoint> best = entropy_series(
        config.params(), scan.best_state, use.table, grid, config.threads);

    RunOutcome outcome;
    const std::filesystem::path landscape_csv = config.out / "landscape.csv";
    {
        auto out = open_output(landscape_csv);
        io::write_landscape_csv(out, scan.landscape);
    }
    outcome.files.push_back(landscape_csv);

    const std::filesystem::path best_csv = config.out / "best_series.csv";
    {
        auto out = open_output(best_csv);
        io::write_entropy_csv(out, best);
    }
    outcome.files.push_back(best_csv);

    json manifest;
    manifest["command"] = "entropy-scan";
    manifest["config"] = config_json(config);
    manifest["config"]["n_theta"] = config.n_theta;
    manifest["config"]["n_phi"] = config.n_phi;
    manifest["lambda_tables"] = json::array({use.provenance});
    manifest["best_state"] = {{"theta", scan.theta},
                              {"phi", scan.phi},
                              {"entropy_score", scan.entropy_score}};
    write_manifest(config.out / "manifest.json", std::move(manifest), start,
                   outcome);
    return outcome;
}

namespace {

RunConfig series_config(double epsilon, double j0, double omega,
                        std::string state, double t_end, int points) {
    RunConfig config;
    config.epsilon = epsilon;
    config.j0 = j0;
    config.bath = BathSpec::direct(omega);
    config.state = std::move(state);
    config.grid = {0.0, t_end, points};
    return config;
}

} // namespace

std::vector<std::string> figure_names() {
    return {"fig1a", "fig1b", "fig2a", "fig2b",
            "fig3a", "fig3b", "fig5a", "fig5b"};
}

std::vector<PresetCurve> figure_preset(std::string_view name) {
    using Kind = PresetCurve::Kind;
    const double inv_sqrt10 = 1.0 / std::sqrt(10.0);
    std::vector<PresetCurve> curves;

    if (name == "fig1a") {
        curves.push_back(
            {"fig1a", Kind::series, series_config(0.0, 0.05, 2.0, "up", 50.0, 2000)});
    } else if (name == "fig1b") {
        curves.push_back(
            {"fig1b", Kind::series, series_config(0.0, 0.05, 30.0, "up", 50.0, 2000)});
    } else if (name == "fig2a") {
        curves.push_back({"fig2a_omega2", Kind::series,
                          series_config(0.0, 0.1, 2.0, "up", 50.0, 2000)});
        curves.push_back({"fig2a_omega20", Kind::series,
                          series_config(0.0, 0.1 * inv_sqrt10, 20.0, "up", 50.0, 2000)});
        curves.push_back({"fig2a_omega200", Kind::series,
                          series_config(0.0, 0.01, 200.0, "up", 50.0, 2000)});
    } else if (name == "fig2b") {
        curves.push_back({"fig2b_omega1", Kind::series,
                          series_config(0.5, 0.05, 1.0, "up", 50.0, 2000)});
        curves.push_back({"fig2b_omega10", Kind::series,
                          series_config(0.5, 0.05 * inv_sqrt10, 10.0, "up", 50.0, 2000)});
        curves.push_back({"fig2b_omega100", Kind::series,
                          series_config(0.5, 0.005, 100.0, "up", 50.0, 2000)});
        // Long window for the collapse-and-revival search.
        curves.push_back({"fig2b_inset", Kind::series,
                          series_config(0.5, 0.05, 1.0, "up", 400.0, 8001)});
    } else if (name == "fig3a") {
        curves.push_back({"fig3a", Kind::spectrum,
                          series_config(0.0, 0.05, 5.0, "up", 50.0, 2000)});
        curves.push_back({"fig3a_inset", Kind::spectrum,
                          series_config(0.0, 0.05 * inv_sqrt10, 50.0, "up", 50.0, 2000)});
    } else if (name == "fig3b") {
        curves.push_back({"fig3b", Kind::spectrum,
                          series_config(0.5, 0.05, 1.0, "up", 50.0, 2000)});
        curves.push_back({"fig3b_inset", Kind::spectrum,
                          series_config(0.5, 0.05 * inv_sqrt10, 10.0, "up", 50.0, 2000)});
    } else if (name == "fig5a") {
        curves.push_back({"fig5a_phi_super", Kind::entropy,
                          series_config(1.0, 0.01, 20.0, "phi-super", 300.0, 1501)});
        curves.push_back({"fig5a_up", Kind::entropy,
                          series_config(1.0, 0.01, 20.0, "up", 300.0, 1501)});
        curves.push_back({"fig5a_phi1", Kind::entropy,
                          series_config(1.0, 0.01, 20.0, "phi1", 300.0, 1501)});
    } else if (name == "fig5b") {
        curves.push_back({"fig5b_j003_eps0", Kind::entropy,
                          series_config(0.0, 0.03, 20.0, "phi1", 300.0, 1501)});
        curves.push_back({"fig5b_j001_eps0", Kind::entropy,
                          series_config(0.0, 0.01, 20.0, "phi1", 300.0, 1501)});
        curves.push_back({"fig5b_j001_eps1", Kind::entropy,
                          series_config(1.0, 0.01, 20.0, "phi1", 300.0, 1501)});
        curves.push_back({"fig5b_j001_eps3", Kind::entropy,
                          series_config(3.0, 0.01, 20.0, "phi1", 300.0, 1501)});
    } else {
        throw std::invalid_argument("unknown figure preset: " +
                                    std::string(name));
    }
    return curves;
}

RunOutcome run_figure(std::string_view name, const std::filesystem::path& out,
                      const std::optional<std::filesystem::path>& cache_dir,
                      int threads) {
    const auto start = Clock::now();
    std::vector<PresetCurve> curves = figure_preset(name);
    std::filesystem::create_directories(out);

    RunOutcome outcome;
    json curve_list = json::array();
    json tables = json::array();

    for (PresetCurve& curve : curves) {
        curve.config.out = out;
        curve.config.cache_dir = cache_dir;
        curve.config.threads = threads;
        const TableUse use = acquire_table(curve.config);
        const std::filesystem::path csv = out / (curve.file_stem + ".csv");
        auto stream = open_output(csv);

        if (curve.kind == PresetCurve::Kind::series) {
            const std::vector<double> grid = make_time_grid(curve.config.grid);
            TimeSeries series =
                evolve_series(curve.config.params(),
                              curve.config.initial_state(), use.table, grid,
                              threads);
            fill_entropy(series);
            io::write_series_csv(stream, series);
        } else if (curve.kind == PresetCurve::Kind::spectrum) {
            const DifferenceWeights weights = difference_weights(use.table);
            io::write_spectrum_csv(
                stream, frequency_spectrum(curve.config.params(), weights),
                1.0);
        } else {
            const std::vector<double> grid = make_time_grid(curve.config.grid);
            const std::vector<EntropyPoint> points =
                entropy_series(curve.config.params(),
                               curve.config.initial_state(), use.table, grid,
                               threads);
            io::write_entropy_csv(stream, points);
        }
        outcome.files.push_back(csv);

        json entry;
        entry["file"] = csv.filename().string();
        entry["kind"] = curve.kind == PresetCurve::Kind::series     ? "series"
                        : curve.kind == PresetCurve::Kind::spectrum ? "spectrum"
                                                                    : "entropy";
        entry["config"] = config_json(curve.config);
        curve_list.push_back(std::move(entry));
        tables.push_back(use.provenance);
    }

    json manifest;
    manifest["command"] = "figure " + std::string(name);
    manifest["curves"] = std::move(curve_list);
    manifest["lambda_tables"] = std::move(tables);
    write_manifest(out / "manifest.json", std::move(manifest), start, outcome);
    return outcome;
}

bool run_verify(verify::Level level, std::ostream& out) {
    const verify::Report report = verify::run(level);
    out << "sweep seed: " << report.seed << '\n';
    for (const verify::Check& check : report.checks) {
        out << (check.pass ? "[PASS] " : "[FAIL] ") << check.name
            << ": max deviation " << check.max_deviation << " (tolerance "
            << check.tolerance << ")\n";
    }
    const bool ok = report.all_pass();
    out << (ok ? "verify: all checks passed\n"
               : "verify: at least one check FAILED\n");
    return ok;
}

} // namespace spinbath::run
