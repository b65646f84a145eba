// main.cpp — spinbath command-line front end

#include <complex>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "spinbath/errors.hpp"
#include "spinbath/run.hpp"
#include "spinbath/table_cache.hpp"
#include "spinbath/version.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_numerical = 2;
constexpr int exit_io = 3;

struct CommonFlags {
    std::string config_path;
    double epsilon = 0.0;
    double j0 = 0.0;
    double omega = 0.0;
    std::string state;
    double t_end = 0.0;
    int points = 0;
    double tol = 0.0;
    std::string out;
    std::string cache_dir;
    int threads = -1;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path,
                    "JSON config file; flags override its values");
    cmd->add_option("--epsilon", flags.epsilon, "detuning in units of g");
    cmd->add_option("--j0", flags.j0, "qubit-bath coupling in units of g");
    cmd->add_option("--omega-factor", flags.omega,
                    "dimensionless bath factor");
    cmd->add_option("--state", flags.state,
                    "initial state label (up, down, phi1, phi2, phi-super)");
    cmd->add_option("--t-end", flags.t_end, "end of the g*t grid");
    cmd->add_option("--points", flags.points, "number of grid points");
    cmd->add_option("--tol", flags.tol, "tail tolerance of the lambda table");
    cmd->add_option("--out", flags.out, "output directory");
    cmd->add_option("--cache-dir", flags.cache_dir,
                    "lambda table cache directory");
    cmd->add_option("--threads", flags.threads,
                    "worker threads (0 = all cores)");
}

spinbath::run::RunConfig resolve_config(const CLI::App* cmd,
                                        const CommonFlags& flags) {
    spinbath::run::RunConfig config;
    if (cmd->count("--config") > 0) {
        config = spinbath::run::load_config(flags.config_path);
    }
    if (cmd->count("--epsilon") > 0) config.epsilon = flags.epsilon;
    if (cmd->count("--j0") > 0) config.j0 = flags.j0;
    if (cmd->count("--omega-factor") > 0) {
        config.bath = spinbath::BathSpec::direct(flags.omega);
    }
    if (cmd->count("--state") > 0) {
        config.state = flags.state;
        config.amplitudes.reset();
        config.mixture.reset();
    }
    if (cmd->count("--t-end") > 0) config.grid.t_end = flags.t_end;
    if (cmd->count("--points") > 0) config.grid.points = flags.points;
    if (cmd->count("--tol") > 0) config.tol = flags.tol;
    if (cmd->count("--out") > 0) config.out = flags.out;
    if (cmd->count("--cache-dir") > 0) config.cache_dir = flags.cache_dir;
    if (cmd->count("--threads") > 0) config.threads = flags.threads;
    spinbath::run::validate(config);
    return config;
}

void report_files(const spinbath::run::RunOutcome& outcome) {
    for (const auto& file : outcome.files) {
        std::cout << "wrote " << file.string() << '\n';
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spinbath — exact dynamics of a driven spin in a magnon bath"};
    app.set_version_flag("--version", spinbath::version);
    app.require_subcommand(1);

    CommonFlags evolve_flags, spectrum_flags, scan_flags;

    CLI::App* evolve = app.add_subcommand(
        "evolve", "time series of <Sz>, the reduced state, and entropy");
    add_common_flags(evolve, evolve_flags);

    CLI::App* spectrum = app.add_subcommand(
        "spectrum", "weighted distribution of the sector frequencies");
    add_common_flags(spectrum, spectrum_flags);

    CLI::App* scan = app.add_subcommand(
        "entropy-scan", "pointer-state scan over a Bloch-sphere grid");
    add_common_flags(scan, scan_flags);
    int n_theta = 0, n_phi = 0;
    scan->add_option("--n-theta", n_theta, "polar grid size");
    scan->add_option("--n-phi", n_phi, "azimuthal grid size");

    std::string figure_name;
    std::string figure_out = ".";
    std::string figure_cache;
    int figure_threads = 1;
    CLI::App* figure =
        app.add_subcommand("figure", "run a named parameter preset");
    figure->add_option("name", figure_name, "preset name")->required();
    figure->add_option("--out", figure_out, "output directory");
    figure->add_option("--cache-dir", figure_cache, "cache directory");
    figure->add_option("--threads", figure_threads,
                       "worker threads (0 = all cores)");

    std::string verify_level = "quick";
    CLI::App* verify = app.add_subcommand("verify", "run the self-check suite");
    verify->add_option("level", verify_level, "quick or full")
        ->check(CLI::IsMember({"quick", "full"}));

    double cache_omega = 1.0;
    double cache_tol = 1e-10;
    std::string cache_dir = ".";
    CLI::App* cache =
        app.add_subcommand("cache", "build or load a lambda table cache entry");
    cache->add_option("--omega-factor", cache_omega, "dimensionless bath factor")
        ->required();
    cache->add_option("--tol", cache_tol, "tail tolerance");
    cache->add_option("--cache-dir", cache_dir, "cache directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        if (err.get_name() == "CallForHelp" ||
            err.get_name() == "CallForAllHelp" ||
            err.get_name() == "CallForVersion") {
            return app.exit(err);
        }
        std::cerr << "error: " << err.what() << '\n';
        return exit_usage;
    }

    try {
        if (evolve->parsed()) {
            report_files(
                spinbath::run::run_evolve(resolve_config(evolve, evolve_flags)));
        } else if (spectrum->parsed()) {
            report_files(spinbath::run::run_spectrum(
                resolve_config(spectrum, spectrum_flags)));
        } else if (scan->parsed()) {
            spinbath::run::RunConfig config = resolve_config(scan, scan_flags);
            if (scan->count("--n-theta") > 0) config.n_theta = n_theta;
            if (scan->count("--n-phi") > 0) config.n_phi = n_phi;
            spinbath::run::validate(config);
            report_files(spinbath::run::run_entropy_scan(config));
        } else if (figure->parsed()) {
            std::optional<std::filesystem::path> cache_path;
            if (figure->count("--cache-dir") > 0) cache_path = figure_cache;
            report_files(spinbath::run::run_figure(figure_name, figure_out,
                                                   cache_path, figure_threads));
        } else if (verify->parsed()) {
            const auto level = verify_level == "full"
                                   ? spinbath::verify::Level::full
                                   : spinbath::verify::Level::quick;
            if (!spinbath::run::run_verify(level, std::cout)) {
                return exit_numerical;
            }
        } else if (cache->parsed()) {
            const spinbath::cache::CachedTable result =
                spinbath::cache::cache_lambda(cache_omega, cache_tol,
                                              cache_dir);
            if (result.rebuilt_corrupt) {
                std::cerr << "warning: cache file was corrupt and has been "
                             "rebuilt\n";
            }
            std::cout << (result.hit ? "cache hit: " : "cache miss, built: ")
                      << result.path.string() << '\n'
                      << "p_max " << result.table.p_max()
                      << ", cumulative mass " << result.table.cumulative_mass
                      << '\n';
        }
    } catch (const std::filesystem::filesystem_error& err) {
        std::cerr << "i/o error: " << err.what() << '\n';
        return exit_io;
    } catch (const std::ios_base::failure& err) {
        std::cerr << "i/o error: " << err.what() << '\n';
        return exit_io;
    } catch (const spinbath::numerical_error& err) {
        std::cerr << "numerical validity error: " << err.what() << '\n';
        return exit_numerical;
    } catch (const spinbath::truncation_error& err) {
        std::cerr << "numerical validity error: " << err.what() << '\n';
        return exit_numerical;
    } catch (const spinbath::oracle_failure& err) {
        std::cerr << "numerical validity error: " << err.what() << '\n';
        return exit_numerical;
    } catch (const std::range_error& err) {
        std::cerr << "numerical validity error: " << err.what() << '\n';
        return exit_numerical;
    } catch (const std::invalid_argument& err) {
        std::cerr << "usage error: " << err.what() << '\n';
        return exit_usage;
    } catch (const std::domain_error& err) {
        std::cerr << "usage error: " << err.what() << '\n';
        return exit_usage;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return exit_numerical;
    }
    return exit_ok;
}
