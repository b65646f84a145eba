// run.hpp — the operations behind the CLI subcommands: config resolution,
// data emission with manifests, figure presets, and verification.

#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "spinbath/model.hpp"
#include "spinbath/verify.hpp"

namespace spinbath::run {

struct TimeGridSpec {
    double t_start{0.0};
    double t_end{50.0};
    int points{2000};
};

// Uniform grid t_i = t_start + i*step.  Halving the step reproduces the
// coarse points bit-exactly, so refined runs agree at shared times.
std::vector<double> make_time_grid(const TimeGridSpec& spec);

// Flat run description mirroring the JSON config document.  epsilon and j0
// are multiples of g; the drive g itself is the unit (fixed to 1).
struct RunConfig {
    double epsilon{0.0};
    double j0{0.0};
    BathSpec bath = BathSpec::direct(1.0);
    // State: a label, explicit amplitudes, or an explicit mixture.
    std::string state{"up"};
    std::optional<std::pair<std::complex<double>, std::complex<double>>>
        amplitudes;
    std::optional<std::pair<double, double>> mixture;
    TimeGridSpec grid;
    double tol{1e-10};
    std::filesystem::path out{"."};
    std::optional<std::filesystem::path> cache_dir;
    int threads{1}; // 0 = all hardware threads
    // entropy-scan extras
    int n_theta{64};
    int n_phi{64};

    ModelParams params() const { return ModelParams{epsilon, 1.0, j0}; }
    QubitState initial_state() const;
};

// Reads a flat JSON document with snake_case keys matching RunConfig.
// Unknown keys and invalid values throw std::invalid_argument naming the
// field.
RunConfig load_config(const std::filesystem::path& path);
void validate(const RunConfig& config);

struct RunOutcome {
    std::vector<std::filesystem::path> files; // data files + manifest
};

// evolve: series.csv + manifest.json
RunOutcome run_evolve(const RunConfig& config);

// spectrum: spectrum.csv + manifest.json
RunOutcome run_spectrum(const RunConfig& config);

// entropy-scan: landscape.csv, best_series.csv + manifest.json
RunOutcome run_entropy_scan(const RunConfig& config);

// Named parameter presets bundled with the tool (fig1a, fig1b, fig2a, fig2b,
// fig3a, fig3b, fig5a, fig5b).  Pure data; each curve carries its own config.
struct PresetCurve {
    enum class Kind { series, spectrum, entropy };
    std::string file_stem;
    Kind kind{Kind::series};
    RunConfig config;
};

std::vector<PresetCurve> figure_preset(std::string_view name);
std::vector<std::string> figure_names();

RunOutcome run_figure(std::string_view name, const std::filesystem::path& out,
                      const std::optional<std::filesystem::path>& cache_dir,
                      int threads);

// Prints one line per check plus a summary; returns true when all pass.
bool run_verify(verify::Level level, std::ostream& out);

} // namespace spinbath::run
