#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "mhdwave/initial_data.hpp"
#include "mhdwave/integrator.hpp"
#include "mhdwave/verification.hpp"

namespace mhdwave {

// Initial-data block. kind selects the scenario; only the fields relevant to
// the chosen kind are consulted (and echoed into reports).
struct InitialDataConfig {
    std::string kind = "generic";  // generic | linear-alfven | single-mode
    std::vector<double> target_eps{1e-4};
    double correlation_length = 2.0;
    std::uint64_t seed = 1;
    double amplitude = 1e-3;  // linear-alfven ring peak speed
    double ring_width = 4.0;
    std::array<int, 3> mode_plus{1, 2, 0};
    std::array<int, 3> mode_minus{2, -1, 0};
    double amp_plus = 0.05;
    double amp_minus = 0.03;
};

// Monitor ceilings. Infinity disables a ceiling (the fit is still reported).
// conservation < 0 resolves to the scenario default: 1e-8 for linear-alfven,
// 1e-7 otherwise.
struct MonitorCeilings {
    double conservation = -1.0;
    double balance = 1e-6;
    double apriori = std::numeric_limits<double>::infinity();
    double c0 = std::numeric_limits<double>::infinity();
    double pressure_p0 = std::numeric_limits<double>::infinity();
    double pressure_p1 = std::numeric_limits<double>::infinity();
    double pressure_p2 = std::numeric_limits<double>::infinity();
    double pressure_p3 = std::numeric_limits<double>::infinity();
    double pressure_l32 = std::numeric_limits<double>::infinity();
    double transport = 1e-8;
};

// Fully resolved experiment description. nu, target_eps and n_points may
// hold several values, but at most one of them; expanding with
// sweep_points() yields single-valued configs run_experiment accepts.
struct SimConfig {
    int n_dims = 2;
    std::vector<int> n_points{256};
    double half_length = 64.0;
    double mu = 0.6;
    int k = 5;  // parse resolves the default n_dims + 3
    bool literal_minus_weight = false;
    std::vector<double> nu{0.0};
    Direction e{1.0, 0.0, 0.0};
    Scheme scheme = Scheme::rk4_integrating_factor;
    double cfl_safety = 0.4;
    double dt_max = 1.0;
    double t_horizon = -1.0;  // < 0: auto from the box-validity rule
    int observe_every = 4;
    InitialDataConfig init;
    MonitorCeilings ceilings;
    std::string out_dir = "out";
    std::string label = "run";
    int threads = 1;

    bool is_sweep() const;
    std::vector<SimConfig> sweep_points() const;
};

// Parses and fully validates a JSON config document. Empty or
// whitespace-only text means an empty document, which resolves to the
// default table above. Unknown keys are rejected, and every range error
// names the violated hypothesis.
SimConfig parse_config(const std::string& text);

// Resolved echo of the numerical experiment, with stable key order. Output
// paths and thread count are deliberately excluded so report bytes depend
// only on the experiment itself.
nlohmann::ordered_json config_json(const SimConfig& cfg);

struct RunReport {
    SimConfig config;  // single sweep point
    std::vector<std::string> series_columns;
    std::vector<std::vector<double>> series;  // rows, strictly increasing t
    std::vector<MonitorFit> fits;
    InitialDataReport initial_data;
    double resolved_horizon = 0.0;
    std::int64_t steps = 0;
    std::int64_t reprojections = 0;
    bool has_transport_error = false;
    TransportError transport;
    double wall_clock_seconds = 0.0;  // never written to report files
    bool all_pass = true;
};

// Wires initial data, integrator and the monitor stack for one sweep point.
// Deterministic for a fixed config; throws on a sweep config.
RunReport run_experiment(const SimConfig& cfg);

struct EmittedPaths {
    std::string csv;
    std::string json;
};

// Writes <out_dir>/<label>.csv (fixed column order, 17-significant-digit
// floats) and <out_dir>/<label>.json (stable key order, no wall-clock).
// Re-emitting the same report is byte-identical.
EmittedPaths emit_report(const RunReport& report, const std::string& out_dir);

// Series-level summary of an emitted CSV (the report subcommand): column
// names with first/final/max statistics, deterministic key order.
nlohmann::ordered_json summarize_csv(const std::string& csv_text);

}  // namespace mhdwave
