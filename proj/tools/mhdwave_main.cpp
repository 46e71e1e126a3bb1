// Thin command shell: parses flags, reads the config document, dispatches to
// the harness, and renders pass/fail lines. All numerics live in the library.
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "mhdwave/harness.hpp"
#include "mhdwave/initial_data.hpp"
#include "mhdwave/weights.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::string scenario;
    long long seed = -1;
    int threads = 0;
};

void add_common(CLI::App* sub, CommonOpts& opts) {
    sub->add_option("--config", opts.config_path, "JSON config document");
    sub->add_option("--out", opts.out_dir, "output directory (overrides config)");
    sub->add_option("--threads", opts.threads, "sweep-point parallelism (overrides config)");
    sub->add_option("--seed", opts.seed, "initial-data seed (overrides config)");
    sub->add_option("--scenario", opts.scenario, "initial-data kind (overrides config)")
        ->check(CLI::IsMember({"generic", "linear-alfven", "single-mode"}));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

mhdwave::SimConfig load_config(const CommonOpts& opts) {
    mhdwave::SimConfig cfg =
        mhdwave::parse_config(opts.config_path.empty() ? "" : read_file(opts.config_path));
    if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
    if (opts.seed >= 0) cfg.init.seed = static_cast<std::uint64_t>(opts.seed);
    if (!opts.scenario.empty()) cfg.init.kind = opts.scenario;
    if (opts.threads > 0) cfg.threads = opts.threads;
    if (const char* env = std::getenv("MHDWAVE_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1)
            throw std::runtime_error("MHDWAVE_THREADS must be a positive integer");
        cfg.threads = static_cast<int>(v);
    }
    return cfg;
}

void print_report(const mhdwave::RunReport& rep, const mhdwave::EmittedPaths& paths) {
    std::printf("run %s: %lld steps to t = %g\n", rep.config.label.c_str(),
                static_cast<long long>(rep.steps), rep.resolved_horizon);
    for (const auto& f : rep.fits) {
        if (std::isfinite(f.ceiling))
            std::printf("[%s] %-22s fitted %.6g  ceiling %.6g\n", f.pass ? "PASS" : "FAIL",
                        f.name.c_str(), f.fitted_C, f.ceiling);
        else
            std::printf("[%s] %-22s fitted %.6g\n", f.pass ? "PASS" : "FAIL", f.name.c_str(),
                        f.fitted_C);
    }
    std::printf("wrote %s and %s\n", paths.csv.c_str(), paths.json.c_str());
    std::fprintf(stderr, "wall clock %.2fs (not part of the report files)\n",
                 rep.wall_clock_seconds);
}

int cmd_run(const CommonOpts& opts) {
    const mhdwave::SimConfig cfg = load_config(opts);
    if (cfg.is_sweep()) {
        std::fprintf(stderr, "error: config defines a sweep; use the sweep subcommand\n");
        return 2;
    }
    const mhdwave::RunReport rep = mhdwave::run_experiment(cfg);
    const mhdwave::EmittedPaths paths = mhdwave::emit_report(rep, cfg.out_dir);
    print_report(rep, paths);
    return rep.all_pass ? 0 : 1;
}

int cmd_sweep(const CommonOpts& opts) {
    const mhdwave::SimConfig cfg = load_config(opts);
    const std::vector<mhdwave::SimConfig> points = cfg.sweep_points();
    std::vector<int> status(points.size(), 1);
    std::atomic<std::size_t> next{0};
    std::mutex io;

    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= points.size()) return;
            try {
                const mhdwave::RunReport rep = mhdwave::run_experiment(points[i]);
                const mhdwave::EmittedPaths paths = mhdwave::emit_report(rep, cfg.out_dir);
                std::lock_guard<std::mutex> lock(io);
                print_report(rep, paths);
                status[i] = rep.all_pass ? 0 : 1;
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(io);
                std::fprintf(stderr, "sweep point %s failed: %s\n", points[i].label.c_str(),
                             e.what());
                status[i] = 2;
            }
        }
    };

    const int n_threads = std::min<std::size_t>(std::max(cfg.threads, 1), points.size());
    std::vector<std::thread> pool;
    for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    int exit_code = 0;
    for (int s : status) exit_code = std::max(exit_code, s);
    return exit_code;
}

bool check(const char* name, bool ok) {
    std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", name);
    return ok;
}

// Fast oracle suite: module-level identities that need no time integration.
int cmd_verify() {
    using namespace mhdwave;
    bool all = true;
    try {
        all &= check("ghost damping integral q(inf) at mu = 0.6",
                     std::abs(ghost_q_infinity(0.6) - 5.661543487607877) < 1e-9 &&
                         ghost_q(3.0, 0.6) < ghost_q(5.0, 0.6) &&
                         ghost_q(5.0, 0.6) < ghost_q_infinity(0.6));

        const std::vector<double> scales{1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024};
        const A2Estimate flat = a2_constant_estimate(0.0, 2, {1.0, 8.0, 64.0});
        bool flat_ok = flat.sup_over_cubes == 1.0;
        for (double s : flat.sup_per_scale) flat_ok = flat_ok && s == 1.0;
        all &= check("flat weight has characteristic exactly 1", flat_ok);

        const A2Estimate sub = a2_constant_estimate(1.2, 2, scales);
        const std::size_t m = sub.sup_per_scale.size();
        all &= check("subcritical weight characteristic plateaus",
                     sub.sup_over_cubes >= 1.0 &&
                         sub.sup_per_scale[m - 1] / sub.sup_per_scale[m - 2] < 1.05);

        const A2Estimate super = a2_constant_estimate(4.0, 2, scales);
        bool grows = super.sup_per_scale[m - 1] / super.sup_per_scale[m - 2] > 2.0;
        for (std::size_t i = 4; i < m; ++i)
            grows = grows && super.sup_per_scale[i] > super.sup_per_scale[i - 1];
        all &= check("supercritical weight characteristic diverges", grows);

        const Grid g = make_grid(2, 32, 8.0);
        WeightSpec spec;
        spec.grid = g;
        spec.k = g.n_dims + 3;
        const ElsasserState pair = single_mode_pair(g, {1, 2, 0}, {2, -1, 0}, 0.05, 0.03);
        const PressureSample ps = pressure_lemma_sample(pair, spec);
        all &= check("pressure weights coincide at t = 0",
                     ps.sq_P2 > 0.0 && std::abs(ps.sq_P2 - ps.sq_P3) <= 1e-12 * ps.sq_P2);

        const Direction e{1.0, 0.0, 0.0};
        const ElsasserState one_sided =
            linear_alfven_profile(g, ProfileShape::gaussian_ring, 0.01, e, 2.0);
        const PressureSample zero_ps = pressure_lemma_sample(one_sided, spec);
        all &= check("one-sided data has zero pressure",
                     zero_ps.p_l2 == 0.0 && zero_ps.sq_P1 == 0.0 && zero_ps.sq_L32 == 0.0);

        const ElsasserState doubled = single_mode_pair(g, {1, 2, 0}, {2, -1, 0}, 0.10, 0.06);
        const double e1 = measure_epsilon(pair, spec, false).epsilon_inviscid;
        const double e2 = measure_epsilon(doubled, spec, false).epsilon_inviscid;
        all &= check("initial energy scales quadratically",
                     e1 > 0.0 && std::abs(e2 / e1 - 4.0) < 1e-12);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "verify aborted: %s\n", e.what());
        return 2;
    }
    return all ? 0 : 1;
}

int cmd_report(const std::string& csv_path, std::string out_dir) {
    const std::string text = read_file(csv_path);
    const nlohmann::ordered_json summary = mhdwave::summarize_csv(text);

    std::string stem = csv_path;
    const std::size_t slash = stem.find_last_of('/');
    if (out_dir.empty()) out_dir = slash == std::string::npos ? "." : stem.substr(0, slash);
    if (slash != std::string::npos) stem = stem.substr(slash + 1);
    if (stem.size() > 4 && stem.substr(stem.size() - 4) == ".csv")
        stem = stem.substr(0, stem.size() - 4);

    const std::string out_path = out_dir + "/" + stem + "-summary.json";
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + out_path + " for writing");
    out << summary.dump(2) << "\n";
    if (!out) throw std::runtime_error("cannot write " + out_path);
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo-spectral solver for incompressible MHD in Elsasser form"};
    app.require_subcommand(1);

    CommonOpts run_opts, sweep_opts;
    CLI::App* run = app.add_subcommand("run", "execute one experiment");
    add_common(run, run_opts);
    CLI::App* sweep = app.add_subcommand("sweep", "execute every sweep point of a config");
    add_common(sweep, sweep_opts);
    app.add_subcommand("verify", "fast oracle self-checks, no time integration");
    CLI::App* report = app.add_subcommand("report", "re-render a JSON summary from a series CSV");
    std::string report_csv, report_out;
    report->add_option("--csv", report_csv, "series CSV produced by run")->required();
    report->add_option("--out", report_out, "output directory (default: alongside the CSV)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(run_opts);
        if (sweep->parsed()) return cmd_sweep(sweep_opts);
        if (report->parsed()) return cmd_report(report_csv, report_out);
        return cmd_verify();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
