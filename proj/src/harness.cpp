#include "mhdwave/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace mhdwave {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) { throw std::invalid_argument("config: " + msg); }

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& context) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* a : allowed)
            if (item.key() == a) known = true;
        if (!known) bad("unknown key \"" + context + item.key() + "\"");
    }
}

double as_double(const json& v, const std::string& name) {
    if (!v.is_number()) bad(name + " must be a number");
    return v.get<double>();
}

int as_int(const json& v, const std::string& name) {
    if (!v.is_number_integer()) bad(name + " must be an integer");
    return v.get<int>();
}

bool is_pow2(int n) { return n >= 1 && (n & (n - 1)) == 0; }

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// Scalar-or-list fields (nu, target_eps, n_points) normalize to a vector.
std::vector<double> as_double_list(const json& v, const std::string& name) {
    std::vector<double> out;
    if (v.is_array()) {
        if (v.empty()) bad(name + " list must be nonempty");
        for (const auto& x : v) out.push_back(as_double(x, name));
    } else {
        out.push_back(as_double(v, name));
    }
    return out;
}

double resolved_conservation_ceiling(const SimConfig& cfg) {
    if (cfg.ceilings.conservation >= 0.0) return cfg.ceilings.conservation;
    return cfg.init.kind == "linear-alfven" ? 1e-8 : 1e-7;
}

json ceiling_json(double c) {
    return std::isfinite(c) ? json(c) : json(nullptr);
}

}  // namespace

SimConfig parse_config(const std::string& text) {
    std::string body = text;
    const auto first = body.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) body = "{}";

    json doc;
    try {
        doc = json::parse(body);
    } catch (const json::parse_error& e) {
        bad(std::string("not a valid JSON document (") + e.what() + ")");
    }
    if (!doc.is_object()) bad("top level must be a JSON object");

    reject_unknown(doc,
                   {"grid", "weights", "nu", "e", "scheme", "cfl_safety", "dt_max", "t_horizon",
                    "observe_every", "initial_data", "ceilings", "output", "threads"},
                   "");

    SimConfig cfg;

    if (doc.contains("grid")) {
        const json& g = doc["grid"];
        if (!g.is_object()) bad("grid must be an object");
        reject_unknown(g, {"n_dims", "n_points", "half_length"}, "grid.");
        if (g.contains("n_dims")) cfg.n_dims = as_int(g["n_dims"], "grid.n_dims");
        if (cfg.n_dims != 2 && cfg.n_dims != 3) bad("n_dims must be 2 or 3");
        if (g.contains("n_points")) {
            cfg.n_points.clear();
            const json& np = g["n_points"];
            if (np.is_array()) {
                if (np.empty()) bad("grid.n_points list must be nonempty");
                for (const auto& x : np) cfg.n_points.push_back(as_int(x, "grid.n_points"));
            } else {
                cfg.n_points.push_back(as_int(np, "grid.n_points"));
            }
        }
        for (int n : cfg.n_points)
            if (!is_pow2(n) || n < 16) bad("n_points must be a power of two, at least 16");
        if (g.contains("half_length"))
            cfg.half_length = as_double(g["half_length"], "grid.half_length");
        if (!(cfg.half_length > 0.0)) bad("half_length must be positive");
    }

    cfg.k = cfg.n_dims + 3;
    if (doc.contains("weights")) {
        const json& w = doc["weights"];
        if (!w.is_object()) bad("weights must be an object");
        reject_unknown(w, {"mu", "k", "literal_minus_weight"}, "weights.");
        if (w.contains("mu")) cfg.mu = as_double(w["mu"], "weights.mu");
        if (w.contains("k")) cfg.k = as_int(w["k"], "weights.k");
        if (w.contains("literal_minus_weight")) {
            if (!w["literal_minus_weight"].is_boolean())
                bad("weights.literal_minus_weight must be a boolean");
            cfg.literal_minus_weight = w["literal_minus_weight"].get<bool>();
        }
    }
    if (!(cfg.mu > 0.5 && cfg.mu < 2.0 / 3.0)) bad("mu must lie in (1/2, 2/3)");
    if (cfg.k < cfg.n_dims + 3) bad("k must be at least n_dims + 3");

    if (doc.contains("nu")) cfg.nu = as_double_list(doc["nu"], "nu");
    for (double v : cfg.nu)
        if (!(v >= 0.0)) bad("nu must be nonnegative");

    if (doc.contains("e")) {
        const json& ev = doc["e"];
        if (!ev.is_array() || static_cast<int>(ev.size()) != cfg.n_dims)
            bad("e must be a unit vector with n_dims components");
        cfg.e = {0.0, 0.0, 0.0};
        double norm2 = 0.0;
        for (int d = 0; d < cfg.n_dims; ++d) {
            cfg.e[d] = as_double(ev[d], "e");
            norm2 += cfg.e[d] * cfg.e[d];
        }
        if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12)
            bad("e must be a unit vector with n_dims components");
    }

    if (doc.contains("scheme")) {
        if (!doc["scheme"].is_string()) bad("scheme must be a string");
        const std::string s = doc["scheme"].get<std::string>();
        if (s == "rk4_explicit")
            cfg.scheme = Scheme::rk4_explicit;
        else if (s == "rk4_integrating_factor")
            cfg.scheme = Scheme::rk4_integrating_factor;
        else
            bad("scheme must be rk4_explicit or rk4_integrating_factor");
    }

    if (doc.contains("cfl_safety")) cfg.cfl_safety = as_double(doc["cfl_safety"], "cfl_safety");
    if (!(cfg.cfl_safety > 0.0 && cfg.cfl_safety <= 1.0)) bad("cfl_safety must lie in (0, 1]");
    if (doc.contains("dt_max")) cfg.dt_max = as_double(doc["dt_max"], "dt_max");
    if (!(cfg.dt_max > 0.0)) bad("dt_max must be positive");
    if (doc.contains("t_horizon")) {
        cfg.t_horizon = as_double(doc["t_horizon"], "t_horizon");
        if (!(cfg.t_horizon >= 0.0)) bad("t_horizon must be nonnegative; omit it for auto");
    }
    if (doc.contains("observe_every"))
        cfg.observe_every = as_int(doc["observe_every"], "observe_every");
    if (cfg.observe_every < 1) bad("observe_every must be a positive integer");
    if (doc.contains("threads")) cfg.threads = as_int(doc["threads"], "threads");
    if (cfg.threads < 1) bad("threads must be a positive integer");

    if (doc.contains("initial_data")) {
        const json& d = doc["initial_data"];
        if (!d.is_object()) bad("initial_data must be an object");
        reject_unknown(d,
                       {"kind", "target_eps", "correlation_length", "seed", "amplitude",
                        "ring_width", "mode_plus", "mode_minus", "amp_plus", "amp_minus"},
                       "initial_data.");
        InitialDataConfig& id = cfg.init;
        if (d.contains("kind")) {
            if (!d["kind"].is_string()) bad("initial_data.kind must be a string");
            id.kind = d["kind"].get<std::string>();
        }
        if (id.kind != "generic" && id.kind != "linear-alfven" && id.kind != "single-mode")
            bad("kind must be one of generic, linear-alfven, single-mode");
        if (d.contains("target_eps"))
            id.target_eps = as_double_list(d["target_eps"], "initial_data.target_eps");
        for (double eps : id.target_eps)
            if (!(eps >= 0.0)) bad("target_eps must be nonnegative");
        if (d.contains("correlation_length"))
            id.correlation_length = as_double(d["correlation_length"], "correlation_length");
        if (d.contains("seed")) {
            const json& s = d["seed"];
            if (!s.is_number_integer() || (s.is_number_integer() && !s.is_number_unsigned() &&
                                           s.get<std::int64_t>() < 0))
                bad("seed must be a nonnegative integer");
            id.seed = s.get<std::uint64_t>();
        }
        if (d.contains("amplitude")) id.amplitude = as_double(d["amplitude"], "amplitude");
        if (d.contains("ring_width")) id.ring_width = as_double(d["ring_width"], "ring_width");
        auto read_mode = [&](const char* key, std::array<int, 3>& m) {
            if (!d.contains(key)) return;
            const json& v = d[key];
            if (!v.is_array() || static_cast<int>(v.size()) != cfg.n_dims)
                bad(std::string(key) + " must be a list of n_dims integers");
            m = {0, 0, 0};
            for (int i = 0; i < cfg.n_dims; ++i) m[i] = as_int(v[i], key);
        };
        read_mode("mode_plus", id.mode_plus);
        read_mode("mode_minus", id.mode_minus);
        if (d.contains("amp_plus")) id.amp_plus = as_double(d["amp_plus"], "amp_plus");
        if (d.contains("amp_minus")) id.amp_minus = as_double(d["amp_minus"], "amp_minus");
    }

    // Mirror the module preconditions of the selected scenario so failures
    // surface before any allocation.
    if (cfg.init.kind == "generic") {
        for (int n : cfg.n_points) {
            const double spacing = 2.0 * cfg.half_length / n;
            if (!(cfg.init.correlation_length >= 4.0 * spacing))
                bad("correlation_length must be at least 4 grid spacings");
        }
    } else if (cfg.init.kind == "linear-alfven") {
        if (!(cfg.init.amplitude > 0.0)) bad("amplitude must be positive");
        if (!(cfg.init.ring_width > 0.0)) bad("ring_width must be positive");
    } else {
        auto zero = [](const std::array<int, 3>& m) { return m[0] == 0 && m[1] == 0 && m[2] == 0; };
        if (zero(cfg.init.mode_plus) || zero(cfg.init.mode_minus))
            bad("single-mode wavevectors must be nonzero");
    }

    if (doc.contains("ceilings")) {
        const json& c = doc["ceilings"];
        if (!c.is_object()) bad("ceilings must be an object");
        reject_unknown(c,
                       {"conservation", "balance", "apriori", "c0", "pressure_p0", "pressure_p1",
                        "pressure_p2", "pressure_p3", "pressure_l32", "transport"},
                       "ceilings.");
        auto read = [&](const char* key, double& dst) {
            if (!c.contains(key)) return;
            dst = as_double(c[key], std::string("ceilings.") + key);
            if (!(dst > 0.0)) bad(std::string("ceilings.") + key + " must be positive");
        };
        read("conservation", cfg.ceilings.conservation);
        read("balance", cfg.ceilings.balance);
        read("apriori", cfg.ceilings.apriori);
        read("c0", cfg.ceilings.c0);
        read("pressure_p0", cfg.ceilings.pressure_p0);
        read("pressure_p1", cfg.ceilings.pressure_p1);
        read("pressure_p2", cfg.ceilings.pressure_p2);
        read("pressure_p3", cfg.ceilings.pressure_p3);
        read("pressure_l32", cfg.ceilings.pressure_l32);
        read("transport", cfg.ceilings.transport);
    }

    if (doc.contains("output")) {
        const json& o = doc["output"];
        if (!o.is_object()) bad("output must be an object");
        reject_unknown(o, {"dir", "label"}, "output.");
        if (o.contains("dir")) {
            if (!o["dir"].is_string()) bad("output.dir must be a string");
            cfg.out_dir = o["dir"].get<std::string>();
        }
        if (o.contains("label")) {
            if (!o["label"].is_string()) bad("output.label must be a string");
            cfg.label = o["label"].get<std::string>();
        }
        if (cfg.out_dir.empty()) bad("output.dir must be nonempty");
        if (cfg.label.empty() || cfg.label.find('/') != std::string::npos)
            bad("output.label must be nonempty without path separators");
    }

    const int sweep_axes = (cfg.nu.size() > 1 ? 1 : 0) + (cfg.init.target_eps.size() > 1 ? 1 : 0) +
                           (cfg.n_points.size() > 1 ? 1 : 0);
    if (sweep_axes > 1) bad("at most one of nu, target_eps and n_points may be a list");

    return cfg;
}

bool SimConfig::is_sweep() const {
    return nu.size() > 1 || init.target_eps.size() > 1 || n_points.size() > 1;
}

std::vector<SimConfig> SimConfig::sweep_points() const {
    std::vector<SimConfig> points;
    if (nu.size() > 1) {
        for (double v : nu) {
            SimConfig p = *this;
            p.nu = {v};
            p.label = label + "-nu" + fmt_g(v);
            points.push_back(std::move(p));
        }
    } else if (init.target_eps.size() > 1) {
        for (double eps : init.target_eps) {
            SimConfig p = *this;
            p.init.target_eps = {eps};
            p.label = label + "-eps" + fmt_g(eps);
            points.push_back(std::move(p));
        }
    } else if (n_points.size() > 1) {
        for (int n : n_points) {
            SimConfig p = *this;
            p.n_points = {n};
            p.label = label + "-N" + std::to_string(n);
            points.push_back(std::move(p));
        }
    } else {
        points.push_back(*this);
    }
    return points;
}

nlohmann::ordered_json config_json(const SimConfig& cfg) {
    nlohmann::ordered_json j;
    j["grid"]["n_dims"] = cfg.n_dims;
    if (cfg.n_points.size() == 1)
        j["grid"]["n_points"] = cfg.n_points[0];
    else
        j["grid"]["n_points"] = cfg.n_points;
    j["grid"]["half_length"] = cfg.half_length;
    j["weights"]["mu"] = cfg.mu;
    j["weights"]["k"] = cfg.k;
    j["weights"]["literal_minus_weight"] = cfg.literal_minus_weight;
    if (cfg.nu.size() == 1)
        j["nu"] = cfg.nu[0];
    else
        j["nu"] = cfg.nu;
    j["e"] = std::vector<double>(cfg.e.begin(), cfg.e.begin() + cfg.n_dims);
    j["scheme"] =
        cfg.scheme == Scheme::rk4_explicit ? "rk4_explicit" : "rk4_integrating_factor";
    j["cfl_safety"] = cfg.cfl_safety;
    j["dt_max"] = cfg.dt_max;
    j["t_horizon"] = cfg.t_horizon < 0.0 ? nlohmann::ordered_json(nullptr)
                                         : nlohmann::ordered_json(cfg.t_horizon);
    j["observe_every"] = cfg.observe_every;

    nlohmann::ordered_json id;
    id["kind"] = cfg.init.kind;
    if (cfg.init.kind == "generic") {
        if (cfg.init.target_eps.size() == 1)
            id["target_eps"] = cfg.init.target_eps[0];
        else
            id["target_eps"] = cfg.init.target_eps;
        id["correlation_length"] = cfg.init.correlation_length;
        id["seed"] = cfg.init.seed;
    } else if (cfg.init.kind == "linear-alfven") {
        id["amplitude"] = cfg.init.amplitude;
        id["ring_width"] = cfg.init.ring_width;
    } else {
        id["mode_plus"] =
            std::vector<int>(cfg.init.mode_plus.begin(), cfg.init.mode_plus.begin() + cfg.n_dims);
        id["mode_minus"] = std::vector<int>(cfg.init.mode_minus.begin(),
                                            cfg.init.mode_minus.begin() + cfg.n_dims);
        id["amp_plus"] = cfg.init.amp_plus;
        id["amp_minus"] = cfg.init.amp_minus;
    }
    j["initial_data"] = id;

    nlohmann::ordered_json c;
    c["conservation"] = resolved_conservation_ceiling(cfg);
    c["balance"] = ceiling_json(cfg.ceilings.balance);
    c["apriori"] = ceiling_json(cfg.ceilings.apriori);
    c["c0"] = ceiling_json(cfg.ceilings.c0);
    c["pressure_p0"] = ceiling_json(cfg.ceilings.pressure_p0);
    c["pressure_p1"] = ceiling_json(cfg.ceilings.pressure_p1);
    c["pressure_p2"] = ceiling_json(cfg.ceilings.pressure_p2);
    c["pressure_p3"] = ceiling_json(cfg.ceilings.pressure_p3);
    c["pressure_l32"] = ceiling_json(cfg.ceilings.pressure_l32);
    if (cfg.init.kind == "linear-alfven") c["transport"] = ceiling_json(cfg.ceilings.transport);
    j["ceilings"] = c;
    return j;
}

RunReport run_experiment(const SimConfig& cfg) {
    if (cfg.is_sweep())
        throw std::invalid_argument(
            "run_experiment: config defines a sweep; expand with sweep_points()");
    const auto wall_start = std::chrono::steady_clock::now();

    const Grid g = make_grid(cfg.n_dims, cfg.n_points[0], cfg.half_length);
    WeightSpec spec;
    spec.mu = cfg.mu;
    spec.k = cfg.k;
    spec.e = cfg.e;
    spec.grid = g;
    spec.literal_minus_weight = cfg.literal_minus_weight;
    check_weight_spec(spec);

    const double nu = cfg.nu[0];
    const bool viscous = nu > 0.0;

    ElsasserState s0{VectorField(g), VectorField(g), 0.0};
    InitialDataReport id;
    if (cfg.init.kind == "generic") {
        s0 = sample_localized_divfree(g, cfg.init.target_eps[0], cfg.init.correlation_length,
                                      cfg.init.seed, spec, &id);
    } else if (cfg.init.kind == "linear-alfven") {
        s0 = linear_alfven_profile(g, ProfileShape::gaussian_ring, cfg.init.amplitude, cfg.e,
                                   cfg.init.ring_width);
        id = measure_epsilon(s0, spec, viscous);
    } else {
        s0 = single_mode_pair(g, cfg.init.mode_plus, cfg.init.mode_minus, cfg.init.amp_plus,
                              cfg.init.amp_minus);
        id = measure_epsilon(s0, spec, viscous);
    }

    // Box-validity budget, mirroring the integrator's up-front check so a
    // saturated auto horizon is still admitted.
    const double margin = 2.0 * g.spacing;
    const double c_max = 1.0 + std::max(max_abs(s0.lambda_plus), max_abs(s0.lambda_minus));
    const double budget = (g.half_length - id.concentration_radius - margin) / c_max;

    StepControl ctl;
    ctl.cfl_safety = cfg.cfl_safety;
    ctl.dt_max = cfg.dt_max;
    ctl.scheme = cfg.scheme;
    ctl.observe_every = cfg.observe_every;
    ctl.concentration_radius = id.concentration_radius;
    double horizon = cfg.t_horizon;
    if (horizon < 0.0) {
        if (!(budget > 0.0))
            throw std::runtime_error(
                "run_experiment: initial data too wide for any valid horizon; set t_horizon");
        horizon = budget;
    } else if (horizon > budget) {
        std::fprintf(stderr,
                     "warning: t_horizon %s exceeds the box-validity budget %s; weighted "
                     "diagnostics lose meaning near the end\n",
                     fmt_g(horizon).c_str(), fmt_g(budget).c_str());
        ctl.enforce_box_validity = false;
    }
    ctl.t_horizon = horizon;

    AprioriMonitor apriori(spec, nu, viscous);
    BalanceMonitor balance(nu);
    PressureMonitor pressure(spec);

    RunReport rep;
    rep.config = cfg;
    const Observer obs = [&](const ElsasserState& s) {
        apriori.observe(s);
        const EnergyReport& r = apriori.report();
        balance.observe(s);
        pressure.observe(s, r.W_k, r.E_tilde);
        std::vector<double> row{s.time, r.E_k,           r.Ecal_k, r.V_k,
                                r.W_k,  0.0 /* drift+ */, 0.0 /* drift- */,
                                max_divergence_rel(s)};
        row.insert(row.end(), r.per_order.begin(), r.per_order.end());
        rep.series.push_back(std::move(row));
    };

    IntegrationStats stats;
    const ElsasserState s1 = integrate(s0, ctl, nu, cfg.e, {obs}, &stats);

    rep.series_columns = {"t",   "E_k",        "Ecal_k",      "V_k",
                          "W_k", "drift_plus", "drift_minus", "div_max"};
    const std::size_t n_orders = rep.series.empty() ? 0 : rep.series[0].size() - 8;
    for (std::size_t j = 0; j < n_orders; ++j)
        rep.series_columns.push_back("order_" + std::to_string(j));

    const double cons_ceiling = resolved_conservation_ceiling(cfg);
    const MonitorFit f_plus =
        balance.fit_plus(viscous ? cfg.ceilings.balance : cons_ceiling);
    const MonitorFit f_minus =
        balance.fit_minus(viscous ? cfg.ceilings.balance : cons_ceiling);
    for (std::size_t i = 0; i < rep.series.size(); ++i) {
        rep.series[i][5] =
            f_plus.rhs_series[i] > 0.0 ? f_plus.lhs_series[i] / f_plus.rhs_series[i] : 0.0;
        rep.series[i][6] =
            f_minus.rhs_series[i] > 0.0 ? f_minus.lhs_series[i] / f_minus.rhs_series[i] : 0.0;
    }

    rep.fits.push_back(f_plus);
    rep.fits.push_back(f_minus);
    rep.fits.push_back(apriori.inequality_fit(cfg.ceilings.apriori));
    if (apriori.epsilon() > 0.0) rep.fits.push_back(apriori.c0_fit(cfg.ceilings.c0));
    rep.fits.push_back(pressure.fit(PressureLemma::P0, cfg.ceilings.pressure_p0));
    rep.fits.push_back(pressure.fit(PressureLemma::P1, cfg.ceilings.pressure_p1));
    rep.fits.push_back(pressure.fit(PressureLemma::P2, cfg.ceilings.pressure_p2));
    rep.fits.push_back(pressure.fit(PressureLemma::P3, cfg.ceilings.pressure_p3));
    rep.fits.push_back(pressure.fit(PressureLemma::L32, cfg.ceilings.pressure_l32));

    if (cfg.init.kind == "linear-alfven") {
        rep.transport = transport_exactness(s0, s1, cfg.e);
        rep.has_transport_error = true;
        rep.fits.push_back(fit_monitor("transport-exactness", {s1.time},
                                       {rep.transport.plus_error}, {1.0},
                                       cfg.ceilings.transport));
    }

    rep.all_pass = true;
    for (const MonitorFit& f : rep.fits) rep.all_pass = rep.all_pass && f.pass;
    rep.initial_data = id;
    rep.resolved_horizon = horizon;
    rep.steps = stats.steps;
    rep.reprojections = stats.reprojections;
    rep.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
    return rep;
}

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("cannot write " + path);
}

std::string fmt_17g(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

EmittedPaths emit_report(const RunReport& report, const std::string& out_dir) {
    for (const auto& row : report.series) {
        if (row.size() != report.series_columns.size())
            throw std::invalid_argument("emit_report: series row width differs from the header");
    }
    for (std::size_t i = 1; i < report.series.size(); ++i) {
        if (!(report.series[i][0] > report.series[i - 1][0]))
            throw std::invalid_argument("emit_report: series times must be strictly increasing");
    }

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory " + out_dir + ": " +
                                 ec.message());

    EmittedPaths paths;
    paths.csv = out_dir + "/" + report.config.label + ".csv";
    paths.json = out_dir + "/" + report.config.label + ".json";

    std::string csv;
    for (std::size_t j = 0; j < report.series_columns.size(); ++j) {
        if (j) csv += ',';
        csv += report.series_columns[j];
    }
    csv += '\n';
    for (const auto& row : report.series) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) csv += ',';
            csv += fmt_17g(row[j]);
        }
        csv += '\n';
    }
    write_file(paths.csv, csv);

    nlohmann::ordered_json j;
    j["label"] = report.config.label;
    j["config"] = config_json(report.config);
    j["initial_data"]["epsilon_inviscid"] = report.initial_data.epsilon_inviscid;
    j["initial_data"]["epsilon_viscous"] = report.initial_data.epsilon_viscous;
    j["initial_data"]["concentration_radius"] = report.initial_data.concentration_radius;
    j["initial_data"]["seed"] = report.initial_data.seed;
    j["resolved_horizon"] = report.resolved_horizon;
    j["steps"] = report.steps;
    j["reprojections"] = report.reprojections;
    j["monitors"] = nlohmann::ordered_json::array();
    nlohmann::ordered_json failing = nlohmann::ordered_json::array();
    for (const MonitorFit& f : report.fits) {
        nlohmann::ordered_json m;
        m["name"] = f.name;
        m["fitted_C"] = std::isfinite(f.fitted_C) ? nlohmann::ordered_json(f.fitted_C)
                                                  : nlohmann::ordered_json(nullptr);
        m["ceiling"] = std::isfinite(f.ceiling) ? nlohmann::ordered_json(f.ceiling)
                                                : nlohmann::ordered_json(nullptr);
        m["pass"] = f.pass;
        j["monitors"].push_back(m);
        if (!f.pass) failing.push_back(f.name);
    }
    j["failing"] = failing;
    if (report.has_transport_error) {
        j["transport"]["plus_error"] = report.transport.plus_error;
        j["transport"]["minus_max"] = report.transport.minus_max;
    }
    j["all_pass"] = report.all_pass;
    write_file(paths.json, j.dump(2) + "\n");
    return paths;
}

nlohmann::ordered_json summarize_csv(const std::string& csv_text) {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::size_t pos = 0;
    bool header_done = false;
    while (pos < csv_text.size()) {
        std::size_t nl = csv_text.find('\n', pos);
        if (nl == std::string::npos) nl = csv_text.size();
        const std::string line = csv_text.substr(pos, nl - pos);
        pos = nl + 1;
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::size_t p = 0;
        while (true) {
            std::size_t c = line.find(',', p);
            if (c == std::string::npos) {
                cells.push_back(line.substr(p));
                break;
            }
            cells.push_back(line.substr(p, c - p));
            p = c + 1;
        }
        if (!header_done) {
            columns = cells;
            header_done = true;
            continue;
        }
        if (cells.size() != columns.size())
            throw std::invalid_argument("csv row width differs from the header");
        std::vector<double> row;
        for (const std::string& cell : cells) {
            std::size_t used = 0;
            const double v = std::stod(cell, &used);
            if (used != cell.size()) throw std::invalid_argument("csv cell is not a number");
            row.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    if (!header_done) throw std::invalid_argument("csv has no header line");

    nlohmann::ordered_json j;
    j["columns"] = columns;
    j["rows"] = rows.size();
    if (rows.empty()) {
        j["t_first"] = nullptr;
        j["t_final"] = nullptr;
        j["stats"] = nlohmann::ordered_json::object();
        return j;
    }
    j["t_first"] = rows.front()[0];
    j["t_final"] = rows.back()[0];
    nlohmann::ordered_json stats;
    for (std::size_t col = 0; col < columns.size(); ++col) {
        double mn = rows[0][col], mx = rows[0][col];
        for (const auto& r : rows) {
            mn = std::min(mn, r[col]);
            mx = std::max(mx, r[col]);
        }
        nlohmann::ordered_json s;
        s["final"] = rows.back()[col];
        s["min"] = mn;
        s["max"] = mx;
        stats[columns[col]] = s;
    }
    j["stats"] = stats;
    return j;
}

}  // namespace mhdwave
