#include "lgkac/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lgkac/correlations.hpp"
#include "lgkac/dirac.hpp"
#include "lgkac/error.hpp"
#include "lgkac/io.hpp"
#include "lgkac/lg_theory.hpp"
#include "lgkac/observables.hpp"
#include "lgkac/stochastic_processes.hpp"
#include "lgkac/telegrapher.hpp"
#include "lgkac/validation.hpp"

namespace lgkac {

namespace {

using nlohmann::json;

void write_error(std::ostream& out, std::string_view kind, const std::string& message) {
    out << json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << '\n';
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), ErrorKind::io_error, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Expands `--config FILE` into explicit options. Keys already given on the
// command line win; "command" is metadata from the echo and is skipped.
// Unknown keys surface later as CLI11 "not expected" errors.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    const auto it = std::find(args.begin(), args.end(), "--config");
    if (it == args.end()) return args;
    require(std::next(it) != args.end(), ErrorKind::configuration, "--config needs a file");
    const std::string path = *std::next(it);
    args.erase(it, it + 2);

    // Accepts a bare JSON object, a result JSON with a "config" member, or
    // any CSV artifact carrying a "# config:" line.
    std::string text = slurp(path);
    constexpr std::string_view marker = "# config: ";
    if (text.rfind(marker, 0) == 0) text = text.substr(marker.size(), text.find('\n') - marker.size());
    json config;
    try {
        config = json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorKind::configuration, "config '" + path + "': " + e.what());
    }
    if (config.is_object() && config.contains("config") && config["config"].is_object()) config = config["config"];
    require(config.is_object(), ErrorKind::configuration, "config must be a JSON object");

    std::set<std::string> given;
    for (const auto& a : args)
        if (a.rfind("--", 0) == 0) given.insert(a.substr(2, a.find('=') == std::string::npos ? std::string::npos : a.find('=') - 2));
    for (const auto& [key, value] : config.items()) {
        if (key == "command" || given.count(key)) continue;
        if (value.is_boolean()) {
            if (value.get<bool>()) args.push_back("--" + key);
        } else if (value.is_string()) {
            args.push_back("--" + key);
            args.push_back(value.get<std::string>());
        } else if (value.is_number()) {
            args.push_back("--" + key);
            args.push_back(value.dump());
        } else {
            fail(ErrorKind::configuration, "config key '" + key + "' must be a scalar");
        }
    }
    return args;
}

void write_csv_file(const std::string& path, const json& config, const std::function<void(std::ostream&)>& body) {
    std::ostringstream ss;
    io::write_config_comment(ss, config);
    body(ss);
    io::write_text_file(path, ss.str());
}

bool has_kac_header(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), ErrorKind::io_error, "cannot open '" + path + "'");
    std::string line;
    while (std::getline(in, line))
        if (line.empty() || line.front() != '#') break;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line == "trial,t,v,s";
}

struct SimulateOu {
    OUParams params{1.0, 1.0, 0.0, 0.0};
    double dt = 0.01, t0 = 0.0;
    std::size_t steps = 1000, trials = 1;
    std::uint64_t seed = 1;
    std::string out;

    json config() const {
        return {{"command", "simulate ou"}, {"gamma", params.gamma}, {"sigma", params.sigma},
                {"v-rest", params.v_rest},  {"v-init", params.v_init}, {"dt", dt},
                {"t0", t0},                 {"steps", steps},          {"trials", trials},
                {"seed", seed},             {"out", out}};
    }
};

struct SimulateKac {
    KacParams params{0.0, 1.0, 1.0, 0.0, +1};
    double dt = 0.01, t0 = 0.0;
    std::size_t steps = 1000, trials = 1;
    std::uint64_t seed = 1;
    bool alternate = false;
    std::string out;

    json config() const {
        return {{"command", "simulate kac"}, {"mu", params.mu}, {"v", params.v}, {"lambda", params.lambda},
                {"x-init", params.x_init},   {"s-init", params.s_init}, {"alternate-state", alternate},
                {"dt", dt},                  {"t0", t0},                {"steps", steps},
                {"trials", trials},          {"seed", seed},            {"out", out}};
    }
};

struct Binarize {
    std::string mode = "threshold";
    double v_th = 0.0, bin_width = 0.0, t0 = 0.0, t_end = 0.0, dt = 0.0;
    std::string in, out;

    json config() const {
        json c{{"command", "binarize"}, {"mode", mode}, {"in", in}, {"out", out}};
        if (mode == "threshold") c["v-th"] = v_th;
        if (mode == "spikes") {
            c["bin-width"] = bin_width;
            c["t0"] = t0;
            c["t-end"] = t_end;
            c["dt"] = dt;
        }
        return c;
    }
};

struct Lg {
    std::string in, out;
    double t1 = 0.0, t2 = 0.0, t3 = 0.0;

    json config() const {
        return {{"command", "lg"}, {"in", in}, {"t1", t1}, {"t2", t2}, {"t3", t3}, {"out", out}};
    }
};

struct Scan {
    std::string in, out, svg;
    double tau_min = 0.0, tau_max = 1.0, burn_in = 0.0, rate = 0.0;
    std::size_t tau_steps = 20;
    std::int64_t trial = -1;
    bool burn_in_given = false;

    json config() const {
        json c{{"command", "scan"}, {"in", in},         {"tau-min", tau_min}, {"tau-max", tau_max},
               {"tau-steps", tau_steps}, {"burn-in", burn_in}, {"out", out}};
        if (!svg.empty()) c["svg"] = svg;
        if (rate > 0.0) c["decorrelation-rate"] = rate;
        if (trial >= 0) c["trial"] = trial;
        return c;
    }
};

struct Theory {
    std::string model = "oscillatory", out, svg, summary;
    double omega = 1.0, gamma = 0.0, tau_min = 0.01, tau_max = std::numbers::pi;
    std::size_t tau_steps = 2001;

    json config() const {
        json c{{"command", "theory"}, {"model", model},     {"omega", omega},         {"gamma", gamma},
               {"tau-min", tau_min},  {"tau-max", tau_max}, {"tau-steps", tau_steps}, {"out", out}};
        if (!svg.empty()) c["svg"] = svg;
        if (!summary.empty()) c["summary"] = summary;
        return c;
    }
};

struct Pde {
    TelegraphParams params{0.0, 1.0, 1.0, 1e-3};
    double dx = 1e-3, x_min = -1.5, x_max = 1.5, t_final = 1.0, x_start = 0.0;
    std::size_t snapshots = 4;
    std::string prefix;

    json config() const {
        return {{"command", "pde"}, {"v", params.v},          {"lambda", params.lambda}, {"mu", params.mu},
                {"dx", dx},         {"dt", params.dt},        {"x-min", x_min},          {"x-max", x_max},
                {"t-final", t_final}, {"x-start", x_start},   {"snapshots", snapshots},  {"out-prefix", prefix}};
    }
};

struct Dirac {
    DiracParams params{1.0, 1.0, 0.01};
    double dx = 0.01, x_min = 0.0, x_max = 2.0, t_final = 1.0;
    bool continuation = false;
    std::string prefix;

    json config() const {
        return {{"command", "dirac"}, {"c", params.c_speed}, {"m-tilde", params.m_tilde}, {"dx", dx},
                {"dt", params.dt},    {"x-min", x_min},      {"x-max", x_max},            {"t-final", t_final},
                {"continuation-check", continuation}, {"out-prefix", prefix}};
    }
};

struct Validate {
    bool quick = false;
    std::uint64_t seed = 20240607;
    std::string out;
};

SpaceGrid grid_from_range(double x_min, double x_max, double dx) {
    require(std::isfinite(x_min) && std::isfinite(x_max) && x_max > x_min, ErrorKind::configuration,
            "x-max must exceed x-min");
    require(std::isfinite(dx) && dx > 0.0, ErrorKind::configuration, "dx must be positive");
    SpaceGrid g{x_min, dx, static_cast<std::size_t>(std::llround((x_max - x_min) / dx))};
    g.validate();
    return g;
}

int run_simulate_ou(const SimulateOu& cmd, std::ostream& out) {
    const TimeGrid grid{cmd.t0, cmd.dt, cmd.steps};
    const auto paths = simulate_ou_ensemble(cmd.params, grid, cmd.seed, cmd.trials);
    write_csv_file(cmd.out, cmd.config(), [&](std::ostream& os) { io::write_trajectories(os, paths); });
    out << json{{"config", cmd.config()}, {"seed", cmd.seed}, {"trials", paths.size()}}.dump() << '\n';
    return 0;
}

int run_simulate_kac(const SimulateKac& cmd, std::ostream& out) {
    const TimeGrid grid{cmd.t0, cmd.dt, cmd.steps};
    const auto paths = simulate_kac_ensemble(cmd.params, grid, cmd.seed, cmd.trials, cmd.alternate);
    write_csv_file(cmd.out, cmd.config(), [&](std::ostream& os) { io::write_kac_trajectories(os, paths); });
    out << json{{"config", cmd.config()}, {"seed", cmd.seed}, {"trials", paths.size()}}.dump() << '\n';
    return 0;
}

int run_binarize(const Binarize& cmd, std::ostream& out) {
    std::vector<BinarySeries> series;
    std::vector<std::string> rejected;
    if (cmd.mode == "threshold") {
        const ThresholdSpec spec{cmd.v_th};
        if (has_kac_header(cmd.in)) {
            const auto set = io::ingest_kac_csv(cmd.in);
            for (std::size_t i = 0; i < set.trajectories.size(); ++i)
                series.push_back(kac_position_threshold(set.trajectories[i], spec, set.trial_ids[i]));
            rejected = set.rejected;
        } else {
            const auto set = io::ingest_csv(cmd.in);
            for (std::size_t i = 0; i < set.trajectories.size(); ++i)
                series.push_back(binarize_threshold(set.trajectories[i], spec, set.trial_ids[i]));
            rejected = set.rejected;
        }
    } else if (cmd.mode == "state") {
        const auto set = io::ingest_kac_csv(cmd.in);
        for (std::size_t i = 0; i < set.trajectories.size(); ++i)
            series.push_back(kac_internal_state(set.trajectories[i], set.trial_ids[i]));
        rejected = set.rejected;
    } else {
        // Spike lists: rows "trial,t", one per spike, sorted within a trial.
        require(cmd.bin_width > 0.0, ErrorKind::configuration, "--bin-width is required for spikes mode");
        const double dt = cmd.dt > 0.0 ? cmd.dt : cmd.bin_width;
        require(cmd.t_end > cmd.t0, ErrorKind::configuration, "--t-end must exceed --t0 for spikes mode");
        const TimeGrid grid{cmd.t0, dt, whole_steps(cmd.t_end - cmd.t0, dt)};
        std::ifstream in(cmd.in);
        require(in.good(), ErrorKind::io_error, "cannot open '" + cmd.in + "'");
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty() || line.front() != '#') break;
        }
        if (!line.empty() && line.back() == '\r') line.pop_back();
        require(line == "trial,t", ErrorKind::parse_error,
                "line " + std::to_string(line_no) + ": expected header 'trial,t'");
        std::vector<std::int64_t> order;
        std::map<std::int64_t, std::vector<double>> spikes;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            std::istringstream row(line);
            std::string id, t;
            std::getline(row, id, ',');
            std::getline(row, t);
            try {
                std::size_t used = 0;
                const std::int64_t trial = std::stoll(id, &used);
                require(used == id.size(), ErrorKind::parse_error, "");
                const double time = std::stod(t, &used);
                require(used == t.size(), ErrorKind::parse_error, "");
                if (!spikes.count(trial)) order.push_back(trial);
                spikes[trial].push_back(time);
            } catch (const std::exception&) {
                fail(ErrorKind::parse_error, "line " + std::to_string(line_no) + ": malformed spike row '" + line + "'");
            }
        }
        for (std::int64_t trial : order)
            series.push_back(binarize_spikes(spikes[trial], grid, {cmd.bin_width}, trial));
    }
    write_csv_file(cmd.out, cmd.config(), [&](std::ostream& os) { io::write_binary_series(os, series); });
    out << json{{"config", cmd.config()}, {"series", series.size()}, {"rejected", rejected}}.dump() << '\n';
    return 0;
}

int run_lg(const Lg& cmd, std::ostream& out) {
    const auto series = io::ingest_binary_csv(cmd.in);
    const LGResult result = lg_from_trials(series, cmd.t1, cmd.t2, cmd.t3);
    json doc = io::to_json(result);
    doc["config"] = cmd.config();
    io::write_text_file(cmd.out, doc.dump(2) + "\n");
    out << doc.dump() << '\n';
    return 0;
}

int run_scan(const Scan& cmd, std::ostream& out) {
    const auto all = io::ingest_binary_csv(cmd.in);
    require(!all.empty(), ErrorKind::insufficient_data, "input has no series");
    const BinarySeries* series = &all.front();
    if (cmd.trial >= 0) {
        const auto it = std::find_if(all.begin(), all.end(), [&](const BinarySeries& s) { return s.trial_id == cmd.trial; });
        require(it != all.end(), ErrorKind::invalid_input, "trial " + std::to_string(cmd.trial) + " not in input");
        series = &*it;
    }
    const double dt = series->grid.dt;
    require(cmd.tau_min >= 0.0 && cmd.tau_max >= cmd.tau_min && cmd.tau_steps >= 1, ErrorKind::configuration,
            "tau range must satisfy 0 <= tau-min <= tau-max with tau-steps >= 1");
    std::vector<std::size_t> lags;
    for (std::size_t i = 0; i < cmd.tau_steps; ++i) {
        const double tau = cmd.tau_steps == 1 ? cmd.tau_min
                                              : cmd.tau_min + (cmd.tau_max - cmd.tau_min) * static_cast<double>(i) /
                                                                  static_cast<double>(cmd.tau_steps - 1);
        const auto lag = static_cast<std::size_t>(std::llround(tau / dt));
        if (lags.empty() || lags.back() != lag) lags.push_back(lag);
    }
    const auto burn_in = static_cast<std::size_t>(std::llround(cmd.burn_in / dt));
    const std::optional<double> rate = cmd.rate > 0.0 ? std::optional<double>(cmd.rate) : std::nullopt;
    const auto points = lg_scan_stationary(*series, lags, burn_in, rate);

    json warnings = json::array();
    if (!cmd.burn_in_given) warnings.push_back("no --burn-in given; using 0 (series assumed stationary from the start)");
    if (!rate) warnings.push_back("no --decorrelation-rate given; std_err treats lagged pairs as independent (optimistic)");
    const json config = cmd.config();
    write_csv_file(cmd.out, config, [&](std::ostream& os) {
        for (const auto& w : warnings) os << "# warning: " << w.get<std::string>() << '\n';
        io::write_scan(os, points);
    });
    if (!cmd.svg.empty()) {
        io::Curve curve{"K(tau)", {}, {}};
        for (const auto& p : points) {
            curve.x.push_back(p.tau);
            curve.y.push_back(p.k);
        }
        io::emit_svg_plot(std::span(&curve, 1), {"Stationary K(tau)", "tau", "K", 1.0, config.dump()}, cmd.svg);
    }
    double k_max = -3.0;
    for (const auto& p : points) k_max = std::max(k_max, p.k);
    out << json{{"config", config}, {"warnings", warnings}, {"points", points.size()}, {"k_max", k_max}}.dump() << '\n';
    return 0;
}

int run_theory(const Theory& cmd, std::ostream& out) {
    require(cmd.model == "exponential" || cmd.model == "oscillatory", ErrorKind::configuration,
            "model must be exponential or oscillatory");
    const bool exponential = cmd.model == "exponential";
    if (exponential)
        require(cmd.gamma > 0.0, ErrorKind::invalid_parameter, "exponential model needs gamma > 0");
    const OscillatoryModel model{exponential ? 0.0 : cmd.omega, cmd.gamma};
    const ViolationReport report = violation_region(model, {cmd.tau_min, cmd.tau_max}, std::max<std::size_t>(cmd.tau_steps, 100));
    const auto k_of = [&](double tau) { return exponential ? k_exponential(cmd.gamma, tau) : k_damped_oscillatory(model, tau); };

    // Uniform samples plus the refined maximiser and crossing points.
    std::vector<double> taus;
    for (std::size_t i = 0; i < cmd.tau_steps; ++i)
        taus.push_back(i + 1 == cmd.tau_steps ? cmd.tau_max
                                              : cmd.tau_min + (cmd.tau_max - cmd.tau_min) * static_cast<double>(i) /
                                                                  static_cast<double>(cmd.tau_steps - 1));
    taus.push_back(report.tau_star);
    for (const auto& [lo, hi] : report.violating_intervals) {
        taus.push_back(lo);
        taus.push_back(hi);
    }
    std::sort(taus.begin(), taus.end());
    taus.erase(std::unique(taus.begin(), taus.end()), taus.end());

    io::Curve curve{cmd.model, {}, {}};
    for (double tau : taus) {
        curve.x.push_back(tau);
        curve.y.push_back(k_of(tau));
    }
    const json config = cmd.config();
    write_csv_file(cmd.out, config, [&](std::ostream& os) {
        os << "tau,k\n";
        for (std::size_t i = 0; i < curve.x.size(); ++i)
            os << io::format_double(curve.x[i]) << ',' << io::format_double(curve.y[i]) << '\n';
    });
    if (!cmd.svg.empty())
        io::emit_svg_plot(std::span(&curve, 1), {"Closed-form K(tau)", "tau", "K", 1.0, config.dump()}, cmd.svg);
    json summary = io::to_json(report);
    summary["config"] = config;
    if (!cmd.summary.empty()) io::write_text_file(cmd.summary, summary.dump(2) + "\n");
    out << summary.dump() << '\n';
    return 0;
}

int run_pde(const Pde& cmd, std::ostream& out) {
    const SpaceGrid grid = grid_from_range(cmd.x_min, cmd.x_max, cmd.dx);
    const std::size_t steps = whole_steps(cmd.t_final, cmd.params.dt);
    const std::size_t every = std::max<std::size_t>(1, steps / std::max<std::size_t>(cmd.snapshots, 1));
    const json config = cmd.config();

    std::ostringstream moments;
    io::write_config_comment(moments, config);
    moments << "t,mass,mean,variance\n";
    json snapshots = json::array();
    const double mass0 = Field1D::delta(grid, cmd.x_start).mass();
    double worst_drift = 0.0, min_density = 0.0;
    const Field1D end = evolve_telegraph(Field1D::delta(grid, cmd.x_start), cmd.params, cmd.t_final,
                                         [&](std::size_t n, const Field1D& f) {
        const Moments m = telegraph_moments(f);
        const double t = static_cast<double>(n) * cmd.params.dt;
        moments << io::format_double(t) << ',' << io::format_double(m.mass) << ',' << io::format_double(m.mean)
                << ',' << io::format_double(m.variance) << '\n';
        worst_drift = std::max(worst_drift, std::abs(m.mass - mass0));
        for (std::size_t j = 0; j < f.p_plus.size(); ++j)
            min_density = std::min({min_density, f.p_plus[j], f.p_minus[j]});
        if (n % every == 0 || n == steps) {
            const std::string path = cmd.prefix + "_snapshot_" + std::to_string(n) + ".csv";
            write_csv_file(path, config, [&](std::ostream& os) { io::write_field(os, f); });
            snapshots.push_back({{"t", t}, {"path", path}});
        }
    });
    io::write_text_file(cmd.prefix + "_moments.csv", moments.str());
    json summary{{"config", config},
                 {"final_moments", io::to_json(telegraph_moments(end))},
                 {"max_mass_drift", worst_drift},
                 {"min_density", min_density},
                 {"snapshots", snapshots}};
    io::write_text_file(cmd.prefix + "_summary.json", summary.dump(2) + "\n");
    out << summary.dump() << '\n';
    return 0;
}

int run_dirac(const Dirac& cmd, std::ostream& out) {
    const SpaceGrid grid = grid_from_range(cmd.x_min, cmd.x_max, cmd.dx);
    const json config = cmd.config();
    const SpinorField u0 = default_test_spinor(grid);
    const SpinorField u1 = evolve_dirac(u0, cmd.params, cmd.t_final);
    write_csv_file(cmd.prefix + "_spinor_initial.csv", config, [&](std::ostream& os) { io::write_spinor(os, u0); });
    write_csv_file(cmd.prefix + "_spinor_final.csv", config, [&](std::ostream& os) { io::write_spinor(os, u1); });

    const complex overlap = envelope_correlation(cmd.params, cmd.t_final);
    json summary{{"config", config},
                 {"norm_initial", u0.norm_squared()},
                 {"norm_final", u1.norm_squared()},
                 {"uniform_overlap", {{"re", overlap.real()}, {"im", overlap.imag()}, {"abs", std::abs(overlap)}}}};
    if (cmd.continuation) {
        json runs = json::array();
        double previous = 0.0;
        for (int level = 0; level < 3; ++level) {
            const double dt = cmd.params.dt / std::pow(2.0, level);
            const double deviation = continuation_check(cmd.params.c_speed, cmd.params.m_tilde, grid, dt, cmd.t_final);
            json run{{"dt", dt}, {"max_deviation", deviation}};
            if (level > 0) run["observed_order"] = std::log2(previous / deviation);
            runs.push_back(run);
            previous = deviation;
        }
        summary["continuation_check"] = {
            {"runs", runs},
            {"degenerate_deviation", degenerate_transport_deviation(cmd.params.c_speed, grid, cmd.params.dt, cmd.t_final)}};
    }
    io::write_text_file(cmd.prefix + "_summary.json", summary.dump(2) + "\n");
    out << summary.dump() << '\n';
    return 0;
}

int run_validate(const Validate& cmd, std::ostream& out) {
    json report = run_validation(cmd.seed, cmd.quick);
    report["config"] = {{"command", "validate"}, {"seed", cmd.seed}, {"quick", cmd.quick}};
    const std::string text = report.dump(2) + "\n";
    if (!cmd.out.empty()) io::write_text_file(cmd.out, text);
    out << text;
    return report["passed"].get<bool>() ? 0 : 1;
}

} // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out) {
    CLI::App app{"Leggett-Garg statistics for diffusive and persistent stochastic dynamics", "lgkac"};
    app.require_subcommand(1);

    SimulateOu sim_ou;
    SimulateKac sim_kac;
    Binarize bin;
    Lg lg;
    Scan scan;
    Theory theory;
    Pde pde;
    Dirac dirac;
    Validate validate;

    auto* simulate = app.add_subcommand("simulate", "Simulate trajectory ensembles");
    simulate->require_subcommand(1);
    auto* ou = simulate->add_subcommand("ou", "Ornstein-Uhlenbeck membrane potential");
    ou->add_option("--gamma", sim_ou.params.gamma)->required();
    ou->add_option("--sigma", sim_ou.params.sigma)->required();
    ou->add_option("--v-rest", sim_ou.params.v_rest);
    ou->add_option("--v-init", sim_ou.params.v_init);
    ou->add_option("--dt", sim_ou.dt)->required();
    ou->add_option("--t0", sim_ou.t0);
    ou->add_option("--steps", sim_ou.steps)->required();
    ou->add_option("--trials", sim_ou.trials);
    ou->add_option("--seed", sim_ou.seed);
    ou->add_option("--out", sim_ou.out)->required();

    auto* kac = simulate->add_subcommand("kac", "Kac persistent random walk");
    kac->add_option("--mu", sim_kac.params.mu);
    kac->add_option("--v", sim_kac.params.v)->required();
    kac->add_option("--lambda", sim_kac.params.lambda)->required();
    kac->add_option("--x-init", sim_kac.params.x_init);
    kac->add_option("--s-init", sim_kac.params.s_init);
    kac->add_flag("--alternate-state", sim_kac.alternate, "Odd trials start in the opposite state");
    kac->add_option("--dt", sim_kac.dt)->required();
    kac->add_option("--t0", sim_kac.t0);
    kac->add_option("--steps", sim_kac.steps)->required();
    kac->add_option("--trials", sim_kac.trials);
    kac->add_option("--seed", sim_kac.seed);
    kac->add_option("--out", sim_kac.out)->required();

    auto* binarize = app.add_subcommand("binarize", "Convert trajectories or spikes to a +1/-1 observable");
    binarize->add_option("--mode", bin.mode)->required()->check(CLI::IsMember({"threshold", "spikes", "state"}));
    binarize->add_option("--v-th", bin.v_th);
    binarize->add_option("--bin-width", bin.bin_width);
    binarize->add_option("--t0", bin.t0);
    binarize->add_option("--t-end", bin.t_end);
    binarize->add_option("--dt", bin.dt);
    binarize->add_option("--in", bin.in)->required();
    binarize->add_option("--out", bin.out)->required();

    auto* lg_cmd = app.add_subcommand("lg", "K = C12 + C23 - C13 from trials");
    lg_cmd->add_option("--in", lg.in)->required();
    lg_cmd->add_option("--t1", lg.t1)->required();
    lg_cmd->add_option("--t2", lg.t2)->required();
    lg_cmd->add_option("--t3", lg.t3)->required();
    lg_cmd->add_option("--out", lg.out)->required();

    auto* scan_cmd = app.add_subcommand("scan", "Stationary K(tau) scan of one long series");
    scan_cmd->add_option("--in", scan.in)->required();
    scan_cmd->add_option("--tau-min", scan.tau_min)->required();
    scan_cmd->add_option("--tau-max", scan.tau_max)->required();
    scan_cmd->add_option("--tau-steps", scan.tau_steps)->required();
    auto* burn = scan_cmd->add_option("--burn-in", scan.burn_in);
    scan_cmd->add_option("--decorrelation-rate", scan.rate);
    scan_cmd->add_option("--trial", scan.trial);
    scan_cmd->add_option("--out", scan.out)->required();
    scan_cmd->add_option("--svg", scan.svg);

    auto* theory_cmd = app.add_subcommand("theory", "Closed-form K(tau) curves");
    theory_cmd->add_option("--model", theory.model)->required()->check(CLI::IsMember({"exponential", "oscillatory"}));
    theory_cmd->add_option("--omega", theory.omega);
    theory_cmd->add_option("--gamma", theory.gamma);
    theory_cmd->add_option("--tau-min", theory.tau_min)->required();
    theory_cmd->add_option("--tau-max", theory.tau_max)->required();
    theory_cmd->add_option("--tau-steps", theory.tau_steps)->check(CLI::Range(std::size_t{2}, std::size_t{10000000}));
    theory_cmd->add_option("--out", theory.out)->required();
    theory_cmd->add_option("--svg", theory.svg);
    theory_cmd->add_option("--summary", theory.summary);

    auto* pde_cmd = app.add_subcommand("pde", "Evolve the telegraph balance equations from a delta");
    pde_cmd->add_option("--v", pde.params.v)->required();
    pde_cmd->add_option("--lambda", pde.params.lambda)->required();
    pde_cmd->add_option("--mu", pde.params.mu);
    pde_cmd->add_option("--dx", pde.dx)->required();
    pde_cmd->add_option("--dt", pde.params.dt)->required();
    pde_cmd->add_option("--x-min", pde.x_min)->required();
    pde_cmd->add_option("--x-max", pde.x_max)->required();
    pde_cmd->add_option("--t-final", pde.t_final)->required();
    pde_cmd->add_option("--x-start", pde.x_start);
    pde_cmd->add_option("--snapshots", pde.snapshots);
    pde_cmd->add_option("--out-prefix", pde.prefix)->required();

    auto* dirac_cmd = app.add_subcommand("dirac", "Evolve the chiral Dirac form and check the continuation");
    dirac_cmd->add_option("--c", dirac.params.c_speed)->required();
    dirac_cmd->add_option("--m-tilde", dirac.params.m_tilde)->required();
    dirac_cmd->add_option("--dx", dirac.dx)->required();
    dirac_cmd->add_option("--dt", dirac.params.dt)->required();
    dirac_cmd->add_option("--x-min", dirac.x_min)->required();
    dirac_cmd->add_option("--x-max", dirac.x_max)->required();
    dirac_cmd->add_option("--t-final", dirac.t_final)->required();
    dirac_cmd->add_flag("--continuation-check", dirac.continuation);
    dirac_cmd->add_option("--out-prefix", dirac.prefix)->required();

    auto* validate_cmd = app.add_subcommand("validate", "Run the Monte Carlo and oracle checks");
    validate_cmd->add_flag("--quick", validate.quick);
    validate_cmd->add_option("--seed", validate.seed);
    validate_cmd->add_option("--out", validate.out);

    try {
        std::vector<std::string> args = expand_config(raw_args);
        std::reverse(args.begin(), args.end());
        app.parse(args);
        scan.burn_in_given = burn->count() > 0;

        if (ou->parsed()) return run_simulate_ou(sim_ou, out);
        if (kac->parsed()) return run_simulate_kac(sim_kac, out);
        if (binarize->parsed()) return run_binarize(bin, out);
        if (lg_cmd->parsed()) return run_lg(lg, out);
        if (scan_cmd->parsed()) return run_scan(scan, out);
        if (theory_cmd->parsed()) return run_theory(theory, out);
        if (pde_cmd->parsed()) return run_pde(pde, out);
        if (dirac_cmd->parsed()) return run_dirac(dirac, out);
        if (validate_cmd->parsed()) return run_validate(validate, out);
        return 2;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        write_error(out, "usage", e.what());
        return 2;
    } catch (const Error& e) {
        write_error(out, to_string(e.kind()), e.what());
        return 2;
    } catch (const std::exception& e) {
        write_error(out, "internal", e.what());
        return 2;
    }
}

} // namespace lgkac
