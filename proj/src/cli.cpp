#include "nimfa/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "nimfa/bounds.hpp"
#include "nimfa/dynamics.hpp"
#include "nimfa/error.hpp"
#include "nimfa/experiments.hpp"
#include "nimfa/io.hpp"
#include "nimfa/model.hpp"
#include "nimfa/monotonicity.hpp"
#include "nimfa/rng.hpp"
#include "nimfa/steady_state.hpp"

namespace nimfa {

namespace {

namespace fs = std::filesystem;

struct Common {
    std::string model;
    std::string out;
    std::uint64_t seed = 1;
    std::size_t horizon = 2000;
    double tol = 1e-12;
};

struct InitOptions {
    std::string v1_path;
    std::string init = "random";
    double scale = 0.01;
};

void add_common(CLI::App* sub, Common& c, bool model_required) {
    auto* opt = sub->add_option("--model", c.model, "model JSON file");
    if (model_required) opt->required();
    sub->add_option("--out", c.out, "output directory");
    sub->add_option("--seed", c.seed, "RNG seed");
    sub->add_option("--horizon", c.horizon, "number of time steps K")->check(CLI::Range(2ul, 100000000ul));
    sub->add_option("--tol", c.tol, "steady-state tolerance")->check(CLI::PositiveNumber);
}

void add_init(CLI::App* sub, InitOptions& o) {
    auto* v1 = sub->add_option("--v1", o.v1_path, "initial state JSON array");
    sub->add_option("--init", o.init, "generated initial state")
        ->check(CLI::IsMember({"random", "zero", "eigvec", "near-ss"}))
        ->excludes(v1);
    sub->add_option("--init-scale", o.scale, "fraction of v_inf for the generated initial state")
        ->check(CLI::Range(0.0, 1.0));
}

std::optional<SteadyState> try_steady_state(const NetworkModel& m, double tol) {
    if (classify_regime(m).regime == Regime::die_out) return std::nullopt;
    SteadyStateOptions opts;
    opts.tol = tol;
    return solve_steady_state(m, opts);
}

// In the die-out regime the random initial state is drawn on [0, scale].
Vector resolve_v1(const NetworkModel& m, const std::optional<SteadyState>& ss, const InitOptions& o,
                  std::uint64_t seed) {
    if (!o.v1_path.empty()) {
        Vector v1 = io::load_vector(o.v1_path);
        if (static_cast<std::size_t>(v1.size()) != m.n())
            throw InvalidParameter("--v1 has " + std::to_string(v1.size()) + " entries, model has " +
                                   std::to_string(m.n()) + " nodes");
        return v1;
    }
    const InitKind kind = init_kind_from_string(o.init);
    if (kind == InitKind::zero) return Vector::Zero(static_cast<Eigen::Index>(m.n()));
    if (kind == InitKind::random) {
        Rng rng(seed, 0);
        Vector v1(static_cast<Eigen::Index>(m.n()));
        for (Eigen::Index i = 0; i < v1.size(); ++i)
            v1[i] = rng.uniform(0.0, o.scale * (ss ? ss->v_inf[i] : 1.0));
        return v1;
    }
    if (!ss) throw PreconditionError("--init " + o.init + " needs an endemic model (rho(R) > 1)");
    if (kind == InitKind::eigvec) return increasing_eigvec_init(m, ss->v_inf, o.scale * ss->v_inf.minCoeff());
    return make_near_ss_init(ss->v_inf, 1.0 - o.scale);
}

// Console summaries use 15 significant digits; files keep full precision.
std::string num(double x) {
    std::ostringstream os;
    os << std::setprecision(15) << x;
    return os.str();
}

std::string vec_str(const Vector& v) {
    std::string s = "[";
    for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? "," : "") + num(v[i]);
    return s + "]";
}

void prepare_out(const Common& c) {
    if (!c.out.empty()) fs::create_directories(c.out);
}

int run_validate(const Common& c, const InitOptions& io_opts, bool has_v1, std::ostream& out) {
    const NetworkModel m = io::load_model(c.model);
    std::optional<Vector> v1;
    std::optional<Vector> v_inf;
    if (has_v1) {
        std::optional<SteadyState> ss;
        try {
            ss = try_steady_state(m, c.tol);
        } catch (const PreconditionError&) {
        }
        if (ss) {
            v1 = resolve_v1(m, ss, io_opts, c.seed);
            v_inf = ss->v_inf;
        }
    }
    const AssumptionReport r = validate(m, v1, v_inf);
    auto line = [&](const char* name, const char* what, bool ok) {
        out << name << " " << what << ": " << (ok ? "ok" : "FAIL") << "\n";
    };
    line("A1", "rates (q > 0, w >= 0)", r.a1_rates);
    line("A2", "sampling (q_i + sum_j w_ij <= 1)", r.a2_sampling);
    for (const std::size_t i : r.a2_violations) out << "  A2 violated at node " << i + 1 << "\n";
    if (r.a3_initial) line("A3", "initial state (0 <= v1 <= v_inf)", *r.a3_initial);
    line("A4", "irreducible W", r.a4_irreducible);
    line("A5", "above threshold (rho(R) > 1)", r.a5_above_threshold);
    out << "rho_R=" << num(r.rho_r) << "\n";
    if (r.t_max_global) out << "t_max=" << num(*r.t_max_global) << "\n";
    if (!c.out.empty()) {
        prepare_out(c);
        io::json j{{"a1_rates", r.a1_rates},   {"a2_sampling", r.a2_sampling},
                   {"a2_violations", r.a2_violations}, {"a4_irreducible", r.a4_irreducible},
                   {"a5_above_threshold", r.a5_above_threshold}, {"rho_R", r.rho_r},
                   {"all_hold", r.all_hold()}};
        if (r.a3_initial) j["a3_initial"] = *r.a3_initial;
        io::write_json(fs::path(c.out) / "validation.json", j);
    }
    return r.all_hold() ? 0 : 1;
}

int run_steady_state(const Common& c, std::ostream& out) {
    const NetworkModel m = io::load_model(c.model);
    const RegimeInfo regime = classify_regime(m);
    out << "regime=" << to_string(regime.regime) << "\n";
    out << "rho_R=" << num(regime.rho_r) << "\n";
    if (regime.regime == Regime::die_out) {
        out << "v_inf=" << vec_str(Vector::Zero(static_cast<Eigen::Index>(m.n()))) << "\n";
        return 0;
    }
    SteadyStateOptions opts;
    opts.tol = c.tol;
    const SteadyState ss = solve_steady_state(m, opts);
    const StabilityCertificate cert = stability_certificate(m, ss);
    out << "v_inf=" << vec_str(ss.v_inf) << "\n";
    out << "residual=" << num(ss.residual) << "\n";
    out << "rho_F=" << num(cert.rho_f) << "\n";
    out << "iterations=" << ss.iterations << "\n";
    if (!c.out.empty()) {
        prepare_out(c);
        io::write_json(fs::path(c.out) / "steady_state.json",
                       io::steady_state_to_json(ss, regime.rho_r, cert.rho_f));
    }
    return 0;
}

int run_simulate(const Common& c, const InitOptions& o, std::size_t stride,
                 std::optional<double> stop_tol, std::ostream& out) {
    const NetworkModel m = io::load_model(c.model);
    const std::optional<SteadyState> ss = try_steady_state(m, c.tol);
    const Vector v1 = resolve_v1(m, ss, o, c.seed);
    SimulateOptions opts;
    opts.stride = stride;
    opts.stop_tol = stop_tol;
    const Trajectory traj = simulate(m, v1, c.horizon, opts);
    if (c.out.empty()) {
        io::write_trajectory_csv(out, traj);
        return 0;
    }
    prepare_out(c);
    std::ofstream csv(fs::path(c.out) / "trajectory.csv");
    if (!csv) throw InvalidParameter("cannot write trajectory.csv in " + c.out);
    io::write_trajectory_csv(csv, traj);
    out << "stored_states=" << traj.size() << "\n";
    out << "k_last=" << traj.k_last() << "\n";
    if (traj.stopped_at) out << "stopped_at=" << *traj.stopped_at << "\n";
    if (ss) {
        out << "final_distance="
            << num((traj.states.back() - ss->v_inf).lpNorm<Eigen::Infinity>()) << "\n";
    }
    return 0;
}

int run_monotonicity(const Common& c, const InitOptions& o, std::ostream& out) {
    const NetworkModel m = io::load_model(c.model);
    SteadyStateOptions opts;
    opts.tol = c.tol;
    const SteadyState ss = solve_steady_state(m, opts);
    const Vector v1 = resolve_v1(m, ss, o, c.seed);
    const Trajectory traj = simulate(m, v1, c.horizon);
    const io::json j = io::monotonicity_to_json(analyze(traj), check_condition_1(m, v1),
                                                check_condition_2(m, ss.v_inf, v1));
    if (!c.out.empty()) {
        prepare_out(c);
        io::write_json(fs::path(c.out) / "monotonicity.json", j);
    }
    out << "s_minus_size=" << j["s_minus"].size() << "\n";
    out << "s_minus_rounding_size=" << j["s_minus_rounding"].size() << "\n";
    out << "stringency=" << num(j["stringency"].get<double>()) << "\n";
    out << "onset=" << j["onset"].dump() << "\n";
    out << "condition1=" << j["condition1"].dump() << "\n";
    out << "condition2=" << j["condition2"].dump() << "\n";
    return 0;
}

int run_bounds(const Common& c, const InitOptions& o, std::vector<std::size_t> k0_list,
               bool all_nodes, std::ostream& out) {
    const NetworkModel m = io::load_model(c.model);
    SteadyStateOptions opts;
    opts.tol = c.tol;
    const SteadyState ss = solve_steady_state(m, opts);
    const Vector v1 = resolve_v1(m, ss, o, c.seed);
    const Trajectory traj = simulate(m, v1, c.horizon);
    if (k0_list.empty()) k0_list.push_back(1);

    std::vector<std::size_t> nodes;
    if (all_nodes) {
        for (std::size_t i = 0; i < m.n(); ++i) nodes.push_back(i);
    } else {
        Eigen::Index imax = 0;
        Eigen::Index imin = 0;
        ss.v_inf.maxCoeff(&imax);
        ss.v_inf.minCoeff(&imin);
        nodes = {static_cast<std::size_t>(imax), static_cast<std::size_t>(imin)};
    }
    if (!c.out.empty()) prepare_out(c);

    io::json stats = io::json::array();
    for (const std::size_t k0 : k0_list) {
        if (k0 < 1 || k0 > c.horizon)
            throw InvalidParameter("--k0 " + std::to_string(k0) + " outside [1, horizon]");
        const BoundsBundle b = compute_bounds(m, ss.v_inf, traj, k0, c.horizon);
        const GapStatistics g = gap_statistics(b, traj);
        out << "k0=" << k0 << " max_upper_gap=" << num(g.max_upper_gap)
            << " max_lower_gap=" << num(g.max_lower_gap)
            << " max_violation=" << num(g.max_violation)
            << " v_min=" << to_string(b.v_min_source) << "\n";
        stats.push_back({{"k0", k0},
                         {"max_upper_gap", g.max_upper_gap},
                         {"max_lower_gap", g.max_lower_gap},
                         {"mean_upper_gap", g.mean_upper_gap},
                         {"mean_lower_gap", g.mean_lower_gap},
                         {"max_violation", g.max_violation},
                         {"v_min_source", to_string(b.v_min_source)},
                         {"gamma", b.gamma},
                         {"alpha", b.alpha},
                         {"ub_capped_entries", b.capped}});
        if (!c.out.empty()) {
            std::ofstream csv(fs::path(c.out) / ("bounds_k" + std::to_string(k0) + ".csv"));
            if (!csv) throw InvalidParameter("cannot write bounds CSV in " + c.out);
            io::write_bounds_csv(csv, b, traj, nodes);
        }
    }
    if (!c.out.empty()) io::write_json(fs::path(c.out) / "bounds.json", stats);
    return 0;
}

struct ExperimentArgs {
    int figure = 1;
    std::optional<std::size_t> n;
    std::optional<double> link_prob;
    std::optional<double> c0;
    std::optional<double> c_divisor;
    std::optional<double> rho_margin;
    std::optional<double> t_fraction;
    std::optional<double> v1_scale;
    std::vector<std::size_t> k0_list;
    std::optional<std::string> init;
    std::optional<std::size_t> max_graph_retries;
    std::optional<std::size_t> max_curing_rounds;
};

void add_experiment_options(CLI::App* sub, ExperimentArgs& e) {
    sub->add_option("--figure", e.figure, "figure to reproduce")->required()->check(CLI::IsMember({1, 2}));
    sub->add_option("--n", e.n, "node count")->check(CLI::PositiveNumber);
    sub->add_option("--link-prob", e.link_prob, "link probability");
    sub->add_option("--c0", e.c0, "initial curing scale");
    sub->add_option("--c-divisor", e.c_divisor, "curing scale factor");
    sub->add_option("--rho-margin", e.rho_margin, "threshold margin");
    sub->add_option("--t-fraction", e.t_fraction, "divisor of T_max");
    sub->add_option("--v1-scale", e.v1_scale, "initial state as a fraction of v_inf");
    sub->add_option("--k0", e.k0_list, "bound initialization times");
    sub->add_option("--init", e.init, "initial state kind")
        ->check(CLI::IsMember({"random", "zero", "eigvec", "near-ss"}));
    sub->add_option("--max-graph-retries", e.max_graph_retries, "graph redraw limit");
    sub->add_option("--max-curing-rounds", e.max_curing_rounds, "curing rescale limit");
}

int run_experiment(const Common& c, const ExperimentArgs& e, bool seed_set, bool horizon_set,
                   std::ostream& out) {
    ExperimentConfig cfg = e.figure == 1 ? ExperimentConfig::fig1() : ExperimentConfig::fig2();
    if (seed_set) cfg.seed = c.seed;
    if (horizon_set) cfg.horizon = c.horizon;
    if (e.n) cfg.n = *e.n;
    if (e.link_prob) cfg.link_prob = *e.link_prob;
    if (e.c0) cfg.c0 = *e.c0;
    if (e.c_divisor) cfg.c_divisor = *e.c_divisor;
    if (e.rho_margin) cfg.rho_margin = *e.rho_margin;
    if (e.t_fraction) cfg.t_fraction = *e.t_fraction;
    if (e.v1_scale) cfg.v1_scale = *e.v1_scale;
    if (!e.k0_list.empty()) cfg.k0_list = e.k0_list;
    if (e.init) cfg.init = init_kind_from_string(*e.init);
    if (e.max_graph_retries) cfg.max_graph_retries = *e.max_graph_retries;
    if (e.max_curing_rounds) cfg.max_curing_rounds = *e.max_curing_rounds;

    std::optional<fs::path> dir;
    if (!c.out.empty()) dir = fs::path(c.out);

    if (cfg.figure == Figure::fig1) {
        const Fig1Result r = run_fig1(cfg, dir);
        out << "rho_R=" << num(r.instance.rho_r) << "\n";
        out << "rho_F=" << num(r.certificate.rho_f) << "\n";
        out << "s_minus_size=" << r.monotonicity.s_minus.size() << "\n";
        out << "stringency=" << num(r.monotonicity.stringency) << "\n";
        out << "no_overshoot=" << (r.overshoot.passed() ? "pass" : "fail") << "\n";
        out << "final_distance=" << num(r.final_distance) << "\n";
        return r.overshoot.passed() ? 0 : 1;
    }
    const Fig2Result r = run_fig2(cfg, dir);
    out << "rho_R=" << num(r.instance.rho_r) << "\n";
    out << "rho_F=" << num(r.certificate.rho_f) << "\n";
    out << "final_distance=" << num(r.final_distance) << "\n";
    bool sandwich = true;
    for (const Fig2Bounds& b : r.bounds) {
        out << "k0=" << b.k0 << " max_upper_gap=" << num(b.gaps.max_upper_gap)
            << " max_lower_gap=" << num(b.gaps.max_lower_gap)
            << " max_violation=" << num(b.gaps.max_violation) << "\n";
        if (b.gaps.max_violation > 1e-12) sandwich = false;
    }
    return sandwich ? 0 : 1;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Discrete-time NIMFA epidemic model toolkit", "nimfa"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    Common common;
    InitOptions init;
    std::size_t stride = 1;
    double stop_tol = 0.0;
    std::vector<std::size_t> k0_list;
    bool all_nodes = false;
    ExperimentArgs exp;

    auto* validate_cmd = app.add_subcommand("validate", "check the standing assumptions of a model");
    add_common(validate_cmd, common, true);
    add_init(validate_cmd, init);

    auto* simulate_cmd = app.add_subcommand("simulate", "simulate the viral state");
    add_common(simulate_cmd, common, true);
    add_init(simulate_cmd, init);
    simulate_cmd->add_option("--stride", stride, "store every stride-th state")->check(CLI::PositiveNumber);
    auto* stop_opt = simulate_cmd->add_option("--stop-tol", stop_tol, "stop when the sup-norm step falls below")
                         ->check(CLI::PositiveNumber);

    auto* ss_cmd = app.add_subcommand("steady-state", "solve for the endemic steady state");
    add_common(ss_cmd, common, true);

    auto* bounds_cmd = app.add_subcommand("bounds", "upper and lower bounds on the viral state");
    add_common(bounds_cmd, common, true);
    add_init(bounds_cmd, init);
    bounds_cmd->add_option("--k0", k0_list, "bound initialization times");
    bounds_cmd->add_flag("--all-nodes", all_nodes, "write every node to the CSV");

    auto* mono_cmd = app.add_subcommand("monotonicity", "monotonicity report of a trajectory");
    add_common(mono_cmd, common, true);
    add_init(mono_cmd, init);

    auto* exp_cmd = app.add_subcommand("experiment", "run a seeded figure experiment");
    add_common(exp_cmd, common, false);
    add_experiment_options(exp_cmd, exp);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        const auto parsed = app.get_subcommands();
        err << (parsed.empty() ? app.help() : parsed.front()->help());
        return 2;
    }

    try {
        if (validate_cmd->parsed())
            return run_validate(common, init, !init.v1_path.empty() || validate_cmd->count("--init") > 0, out);
        if (simulate_cmd->parsed()) {
            std::optional<double> stop;
            if (stop_opt->count() > 0) stop = stop_tol;
            return run_simulate(common, init, stride, stop, out);
        }
        if (ss_cmd->parsed()) return run_steady_state(common, out);
        if (bounds_cmd->parsed()) return run_bounds(common, init, k0_list, all_nodes, out);
        if (mono_cmd->parsed()) return run_monotonicity(common, init, out);
        if (exp_cmd->parsed())
            return run_experiment(common, exp, exp_cmd->count("--seed") > 0,
                                  exp_cmd->count("--horizon") > 0, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace nimfa
