#include "nimfa/experiments.hpp"

#include <fstream>
#include <string>

#include "nimfa/error.hpp"
#include "nimfa/io.hpp"
#include "nimfa/spectral.hpp"

namespace nimfa {

namespace {

// Child stream ids of an instance stream.
constexpr std::uint64_t kGraphStream = 1;
constexpr std::uint64_t kCuringStream = 2;
constexpr std::uint64_t kInitStream = 3;

struct Discretized {
    NetworkModel model;
    double rho_r;
    double t_max;
    double t;
};

// Treats the drawn rates as continuous-time and applies T = T_max / t_fraction.
Discretized discretize_draw(const Matrix& w_raw, const Vector& q_raw, double t_fraction) {
    const double t_max = (q_raw + w_raw.rowwise().sum()).cwiseInverse().minCoeff();
    const double t = t_max / t_fraction;
    NetworkModel m = discretize(ContinuousParams(w_raw, q_raw, t));
    const double rho = spectral_radius_principal(build_R(m)).rho;
    return {std::move(m), rho, t_max, t};
}

Vector draw_curing(std::size_t n, double c, Rng& rng) {
    Vector q(static_cast<Eigen::Index>(n));
    for (auto& qi : q) qi = rng.uniform(0.95 * c, 1.05 * c);
    return q;
}

void check_config(const ExperimentConfig& cfg) {
    if (cfg.n == 0) throw InvalidParameter("experiment: n must be positive");
    if (!(cfg.link_prob > 0.0 && cfg.link_prob <= 1.0))
        throw InvalidParameter("experiment: link_prob must lie in (0,1]");
    if (!(cfg.c0 > 0.0)) throw InvalidParameter("experiment: c0 must be positive");
    if (!(cfg.c_divisor > 1.0)) throw InvalidParameter("experiment: c_divisor must exceed 1");
    if (!(cfg.rho_margin >= 0.0)) throw InvalidParameter("experiment: rho_margin must be >= 0");
    if (!(cfg.t_fraction >= 1.0)) throw InvalidParameter("experiment: t_fraction must be >= 1");
    if (!(cfg.v1_scale >= 0.0 && cfg.v1_scale < 1.0))
        throw InvalidParameter("experiment: v1_scale must lie in [0,1)");
    if (cfg.horizon < 2) throw InvalidParameter("experiment: horizon must be at least 2");
}

Vector draw_initial_state(const ExperimentConfig& cfg, const NetworkModel& m, const Vector& v_inf,
                          Rng& rng) {
    switch (cfg.init) {
        case InitKind::random: {
            Vector v1(v_inf.size());
            for (Eigen::Index i = 0; i < v1.size(); ++i)
                v1[i] = rng.uniform(0.0, cfg.v1_scale * v_inf[i]);
            return v1;
        }
        case InitKind::zero:
            return Vector::Zero(v_inf.size());
        case InitKind::eigvec:
            return increasing_eigvec_init(m, v_inf, cfg.v1_scale * v_inf.minCoeff());
        case InitKind::near_ss:
            return make_near_ss_init(v_inf, 1.0 - cfg.v1_scale);
    }
    throw InvalidParameter("experiment: unknown init kind");
}

io::json config_to_json(const ExperimentConfig& cfg) {
    return io::json{{"figure", cfg.figure == Figure::fig1 ? 1 : 2},
                    {"n", cfg.n},
                    {"link_prob", cfg.link_prob},
                    {"c0", cfg.c0},
                    {"c_divisor", cfg.c_divisor},
                    {"rho_margin", cfg.rho_margin},
                    {"t_fraction", cfg.t_fraction},
                    {"v1_scale", cfg.v1_scale},
                    {"seed", cfg.seed},
                    {"horizon", cfg.horizon},
                    {"k0_list", cfg.k0_list},
                    {"init", to_string(cfg.init)}};
}

io::json instance_meta(const ExperimentConfig& cfg, const Instance& inst,
                       const StabilityCertificate& cert) {
    return io::json{
        {"version", kVersion},
        {"config", config_to_json(cfg)},
        {"seed", cfg.seed},
        {"rng", "mt19937_64 seeded via SplitMix64(seed, stream); child streams graph=1, curing=2, init=3"},
        {"discretization",
         "drawn w and q are treated as continuous-time rates (beta, delta); "
         "T = T_max / t_fraction with T_max = min_i 1/(delta_i + sum_j beta_ij); q = delta T, w = beta T"},
        {"sampling_time", inst.sampling_time},
        {"t_max", inst.t_max},
        {"c_final", inst.c},
        {"graph_attempts", inst.graph_attempts},
        {"curing_rounds", inst.curing_rounds},
        {"rho_R", inst.rho_r},
        {"rho_F", cert.rho_f},
        {"rho_F_analytic_bound", cert.analytic_bound},
        {"steady_state_residual", inst.ss.residual}};
}

void write_common(const std::filesystem::path& dir, const Instance& inst, const Trajectory& traj,
                  const StabilityCertificate& cert) {
    std::filesystem::create_directories(dir);
    io::write_json(dir / "model.json", io::model_to_json(inst.model));
    io::write_json(dir / "steady_state.json",
                   io::steady_state_to_json(inst.ss, inst.rho_r, cert.rho_f));
    std::ofstream csv(dir / "trajectory.csv");
    if (!csv) throw InvalidParameter("cannot write trajectory.csv in " + dir.string());
    io::write_trajectory_csv(csv, traj);
}

}  // namespace

const char* to_string(InitKind k) noexcept {
    switch (k) {
        case InitKind::random: return "random";
        case InitKind::zero: return "zero";
        case InitKind::eigvec: return "eigvec";
        case InitKind::near_ss: return "near-ss";
    }
    return "unknown";
}

InitKind init_kind_from_string(const std::string& s) {
    if (s == "random") return InitKind::random;
    if (s == "zero") return InitKind::zero;
    if (s == "eigvec") return InitKind::eigvec;
    if (s == "near-ss") return InitKind::near_ss;
    throw InvalidParameter("unknown init kind '" + s + "'");
}

ExperimentConfig ExperimentConfig::fig1() {
    ExperimentConfig c;
    c.figure = Figure::fig1;
    c.n = 10;
    c.link_prob = 0.25;
    c.c0 = 10.0;
    c.c_divisor = 1.1;
    c.rho_margin = 1e-3;
    c.t_fraction = 10.0;
    c.v1_scale = 0.01;
    c.horizon = 2000;
    return c;
}

ExperimentConfig ExperimentConfig::fig2() {
    ExperimentConfig c;
    c.figure = Figure::fig2;
    c.n = 500;
    c.link_prob = 0.05;
    c.c0 = 10.0;
    c.c_divisor = 1.005;
    c.rho_margin = 1e-5;
    c.t_fraction = 20.0;
    c.v1_scale = 0.1;
    c.horizon = 1000;
    c.k0_list = {1, 250, 500, 750};
    return c;
}

Matrix random_infection_rates(std::size_t n, double link_prob, std::size_t max_retries, Rng& rng,
                              std::size_t* attempts) {
    const auto dim = static_cast<Eigen::Index>(n);
    for (std::size_t attempt = 1; attempt <= max_retries; ++attempt) {
        Matrix w = Matrix::Zero(dim, dim);
        for (Eigen::Index i = 0; i < dim; ++i) {
            for (Eigen::Index j = 0; j < dim; ++j) {
                if (i == j) continue;
                if (rng.bernoulli(link_prob)) w(i, j) = rng.uniform01();
            }
        }
        if (strongly_connected(w)) {
            if (attempts) *attempts = attempt;
            return w;
        }
    }
    throw GenerationError("no strongly connected graph after " + std::to_string(max_retries) +
                          " draws (n=" + std::to_string(n) + ", p=" + std::to_string(link_prob) + ")");
}

Instance generate_instance(const ExperimentConfig& cfg, std::uint64_t stream) {
    check_config(cfg);
    Rng root(cfg.seed, stream);
    Rng graph_rng = root.split(kGraphStream);
    Rng curing_rng = root.split(kCuringStream);
    Rng init_rng = root.split(kInitStream);

    std::size_t attempts = 0;
    const Matrix w_raw =
        random_infection_rates(cfg.n, cfg.link_prob, cfg.max_graph_retries, graph_rng, &attempts);

    double c = cfg.c0;
    for (std::size_t round = 1; round <= cfg.max_curing_rounds; ++round) {
        Discretized d = discretize_draw(w_raw, draw_curing(cfg.n, c, curing_rng), cfg.t_fraction);
        if (d.rho_r > 1.0 + cfg.rho_margin) {
            Instance inst{std::move(d.model)};
            inst.rho_r = d.rho_r;
            inst.sampling_time = d.t;
            inst.t_max = d.t_max;
            inst.c = c;
            inst.graph_attempts = attempts;
            inst.curing_rounds = round;
            inst.ss = solve_steady_state(inst.model);
            inst.v1 = draw_initial_state(cfg, inst.model, inst.ss.v_inf, init_rng);
            return inst;
        }
        c /= cfg.c_divisor;
    }
    throw GenerationError("rho(R) did not exceed 1 + rho_margin within the curing-round budget");
}

NetworkModel generate_die_out_model(const ExperimentConfig& cfg, std::uint64_t stream) {
    check_config(cfg);
    Rng root(cfg.seed, stream);
    Rng graph_rng = root.split(kGraphStream);
    Rng curing_rng = root.split(kCuringStream);

    const Matrix w_raw = random_infection_rates(cfg.n, cfg.link_prob, cfg.max_graph_retries, graph_rng);
    double c = cfg.c0;
    for (std::size_t round = 1; round <= cfg.max_curing_rounds; ++round) {
        Discretized d = discretize_draw(w_raw, draw_curing(cfg.n, c, curing_rng), cfg.t_fraction);
        if (d.rho_r <= 1.0 - cfg.rho_margin) return std::move(d.model);
        c *= cfg.c_divisor;
    }
    throw GenerationError("rho(R) did not drop below 1 - rho_margin within the curing-round budget");
}

Vector increasing_eigvec_init(const NetworkModel& m, const Vector& v_inf, double eps0,
                              std::size_t max_halvings) {
    const Vector x1 = spectral_radius_principal(build_R(m)).x1;
    double eps = eps0;
    for (std::size_t h = 0; h <= max_halvings; ++h, eps *= 0.5) {
        const Vector v1 = eps * x1;
        if ((v1.array() > v_inf.array()).any()) continue;
        if (check_condition_1(m, v1).holds) return v1;
    }
    throw DomainError("increasing_eigvec_init: no eps found for which eps * x1 is increasing");
}

Fig1Result run_fig1(const ExperimentConfig& cfg,
                    const std::optional<std::filesystem::path>& out_dir) {
    Fig1Result r{generate_instance(cfg)};
    const Instance& inst = r.instance;
    r.trajectory = simulate(inst.model, inst.v1, cfg.horizon);
    r.monotonicity = analyze(r.trajectory);
    r.condition1 = check_condition_1(inst.model, inst.v1);
    r.condition2 = check_condition_2(inst.model, inst.ss.v_inf, inst.v1);
    r.overshoot = check_no_overshoot(r.trajectory, inst.ss.v_inf, 1e-12);
    r.certificate = stability_certificate(inst.model, inst.ss);
    r.final_distance = (r.trajectory.states.back() - inst.ss.v_inf).lpNorm<Eigen::Infinity>();

    if (out_dir) {
        write_common(*out_dir, inst, r.trajectory, r.certificate);
        io::write_json(*out_dir / "monotonicity.json",
                       io::monotonicity_to_json(r.monotonicity, r.condition1, r.condition2));
        io::json meta = instance_meta(cfg, inst, r.certificate);
        meta["no_overshoot"] = {{"passed", r.overshoot.passed()},
                                {"violations", r.overshoot.violations.size()},
                                {"max_excess", r.overshoot.max_excess}};
        meta["final_distance"] = r.final_distance;
        io::write_json(*out_dir / "meta.json", meta);
    }
    return r;
}

Fig2Result run_fig2(const ExperimentConfig& cfg,
                    const std::optional<std::filesystem::path>& out_dir) {
    Fig2Result r{generate_instance(cfg)};
    const Instance& inst = r.instance;
    r.trajectory = simulate(inst.model, inst.v1, cfg.horizon);
    r.certificate = stability_certificate(inst.model, inst.ss);
    r.final_distance = (r.trajectory.states.back() - inst.ss.v_inf).lpNorm<Eigen::Infinity>();

    Eigen::Index imax = 0;
    Eigen::Index imin = 0;
    inst.ss.v_inf.maxCoeff(&imax);
    inst.ss.v_inf.minCoeff(&imin);
    r.node_max = static_cast<std::size_t>(imax);
    r.node_min = static_cast<std::size_t>(imin);

    if (out_dir) write_common(*out_dir, inst, r.trajectory, r.certificate);

    io::json bounds_meta = io::json::array();
    for (const std::size_t k0 : cfg.k0_list) {
        if (k0 < 1 || k0 > cfg.horizon)
            throw InvalidParameter("run_fig2: k0=" + std::to_string(k0) + " outside the horizon");
        const BoundsBundle b = compute_bounds(inst.model, inst.ss.v_inf, r.trajectory, k0, cfg.horizon);
        Fig2Bounds fb;
        fb.k0 = k0;
        fb.gaps = gap_statistics(b, r.trajectory);
        fb.v_min_source = b.v_min_source;
        fb.gamma = b.gamma;
        fb.alpha = b.alpha;
        fb.capped = b.capped;
        r.bounds.push_back(fb);

        if (out_dir) {
            std::ofstream csv(*out_dir / ("bounds_k" + std::to_string(k0) + ".csv"));
            if (!csv) throw InvalidParameter("cannot write bounds CSV in " + out_dir->string());
            io::write_bounds_csv(csv, b, r.trajectory, {r.node_max, r.node_min});
            bounds_meta.push_back({{"k0", k0},
                                   {"max_upper_gap", fb.gaps.max_upper_gap},
                                   {"max_lower_gap", fb.gaps.max_lower_gap},
                                   {"mean_upper_gap", fb.gaps.mean_upper_gap},
                                   {"mean_lower_gap", fb.gaps.mean_lower_gap},
                                   {"max_violation", fb.gaps.max_violation},
                                   {"v_min_source", to_string(fb.v_min_source)},
                                   {"v_min_validated_on_horizon_only", fb.v_min_source == VminSource::empirical},
                                   {"gamma", fb.gamma},
                                   {"alpha", fb.alpha},
                                   {"ub_capped_entries", fb.capped}});
        }
    }

    if (out_dir) {
        io::json meta = instance_meta(cfg, inst, r.certificate);
        meta["nodes"] = {{"max_v_inf", r.node_max + 1}, {"min_v_inf", r.node_min + 1}};
        meta["bounds"] = bounds_meta;
        meta["final_distance"] = r.final_distance;
        io::write_json(*out_dir / "meta.json", meta);
    }
    return r;
}

}  // namespace nimfa
