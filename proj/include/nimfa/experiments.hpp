#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nimfa/bounds.hpp"
#include "nimfa/dynamics.hpp"
#include "nimfa/model.hpp"
#include "nimfa/monotonicity.hpp"
#include "nimfa/rng.hpp"
#include "nimfa/steady_state.hpp"

namespace nimfa {

inline constexpr const char* kVersion = "1.0.0";

enum class Figure { fig1, fig2 };

/// Initial state used by the experiment drivers.
enum class InitKind {
    random,   // v1_i uniform in [0, v1_scale * v_inf_i]
    zero,     // healthy state
    eigvec,   // eps * x1, eps halved until the increase criterion holds
    near_ss,  // (1 - v1_scale) * v_inf
};

const char* to_string(InitKind k) noexcept;
InitKind init_kind_from_string(const std::string& s);

struct ExperimentConfig {
    Figure figure = Figure::fig1;
    std::size_t n = 10;
    double link_prob = 0.25;
    double c0 = 10.0;          // initial curing scale
    double c_divisor = 1.1;    // c <- c / c_divisor while rho(R) <= 1 + rho_margin
    double rho_margin = 1e-3;
    double t_fraction = 10.0;  // T = T_max / t_fraction
    double v1_scale = 0.01;
    std::uint64_t seed = 1;
    std::size_t horizon = 2000;
    std::vector<std::size_t> k0_list;
    InitKind init = InitKind::random;
    std::size_t max_graph_retries = 10000;
    std::size_t max_curing_rounds = 100000;

    static ExperimentConfig fig1();
    static ExperimentConfig fig2();
};

/// A generated endemic instance with its initial state and steady state.
struct Instance {
    NetworkModel model;
    Vector v1{};
    SteadyState ss{};
    double rho_r = 0.0;
    double sampling_time = 0.0;  // T applied to the drawn rates
    double t_max = 0.0;          // min_i 1 / (q_raw_i + sum_j w_raw_ij)
    double c = 0.0;              // final curing scale
    std::size_t graph_attempts = 0;
    std::size_t curing_rounds = 0;
};

/// Directed random graph with independent links of probability link_prob
/// (no self-loops) and U[0,1) weights, redrawn until strongly connected.
Matrix random_infection_rates(std::size_t n, double link_prob, std::size_t max_retries, Rng& rng,
                              std::size_t* attempts = nullptr);

/// Random-network procedure: draw W, draw q_i ~ U[0.95c, 1.05c], treat both
/// as continuous-time rates, discretize with T = T_max / t_fraction, and
/// shrink c (redrawing every q_i) until rho(R) > 1 + rho_margin. Then solve
/// the steady state and draw the initial state per cfg.init.
///
/// Deterministic in (cfg, stream): the graph, curing and initial-state draws
/// use separate child streams of Rng(cfg.seed, stream).
Instance generate_instance(const ExperimentConfig& cfg, std::uint64_t stream = 0);

/// Same graph and curing procedure, but grows c (c <- c * c_divisor) until
/// rho(R) <= 1 - rho_margin. Used for die-out studies.
NetworkModel generate_die_out_model(const ExperimentConfig& cfg, std::uint64_t stream = 0);

/// eps * x1 with eps starting at eps0 and halved until the increase
/// criterion holds strictly and the state lies below v_inf.
Vector increasing_eigvec_init(const NetworkModel& m, const Vector& v_inf, double eps0,
                              std::size_t max_halvings = 200);

struct Fig1Result {
    Instance instance;
    Trajectory trajectory{};
    MonotonicityReport monotonicity{};
    ConditionMargin condition1{};
    ConditionMargin condition2{};
    OvershootReport overshoot{};
    StabilityCertificate certificate{};
    double final_distance = 0.0;  // ||v[K] - v_inf||_inf
};

/// Small-network run: trajectory, monotonicity report and no-overshoot check.
/// Writes the artifact set when out_dir is given.
Fig1Result run_fig1(const ExperimentConfig& cfg,
                    const std::optional<std::filesystem::path>& out_dir = std::nullopt);

struct Fig2Bounds {
    std::size_t k0 = 1;
    GapStatistics gaps;
    VminSource v_min_source = VminSource::empirical;
    double gamma = 0.0;
    double alpha = 1.0;
    std::size_t capped = 0;
};

struct Fig2Result {
    Instance instance;
    Trajectory trajectory{};
    StabilityCertificate certificate{};
    std::size_t node_max = 0;  // node with the largest steady state
    std::size_t node_min = 0;  // node with the smallest steady state
    std::vector<Fig2Bounds> bounds{};
    double final_distance = 0.0;
};

/// Bounds run: for each k0 in cfg.k0_list the bounds are initialized at
/// v[k0]; CSVs cover the nodes with maximal and minimal v_inf, gap
/// statistics cover the whole network.
Fig2Result run_fig2(const ExperimentConfig& cfg,
                    const std::optional<std::filesystem::path>& out_dir = std::nullopt);

}  // namespace nimfa
