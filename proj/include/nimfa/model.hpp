#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nimfa/types.hpp"

namespace nimfa {

/// Continuous-time source parameters: infection rates beta (beta(i, j) is the
/// rate from node j to node i), curing rates delta and the sampling time t.
class ContinuousParams {
public:
    /// Throws InvalidParameter unless delta > 0, beta >= 0, t > 0, all finite
    /// and dimensions agree.
    ContinuousParams(Matrix beta, Vector delta, double t);

    std::size_t n() const noexcept { return static_cast<std::size_t>(delta_.size()); }
    const Matrix& beta() const noexcept { return beta_; }
    const Vector& delta() const noexcept { return delta_; }
    double t() const noexcept { return t_; }

private:
    Matrix beta_;
    Vector delta_;
    double t_;
};

/// Discrete-time network model: curing rates q and infection rate matrix w,
/// with w(i, j) the rate from node j to node i.
///
/// Construction checks structure only (square, matching sizes, finite
/// entries, n >= 1). Sign conditions are reported by validate() rather than
/// enforced here, so that a model violating them can still be inspected.
class NetworkModel {
public:
    NetworkModel(Vector q, Matrix w);
    NetworkModel(Vector q, Matrix w, ContinuousParams source);

    std::size_t n() const noexcept { return static_cast<std::size_t>(q_.size()); }
    const Vector& q() const noexcept { return q_; }
    const Matrix& w() const noexcept { return w_; }
    const std::optional<ContinuousParams>& source() const noexcept { return source_; }

    double q_min() const noexcept { return q_.minCoeff(); }

private:
    Vector q_;
    Matrix w_;
    std::optional<ContinuousParams> source_;
};

/// q_i = delta_i * t and w_ij = beta_ij * t. The source parameters are kept.
NetworkModel discretize(const ContinuousParams& cp);

struct SamplingBound {
    Vector per_node;  // 1 / (delta_i + sum_j beta_ij)
    double global;    // min over nodes
};

SamplingBound max_sampling_time(const ContinuousParams& cp);

struct AssumptionReport {
    bool a1_rates = false;
    bool a2_sampling = false;
    std::vector<std::size_t> a2_violations;  // nodes with q_i + sum_j w_ij > 1
    std::optional<bool> a3_initial;          // set only when v1 and v_inf are given
    bool a4_irreducible = false;
    bool a5_above_threshold = false;
    double rho_r = 0.0;                      // NaN if it could not be computed
    std::optional<double> t_max_global;      // only for models with a continuous source

    /// A1, A2, A4, A5 and, when evaluated, A3.
    bool all_hold() const noexcept;
};

/// Checks the five standing assumptions. A2 is checked on the discrete rates
/// as q_i + sum_j w_ij <= 1 (equality admitted). A5 is the strict test
/// rho(R) > 1.
AssumptionReport validate(const NetworkModel& m,
                          const std::optional<Vector>& v1 = std::nullopt,
                          const std::optional<Vector>& v_inf = std::nullopt);

/// R = I - diag(q) + W.
Matrix build_R(const NetworkModel& m);

}  // namespace nimfa
