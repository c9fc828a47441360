#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nimfa/model.hpp"
#include "nimfa/types.hpp"

namespace nimfa {

/// Ordered sequence of stored vectors. The j-th stored entry is the value at
/// time k_start + j * stride; time is 1-based.
///
/// Viral-state trajectories keep every component in [0, 1]. The bounds module
/// reuses the container for bounding systems and difference trajectories,
/// which carry no such guarantee.
struct Trajectory {
    std::vector<Vector> states;
    std::size_t k_start = 1;
    std::size_t stride = 1;
    std::optional<std::size_t> stopped_at;  // time index of an early stop

    std::size_t size() const noexcept { return states.size(); }
    std::size_t k_of(std::size_t j) const noexcept { return k_start + j * stride; }
    std::size_t k_last() const noexcept { return k_of(states.size() - 1); }
    /// State at time k; k must be a stored time.
    const Vector& at(std::size_t k) const;
};

/// One NIMFA update, v'_i = (1 - q_i) v_i + (1 - v_i) sum_j w_ij v_j.
/// Throws DomainError when v leaves [0, 1] by more than 1e-12.
Vector step(const NetworkModel& m, const Vector& v);

struct SimulateOptions {
    std::optional<double> stop_tol;  // halt when ||v[k+1] - v[k]||_inf < stop_tol
    std::size_t stride = 1;          // store every stride-th state
};

/// Iterates step() horizon - 1 times and stores v[k] for k = 1, 1 + stride,
/// 1 + 2 stride, ... up to horizon. With stop_tol set the run halts early and
/// records the stop time in stopped_at.
Trajectory simulate(const NetworkModel& m, const Vector& v1, std::size_t horizon,
                    const SimulateOptions& opts = {});

/// Linearization of the difference dynamics at the steady state.
struct FMatrix {
    Matrix f;
    Vector v_inf;
};

/// F = I + diag(q_i / (v_inf_i - 1)) + diag(u - v_inf) W.
/// Throws DomainError unless 0 < v_inf_i < 1.
FMatrix build_F(const NetworkModel& m, const Vector& v_inf);

/// dv' = F dv - diag(dv) W dv.
Vector delta_step(const FMatrix& fm, const Matrix& w, const Vector& dv);

/// Simulates through the difference recursion and returns v[k] = dv[k] + v_inf.
Trajectory simulate_via_delta(const NetworkModel& m, const FMatrix& fm, const Vector& v1,
                              std::size_t horizon);

struct OvershootViolation {
    std::size_t k;
    std::size_t node;
    double excess;  // v_i[k] - v_inf_i
};

struct OvershootReport {
    std::vector<OvershootViolation> violations;
    double max_excess = 0.0;  // max over stored (k, i) of v_i[k] - v_inf_i; may be negative

    bool passed() const noexcept { return violations.empty(); }
};

/// Lists every stored (k, i) with v_i[k] > v_inf_i + slack.
OvershootReport check_no_overshoot(const Trajectory& traj, const Vector& v_inf, double slack);

}  // namespace nimfa
