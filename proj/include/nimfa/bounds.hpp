#pragma once

#include <cstddef>

#include "nimfa/dynamics.hpp"
#include "nimfa/model.hpp"
#include "nimfa/types.hpp"

namespace nimfa {

// Bounding systems run from time k0 to k_end inclusive and are returned as
// trajectories with k_start = k0.

/// v_ub1[k+1] = R v_ub1[k]. Not clamped: the system is unstable when
/// rho(R) >= 1 and its values may exceed 1.
Trajectory upper_bound_linear(const NetworkModel& m, const Vector& init, std::size_t k0,
                              std::size_t k_end);

/// dv_ub[k+1] = F dv_ub[k], in difference coordinates. Throws
/// PreconditionError if dv_init has a positive component.
Trajectory upper_bound_ss(const FMatrix& fm, const Vector& dv_init, std::size_t k0,
                          std::size_t k_end);

struct CombinedUpper {
    Trajectory ub;
    std::size_t capped = 0;  // entries where min(ub1, ub2) exceeded 1 and was capped
};

/// Componentwise min of ub1 and ub2 (both in state coordinates), capped at 1.
CombinedUpper combined_upper(const Trajectory& ub1, const Trajectory& ub2);

/// F_lb = I + diag(q_i / (v_inf_i - 1)) + diag(u - v_min) W.
Matrix build_F_lb(const NetworkModel& m, const Vector& v_inf, const Vector& v_min);

/// dv_lb[k+1] = F_lb dv_lb[k] from dv_lb[k0] = v[k0] - v_inf, in difference
/// coordinates. The reference trajectory (stride 1) must satisfy
/// v[k] >= v_min for k0 <= k <= k_end; a violation raises PreconditionError
/// naming the first offending (k, i). The check covers this finite horizon
/// only.
Trajectory lower_bound(const NetworkModel& m, const Vector& v_inf, const Vector& v_min,
                       const Trajectory& reference, std::size_t k0, std::size_t k_end);

/// Componentwise minimum over the stored states with time in [k_from, k_to].
/// Throws DomainError if the minimum has a zero (or negative) component.
Vector empirical_v_min(const Trajectory& traj, std::size_t k_from, std::size_t k_to);
Vector empirical_v_min(const Trajectory& traj);

/// alpha = 1 - q_min gamma / (1 - gamma). Requires q_min > 0, 0 < gamma < 1.
double envelope_rate(double q_min, double gamma);

/// ||v_inf||_2 alpha^(k-1).
double envelope(double q_min, double gamma, double v_inf_norm, std::size_t k);

/// -alpha^steps v_inf: the floor below which dv_lb cannot fall after `steps`
/// iterations from dv_lb >= -v_inf.
Vector lower_bound_floor(double q_min, double gamma, const Vector& v_inf, std::size_t steps);

enum class VminSource { initial_state, empirical };

const char* to_string(VminSource s) noexcept;

struct BoundsBundle {
    Trajectory ub1;  // R-system
    Trajectory ub2;  // F-system, shifted by v_inf
    Trajectory ub;   // min(ub1, ub2), capped at 1
    Trajectory lb;   // F_lb-system, shifted by v_inf
    std::size_t k0 = 1;
    std::size_t capped = 0;
    Vector v_min;
    VminSource v_min_source = VminSource::empirical;
    double gamma = 0.0;  // min_i v_min_i
    double alpha = 1.0;  // 1 - q_min gamma / (1 - gamma)
};

/// All bounds initialized at k0 with v_lb[k0] = v[k0] = v_ub[k0].
///
/// v_min is v[k0] when the increase criterion holds at v[k0] (the run is then
/// strictly increasing from k0 on), otherwise the empirical minimum of the
/// reference over [k0, k_end].
BoundsBundle compute_bounds(const NetworkModel& m, const Vector& v_inf, const Trajectory& reference,
                            std::size_t k0, std::size_t k_end);

struct GapStatistics {
    double max_upper_gap = 0.0;   // max over k >= k0, i of ub - v
    double max_lower_gap = 0.0;   // max over k >= k0, i of v - lb
    double mean_upper_gap = 0.0;
    double mean_lower_gap = 0.0;
    double max_violation = 0.0;   // max of lb - v and v - ub; <= 0 when the sandwich holds
};

GapStatistics gap_statistics(const BoundsBundle& b, const Trajectory& reference);

}  // namespace nimfa
