#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nimfa/dynamics.hpp"
#include "nimfa/model.hpp"
#include "nimfa/steady_state.hpp"
#include "nimfa/types.hpp"

namespace nimfa {

/// sum_{l >= 2} x_i^l = x_i^2 / (1 - x_i) per component, in closed form.
/// Throws DomainError if any |x_i| >= 1.
Vector geometric_tail(const Vector& x);

struct ConditionMargin {
    bool holds = false;
    Vector margin;  // LHS - RHS per node
};

/// Exact criterion for a globally strictly increasing viral state:
///   margin = (W - diag(q)) v1 - diag(q) geometric_tail(v1),
/// holds iff margin_i > strict_eps for every node. The margin equals
/// (v[2]_i - v[1]_i) / (1 - v1_i).
ConditionMargin check_condition_1(const NetworkModel& m, const Vector& v1, double strict_eps = 0.0);

/// Equivalent criterion in steady-state coordinates z_i = (v1_i - v_inf_i) / (1 - v_inf_i):
///   margin = (diag(u - v_inf) W diag(u - v_inf) - diag(q)) z - diag(q) z^2 / (1 - z).
/// The tail is taken in its rational form, which is valid for all z_i < 1;
/// z_i <= -1 occurs when v_inf_i > 1/2 and v1_i is small.
ConditionMargin check_condition_2(const NetworkModel& m, const Vector& v_inf, const Vector& v1,
                                  double strict_eps = 0.0);

/// eps * x1 with x1 the principal eigenvector of R. Throws DomainError if
/// the result exceeds v_inf in any component.
Vector make_eigvec_init(const NetworkModel& m, double eps, const Vector& v_inf);

/// (1 - eps) v_inf for 0 < eps < 1.
Vector make_near_ss_init(const Vector& v_inf, double eps);

struct MonotonicityReport {
    std::vector<std::size_t> s_minus;  // k with v_i[k+1] <= v_i[k] for some i
    // Members of s_minus whose non-increases are all within rounding
    // (|v_i[k+1] - v_i[k]| <= 4 eps max(v_i[k], v_i[k+1])). A run that reaches
    // its floating-point fixed point lands here even when the exact run is
    // strictly increasing.
    std::vector<std::size_t> s_minus_rounding;
    double stringency = 0.0;           // max ||v[k+1] - v[k]||_2 over s_minus
    std::optional<std::size_t> onset;  // first k with v[k+1] > v[k] strictly
    std::size_t horizon = 0;           // last time index analyzed
};

/// Scans the stored consecutive pairs (requires stride 1 and at least two
/// states). Statements about S_- hold on the analyzed horizon only.
/// Membership in s_minus is the exact sign test on the computed states.
MonotonicityReport analyze(const Trajectory& traj);

}  // namespace nimfa
