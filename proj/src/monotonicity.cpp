#include "nimfa/monotonicity.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "nimfa/error.hpp"
#include "nimfa/spectral.hpp"

namespace nimfa {

namespace {

ConditionMargin finish(Vector margin, double strict_eps) {
    ConditionMargin out;
    out.holds = (margin.array() > strict_eps).all();
    out.margin = std::move(margin);
    return out;
}

void require_dim(const Vector& v, std::size_t n, const char* what) {
    if (static_cast<std::size_t>(v.size()) != n)
        throw InvalidParameter(std::string(what) + ": dimension mismatch");
}

// x^2 / (1 - x): the rational form behind the tail sum, exact for every
// x < 1 whether or not the series converges.
Vector tail_closed_form(const Vector& x) {
    return (x.array().square() / (1.0 - x.array())).matrix();
}

}  // namespace

Vector geometric_tail(const Vector& x) {
    if ((x.array().abs() >= 1.0).any() || !x.allFinite())
        throw DomainError("geometric_tail: requires |x_i| < 1");
    return tail_closed_form(x);
}

ConditionMargin check_condition_1(const NetworkModel& m, const Vector& v1, double strict_eps) {
    require_dim(v1, m.n(), "check_condition_1");
    if ((v1.array() >= 1.0).any()) throw DomainError("check_condition_1: requires v1_i < 1");
    if ((v1.array() < 0.0).any()) throw DomainError("check_condition_1: requires v1_i >= 0");
    const Vector lhs = m.w() * v1 - (m.q().array() * v1.array()).matrix();
    const Vector rhs = (m.q().array() * geometric_tail(v1).array()).matrix();
    return finish(lhs - rhs, strict_eps);
}

ConditionMargin check_condition_2(const NetworkModel& m, const Vector& v_inf, const Vector& v1,
                                  double strict_eps) {
    require_dim(v1, m.n(), "check_condition_2");
    require_dim(v_inf, m.n(), "check_condition_2");
    if ((v_inf.array() >= 1.0).any()) throw DomainError("check_condition_2: requires v_inf_i < 1");
    if ((v1.array() >= 1.0).any()) throw DomainError("check_condition_2: requires v1_i < 1");
    const Vector healthy = (1.0 - v_inf.array()).matrix();
    const Vector z = ((v1 - v_inf).array() / healthy.array()).matrix();
    const Vector scaled = (healthy.array() * z.array()).matrix();
    const Vector lhs = (healthy.array() * (m.w() * scaled).array() - m.q().array() * z.array()).matrix();
    // z_i < -1 whenever v1_i < 2 v_inf_i - 1, so the series form may diverge.
    const Vector rhs = (m.q().array() * tail_closed_form(z).array()).matrix();
    return finish(lhs - rhs, strict_eps);
}

Vector make_eigvec_init(const NetworkModel& m, double eps, const Vector& v_inf) {
    require_dim(v_inf, m.n(), "make_eigvec_init");
    if (!(eps > 0.0)) throw DomainError("make_eigvec_init: eps must be positive");
    const SpectralInfo info = spectral_radius_principal(build_R(m));
    Vector v1 = eps * info.x1;
    if ((v1.array() > v_inf.array()).any())
        throw DomainError("make_eigvec_init: eps * x1 exceeds v_inf; choose a smaller eps");
    return v1;
}

Vector make_near_ss_init(const Vector& v_inf, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("make_near_ss_init: requires 0 < eps < 1");
    return (1.0 - eps) * v_inf;
}

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kRoundingUlps = 4.0;
}  // namespace

MonotonicityReport analyze(const Trajectory& traj) {
    if (traj.size() < 2) throw InvalidParameter("analyze: need at least two states");
    if (traj.stride != 1) throw InvalidParameter("analyze: requires a stride-1 trajectory");

    MonotonicityReport report;
    report.horizon = traj.k_last();
    for (std::size_t j = 0; j + 1 < traj.size(); ++j) {
        const Vector diff = traj.states[j + 1] - traj.states[j];
        const std::size_t k = traj.k_of(j);
        if ((diff.array() <= 0.0).any()) {
            report.s_minus.push_back(k);
            report.stringency = std::max(report.stringency, diff.norm());
            const auto scale = traj.states[j].array().abs().max(traj.states[j + 1].array().abs());
            const auto decreasing = diff.array() <= 0.0;
            const auto resolved = diff.array().abs() > kRoundingUlps * kEps * scale;
            if (!(decreasing && resolved).any()) report.s_minus_rounding.push_back(k);
        } else if (!report.onset) {
            report.onset = k;
        }
    }
    return report;
}

}  // namespace nimfa
