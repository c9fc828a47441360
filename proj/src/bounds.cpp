#include "nimfa/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nimfa/error.hpp"
#include "nimfa/monotonicity.hpp"

namespace nimfa {

namespace {

void require_range(std::size_t k0, std::size_t k_end, const char* what) {
    if (k0 < 1 || k_end < k0)
        throw InvalidParameter(std::string(what) + ": requires 1 <= k0 <= k_end");
}

template <typename Step>
Trajectory iterate(const Vector& init, std::size_t k0, std::size_t k_end, Step&& next) {
    Trajectory t;
    t.k_start = k0;
    t.states.reserve(k_end - k0 + 1);
    t.states.push_back(init);
    for (std::size_t k = k0 + 1; k <= k_end; ++k) t.states.push_back(next(t.states.back()));
    return t;
}

Trajectory shifted(const Trajectory& t, const Vector& offset) {
    Trajectory out = t;
    for (auto& s : out.states) s += offset;
    return out;
}

}  // namespace

const char* to_string(VminSource s) noexcept {
    return s == VminSource::initial_state ? "initial_state" : "empirical";
}

Trajectory upper_bound_linear(const NetworkModel& m, const Vector& init, std::size_t k0,
                              std::size_t k_end) {
    require_range(k0, k_end, "upper_bound_linear");
    if (static_cast<std::size_t>(init.size()) != m.n())
        throw InvalidParameter("upper_bound_linear: dimension mismatch");
    const Matrix R = build_R(m);
    return iterate(init, k0, k_end, [&R](const Vector& v) -> Vector { return R * v; });
}

Trajectory upper_bound_ss(const FMatrix& fm, const Vector& dv_init, std::size_t k0,
                          std::size_t k_end) {
    require_range(k0, k_end, "upper_bound_ss");
    if (dv_init.size() != fm.f.rows()) throw InvalidParameter("upper_bound_ss: dimension mismatch");
    if ((dv_init.array() > 0.0).any())
        throw PreconditionError("upper_bound_ss: initial difference must be <= 0");
    return iterate(dv_init, k0, k_end, [&fm](const Vector& dv) -> Vector { return fm.f * dv; });
}

CombinedUpper combined_upper(const Trajectory& ub1, const Trajectory& ub2) {
    if (ub1.size() != ub2.size() || ub1.k_start != ub2.k_start || ub1.stride != ub2.stride)
        throw InvalidParameter("combined_upper: trajectories must be aligned");
    CombinedUpper out;
    out.ub.k_start = ub1.k_start;
    out.ub.stride = ub1.stride;
    out.ub.states.reserve(ub1.size());
    for (std::size_t j = 0; j < ub1.size(); ++j) {
        if (ub1.states[j].size() != ub2.states[j].size())
            throw InvalidParameter("combined_upper: dimension mismatch");
        Vector u = ub1.states[j].cwiseMin(ub2.states[j]);
        out.capped += static_cast<std::size_t>((u.array() > 1.0).count());
        out.ub.states.push_back(u.cwiseMin(1.0));
    }
    return out;
}

Matrix build_F_lb(const NetworkModel& m, const Vector& v_inf, const Vector& v_min) {
    if (static_cast<std::size_t>(v_inf.size()) != m.n() ||
        static_cast<std::size_t>(v_min.size()) != m.n())
        throw InvalidParameter("build_F_lb: dimension mismatch");
    if ((v_min.array() <= 0.0).any()) throw DomainError("build_F_lb: v_min must be positive");
    if ((v_inf.array() <= 0.0).any() || (v_inf.array() >= 1.0).any())
        throw DomainError("build_F_lb: steady state components must lie in (0,1)");
    Matrix f = (1.0 - v_min.array()).matrix().asDiagonal() * m.w();
    f.diagonal().array() += 1.0 + m.q().array() / (v_inf.array() - 1.0);
    return f;
}

Trajectory lower_bound(const NetworkModel& m, const Vector& v_inf, const Vector& v_min,
                       const Trajectory& reference, std::size_t k0, std::size_t k_end) {
    require_range(k0, k_end, "lower_bound");
    for (std::size_t k = k0; k <= k_end; ++k) {
        const Vector& v = reference.at(k);
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            if (v[i] < v_min[i]) {
                throw PreconditionError("lower_bound: v[" + std::to_string(k) + "]_" +
                                        std::to_string(i) + " is below v_min");
            }
        }
    }
    const Matrix f_lb = build_F_lb(m, v_inf, v_min);
    const Vector dv0 = reference.at(k0) - v_inf;
    return iterate(dv0, k0, k_end, [&f_lb](const Vector& dv) -> Vector { return f_lb * dv; });
}

Vector empirical_v_min(const Trajectory& traj, std::size_t k_from, std::size_t k_to) {
    if (traj.size() == 0) throw InvalidParameter("empirical_v_min: empty trajectory");
    Vector out;
    for (std::size_t j = 0; j < traj.size(); ++j) {
        const std::size_t k = traj.k_of(j);
        if (k < k_from || k > k_to) continue;
        out = out.size() == 0 ? traj.states[j] : out.cwiseMin(traj.states[j]).eval();
    }
    if (out.size() == 0) throw InvalidParameter("empirical_v_min: no stored state in range");
    if ((out.array() <= 0.0).any())
        throw DomainError("empirical_v_min: trajectory touches zero; a positive initial state is required");
    return out;
}

Vector empirical_v_min(const Trajectory& traj) {
    return empirical_v_min(traj, traj.k_start, std::numeric_limits<std::size_t>::max());
}

double envelope_rate(double q_min, double gamma) {
    if (!(q_min > 0.0)) throw DomainError("envelope_rate: q_min must be positive");
    if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("envelope_rate: requires 0 < gamma < 1");
    return 1.0 - q_min * gamma / (1.0 - gamma);
}

double envelope(double q_min, double gamma, double v_inf_norm, std::size_t k) {
    if (k < 1) throw InvalidParameter("envelope: time index starts at 1");
    const double alpha = envelope_rate(q_min, gamma);
    return v_inf_norm * std::pow(alpha, static_cast<double>(k - 1));
}

Vector lower_bound_floor(double q_min, double gamma, const Vector& v_inf, std::size_t steps) {
    const double alpha = envelope_rate(q_min, gamma);
    return -std::pow(alpha, static_cast<double>(steps)) * v_inf;
}

BoundsBundle compute_bounds(const NetworkModel& m, const Vector& v_inf, const Trajectory& reference,
                            std::size_t k0, std::size_t k_end) {
    require_range(k0, k_end, "compute_bounds");
    if (reference.stride != 1) throw InvalidParameter("compute_bounds: reference needs stride 1");

    BoundsBundle b;
    b.k0 = k0;
    const Vector& v0 = reference.at(k0);
    const FMatrix fm = build_F(m, v_inf);

    b.ub1 = upper_bound_linear(m, v0, k0, k_end);
    Vector dv0 = v0 - v_inf;
    if ((dv0.array() > 1e-12).any())
        throw PreconditionError("compute_bounds: v[k0] exceeds the steady state");
    dv0 = dv0.cwiseMin(0.0);  // roundoff only
    b.ub2 = shifted(upper_bound_ss(fm, dv0, k0, k_end), v_inf);
    CombinedUpper cu = combined_upper(b.ub1, b.ub2);
    b.ub = std::move(cu.ub);
    b.capped = cu.capped;

    if ((v0.array() > 0.0).all() && (v0.array() < 1.0).all() && check_condition_1(m, v0).holds) {
        b.v_min = v0;
        b.v_min_source = VminSource::initial_state;
    } else {
        b.v_min = empirical_v_min(reference, k0, k_end);
        b.v_min_source = VminSource::empirical;
    }
    b.gamma = b.v_min.minCoeff();
    b.alpha = envelope_rate(m.q_min(), b.gamma);
    b.lb = shifted(lower_bound(m, v_inf, b.v_min, reference, k0, k_end), v_inf);
    return b;
}

GapStatistics gap_statistics(const BoundsBundle& b, const Trajectory& reference) {
    GapStatistics g;
    g.max_violation = -std::numeric_limits<double>::infinity();
    double sum_upper = 0.0;
    double sum_lower = 0.0;
    std::size_t count = 0;
    for (std::size_t j = 0; j < b.ub.size(); ++j) {
        const std::size_t k = b.ub.k_of(j);
        const Vector& v = reference.at(k);
        const Vector up = b.ub.states[j] - v;
        const Vector lo = v - b.lb.states[j];
        g.max_upper_gap = std::max(g.max_upper_gap, up.maxCoeff());
        g.max_lower_gap = std::max(g.max_lower_gap, lo.maxCoeff());
        g.max_violation = std::max({g.max_violation, -up.minCoeff(), -lo.minCoeff()});
        sum_upper += up.sum();
        sum_lower += lo.sum();
        count += static_cast<std::size_t>(v.size());
    }
    if (count > 0) {
        g.mean_upper_gap = sum_upper / static_cast<double>(count);
        g.mean_lower_gap = sum_lower / static_cast<double>(count);
    }
    return g;
}

}  // namespace nimfa
