#include "nimfa/dynamics.hpp"

#include <limits>
#include <string>

#include "nimfa/error.hpp"

namespace nimfa {

namespace {

constexpr double kStateSlack = 1e-12;

void require_dim(const Vector& v, std::size_t n, const char* what) {
    if (static_cast<std::size_t>(v.size()) != n)
        throw InvalidParameter(std::string(what) + ": expected dimension " + std::to_string(n) +
                               ", got " + std::to_string(v.size()));
}

void require_state(const Vector& v, const char* what) {
    if (!v.allFinite() || (v.array() < -kStateSlack).any() ||
        (v.array() > 1.0 + kStateSlack).any()) {
        throw DomainError(std::string(what) + ": state outside [0,1]");
    }
}

}  // namespace

const Vector& Trajectory::at(std::size_t k) const {
    if (k < k_start || (k - k_start) % stride != 0 || (k - k_start) / stride >= states.size())
        throw InvalidParameter("trajectory has no stored state at k=" + std::to_string(k));
    return states[(k - k_start) / stride];
}

Vector step(const NetworkModel& m, const Vector& v) {
    require_dim(v, m.n(), "step");
    require_state(v, "step");
    const Vector infection = m.w() * v;
    return ((1.0 - m.q().array()) * v.array() + (1.0 - v.array()) * infection.array()).matrix();
}

Trajectory simulate(const NetworkModel& m, const Vector& v1, std::size_t horizon,
                    const SimulateOptions& opts) {
    if (horizon == 0) throw InvalidParameter("simulate: horizon must be at least 1");
    if (opts.stride == 0) throw InvalidParameter("simulate: stride must be positive");
    require_dim(v1, m.n(), "simulate");
    require_state(v1, "simulate");

    Trajectory traj;
    traj.stride = opts.stride;
    traj.states.reserve((horizon - 1) / opts.stride + 1);
    traj.states.push_back(v1);

    Vector v = v1;
    for (std::size_t k = 2; k <= horizon; ++k) {
        Vector next = step(m, v);
        const bool stop = opts.stop_tol && (next - v).lpNorm<Eigen::Infinity>() < *opts.stop_tol;
        v = std::move(next);
        if ((k - 1) % opts.stride == 0) traj.states.push_back(v);
        if (stop) {
            traj.stopped_at = k;
            break;
        }
    }
    return traj;
}

FMatrix build_F(const NetworkModel& m, const Vector& v_inf) {
    require_dim(v_inf, m.n(), "build_F");
    if ((v_inf.array() <= 0.0).any() || (v_inf.array() >= 1.0).any())
        throw DomainError("build_F: steady state components must lie in (0,1)");
    FMatrix fm;
    fm.v_inf = v_inf;
    fm.f = (1.0 - v_inf.array()).matrix().asDiagonal() * m.w();
    fm.f.diagonal().array() += 1.0 + m.q().array() / (v_inf.array() - 1.0);
    return fm;
}

Vector delta_step(const FMatrix& fm, const Matrix& w, const Vector& dv) {
    const auto n = static_cast<std::size_t>(fm.f.rows());
    require_dim(dv, n, "delta_step");
    if (static_cast<std::size_t>(w.rows()) != n || static_cast<std::size_t>(w.cols()) != n)
        throw InvalidParameter("delta_step: infection matrix dimension mismatch");
    const Vector wdv = w * dv;
    return fm.f * dv - (dv.array() * wdv.array()).matrix();
}

Trajectory simulate_via_delta(const NetworkModel& m, const FMatrix& fm, const Vector& v1,
                              std::size_t horizon) {
    if (horizon == 0) throw InvalidParameter("simulate_via_delta: horizon must be at least 1");
    require_dim(v1, m.n(), "simulate_via_delta");
    Trajectory traj;
    traj.states.reserve(horizon);
    Vector dv = v1 - fm.v_inf;
    traj.states.push_back(v1);
    for (std::size_t k = 2; k <= horizon; ++k) {
        dv = delta_step(fm, m.w(), dv);
        traj.states.push_back(dv + fm.v_inf);
    }
    return traj;
}

OvershootReport check_no_overshoot(const Trajectory& traj, const Vector& v_inf, double slack) {
    OvershootReport report;
    report.max_excess = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < traj.size(); ++j) {
        const Vector& v = traj.states[j];
        require_dim(v, static_cast<std::size_t>(v_inf.size()), "check_no_overshoot");
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            const double excess = v[i] - v_inf[i];
            report.max_excess = std::max(report.max_excess, excess);
            if (excess > slack) {
                report.violations.push_back({traj.k_of(j), static_cast<std::size_t>(i), excess});
            }
        }
    }
    return report;
}

}  // namespace nimfa
