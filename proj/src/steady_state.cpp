#include "nimfa/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nimfa/dynamics.hpp"
#include "nimfa/error.hpp"
#include "nimfa/spectral.hpp"

namespace nimfa {

const char* to_string(Regime r) noexcept {
    switch (r) {
        case Regime::die_out: return "die_out";
        case Regime::endemic: return "endemic";
    }
    return "unknown";
}

RegimeInfo classify_regime(const NetworkModel& m) {
    if (!strongly_connected(m.w()))
        throw PreconditionError("classify_regime: infection matrix is reducible");
    const double rho = spectral_radius_principal(build_R(m)).rho;
    return {rho <= 1.0 ? Regime::die_out : Regime::endemic, rho};
}

Brackets steady_state_brackets(const NetworkModel& m) {
    const Vector row = m.w().rowwise().sum();
    for (Eigen::Index i = 0; i < row.size(); ++i) {
        if (row[i] <= 0.0)
            throw DomainError("steady_state_brackets: node " + std::to_string(i) +
                              " has no incoming infection");
    }
    Brackets b;
    const double floor = std::max(0.0, (1.0 - m.q().array() / row.array()).minCoeff());
    b.lower = Vector::Constant(row.size(), floor);
    b.upper = (1.0 - m.q().array() / (m.q().array() + row.array())).matrix();
    return b;
}

double steady_state_residual(const NetworkModel& m, const Vector& v) {
    const Vector infection = m.w() * v;
    return (infection.array() - m.q().array() * v.array() / (1.0 - v.array()))
        .abs()
        .maxCoeff();
}

SteadyState solve_steady_state(const NetworkModel& m, const SteadyStateOptions& opts) {
    const RegimeInfo regime = classify_regime(m);
    if (regime.regime != Regime::endemic)
        throw PreconditionError("solve_steady_state: rho(R) = " + std::to_string(regime.rho_r) +
                                " <= 1, the healthy state is the only equilibrium");

    SteadyState ss;
    const Brackets b = steady_state_brackets(m);
    ss.lower = b.lower;
    ss.upper = b.upper;

    const Vector& q = m.q();
    Vector v = b.upper;
    Vector infection(v.size());
    bool converged = false;
    double residual = 0.0;
    for (std::size_t it = 1; it <= opts.max_iter; ++it) {
        infection.noalias() = m.w() * v;
        residual = (infection.array() - q.array() * v.array() / (1.0 - v.array())).abs().maxCoeff();
        Vector next = (1.0 - q.array() / (q.array() + infection.array())).matrix();
        const double change = (next - v).lpNorm<Eigen::Infinity>();
        ss.iterations = it;

        if (!converged && change <= opts.tol && residual <= opts.tol) converged = true;
        if (converged) {
            // Past tol the iterates keep decreasing until rounding takes
            // over; stop at the first step that is not a strict decrease.
            const bool decreasing =
                (next.array() <= v.array()).all() && (next.array() < v.array()).any();
            if (!decreasing) break;
        } else if (change == 0.0) {
            throw ConvergenceError("solve_steady_state: iteration stagnated with residual " +
                                       std::to_string(residual),
                                   v, residual);
        }
        v = std::move(next);
    }
    if (!converged) {
        throw ConvergenceError("solve_steady_state: no convergence after " +
                                   std::to_string(opts.max_iter) + " iterations",
                               v, steady_state_residual(m, v));
    }
    ss.residual = steady_state_residual(m, v);
    ss.v_inf = std::move(v);
    return ss;
}

StabilityCertificate stability_certificate(const NetworkModel& m, const SteadyState& ss) {
    const FMatrix fm = build_F(m, ss.v_inf);
    StabilityCertificate cert;
    // F is nonnegative under the sampling-time condition; otherwise only the
    // magnitude estimate applies.
    cert.rho_f = (fm.f.array() >= 0.0).all() ? spectral_radius_principal(fm.f).rho
                                              : spectral_radius_magnitude(fm.f);
    cert.analytic_bound =
        (1.0 - m.q().array() * ss.v_inf.array() / (1.0 - ss.v_inf.array())).maxCoeff();
    if (!(cert.rho_f < 1.0))
        throw CertificateFailure("stability_certificate: rho(F) = " + std::to_string(cert.rho_f) +
                                 " is not below 1");
    return cert;
}

}  // namespace nimfa
