#include "nimfa/model.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "nimfa/error.hpp"
#include "nimfa/spectral.hpp"

namespace nimfa {

namespace {

void require_square(const Matrix& w, Eigen::Index n, const char* name) {
    if (w.rows() != n || w.cols() != n) {
        throw InvalidParameter(std::string(name) + " must be " + std::to_string(n) + "x" +
                               std::to_string(n) + ", got " + std::to_string(w.rows()) + "x" +
                               std::to_string(w.cols()));
    }
}

}  // namespace

ContinuousParams::ContinuousParams(Matrix beta, Vector delta, double t)
    : beta_(std::move(beta)), delta_(std::move(delta)), t_(t) {
    if (delta_.size() == 0) throw InvalidParameter("delta must be non-empty");
    require_square(beta_, delta_.size(), "beta");
    if (!beta_.allFinite() || !delta_.allFinite() || !std::isfinite(t_))
        throw InvalidParameter("continuous parameters must be finite");
    if ((delta_.array() <= 0.0).any()) throw InvalidParameter("delta_i must be positive");
    if ((beta_.array() < 0.0).any()) throw InvalidParameter("beta_ij must be nonnegative");
    if (!(t_ > 0.0)) throw InvalidParameter("sampling time must be positive");
}

NetworkModel::NetworkModel(Vector q, Matrix w) : q_(std::move(q)), w_(std::move(w)) {
    if (q_.size() == 0) throw InvalidParameter("model must have at least one node");
    require_square(w_, q_.size(), "w");
    if (!q_.allFinite() || !w_.allFinite()) throw InvalidParameter("model rates must be finite");
}

NetworkModel::NetworkModel(Vector q, Matrix w, ContinuousParams source)
    : NetworkModel(std::move(q), std::move(w)) {
    if (source.n() != n()) throw InvalidParameter("source parameters have the wrong dimension");
    source_ = std::move(source);
}

NetworkModel discretize(const ContinuousParams& cp) {
    Vector q = cp.delta() * cp.t();
    Matrix w = cp.beta() * cp.t();
    if (!q.allFinite() || !w.allFinite())
        throw InvalidParameter("discretized rates overflow");
    return NetworkModel(std::move(q), std::move(w), cp);
}

SamplingBound max_sampling_time(const ContinuousParams& cp) {
    SamplingBound out;
    out.per_node = (cp.delta() + cp.beta().rowwise().sum()).cwiseInverse();
    out.global = out.per_node.minCoeff();
    return out;
}

bool AssumptionReport::all_hold() const noexcept {
    return a1_rates && a2_sampling && a4_irreducible && a5_above_threshold &&
           a3_initial.value_or(true);
}

AssumptionReport validate(const NetworkModel& m, const std::optional<Vector>& v1,
                          const std::optional<Vector>& v_inf) {
    const auto n = static_cast<Eigen::Index>(m.n());
    if (v1 && v1->size() != n) throw InvalidParameter("v1 has the wrong dimension");
    if (v_inf && v_inf->size() != n) throw InvalidParameter("v_inf has the wrong dimension");

    AssumptionReport r;
    r.a1_rates = (m.q().array() > 0.0).all() && (m.w().array() >= 0.0).all();

    const Vector load = m.q() + m.w().rowwise().sum();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (load[i] > 1.0) r.a2_violations.push_back(static_cast<std::size_t>(i));
    }
    r.a2_sampling = r.a2_violations.empty();

    if (v1 && v_inf) {
        r.a3_initial = (v1->array() >= 0.0).all() && (v1->array() <= v_inf->array()).all();
    }

    r.a4_irreducible = strongly_connected(m.w());

    const Matrix R = build_R(m);
    try {
        if ((R.array() >= 0.0).all()) {
            r.rho_r = spectral_radius_principal(R).rho;
        } else {
            r.rho_r = spectral_radius_magnitude(R);
        }
    } catch (const ConvergenceError&) {
        r.rho_r = std::numeric_limits<double>::quiet_NaN();
    }
    r.a5_above_threshold = r.rho_r > 1.0;

    if (m.source()) r.t_max_global = max_sampling_time(*m.source()).global;
    return r;
}

Matrix build_R(const NetworkModel& m) {
    Matrix R = m.w();
    R.diagonal().array() += 1.0 - m.q().array();
    return R;
}

}  // namespace nimfa
