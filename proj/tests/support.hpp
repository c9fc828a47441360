#pragma once

// Shared fixtures and independent oracles for the test suites. The oracles
// avoid the library's solvers: closed forms, characteristic polynomials,
// Newton's method and direct scans.

#include <cmath>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "nimfa/dynamics.hpp"
#include "nimfa/experiments.hpp"
#include "nimfa/model.hpp"
#include "nimfa/types.hpp"

namespace nimfa::testing {

inline NetworkModel scalar_model(double q, double w) {
    return NetworkModel(Vector::Constant(1, q), Matrix::Constant(1, 1, w));
}

// q = (0.2, 0.2), cross rates 0.4.
inline NetworkModel symmetric_pair() {
    Matrix w(2, 2);
    w << 0.0, 0.4, 0.4, 0.0;
    return NetworkModel(Vector::Constant(2, 0.2), w);
}

inline Vector vec(std::initializer_list<double> xs) {
    Vector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

// Random-network instance with the small-network procedure at size n.
inline ExperimentConfig small_config(std::size_t n, std::uint64_t seed) {
    ExperimentConfig cfg = ExperimentConfig::fig1();
    cfg.n = n;
    cfg.seed = seed;
    return cfg;
}

// Largest root of a monic quadratic lambda^2 + b lambda + c.
inline double largest_quadratic_root(double b, double c) {
    return 0.5 * (-b + std::sqrt(b * b - 4.0 * c));
}

// Perron root of a nonnegative matrix with n <= 3 from its characteristic
// polynomial: scan down from an upper bound for the first sign change of
// det(lambda I - M) and bisect.
inline double perron_root_charpoly(const Matrix& m) {
    const auto n = m.rows();
    auto p = [&](double x) {
        if (n == 1) return x - m(0, 0);
        const double tr = m.trace();
        if (n == 2) return x * x - tr * x + (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
        double c2 = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) c2 += m(i, i) * m(j, j) - m(i, j) * m(j, i);
        const double det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
        return x * x * x - tr * x * x + c2 * x - det;
    };
    double hi = m.cwiseAbs().rowwise().sum().maxCoeff() + 1.0;
    const double h = hi / 20000.0;
    double lo = hi - h;
    while (lo > -hi && p(lo) > 0.0) {
        hi = lo;
        lo -= h;
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (p(mid) > 0.0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

// Newton's method on W v - q v / (1 - v) = 0 from the upper bracket.
inline Vector newton_steady_state(const NetworkModel& m) {
    const Vector rs = m.w().rowwise().sum();
    Vector v = (1.0 - (m.q().array() / (m.q() + rs).array())).matrix();
    for (int it = 0; it < 200; ++it) {
        const Vector g = m.w() * v - (m.q().array() * v.array() / (1.0 - v.array())).matrix();
        Matrix jac = m.w();
        jac.diagonal().array() -= m.q().array() / (1.0 - v.array()).square();
        const Vector dv = jac.partialPivLu().solve(g);
        v -= dv;
        if (dv.lpNorm<Eigen::Infinity>() < 1e-15) break;
    }
    return v;
}

// Plain-loop NIMFA update.
inline std::vector<double> naive_step(const NetworkModel& m, const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            s += m.w()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * v[j];
        out[i] = (1.0 - m.q()[static_cast<Eigen::Index>(i)]) * v[i] + (1.0 - v[i]) * s;
    }
    return out;
}

// k in [k_start, k_last) with v_i[k+1] <= v_i[k] for some i.
inline std::vector<std::size_t> scan_s_minus(const Trajectory& t) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j + 1 < t.size(); ++j) {
        bool hit = false;
        for (Eigen::Index i = 0; i < t.states[j].size(); ++i)
            if (t.states[j + 1][i] <= t.states[j][i]) hit = true;
        if (hit) out.push_back(t.k_of(j));
    }
    return out;
}

}  // namespace nimfa::testing
