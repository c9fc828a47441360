#include "nimfa/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "nimfa/error.hpp"

namespace nimfa {

namespace {

// Visits every node reachable from node 0. With forward == true an edge
// j -> i exists when w(i, j) > 0; otherwise edges are reversed.
std::size_t reachable_count(const Matrix& w, bool forward) {
    const Eigen::Index n = w.rows();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<Eigen::Index> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        const Eigen::Index u = stack.back();
        stack.pop_back();
        for (Eigen::Index v = 0; v < n; ++v) {
            const double weight = forward ? w(v, u) : w(u, v);
            if (weight > 0.0 && !seen[static_cast<std::size_t>(v)]) {
                seen[static_cast<std::size_t>(v)] = 1;
                ++count;
                stack.push_back(v);
            }
        }
    }
    return count;
}

}  // namespace

bool strongly_connected(const Matrix& w) {
    if (w.rows() != w.cols()) throw InvalidParameter("strongly_connected: matrix must be square");
    const auto n = static_cast<std::size_t>(w.rows());
    if (n == 0) return false;
    return reachable_count(w, true) == n && reachable_count(w, false) == n;
}

SpectralInfo spectral_radius_principal(const Matrix& m, const PowerIterationOptions& opts) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw InvalidParameter("spectral_radius_principal: matrix must be square and non-empty");
    const Eigen::Index n = m.rows();

    Vector x = opts.start ? *opts.start : Vector::Ones(n);
    if (x.size() != n) throw InvalidParameter("spectral_radius_principal: start vector dimension");
    const double start_norm = x.norm();
    if (!(start_norm > 0.0) || !std::isfinite(start_norm))
        throw InvalidParameter("spectral_radius_principal: start vector must be nonzero");
    x /= start_norm;

    // Zero diagonal admits periodic irreducible matrices; shift to make them primitive.
    double shift = 0.0;
    if (n > 1 && (m.diagonal().array() == 0.0).all()) {
        shift = 0.5 * inf_norm(m);
    }

    double rq_prev = std::numeric_limits<double>::quiet_NaN();
    double residual = std::numeric_limits<double>::infinity();
    Vector y(n);
    for (std::size_t it = 1; it <= opts.max_iter; ++it) {
        y.noalias() = m * x;
        const double rq = x.dot(y);
        residual = (y - rq * x).norm();

        const bool residual_ok = residual <= opts.tol * std::max(1.0, std::abs(rq));
        const bool rq_ok = it == 1 ? residual == 0.0
                                   : std::abs(rq - rq_prev) <= opts.tol * std::abs(rq);
        if (residual_ok && rq_ok) {
            if (x.sum() < 0.0) x = -x;
            return SpectralInfo{std::abs(rq), x, it, residual};
        }
        rq_prev = rq;

        y += shift * x;
        const double norm = y.norm();
        if (norm == 0.0) {
            // x lies in the null space and rq = 0 with zero residual was handled above.
            throw ConvergenceError("spectral_radius_principal: iterate vanished", x, residual);
        }
        x = y / norm;
    }
    throw ConvergenceError("spectral_radius_principal: no convergence after " +
                               std::to_string(opts.max_iter) + " iterations",
                           x, residual);
}

double spectral_radius_magnitude(const Matrix& m, double tol, std::size_t max_iter) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw InvalidParameter("spectral_radius_magnitude: matrix must be square and non-empty");
    const Eigen::Index n = m.rows();
    const Eigen::Index p = std::min<Eigen::Index>(n, 4);

    // Subspace iteration on a small block; the Ritz values of the projected
    // block capture dominant real pairs of opposite sign and complex pairs.
    Matrix block(n, p);
    for (Eigen::Index i = 0; i < n; ++i) {
        block(i, 0) = 1.0;
        for (Eigen::Index j = 1; j < p; ++j) {
            block(i, j) = std::sin(static_cast<double>((i + 1) * (j + 1)) + 0.5 * static_cast<double>(j));
        }
    }
    Matrix q = Eigen::HouseholderQR<Matrix>(block).householderQ() * Matrix::Identity(n, p);

    double prev = std::numeric_limits<double>::quiet_NaN();
    int stable = 0;
    Vector last = q.col(0);
    for (std::size_t it = 1; it <= max_iter; ++it) {
        const Matrix z = m * q;
        const Matrix ritz = q.transpose() * z;
        const Eigen::EigenSolver<Matrix> es(ritz, false);
        const double est = es.eigenvalues().cwiseAbs().maxCoeff();
        if (it > 1 && std::abs(est - prev) <= tol * std::max(est, std::numeric_limits<double>::min())) {
            if (++stable >= 3) return est;
        } else {
            stable = 0;
        }
        prev = est;
        if (z.norm() == 0.0) return 0.0;
        q = Eigen::HouseholderQR<Matrix>(z).householderQ() * Matrix::Identity(n, p);
        last = q.col(0);
    }
    throw ConvergenceError("spectral_radius_magnitude: no convergence", last, prev);
}

double inf_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().rowwise().sum().maxCoeff();
}

double collatz_wielandt_bound(const Matrix& m, const Vector& y) {
    if (m.rows() != m.cols() || y.size() != m.rows())
        throw InvalidParameter("collatz_wielandt_bound: dimension mismatch");
    if ((y.array() <= 0.0).any()) throw DomainError("collatz_wielandt_bound: y must be positive");
    return ((m * y).array() / y.array()).maxCoeff();
}

}  // namespace nimfa
