#pragma once

#include <cstddef>

#include "nimfa/model.hpp"
#include "nimfa/types.hpp"

namespace nimfa {

enum class Regime { die_out, endemic };

const char* to_string(Regime r) noexcept;

struct RegimeInfo {
    Regime regime;
    double rho_r;
};

/// die_out iff rho(R) <= 1. Throws PreconditionError for a reducible W.
RegimeInfo classify_regime(const NetworkModel& m);

struct Brackets {
    Vector lower;  // min_j (1 - q_j / sum_l w_jl), floored at 0, in every component
    Vector upper;  // 1 - q_i / (q_i + sum_j w_ij)
};

/// Componentwise enclosure of the endemic steady state. Meaningful in the
/// endemic regime only.
///
/// The lower bracket is uniform: the node-wise value 1 - q_i / sum_j w_ij
/// bounds v_inf only at the node where v_inf is smallest, and a node with a
/// large in-strength can sit far below its own node-wise value near the
/// threshold. Throws DomainError for a node without incoming
/// infection (zero row sum of W).
Brackets steady_state_brackets(const NetworkModel& m);

/// max_i |sum_j w_ij v_j - q_i v_i / (1 - v_i)|.
double steady_state_residual(const NetworkModel& m, const Vector& v);

struct SteadyState {
    Vector v_inf;
    double residual = 0.0;
    Vector lower;
    Vector upper;
    std::size_t iterations = 0;
};

struct SteadyStateOptions {
    double tol = 1e-12;
    std::size_t max_iter = 1'000'000;
};

/// Endemic equilibrium via the fixed-point map v_i <- 1 - q_i / (q_i + (W v)_i)
/// started at the upper bracket. The map is monotone and the upper bracket is
/// mapped below itself, so the iterates decrease towards the largest fixed
/// point. Convergence requires both the sup-norm step and the residual to be
/// at most tol; after that the iteration continues while the iterates still
/// strictly decrease, which drives the error to rounding level.
///
/// Throws PreconditionError in the die-out regime (or for reducible W) and
/// ConvergenceError with the last iterate otherwise.
SteadyState solve_steady_state(const NetworkModel& m, const SteadyStateOptions& opts = {});

struct StabilityCertificate {
    double rho_f = 0.0;           // spectral radius of F
    double analytic_bound = 0.0;  // max_i (1 - q_i v_inf_i / (1 - v_inf_i))
};

/// Computes rho(F) by power iteration and the analytic row bound obtained
/// with the positive test vector v_inf. Throws CertificateFailure when
/// rho(F) >= 1.
StabilityCertificate stability_certificate(const NetworkModel& m, const SteadyState& ss);

}  // namespace nimfa
