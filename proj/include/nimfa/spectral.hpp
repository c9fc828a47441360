#pragma once

#include <cstddef>
#include <optional>

#include "nimfa/types.hpp"

namespace nimfa {

/// Perron root and eigenvector of a nonnegative matrix.
struct SpectralInfo {
    double rho = 0.0;         // Rayleigh quotient at the final iterate
    Vector x1;                // unit 2-norm, positive for irreducible input
    std::size_t iterations = 0;
    double residual = 0.0;    // ||M x1 - rho x1||_2
};

struct PowerIterationOptions {
    double tol = 1e-12;
    std::size_t max_iter = 100000;
    std::optional<Vector> start;  // defaults to the normalized all-one vector
};

/// True iff the digraph with an edge j -> i for every w(i, j) > 0 is strongly
/// connected. A single node is strongly connected.
bool strongly_connected(const Matrix& w);

/// Power iteration for the spectral radius and principal eigenvector of a
/// nonnegative matrix. Irreducibility is the caller's responsibility.
///
/// Stops when the relative change of the Rayleigh quotient and the
/// eigen-residual are both below tol (the residual relative to max(1, rho)).
/// If every diagonal entry is zero the iteration runs on M + sI, which is
/// primitive for irreducible M, and the result is shifted back.
///
/// Throws ConvergenceError carrying the last iterate after max_iter steps.
SpectralInfo spectral_radius_principal(const Matrix& m, const PowerIterationOptions& opts = {});

/// Magnitude-only spectral radius estimate for matrices with entries of
/// either sign. Subspace iteration on a block of up to four vectors; the
/// largest Ritz value magnitude is returned once it is stable to tol
/// (relative) for three consecutive steps. The block captures dominant pairs
/// of opposite sign and complex pairs that defeat plain power iteration.
double spectral_radius_magnitude(const Matrix& m, double tol = 1e-8,
                                 std::size_t max_iter = 200000);

/// Induced infinity norm: max row sum of absolute values.
double inf_norm(const Matrix& m);

/// max_i (M y)_i / y_i for a positive vector y. For nonnegative M this is an
/// upper bound on rho(M).
double collatz_wielandt_bound(const Matrix& m, const Vector& y);

}  // namespace nimfa
