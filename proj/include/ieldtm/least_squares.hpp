#pragma once

// Least-squares solution of the overdetermined collocation system.

#include "ieldtm/assembly.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace ieldtm {

enum class LeastSquaresBackend {
    SparseQR, // multifrontal sparse QR with rank detection
    DenseCOD, // dense complete orthogonal decomposition (minimum-norm)
};

struct LeastSquaresOptions {
    LeastSquaresBackend backend = LeastSquaresBackend::SparseQR;
    /// Scale columns to unit 2-norm before factorising.
    bool equilibrate = true;
    /// Corrections x += argmin ||M d - r|| applied after the first solve.
    int refinement_steps = 1;
    /// Rank threshold of the sparse factorisation; negative selects the library default.
    double rank_tolerance = -1.0;
    /// SPQR_ORDERING_* code of the fill-reducing column ordering; 5 is AMD on M^T M.
    int ordering = 5;
    /// Print a warning to stderr when the numerical rank is below cols.
    bool warn_rank_deficient = true;
};

struct LeastSquaresResult {
    Eigen::VectorXd solution;
    double residual_norm = 0.0;
    /// ||M^T r|| / (||M||_2 ||P||), zero when P = 0.
    double optimality = 0.0;
    Eigen::Index rank = 0;
    bool rank_deficient = false;
};

[[nodiscard]] LeastSquaresResult solve_least_squares(const Eigen::SparseMatrix<double>& matrix,
                                                     const Eigen::VectorXd& rhs,
                                                     const LeastSquaresOptions& options = {});

[[nodiscard]] LeastSquaresResult solve_least_squares(const GlobalSystem& system,
                                                     const LeastSquaresOptions& options = {});

/// Largest singular value estimated by power iteration on M^T M.
[[nodiscard]] double spectral_norm_estimate(const Eigen::SparseMatrix<double>& matrix,
                                            int iterations = 60);

} // namespace ieldtm
