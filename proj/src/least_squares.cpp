#include "ieldtm/least_squares.hpp"

#include "ieldtm/error.hpp"

#include <Eigen/SPQRSupport>

#include <iostream>
#include <memory>
#include <string>

namespace ieldtm {

namespace {

/// Factorisation reused across refinement steps.
class Factorisation {
public:
    Factorisation(const Eigen::SparseMatrix<double>& scaled, const LeastSquaresOptions& options)
        : backend_(options.backend) {
        if (backend_ == LeastSquaresBackend::SparseQR) {
            sparse_ = std::make_unique<Eigen::SPQR<Eigen::SparseMatrix<double>>>();
            if (options.rank_tolerance >= 0.0) sparse_->setPivotThreshold(options.rank_tolerance);
            sparse_->setSPQROrdering(options.ordering);
            sparse_->compute(scaled);
            if (sparse_->info() != Eigen::Success) throw Error("sparse QR factorisation failed");
            rank_ = sparse_->rank();
        } else {
            dense_ = std::make_unique<Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>>(
                Eigen::MatrixXd(scaled));
            rank_ = dense_->rank();
        }
    }

    [[nodiscard]] Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const {
        if (sparse_) {
            Eigen::VectorXd x = sparse_->solve(rhs);
            if (sparse_->info() != Eigen::Success) throw Error("sparse QR solve failed");
            return x;
        }
        return dense_->solve(rhs);
    }

    [[nodiscard]] Eigen::Index rank() const noexcept { return rank_; }

private:
    LeastSquaresBackend backend_;
    std::unique_ptr<Eigen::SPQR<Eigen::SparseMatrix<double>>> sparse_;
    std::unique_ptr<Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>> dense_;
    Eigen::Index rank_ = 0;
};

} // namespace

double spectral_norm_estimate(const Eigen::SparseMatrix<double>& matrix, int iterations) {
    if (matrix.cols() == 0 || matrix.nonZeros() == 0) return 0.0;
    Eigen::VectorXd v = Eigen::VectorXd::Ones(matrix.cols()).normalized();
    double sigma = 0.0;
    for (int it = 0; it < iterations; ++it) {
        const Eigen::VectorXd w = matrix.transpose() * (matrix * v);
        const double norm = w.norm();
        if (norm == 0.0) return 0.0;
        sigma = std::sqrt(norm);
        v = w / norm;
    }
    return sigma;
}

LeastSquaresResult solve_least_squares(const Eigen::SparseMatrix<double>& matrix,
                                       const Eigen::VectorXd& rhs,
                                       const LeastSquaresOptions& options) {
    IELDTM_REQUIRE(matrix.rows() == rhs.size(), InvalidParameter,
                   "matrix and right-hand side row counts differ");
    IELDTM_REQUIRE(matrix.rows() >= matrix.cols(), UnderdeterminedSystem,
                   "least squares needs rows >= cols, got " + std::to_string(matrix.rows()) +
                       " x " + std::to_string(matrix.cols()));
    IELDTM_REQUIRE(options.refinement_steps >= 0, InvalidParameter,
                   "refinement steps must be non-negative");

    Eigen::VectorXd scale = Eigen::VectorXd::Ones(matrix.cols());
    Eigen::SparseMatrix<double> scaled = matrix;
    if (options.equilibrate) {
        for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
            const double norm = matrix.col(c).norm();
            if (norm > 0.0) scale(c) = 1.0 / norm;
        }
        scaled = matrix * scale.asDiagonal();
    }
    scaled.makeCompressed();

    const Factorisation factor(scaled, options);
    Eigen::VectorXd y = factor.solve(rhs);
    for (int step = 0; step < options.refinement_steps; ++step) {
        const Eigen::VectorXd r = rhs - scaled * y;
        y += factor.solve(r);
    }

    LeastSquaresResult result;
    result.solution = scale.asDiagonal() * y;
    const Eigen::VectorXd residual = matrix * result.solution - rhs;
    result.residual_norm = residual.norm();
    const double denom = spectral_norm_estimate(matrix) * rhs.norm();
    result.optimality = denom > 0.0 ? (matrix.transpose() * residual).norm() / denom : 0.0;
    result.rank = factor.rank();
    result.rank_deficient = result.rank < matrix.cols();
    if (result.rank_deficient && options.warn_rank_deficient)
        std::cerr << "warning: least-squares matrix is numerically rank deficient (rank "
                  << result.rank << " of " << matrix.cols() << " columns)\n";
    return result;
}

LeastSquaresResult solve_least_squares(const GlobalSystem& system, const LeastSquaresOptions& options) {
    return solve_least_squares(system.matrix, system.rhs, options);
}

} // namespace ieldtm
