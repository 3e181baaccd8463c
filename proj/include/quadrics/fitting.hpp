#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "quadrics/intersection.hpp"
#include "quadrics/point_cloud.hpp"

namespace quadrics {

enum class LrSchedule { kConstant, kCosineDecay };

struct FitConfig {
    LossVariant loss = LossVariant::kQFull;
    int quadric_count = 1;
    double lambda = 1.0;
    double learning_rate = 1e-2;
    int batch_size = 64;
    int epochs = 500;
    std::uint64_t seed = 0;
    /// Project points onto the unit sphere before fitting.
    bool normalize_inputs = false;
    LrSchedule lr_schedule = LrSchedule::kCosineDecay;
};

struct EpochStats {
    double data_term;
    double penalty_term;
    double total_loss;
    double seconds;
};

/// One entry per epoch; the loss columns are exact full-dataset values at the
/// parameters reached at the end of the epoch.
struct TrainTrace {
    std::vector<EpochStats> epochs;
};

struct LossBreakdown {
    double data = 0.0;
    double penalty = 0.0;
    double total = 0.0;  // data + lambda * penalty
};

/// Sum over batch points and quadrics of the order-2 distances, plus
/// lambda times the weighted-vector orthogonality residual.
LossBreakdown loss_qfull(const QuadricIntersection& model, const PointCloud& batch, double lambda);

/// Sum of squared algebraic distances, plus lambda times the orthogonality
/// residual of the full Euclidean coefficient vectors.
LossBreakdown loss_qbase(const QuadricIntersection& model, const PointCloud& batch, double lambda);

LossBreakdown loss(LossVariant variant, const QuadricIntersection& model, const PointCloud& batch,
                   double lambda);

/// Data and penalty gradients over all m*D coefficients, one column per quadric.
struct LossGradient {
    Eigen::MatrixXd data;     // D x m
    Eigen::MatrixXd penalty;  // D x m
};

/// Analytic gradients of the two loss terms. Distance terms sitting exactly
/// at zero contribute a zero subgradient; a +infinity distance (degenerate
/// constant polynomial) throws NumericError.
LossGradient loss_gradient_parts(LossVariant variant, const QuadricIntersection& model,
                                 const PointCloud& batch);

/// data gradient + lambda * penalty gradient; differentiates loss(variant, ...).
Eigen::MatrixXd grad_loss(LossVariant variant, const QuadricIntersection& model,
                          const PointCloud& batch, double lambda);

/// Gaussian coefficients with the weighted quadratic-part vectors
/// orthonormalized by QR, linear and constant parts scaled by 0.01.
/// Requires m <= d(d+1)/2.
QuadricIntersection init_model(int dim, int quadric_count, std::uint64_t seed);

/// Minibatch gradient descent on the chosen loss. Deterministic for a fixed
/// seed: fixed shuffle order and reduction order, single-threaded steps.
/// Per-step update uses the batch-mean data gradient plus lambda times the
/// penalty gradient. Throws NumericError (with the epoch index) if the loss
/// or the parameters stop being finite.
std::pair<QuadricIntersection, TrainTrace> fit(const PointCloud& cloud, const FitConfig& config);

}  // namespace quadrics
