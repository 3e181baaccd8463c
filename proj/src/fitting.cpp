#include "quadrics/fitting.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <utility>

#include <Eigen/QR>

#include "quadrics/baselines.hpp"
#include "quadrics/errors.hpp"

namespace quadrics {

namespace {

constexpr double kHsTol = 1e-12;

// Penalty |G - I|_F^2 and its gradient 4 M (G - I) for G = M^T M.
double gram_penalty(const Eigen::MatrixXd& m) {
    Eigen::MatrixXd gram = m.transpose() * m;
    gram.diagonal().array() -= 1.0;
    return gram.squaredNorm();
}

Eigen::MatrixXd gram_penalty_grad(const Eigen::MatrixXd& m) {
    Eigen::MatrixXd gram = m.transpose() * m;
    gram.diagonal().array() -= 1.0;
    return 4.0 * m * gram;
}

double data_term(LossVariant variant, const QuadricIntersection& model, const PointCloud& batch) {
    double acc = 0.0;
    for (int j = 0; j < batch.size(); ++j) {
        Eigen::VectorXd p = batch.point(j);
        for (const auto& q : model.quadrics()) {
            if (variant == LossVariant::kQFull) {
                acc += dist_2(q, p);
            } else {
                double v = evaluate(q, p);
                acc += v * v;
            }
        }
    }
    return acc;
}

// d(dist_2)/d(coefficients of f) at p, accumulated into `out` (length D).
// Terms exactly on the quadric and degenerate fallbacks contribute zero
// (subgradient convention); a constant nonzero quadric has no finite
// distance and aborts the gradient.
void accumulate_dist2_grad(const QuadraticPolynomial& f, const Eigen::VectorXd& p,
                           Eigen::Ref<Eigen::VectorXd> out) {
    int d = f.dim();
    double val0 = evaluate(f, p);
    double val = std::abs(val0);
    Eigen::VectorXd g = gradient(f, p);
    double gnorm = g.norm();
    double s = hs_norm(f);
    if (s <= kHsTol) {
        if (gnorm <= kHsTol && val > kHsTol) {
            throw NumericError(
                "order-2 distance is infinite for a constant nonzero quadric; re-initialize");
        }
        return;
    }
    if (val == 0.0) {
        return;
    }
    double sign = val0 > 0.0 ? 1.0 : -1.0;
    double h = 0.5 * gnorm;
    double r = std::sqrt(h * h + val * s);
    double dval = 1.0 / (2.0 * r);
    double dh = (h / r - 1.0) / s;
    double ds = (val * s / (2.0 * r) - (r - h)) / (s * s);
    double inv_gnorm = gnorm > kHsTol ? 1.0 / gnorm : 0.0;  // norm kink: subgradient 0

    const Eigen::VectorXd& a = f.packed_quad();
    int idx = 0;
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j, ++idx) {
            if (i == j) {
                out[idx] += sign * dval * (p[i] * p[i]) + dh * (g[i] * p[i]) * inv_gnorm +
                            ds * a[idx] / s;
            } else {
                // alpha_ij = 2 A_ij, so d s / d alpha_ij = A_ij / s.
                out[idx] += sign * dval * (p[i] * p[j]) +
                            dh * 0.5 * (g[i] * p[j] + g[j] * p[i]) * inv_gnorm +
                            ds * a[idx] / s;
            }
        }
    }
    int lin0 = packed_quad_size(d);
    for (int i = 0; i < d; ++i) {
        out[lin0 + i] += sign * dval * p[i] + dh * 0.5 * g[i] * inv_gnorm;
    }
    out[lin0 + d] += sign * dval;
}

QuadricIntersection init_model_rng(int dim, int quadric_count, std::mt19937_64& rng) {
    int packed = packed_quad_size(dim);
    int total = coefficient_count(dim);
    if (quadric_count < 1) {
        throw ConfigError("quadric count must be positive");
    }
    if (quadric_count > packed) {
        throw ConfigError("cannot orthonormalize " + std::to_string(quadric_count) +
                          " quadrics in dimension " + std::to_string(dim) + " (max " +
                          std::to_string(packed) + ")");
    }
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd theta(total, quadric_count);
    for (int k = 0; k < quadric_count; ++k) {
        for (int i = 0; i < total; ++i) {
            theta(i, k) = gauss(rng);
        }
    }
    // Orthonormalize the weighted quadratic-part vectors, then map back to
    // monomial coefficients (off-diagonal entries scale by sqrt(2)).
    const double sqrt2 = std::sqrt(2.0);
    Eigen::MatrixXd weighted(packed, quadric_count);
    int idx = 0;
    for (int i = 0; i < dim; ++i) {
        for (int j = i; j < dim; ++j, ++idx) {
            weighted.row(idx) = theta.row(idx) / (i == j ? 1.0 : sqrt2);
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(weighted);
    Eigen::MatrixXd ortho =
        qr.householderQ() * Eigen::MatrixXd::Identity(packed, quadric_count);
    idx = 0;
    for (int i = 0; i < dim; ++i) {
        for (int j = i; j < dim; ++j, ++idx) {
            theta.row(idx) = ortho.row(idx) * (i == j ? 1.0 : sqrt2);
        }
    }
    theta.bottomRows(dim + 1) *= 0.01;
    return model_from_coefficients(dim, theta);
}

void check_batch(const QuadricIntersection& model, const PointCloud& batch) {
    if (batch.dim() != model.dim()) {
        throw DimensionError("batch of dimension " + std::to_string(batch.dim()) +
                             " against model of dimension " + std::to_string(model.dim()));
    }
}

}  // namespace

LossBreakdown loss_qfull(const QuadricIntersection& model, const PointCloud& batch,
                         double lambda) {
    check_batch(model, batch);
    LossBreakdown out;
    out.data = data_term(LossVariant::kQFull, model, batch);
    out.penalty = gram_penalty(weighted_matrix(model));
    out.total = out.data + lambda * out.penalty;
    return out;
}

LossBreakdown loss_qbase(const QuadricIntersection& model, const PointCloud& batch,
                         double lambda) {
    check_batch(model, batch);
    LossBreakdown out;
    out.data = data_term(LossVariant::kQBase, model, batch);
    out.penalty = gram_penalty(coefficient_matrix(model));
    out.total = out.data + lambda * out.penalty;
    return out;
}

LossBreakdown loss(LossVariant variant, const QuadricIntersection& model, const PointCloud& batch,
                   double lambda) {
    return variant == LossVariant::kQFull ? loss_qfull(model, batch, lambda)
                                          : loss_qbase(model, batch, lambda);
}

LossGradient loss_gradient_parts(LossVariant variant, const QuadricIntersection& model,
                                 const PointCloud& batch) {
    check_batch(model, batch);
    int d = model.dim();
    int total = coefficient_count(d);
    int m = model.size();
    LossGradient out;
    out.data = Eigen::MatrixXd::Zero(total, m);

    if (variant == LossVariant::kQFull) {
        for (int j = 0; j < batch.size(); ++j) {
            Eigen::VectorXd p = batch.point(j);
            for (int k = 0; k < m; ++k) {
                accumulate_dist2_grad(model.quadric(k), p, out.data.col(k));
            }
        }
        Eigen::MatrixXd wgrad = gram_penalty_grad(weighted_matrix(model));
        out.penalty = Eigen::MatrixXd::Zero(total, m);
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        int idx = 0;
        for (int i = 0; i < d; ++i) {
            for (int j = i; j < d; ++j, ++idx) {
                out.penalty.row(idx) = wgrad.row(idx) * (i == j ? 1.0 : inv_sqrt2);
            }
        }
    } else {
        for (int j = 0; j < batch.size(); ++j) {
            Eigen::VectorXd p = batch.point(j);
            Eigen::VectorXd phi = feature_map(p);
            for (int k = 0; k < m; ++k) {
                out.data.col(k) += 2.0 * evaluate(model.quadric(k), p) * phi;
            }
        }
        out.penalty = gram_penalty_grad(coefficient_matrix(model));
    }
    return out;
}

Eigen::MatrixXd grad_loss(LossVariant variant, const QuadricIntersection& model,
                          const PointCloud& batch, double lambda) {
    LossGradient parts = loss_gradient_parts(variant, model, batch);
    return parts.data + lambda * parts.penalty;
}

QuadricIntersection init_model(int dim, int quadric_count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return init_model_rng(dim, quadric_count, rng);
}

std::pair<QuadricIntersection, TrainTrace> fit(const PointCloud& input, const FitConfig& config) {
    if (config.lambda < 0.0) throw ConfigError("lambda must be nonnegative");
    if (config.learning_rate <= 0.0) throw ConfigError("learning rate must be positive");
    if (config.batch_size < 1) throw ConfigError("batch size must be positive");
    if (config.epochs < 0) throw ConfigError("epoch count must be nonnegative");

    PointCloud cloud = config.normalize_inputs ? input.normalized() : input;
    int d = cloud.dim();
    int n = cloud.size();

    std::mt19937_64 rng(config.seed);
    Eigen::MatrixXd theta = coefficient_matrix(init_model_rng(d, config.quadric_count, rng));

    TrainTrace trace;
    trace.epochs.reserve(config.epochs);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        auto start_time = std::chrono::steady_clock::now();
        double lr = config.learning_rate;
        if (config.lr_schedule == LrSchedule::kCosineDecay) {
            lr *= 0.5 * (1.0 + std::cos(std::numbers::pi * epoch / config.epochs));
        }
        std::shuffle(order.begin(), order.end(), rng);
        for (int start = 0; start < n; start += config.batch_size) {
            int stop = std::min(n, start + config.batch_size);  // last short batch kept
            std::vector<int> rows(order.begin() + start, order.begin() + stop);
            PointCloud batch = cloud.select(rows);
            QuadricIntersection model = model_from_coefficients(d, theta);
            LossGradient parts = loss_gradient_parts(config.loss, model, batch);
            theta -= lr * (parts.data / batch.size() + config.lambda * parts.penalty);
            if (!theta.allFinite()) {
                throw NumericError("training diverged at epoch " + std::to_string(epoch));
            }
        }
        QuadricIntersection model = model_from_coefficients(d, theta);
        LossBreakdown full = loss(config.loss, model, cloud, config.lambda);
        if (!std::isfinite(full.total)) {
            throw NumericError("training diverged at epoch " + std::to_string(epoch));
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                       start_time)
                             .count();
        trace.epochs.push_back({full.data, full.penalty, full.total, seconds});
    }
    return {model_from_coefficients(d, theta), std::move(trace)};
}

}  // namespace quadrics
