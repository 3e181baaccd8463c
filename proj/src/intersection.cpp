#include "quadrics/intersection.hpp"

#include <string>
#include <utility>

#include "quadrics/errors.hpp"

namespace quadrics {

QuadricIntersection::QuadricIntersection(std::vector<QuadraticPolynomial> quadrics)
    : quadrics_(std::move(quadrics)) {
    if (quadrics_.empty()) {
        throw ConfigError("model must contain at least one quadric");
    }
    int d = quadrics_.front().dim();
    for (const auto& q : quadrics_) {
        if (q.dim() != d) {
            throw DimensionError("model mixes quadrics of dimensions " + std::to_string(d) +
                                 " and " + std::to_string(q.dim()));
        }
    }
}

double outlier_score(const QuadricIntersection& model, const Eigen::VectorXd& p) {
    double acc = 0.0;
    for (const auto& q : model.quadrics()) {
        acc += dist_2(q, p);
    }
    return acc / model.size();
}

Eigen::VectorXd score_batch(const QuadricIntersection& model, const PointCloud& cloud) {
    if (cloud.dim() != model.dim()) {
        throw DimensionError("cloud of dimension " + std::to_string(cloud.dim()) +
                             " against model of dimension " + std::to_string(model.dim()));
    }
    Eigen::VectorXd scores(cloud.size());
    for (int i = 0; i < cloud.size(); ++i) {
        scores[i] = outlier_score(model, cloud.point(i));
    }
    return scores;
}

Eigen::MatrixXd weighted_matrix(const QuadricIntersection& model) {
    Eigen::MatrixXd w(packed_quad_size(model.dim()), model.size());
    for (int k = 0; k < model.size(); ++k) {
        w.col(k) = model.quadric(k).weighted_quad();
    }
    return w;
}

Eigen::MatrixXd coefficient_matrix(const QuadricIntersection& model) {
    Eigen::MatrixXd v(coefficient_count(model.dim()), model.size());
    for (int k = 0; k < model.size(); ++k) {
        v.col(k) = model.quadric(k).coefficients();
    }
    return v;
}

QuadricIntersection model_from_coefficients(int dim, const Eigen::MatrixXd& coeffs) {
    std::vector<QuadraticPolynomial> quadrics;
    quadrics.reserve(coeffs.cols());
    for (Eigen::Index k = 0; k < coeffs.cols(); ++k) {
        quadrics.push_back(QuadraticPolynomial::from_coefficients(dim, coeffs.col(k)));
    }
    return QuadricIntersection(std::move(quadrics));
}

double ortho_penalty(const QuadricIntersection& model) {
    Eigen::MatrixXd w = weighted_matrix(model);
    Eigen::MatrixXd gram = w.transpose() * w;
    gram.diagonal().array() -= 1.0;
    return gram.squaredNorm();
}

}  // namespace quadrics
