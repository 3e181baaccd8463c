#include "quadrics/isometry.hpp"

#include <string>
#include <utility>

#include "quadrics/errors.hpp"

namespace quadrics {

Isometry::Isometry(Eigen::MatrixXd rotation, Eigen::VectorXd translation)
    : rotation_(std::move(rotation)), translation_(std::move(translation)) {
    if (rotation_.rows() != rotation_.cols() || rotation_.rows() != translation_.size()) {
        throw ConfigError("isometry blocks have inconsistent sizes");
    }
    if (!rotation_.allFinite() || !translation_.allFinite()) {
        throw Error("isometry has non-finite entries");
    }
    int d = static_cast<int>(rotation_.rows());
    double residual = (rotation_.transpose() * rotation_ - Eigen::MatrixXd::Identity(d, d))
                          .cwiseAbs()
                          .maxCoeff();
    if (residual > 1e-10) {
        throw ConfigError("matrix is not orthogonal (max |Q^T Q - I| = " +
                          std::to_string(residual) + ")");
    }
}

Isometry Isometry::identity(int dim) {
    return Isometry(Eigen::MatrixXd::Identity(dim, dim), Eigen::VectorXd::Zero(dim));
}

Isometry Isometry::translation(Eigen::VectorXd v) {
    int d = static_cast<int>(v.size());
    return Isometry(Eigen::MatrixXd::Identity(d, d), std::move(v));
}

Eigen::VectorXd Isometry::apply(const Eigen::VectorXd& p) const {
    if (p.size() != translation_.size()) {
        throw DimensionError("point of dimension " + std::to_string(p.size()) +
                             " against isometry of dimension " + std::to_string(dim()));
    }
    return rotation_ * p + translation_;
}

PointCloud Isometry::apply(const PointCloud& cloud) const {
    if (cloud.dim() != dim()) {
        throw DimensionError("cloud of dimension " + std::to_string(cloud.dim()) +
                             " against isometry of dimension " + std::to_string(dim()));
    }
    Eigen::MatrixXd out = cloud.points() * rotation_.transpose();
    out.rowwise() += translation_.transpose();
    return PointCloud(std::move(out));
}

Isometry Isometry::inverse() const {
    return Isometry(rotation_.transpose(), -(rotation_.transpose() * translation_));
}

}  // namespace quadrics
