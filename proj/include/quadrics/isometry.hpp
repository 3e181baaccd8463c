#pragma once

#include <Eigen/Core>

#include "quadrics/point_cloud.hpp"

namespace quadrics {

/// A rigid motion x -> Q x + v with Q orthogonal.
class Isometry {
  public:
    /// Throws ConfigError unless Q is square, sizes agree and
    /// max |Q^T Q - I| <= 1e-10.
    Isometry(Eigen::MatrixXd rotation, Eigen::VectorXd translation);

    static Isometry identity(int dim);
    static Isometry translation(Eigen::VectorXd v);

    int dim() const { return static_cast<int>(translation_.size()); }
    const Eigen::MatrixXd& rotation() const { return rotation_; }
    const Eigen::VectorXd& translation() const { return translation_; }

    Eigen::VectorXd apply(const Eigen::VectorXd& p) const;
    PointCloud apply(const PointCloud& cloud) const;

    /// x -> Q^T (x - v).
    Isometry inverse() const;

  private:
    Eigen::MatrixXd rotation_;
    Eigen::VectorXd translation_;
};

}  // namespace quadrics
