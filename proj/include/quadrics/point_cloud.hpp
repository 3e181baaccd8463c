#pragma once

#include <vector>

#include <Eigen/Core>

namespace quadrics {

/// A finite set of points in R^d, one per row. Non-empty, all entries finite.
class PointCloud {
  public:
    /// Throws ConfigError on an empty matrix, Error on non-finite entries.
    explicit PointCloud(Eigen::MatrixXd points);

    int size() const { return static_cast<int>(points_.rows()); }
    int dim() const { return static_cast<int>(points_.cols()); }
    const Eigen::MatrixXd& points() const { return points_; }

    /// Row i as a column vector.
    Eigen::VectorXd point(int i) const { return points_.row(i).transpose(); }

    /// Subset of rows, in the given order.
    PointCloud select(const std::vector<int>& rows) const;

    /// Every point projected onto the unit sphere. Throws NumericError on a zero point.
    PointCloud normalized() const;

  private:
    Eigen::MatrixXd points_;
};

}  // namespace quadrics
