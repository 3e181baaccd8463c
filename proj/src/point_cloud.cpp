#include "quadrics/point_cloud.hpp"

#include <utility>

#include "quadrics/errors.hpp"

namespace quadrics {

PointCloud::PointCloud(Eigen::MatrixXd points) : points_(std::move(points)) {
    if (points_.rows() < 1 || points_.cols() < 1) {
        throw ConfigError("point cloud must contain at least one point");
    }
    if (!points_.allFinite()) {
        throw Error("point cloud contains non-finite entries");
    }
}

PointCloud PointCloud::select(const std::vector<int>& rows) const {
    Eigen::MatrixXd out(rows.size(), points_.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.row(i) = points_.row(rows[i]);
    }
    return PointCloud(std::move(out));
}

PointCloud PointCloud::normalized() const {
    Eigen::MatrixXd out = points_;
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
        double norm = out.row(i).norm();
        if (norm == 0.0) {
            throw NumericError("cannot project the zero point onto the unit sphere (row " +
                               std::to_string(i) + ")");
        }
        out.row(i) /= norm;
    }
    return PointCloud(std::move(out));
}

}  // namespace quadrics
