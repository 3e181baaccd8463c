#pragma once

#include <Eigen/Core>

#include "quadrics/intersection.hpp"
#include "quadrics/point_cloud.hpp"

namespace quadrics {

/// Linear subspace model: orthonormal basis of the top-k singular directions
/// of the (optionally centered) data matrix.
struct PcaModel {
    int dim;
    int k;
    Eigen::MatrixXd basis;  // d x k, orthonormal columns
    bool centered;
    Eigen::VectorXd mean;  // zero when non-centered
};

/// Throws ConfigError unless 1 <= k <= min(d, n).
PcaModel pca_fit(const PointCloud& cloud, int k, bool centered);

/// Distance from p to the subspace (after centering): |p' - proj(p')|.
double pca_distance(const PcaModel& model, const Eigen::VectorXd& p);

/// Degree-2 monomial feature map in the canonical coefficient order
/// (pairwise products for i <= j, coordinates, constant), so that
/// dot(feature_map(p), v(f)) = f(p).
Eigen::VectorXd feature_map(const Eigen::VectorXd& p);

/// Weighted variant with sqrt(2) on off-diagonal products and linear terms;
/// realizes the degree-2 polynomial kernel: dot(ft(x), ft(y)) = (dot(x,y)+1)^2.
Eigen::VectorXd feature_map_tilde(const Eigen::VectorXd& p);

/// Rows are feature_map of the cloud's rows (n x D).
Eigen::MatrixXd feature_matrix(const PointCloud& cloud);

struct QBaseExact {
    QuadricIntersection model;
    double objective;  // sum of the m smallest squared singular values
};

/// Exact minimizer of the squared-algebraic-distance objective under
/// Euclidean-orthonormal coefficient vectors: the m right singular vectors of
/// the feature matrix with smallest singular values (non-centered PCA in
/// feature space, via dense SVD; intended for small d).
QBaseExact qbase_exact(const PointCloud& cloud, int m);

enum class NormSign { kPositive, kNegative };

/// |p|, negated for NormSign::kNegative (low-norm outlier convention).
double norm_score(const Eigen::VectorXd& p, NormSign sign = NormSign::kPositive);

}  // namespace quadrics
