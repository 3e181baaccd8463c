#pragma once

#include <vector>

#include <Eigen/Core>

#include "quadrics/point_cloud.hpp"
#include "quadrics/polynomial.hpp"

namespace quadrics {

/// Loss used to fit a model; recorded in serialized model files.
enum class LossVariant { kQFull, kQBase };

/// An ordered list of quadratic polynomials over a common dimension; the
/// learned manifold is the intersection of their zero sets.
class QuadricIntersection {
  public:
    /// Throws ConfigError on an empty list, DimensionError on mixed dimensions.
    explicit QuadricIntersection(std::vector<QuadraticPolynomial> quadrics);

    int dim() const { return quadrics_.front().dim(); }
    int size() const { return static_cast<int>(quadrics_.size()); }
    const QuadraticPolynomial& quadric(int k) const { return quadrics_[k]; }
    const std::vector<QuadraticPolynomial>& quadrics() const { return quadrics_; }

  private:
    std::vector<QuadraticPolynomial> quadrics_;
};

/// Mean order-2 distance from p to the model's quadrics; zero exactly on the
/// intersection.
double outlier_score(const QuadricIntersection& model, const Eigen::VectorXd& p);

/// outlier_score applied to every row of the cloud, in row order.
Eigen::VectorXd score_batch(const QuadricIntersection& model, const PointCloud& cloud);

/// Soft orthogonality residual |W^T W - I|_F^2 where the columns of W are the
/// weighted quadratic-part vectors of the model's polynomials.
double ortho_penalty(const QuadricIntersection& model);

/// Columns are the weighted quadratic-part vectors (d(d+1)/2 x m).
Eigen::MatrixXd weighted_matrix(const QuadricIntersection& model);

/// Columns are the canonical coefficient vectors (D x m).
Eigen::MatrixXd coefficient_matrix(const QuadricIntersection& model);

/// Inverse of coefficient_matrix.
QuadricIntersection model_from_coefficients(int dim, const Eigen::MatrixXd& coeffs);

}  // namespace quadrics
