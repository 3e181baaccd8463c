#pragma once

#include <functional>
#include <random>

#include <Eigen/Dense>

#include "quadrics/isometry.hpp"
#include "quadrics/point_cloud.hpp"
#include "quadrics/polynomial.hpp"

namespace testutil {

inline Eigen::VectorXd random_vector(int dim, std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v[i] = scale * gauss(rng);
    return v;
}

inline quadrics::QuadraticPolynomial random_polynomial(int dim, std::mt19937_64& rng) {
    return quadrics::QuadraticPolynomial(
        dim, random_vector(quadrics::packed_quad_size(dim), rng), random_vector(dim, rng),
        std::normal_distribution<double>(0.0, 1.0)(rng));
}

inline Eigen::MatrixXd random_orthogonal(int dim, std::mt19937_64& rng) {
    Eigen::MatrixXd gauss(dim, dim);
    for (int i = 0; i < dim; ++i) gauss.row(i) = random_vector(dim, rng).transpose();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(gauss);
    return qr.householderQ() * Eigen::MatrixXd::Identity(dim, dim);
}

inline quadrics::Isometry random_isometry(int dim, std::mt19937_64& rng, double shift = 1.0) {
    return quadrics::Isometry(random_orthogonal(dim, rng), random_vector(dim, rng, shift));
}

inline quadrics::PointCloud random_cloud(int n, int dim, std::mt19937_64& rng,
                                         double scale = 1.0) {
    Eigen::MatrixXd points(n, dim);
    for (int i = 0; i < n; ++i) points.row(i) = random_vector(dim, rng, scale).transpose();
    return quadrics::PointCloud(points);
}

/// Central finite difference of a scalar function of one coordinate.
inline double central_difference(const std::function<double(double)>& fn, double x,
                                 double step = 1e-5) {
    return (fn(x + step) - fn(x - step)) / (2.0 * step);
}

/// |a - b| <= tol * max(1, |a|, |b|).
inline bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace testutil
