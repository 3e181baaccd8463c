#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "quadrics/point_cloud.hpp"
#include "quadrics/polynomial.hpp"

namespace quadrics {

/// Closed space curve shaped like the seam of a tennis ball; for a + b = 1 it
/// lies on the unit sphere.
struct CurveSpec {
    double a = 0.8;
    double b = 0.2;
    int n = 99;
    double noise_sigma = 0.05;
    std::uint64_t seed = 0;
};

/// (a cos t + b cos 3t, a sin t - b sin 3t, 2 sqrt(ab) sin 2t).
/// Throws ConfigError unless a, b > 0.
Eigen::Vector3d tennis_point(double t, double a, double b);

/// n points at uniform random parameters with isotropic Gaussian noise of the
/// given standard deviation. Deterministic per seed.
PointCloud sample_curve(const CurveSpec& spec);

struct OutlierInjection {
    PointCloud cloud;                  // original points followed by the outliers
    std::vector<int> outlier_indices;  // row indices of the appended outliers
};

/// Appends `count` points in uniform random directions, each scaled to
/// norm_factor times the median norm of the input points.
OutlierInjection inject_outliers(const PointCloud& cloud, int count, double norm_factor,
                                 std::uint64_t seed);

/// Uniform samples from the d-ball of the given radius.
PointCloud sample_ball(int n, int dim, double radius, std::uint64_t seed);

/// Conservative estimate of the geometric distance from p to the zero set of
/// f: multi-start penalty-method descent on |x - p|^2 + mu f(x)^2 with mu
/// stepped through 10^0..10^8, followed by a Newton polish onto the surface.
/// The returned value is the distance to a feasible point, hence an upper
/// bound of the true distance up to the feasibility tolerance 1e-8.
/// Throws NumericError when no restart reaches the surface (empty zero set).
double geometric_distance_oracle(const QuadraticPolynomial& f, const Eigen::VectorXd& p,
                                 int restarts = 8, int steps = 200);

}  // namespace quadrics
