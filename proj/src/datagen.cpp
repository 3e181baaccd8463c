#include "quadrics/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <utility>

#include "quadrics/errors.hpp"

namespace quadrics {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::VectorXd random_direction(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd v(dim);
    do {
        for (int i = 0; i < dim; ++i) v[i] = gauss(rng);
    } while (v.norm() < 1e-12);
    return v / v.norm();
}

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

// Gradient descent with backtracking on |x - p|^2 + mu f(x)^2.
void penalty_descent(const QuadraticPolynomial& f, const Eigen::VectorXd& p, double mu, int steps,
                     Eigen::VectorXd& x) {
    double step = 1.0;
    for (int it = 0; it < steps; ++it) {
        double fx = evaluate(f, x);
        Eigen::VectorXd g = 2.0 * (x - p) + 2.0 * mu * fx * gradient(f, x);
        double gn2 = g.squaredNorm();
        if (gn2 < 1e-24) break;
        double psi = (x - p).squaredNorm() + mu * fx * fx;
        bool accepted = false;
        double eta = step;
        for (int bt = 0; bt < 60; ++bt) {
            Eigen::VectorXd xn = x - eta * g;
            double fn = evaluate(f, xn);
            double psin = (xn - p).squaredNorm() + mu * fn * fn;
            if (psin <= psi - 1e-4 * eta * gn2) {
                x = xn;
                step = 2.0 * eta;
                accepted = true;
                break;
            }
            eta *= 0.5;
        }
        if (!accepted) break;
    }
}

}  // namespace

Eigen::Vector3d tennis_point(double t, double a, double b) {
    if (a <= 0.0 || b <= 0.0) {
        throw ConfigError("curve parameters must be positive");
    }
    return {a * std::cos(t) + b * std::cos(3.0 * t), a * std::sin(t) - b * std::sin(3.0 * t),
            2.0 * std::sqrt(a * b) * std::sin(2.0 * t)};
}

PointCloud sample_curve(const CurveSpec& spec) {
    if (spec.n < 1) {
        throw ConfigError("sample count must be positive");
    }
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> uniform(0.0, 2.0 * std::numbers::pi);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd points(spec.n, 3);
    for (int i = 0; i < spec.n; ++i) {
        Eigen::Vector3d q = tennis_point(uniform(rng), spec.a, spec.b);
        for (int j = 0; j < 3; ++j) {
            points(i, j) = q[j] + spec.noise_sigma * gauss(rng);
        }
    }
    return PointCloud(std::move(points));
}

OutlierInjection inject_outliers(const PointCloud& cloud, int count, double norm_factor,
                                 std::uint64_t seed) {
    if (count < 0) {
        throw ConfigError("outlier count must be nonnegative");
    }
    std::vector<double> norms;
    norms.reserve(cloud.size());
    for (int i = 0; i < cloud.size(); ++i) {
        norms.push_back(cloud.point(i).norm());
    }
    double target = norm_factor * median(std::move(norms));

    std::mt19937_64 rng(seed);
    Eigen::MatrixXd points(cloud.size() + count, cloud.dim());
    points.topRows(cloud.size()) = cloud.points();
    std::vector<int> indices;
    indices.reserve(count);
    for (int i = 0; i < count; ++i) {
        points.row(cloud.size() + i) = (target * random_direction(cloud.dim(), rng)).transpose();
        indices.push_back(cloud.size() + i);
    }
    return OutlierInjection{PointCloud(std::move(points)), std::move(indices)};
}

PointCloud sample_ball(int n, int dim, double radius, std::uint64_t seed) {
    if (n < 1 || dim < 1 || radius <= 0.0) {
        throw ConfigError("ball sample needs positive count, dimension and radius");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    Eigen::MatrixXd points(n, dim);
    for (int i = 0; i < n; ++i) {
        double r = radius * std::pow(uniform(rng), 1.0 / dim);
        points.row(i) = (r * random_direction(dim, rng)).transpose();
    }
    return PointCloud(std::move(points));
}

double geometric_distance_oracle(const QuadraticPolynomial& f, const Eigen::VectorXd& p,
                                 int restarts, int steps) {
    if (p.size() != f.dim()) {
        throw DimensionError("point of dimension " + std::to_string(p.size()) +
                             " against polynomial of dimension " + std::to_string(f.dim()));
    }
    if (restarts < 1 || steps < 1) {
        throw ConfigError("oracle needs at least one restart and one step");
    }
    std::mt19937_64 rng(0x51ab5eedULL);  // restarts are part of the (pure) function
    std::normal_distribution<double> gauss(0.0, 1.0);
    double spread = 0.5 * (1.0 + p.norm());

    double best = kInf;
    for (int r = 0; r < restarts; ++r) {
        Eigen::VectorXd x = p;
        if (r > 0) {
            for (int i = 0; i < x.size(); ++i) {
                x[i] += spread * gauss(rng);
            }
        }
        for (double mu = 1.0; mu <= 1e8 + 1.0; mu *= 10.0) {
            penalty_descent(f, p, mu, steps, x);
        }
        // Newton polish onto the surface.
        for (int it = 0; it < 100; ++it) {
            double fx = evaluate(f, x);
            if (std::abs(fx) <= 1e-15) break;
            Eigen::VectorXd g = gradient(f, x);
            double gn2 = g.squaredNorm();
            if (gn2 < 1e-18) break;
            x -= (fx / gn2) * g;
        }
        if (std::abs(evaluate(f, x)) < 1e-8) {
            best = std::min(best, (p - x).norm());
        }
    }
    if (best == kInf) {
        throw NumericError("no feasible point found; the zero set may be empty");
    }
    return best;
}

}  // namespace quadrics
