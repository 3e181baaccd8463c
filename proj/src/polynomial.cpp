#include "quadrics/polynomial.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "quadrics/errors.hpp"
#include "quadrics/isometry.hpp"

namespace quadrics {

namespace {

constexpr double kHsTol = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_dim(const QuadraticPolynomial& f, const Eigen::VectorXd& p) {
    if (p.size() != f.dim()) {
        throw DimensionError("point of dimension " + std::to_string(p.size()) +
                             " against polynomial of dimension " + std::to_string(f.dim()));
    }
}

void check_same_dim(const QuadraticPolynomial& f, const QuadraticPolynomial& g) {
    if (f.dim() != g.dim()) {
        throw DimensionError("polynomials of dimensions " + std::to_string(f.dim()) + " and " +
                             std::to_string(g.dim()));
    }
}

// Unique nonnegative root of val - gnorm t - hsnorm t^2 (val, gnorm, hsnorm
// all >= 0), the order-2 distance. The root is evaluated as
// val / (h + sqrt(h^2 + val hsnorm)), h = gnorm / 2, which avoids the
// cancellation of the textbook quadratic formula for large gradients.
// Degenerate quadratic part falls back to the order-1 root, and a constant
// nonzero polynomial has no root at all: +infinity.
double order2_root(double val, double gnorm, double hsnorm) {
    if (hsnorm <= kHsTol) {
        if (gnorm <= kHsTol) {
            return val > kHsTol ? kInf : 0.0;
        }
        return val / gnorm;
    }
    if (val == 0.0) {
        return 0.0;
    }
    double h = 0.5 * gnorm;
    return val / (h + std::sqrt(h * h + val * hsnorm));
}

}  // namespace

QuadraticPolynomial::QuadraticPolynomial(int dim, Eigen::VectorXd packed_quad, Eigen::VectorXd lin,
                                         double constant)
    : dim_(dim), packed_quad_(std::move(packed_quad)), lin_(std::move(lin)), constant_(constant) {
    if (dim_ < 1) {
        throw ConfigError("polynomial dimension must be positive");
    }
    if (packed_quad_.size() != packed_quad_size(dim_) || lin_.size() != dim_) {
        throw DimensionError("coefficient blocks do not match dimension " + std::to_string(dim_));
    }
    if (!packed_quad_.allFinite() || !lin_.allFinite() || !std::isfinite(constant_)) {
        throw Error("polynomial has non-finite coefficients");
    }
}

QuadraticPolynomial QuadraticPolynomial::zero(int dim) {
    return QuadraticPolynomial(dim, Eigen::VectorXd::Zero(packed_quad_size(dim)),
                               Eigen::VectorXd::Zero(dim), 0.0);
}

QuadraticPolynomial QuadraticPolynomial::from_dense(const Eigen::MatrixXd& quad,
                                                    const Eigen::VectorXd& lin, double constant) {
    if (quad.rows() != quad.cols() || quad.rows() != lin.size()) {
        throw DimensionError("dense quadratic part must be square and match the linear part");
    }
    int d = static_cast<int>(quad.rows());
    Eigen::VectorXd packed(packed_quad_size(d));
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            packed[quad_offset(d, i, j)] = i == j ? quad(i, i) : 0.5 * (quad(i, j) + quad(j, i));
        }
    }
    return QuadraticPolynomial(d, std::move(packed), lin, constant);
}

QuadraticPolynomial QuadraticPolynomial::from_coefficients(int dim, const Eigen::VectorXd& coeffs) {
    if (coeffs.size() != coefficient_count(dim)) {
        throw DimensionError("coefficient vector of length " + std::to_string(coeffs.size()) +
                             " for dimension " + std::to_string(dim) + " (expected " +
                             std::to_string(coefficient_count(dim)) + ")");
    }
    int p = packed_quad_size(dim);
    Eigen::VectorXd packed(p);
    int idx = 0;
    for (int i = 0; i < dim; ++i) {
        for (int j = i; j < dim; ++j, ++idx) {
            packed[idx] = i == j ? coeffs[idx] : 0.5 * coeffs[idx];
        }
    }
    return QuadraticPolynomial(dim, std::move(packed), coeffs.segment(p, dim), coeffs[p + dim]);
}

Eigen::MatrixXd QuadraticPolynomial::quad_dense() const {
    Eigen::MatrixXd out(dim_, dim_);
    for (int i = 0; i < dim_; ++i) {
        for (int j = i; j < dim_; ++j) {
            out(i, j) = out(j, i) = packed_quad_[quad_offset(dim_, i, j)];
        }
    }
    return out;
}

Eigen::VectorXd QuadraticPolynomial::coefficients() const {
    Eigen::VectorXd out(coefficient_count(dim_));
    int idx = 0;
    for (int i = 0; i < dim_; ++i) {
        for (int j = i; j < dim_; ++j, ++idx) {
            out[idx] = i == j ? packed_quad_[idx] : 2.0 * packed_quad_[idx];
        }
    }
    out.segment(idx, dim_) = lin_;
    out[idx + dim_] = constant_;
    return out;
}

Eigen::VectorXd QuadraticPolynomial::weighted_quad() const {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Eigen::VectorXd out(packed_quad_size(dim_));
    int idx = 0;
    for (int i = 0; i < dim_; ++i) {
        for (int j = i; j < dim_; ++j, ++idx) {
            // alpha_ii, and alpha_ij / sqrt(2) = 2 A_ij / sqrt(2) off-diagonal.
            out[idx] = i == j ? packed_quad_[idx] : 2.0 * packed_quad_[idx] * inv_sqrt2;
        }
    }
    return out;
}

bool QuadraticPolynomial::operator==(const QuadraticPolynomial& other) const {
    return dim_ == other.dim_ && packed_quad_ == other.packed_quad_ && lin_ == other.lin_ &&
           constant_ == other.constant_;
}

double evaluate(const QuadraticPolynomial& f, const Eigen::VectorXd& p) {
    check_dim(f, p);
    int d = f.dim();
    const Eigen::VectorXd& a = f.packed_quad();
    // Accumulated in canonical monomial order so the value agrees with the
    // feature-map inner product term by term.
    double acc = 0.0;
    int idx = 0;
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j, ++idx) {
            double coeff = i == j ? a[idx] : 2.0 * a[idx];
            acc += coeff * (p[i] * p[j]);
        }
    }
    for (int i = 0; i < d; ++i) {
        acc += f.lin()[i] * p[i];
    }
    return acc + f.constant();
}

Eigen::VectorXd gradient(const QuadraticPolynomial& f, const Eigen::VectorXd& p) {
    check_dim(f, p);
    int d = f.dim();
    Eigen::VectorXd g = f.lin();
    for (int i = 0; i < d; ++i) {
        double acc = 0.0;
        for (int j = 0; j < d; ++j) {
            acc += f.quad(i, j) * p[j];
        }
        g[i] += 2.0 * acc;
    }
    return g;
}

double hs_inner(const QuadraticPolynomial& f, const QuadraticPolynomial& g) {
    check_same_dim(f, g);
    const Eigen::VectorXd& a = f.packed_quad();
    const Eigen::VectorXd& b = g.packed_quad();
    int d = f.dim();
    double acc = 0.0;
    int idx = 0;
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j, ++idx) {
            double term = a[idx] * b[idx];
            acc += i == j ? term : 2.0 * term;
        }
    }
    return acc;
}

double hs_norm(const QuadraticPolynomial& f) { return std::sqrt(hs_inner(f, f)); }

double dist_alg(const QuadraticPolynomial& f, const Eigen::VectorXd& p) {
    return std::abs(evaluate(f, p));
}

double dist_1(const QuadraticPolynomial& f, const Eigen::VectorXd& p) {
    double val = std::abs(evaluate(f, p));
    if (val == 0.0) {
        return 0.0;
    }
    double gnorm = gradient(f, p).norm();
    if (gnorm == 0.0) {
        return kInf;
    }
    return val / gnorm;
}

double dist_2(const QuadraticPolynomial& f, const Eigen::VectorXd& p) {
    double val = std::abs(evaluate(f, p));
    double gnorm = gradient(f, p).norm();
    return order2_root(val, gnorm, hs_norm(f));
}

std::vector<double> distance_poly_coefficients(const QuadraticPolynomial& f,
                                               const Eigen::VectorXd& p, int k) {
    check_dim(f, p);
    if (k < 1) {
        throw ConfigError("distance order must be at least 1");
    }
    std::vector<double> c(static_cast<std::size_t>(k) + 1, 0.0);
    c[0] = std::abs(evaluate(f, p));
    // Order 1: the Taylor coefficients are the partial derivatives, each with
    // multinomial weight 1, so the sum is the squared gradient norm.
    c[1] = -gradient(f, p).norm();
    if (k >= 2) {
        // Order 2: C_I = A_ii for I = 2 e_i (b = 1) and 2 A_ij for
        // I = e_i + e_j, i < j (b = 2). Higher orders vanish for quadratics.
        const Eigen::VectorXd& a = f.packed_quad();
        int d = f.dim();
        double acc = 0.0;
        int idx = 0;
        for (int i = 0; i < d; ++i) {
            for (int j = i; j < d; ++j, ++idx) {
                if (i == j) {
                    acc += a[idx] * a[idx];
                } else {
                    double coeff = 2.0 * a[idx];
                    acc += coeff * coeff / 2.0;
                }
            }
        }
        c[2] = -std::sqrt(acc);
    }
    return c;
}

double dist_k(const QuadraticPolynomial& f, const Eigen::VectorXd& p, int k) {
    std::vector<double> c = distance_poly_coefficients(f, p, k);
    if (k == 1) {
        if (c[0] == 0.0) {
            return 0.0;
        }
        if (c[1] == 0.0) {
            return kInf;
        }
        return c[0] / -c[1];
    }
    return order2_root(c[0], -c[1], -c[2]);
}

QuadraticPolynomial compose_isometry(const QuadraticPolynomial& f, const Isometry& theta) {
    if (theta.dim() != f.dim()) {
        throw DimensionError("isometry of dimension " + std::to_string(theta.dim()) +
                             " against polynomial of dimension " + std::to_string(f.dim()));
    }
    const Eigen::MatrixXd& q = theta.rotation();
    const Eigen::VectorXd& v = theta.translation();
    Eigen::MatrixXd a = f.quad_dense();
    Eigen::MatrixXd conj = q.transpose() * a * q;
    Eigen::VectorXd av = a * v;
    Eigen::VectorXd lin = q.transpose() * (2.0 * av + f.lin());
    double constant = v.dot(av) + f.lin().dot(v) + f.constant();
    return QuadraticPolynomial::from_dense(0.5 * (conj + conj.transpose()), lin, constant);
}

}  // namespace quadrics
