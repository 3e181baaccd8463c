#pragma once

#include <vector>

#include <Eigen/Core>

namespace quadrics {

class Isometry;

/// Number of packed upper-triangle entries of a symmetric d x d matrix.
constexpr int packed_quad_size(int dim) { return dim * (dim + 1) / 2; }

/// Number of monomials of degree <= 2 in d variables: d(d+1)/2 pairwise
/// products, d linear terms and the constant.
constexpr int coefficient_count(int dim) { return packed_quad_size(dim) + dim + 1; }

/// Offset of the (i, j) entry, i <= j, in the packed upper triangle
/// (lexicographic (i, j) order).
constexpr int quad_offset(int dim, int i, int j) {
    return i * dim - i * (i - 1) / 2 + (j - i);
}

/// A quadratic polynomial f(x) = x^T A x + b.x + c with A symmetric.
///
/// A is stored as its packed upper triangle in lexicographic (i, j) order,
/// so symmetry holds by construction and storage is d(d+1)/2 reals.
///
/// The canonical coefficient vector lists the monomial coefficients
/// (alpha_ij for i <= j, then alpha'_1..alpha'_d, then the constant) where
/// A_ii = alpha_ii and A_ij = alpha_ij / 2 for i < j.
class QuadraticPolynomial {
  public:
    /// From packed upper triangle of A (lex (i,j) order), linear part and constant.
    QuadraticPolynomial(int dim, Eigen::VectorXd packed_quad, Eigen::VectorXd lin, double constant);

    static QuadraticPolynomial zero(int dim);

    /// From a dense symmetric matrix; off-diagonal pairs are averaged when packing.
    static QuadraticPolynomial from_dense(const Eigen::MatrixXd& quad, const Eigen::VectorXd& lin,
                                          double constant);

    /// Inverse of coefficients(): canonical monomial order, length coefficient_count(dim).
    static QuadraticPolynomial from_coefficients(int dim, const Eigen::VectorXd& coeffs);

    int dim() const { return dim_; }

    /// Symmetric accessor: quad(i, j) == quad(j, i).
    double quad(int i, int j) const {
        if (i > j) std::swap(i, j);
        return packed_quad_[quad_offset(dim_, i, j)];
    }

    const Eigen::VectorXd& packed_quad() const { return packed_quad_; }
    const Eigen::VectorXd& lin() const { return lin_; }
    double constant() const { return constant_; }

    Eigen::MatrixXd quad_dense() const;

    /// Canonical coefficient vector v(f) of length (d^2+3d)/2 + 1.
    Eigen::VectorXd coefficients() const;

    /// Weighted quadratic-part vector: diagonal coefficients as-is,
    /// off-diagonal coefficients divided by sqrt(2). Euclidean inner products
    /// of these vectors realize the Hilbert-Schmidt inner product below.
    Eigen::VectorXd weighted_quad() const;

    bool operator==(const QuadraticPolynomial& other) const;

  private:
    int dim_;
    Eigen::VectorXd packed_quad_;
    Eigen::VectorXd lin_;
    double constant_;
};

/// f(p). Throws DimensionError on size mismatch.
double evaluate(const QuadraticPolynomial& f, const Eigen::VectorXd& p);

/// Analytic gradient 2 A p + b.
Eigen::VectorXd gradient(const QuadraticPolynomial& f, const Eigen::VectorXd& p);

/// Hilbert-Schmidt inner product of the quadratic parts: sum over the full
/// symmetric matrices of A_ij * B_ij. Degenerate: vanishes on affine polynomials.
double hs_inner(const QuadraticPolynomial& f, const QuadraticPolynomial& g);

/// sqrt(hs_inner(f, f)); a seminorm.
double hs_norm(const QuadraticPolynomial& f);

/// Algebraic distance |f(p)|.
double dist_alg(const QuadraticPolynomial& f, const Eigen::VectorXd& p);

/// First-order distance |f(p)| / |grad f(p)|. Returns 0 when f(p) = 0 and
/// +infinity when the gradient vanishes at a point off the surface.
double dist_1(const QuadraticPolynomial& f, const Eigen::VectorXd& p);

/// Second-order distance (sqrt(h^2 + |f(p)| |f|_HS) - h) / |f|_HS with
/// h = |grad f(p)| / 2, evaluated in the cancellation-free form
/// |f(p)| / (h + sqrt(h^2 + |f(p)| |f|_HS)).
///
/// Degenerate fallback: |f|_HS <= 1e-12 reduces to dist_1 with the same
/// tolerance on the gradient; a constant nonzero polynomial yields +infinity.
double dist_2(const QuadraticPolynomial& f, const Eigen::VectorXd& p);

/// Coefficients c_0..c_k of the order-k distance polynomial: c_0 = |f(p)|
/// and c_l = -sqrt(sum over multi-indices |I| = l of C_I^2 / b(I)) where C_I
/// are Taylor coefficients of f at p and b(I) = |I|!/I!. Zero beyond l = 2
/// for quadratics.
std::vector<double> distance_poly_coefficients(const QuadraticPolynomial& f,
                                               const Eigen::VectorXd& p, int k);

/// Order-k distance: the unique nonnegative root of sum_l c_l t^l.
/// Coincides with dist_1 for k = 1 and with dist_2 for every k >= 2.
/// Throws ConfigError for k < 1.
double dist_k(const QuadraticPolynomial& f, const Eigen::VectorXd& p, int k);

/// The composition f(theta(x)): quadratic part Q^T A Q, with the linear and
/// constant parts shifted accordingly. Preserves hs_inner.
QuadraticPolynomial compose_isometry(const QuadraticPolynomial& f, const Isometry& theta);

}  // namespace quadrics
