#include <cmath>
#include <limits>
#include <random>

#include <doctest.h>

#include "quadrics/errors.hpp"
#include "quadrics/isometry.hpp"
#include "quadrics/polynomial.hpp"

#include "helpers.hpp"

using namespace quadrics;
using testutil::close_rel;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

QuadraticPolynomial unit_circle() {
    // x^2 + y^2 - 1
    Eigen::VectorXd quad(3);
    quad << 1.0, 0.0, 1.0;
    return QuadraticPolynomial(2, quad, Eigen::VectorXd::Zero(2), -1.0);
}

QuadraticPolynomial squared_sum() {
    // x^2 + 2xy + y^2 = (x + y)^2; A = [[1, 1], [1, 1]]
    Eigen::VectorXd quad(3);
    quad << 1.0, 1.0, 1.0;
    return QuadraticPolynomial(2, quad, Eigen::VectorXd::Zero(2), 0.0);
}

QuadraticPolynomial saddle() {
    // x^2 - y^2
    Eigen::VectorXd quad(3);
    quad << 1.0, 0.0, -1.0;
    return QuadraticPolynomial(2, quad, Eigen::VectorXd::Zero(2), 0.0);
}

Eigen::Vector2d pt(double x, double y) { return {x, y}; }

}  // namespace

TEST_CASE("evaluate matches direct expansion") {
    auto f = unit_circle();
    CHECK(evaluate(f, pt(1, 0)) == 0.0);
    CHECK(evaluate(f, pt(2, 0)) == 3.0);
    // (x + y)^2 at (1, 1)
    CHECK(evaluate(squared_sum(), pt(1, 1)) == 4.0);
}

TEST_CASE("evaluate rejects dimension mismatch") {
    Eigen::VectorXd p3 = Eigen::VectorXd::Zero(3);
    CHECK_THROWS_AS(evaluate(unit_circle(), p3), DimensionError);
    CHECK_THROWS_AS(gradient(unit_circle(), p3), DimensionError);
}

TEST_CASE("quad accessor is symmetric and storage rejects bad sizes") {
    auto f = squared_sum();
    CHECK(f.quad(0, 1) == f.quad(1, 0));
    CHECK(f.quad(0, 1) == 1.0);
    CHECK_THROWS_AS(QuadraticPolynomial(2, Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(2), 0.0),
                    DimensionError);
    Eigen::VectorXd bad = Eigen::VectorXd::Zero(3);
    bad[1] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(QuadraticPolynomial(2, bad, Eigen::VectorXd::Zero(2), 0.0), Error);
}

TEST_CASE("gradient matches symbolic differentiation") {
    auto f = unit_circle();
    CHECK(gradient(f, pt(2, 0)) == Eigen::Vector2d(4, 0));
    CHECK(gradient(f, pt(0, 0)) == Eigen::Vector2d(0, 0));
    // d/dx (x + y)^2 = 2(x + y), same for y
    CHECK(gradient(squared_sum(), pt(1, 0)) == Eigen::Vector2d(2, 2));
}

TEST_CASE("gradient matches central finite differences on random instances") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        int d = 2 + trial % 4;
        auto f = testutil::random_polynomial(d, rng);
        Eigen::VectorXd p = testutil::random_vector(d, rng);
        Eigen::VectorXd g = gradient(f, p);
        for (int i = 0; i < d; ++i) {
            double fd = testutil::central_difference(
                [&](double xi) {
                    Eigen::VectorXd q = p;
                    q[i] = xi;
                    return evaluate(f, q);
                },
                p[i]);
            CHECK(close_rel(g[i], fd, 1e-6));
        }
    }
}

TEST_CASE("hs inner product basics") {
    // trace-orthogonal quadratic parts
    Eigen::VectorXd qa(3), qb(3);
    qa << 1.0, 0.0, 1.0;
    qb << 1.0, 0.0, -1.0;
    QuadraticPolynomial f(2, qa, Eigen::VectorXd::Zero(2), 0.0);
    QuadraticPolynomial g(2, qb, Eigen::VectorXd::Zero(2), 0.0);
    CHECK(hs_inner(f, g) == 0.0);

    // entrywise sum of squares of [[1,1],[1,1]] is 4
    CHECK(hs_norm(squared_sum()) == 2.0);

    // degenerate seminorm: vanishes on affine polynomials
    Eigen::VectorXd lin(2);
    lin << 3.0, -2.0;
    QuadraticPolynomial affine(2, Eigen::VectorXd::Zero(3), lin, 5.0);
    CHECK(hs_norm(affine) == 0.0);

    std::mt19937_64 rng(1);
    CHECK_THROWS_AS(hs_inner(f, testutil::random_polynomial(3, rng)), DimensionError);
}

TEST_CASE("weighted vector realizes the hs inner product") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        int d = 2 + trial % 5;
        auto f = testutil::random_polynomial(d, rng);
        auto g = testutil::random_polynomial(d, rng);
        double via_weighted = f.weighted_quad().dot(g.weighted_quad());
        CHECK(close_rel(via_weighted, hs_inner(f, g), 1e-12));
    }
}

TEST_CASE("coefficient vector round-trips exactly") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 50; ++trial) {
        int d = 1 + trial % 6;
        auto f = testutil::random_polynomial(d, rng);
        Eigen::VectorXd v = f.coefficients();
        REQUIRE(v.size() == coefficient_count(d));
        CHECK(QuadraticPolynomial::from_coefficients(d, v) == f);
    }
}

TEST_CASE("dist_alg") {
    auto f = unit_circle();
    CHECK(dist_alg(f, pt(2, 0)) == 3.0);
    CHECK(dist_alg(f, pt(0, 1)) == 0.0);
    CHECK(dist_alg(f, pt(0, 0)) == 1.0);
}

TEST_CASE("dist_1") {
    auto f = unit_circle();
    CHECK(dist_1(f, pt(2, 0)) == 0.75);  // 3 / |(4, 0)|
    CHECK(dist_1(f, pt(0, 0)) == kInf);  // zero gradient, nonzero value
    CHECK(dist_1(f, pt(1, 0)) == 0.0);
}

TEST_CASE("dist_2 against the closed-form oracle") {
    auto f = unit_circle();
    // oracle: textbook root (sqrt(h^2 + |f| |f|_HS) - h) / |f|_HS
    auto oracle = [&](const Eigen::Vector2d& p) {
        double val = std::abs(evaluate(f, p));
        double h = 0.5 * gradient(f, p).norm();
        double s = hs_norm(f);
        return (std::sqrt(h * h + val * s) - h) / s;
    };
    double at20 = dist_2(f, pt(2, 0));
    CHECK(close_rel(at20, oracle(pt(2, 0)), 1e-12));
    CHECK(at20 == doctest::Approx(0.6159).epsilon(1e-3));
    CHECK(at20 <= 1.0);  // geometric distance to the circle from (2, 0)

    CHECK(dist_2(f, pt(0, 1)) == 0.0);

    // finite at the stationary point, unlike dist_1
    double at_origin = dist_2(f, pt(0, 0));
    CHECK(close_rel(at_origin, oracle(pt(0, 0)), 1e-12));
    CHECK(at_origin == doctest::Approx(0.8408964152537145).epsilon(1e-12));
}

TEST_CASE("dist_2 degenerate fallbacks") {
    Eigen::VectorXd lin(2);
    lin << 3.0, 4.0;
    QuadraticPolynomial affine(2, Eigen::VectorXd::Zero(3), lin, 0.0);
    // falls back to dist_1 when the quadratic part vanishes
    CHECK(dist_2(affine, pt(1, 0)) == dist_1(affine, pt(1, 0)));
    CHECK(dist_2(affine, pt(1, 0)) == doctest::Approx(0.6));

    QuadraticPolynomial constant(2, Eigen::VectorXd::Zero(3), Eigen::VectorXd::Zero(2), 7.0);
    CHECK(dist_2(constant, pt(1, 1)) == kInf);
    QuadraticPolynomial zero = QuadraticPolynomial::zero(2);
    CHECK(dist_2(zero, pt(1, 1)) == 0.0);
}

TEST_CASE("order-k coefficients via multi-index enumeration") {
    // f = x^2 + y^2: C_(2,0) = C_(0,2) = 1 with b = 1, C_(1,1) = 0 with b = 2
    Eigen::VectorXd quad(3);
    quad << 1.0, 0.0, 1.0;
    QuadraticPolynomial f(2, quad, Eigen::VectorXd::Zero(2), 0.0);
    auto c = distance_poly_coefficients(f, pt(0.3, -0.7), 3);
    CHECK(-c[2] == std::sqrt(2.0));
    CHECK(-c[2] == hs_norm(f));
    CHECK(c[3] == 0.0);

    CHECK_THROWS_AS(dist_k(f, pt(1, 0), 0), ConfigError);
}

TEST_CASE("dist_k coincides with dist_1 and dist_2") {
    std::mt19937_64 rng(44);
    for (int trial = 0; trial < 200; ++trial) {
        int d = 2 + trial % 3;
        auto f = testutil::random_polynomial(d, rng);
        Eigen::VectorXd p = testutil::random_vector(d, rng);
        CHECK(dist_k(f, p, 1) == dist_1(f, p));
        double d2 = dist_2(f, p);
        CHECK(dist_k(f, p, 2) == d2);
        CHECK(dist_k(f, p, 3) == d2);
        CHECK(dist_k(f, p, 4) == d2);
        auto c = distance_poly_coefficients(f, p, 2);
        CHECK(close_rel(-c[2], hs_norm(f), 1e-12));
    }
}

TEST_CASE("compose with the identity is the identity") {
    auto f = squared_sum();
    auto g = compose_isometry(f, Isometry::identity(2));
    CHECK(g == f);
}

TEST_CASE("compose with a translation expands the shift") {
    auto f = unit_circle();
    Eigen::Vector2d shift(10, 0);
    auto g = compose_isometry(f, Isometry::translation(shift));
    // (x + 10)^2 + y^2 - 1 = x^2 + y^2 + 20x + 99
    CHECK(g.quad(0, 0) == 1.0);
    CHECK(g.quad(0, 1) == 0.0);
    CHECK(g.quad(1, 1) == 1.0);
    CHECK(g.lin() == Eigen::Vector2d(20, 0));
    CHECK(g.constant() == 99.0);
    CHECK(hs_norm(g) == hs_norm(f));
}

TEST_CASE("compose with a rotation conjugates the matrix") {
    auto f = saddle();
    Eigen::Matrix2d rot90;
    rot90 << 0, -1, 1, 0;
    auto g = compose_isometry(f, Isometry(rot90, Eigen::Vector2d::Zero()));
    // f(-y, x) = y^2 - x^2
    CHECK(g.quad(0, 0) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(g.quad(1, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(hs_inner(f, g) == doctest::Approx(-2.0).epsilon(1e-15));
}

TEST_CASE("compose agrees with evaluation at transformed points") {
    std::mt19937_64 rng(45);
    for (int trial = 0; trial < 100; ++trial) {
        int d = 2 + trial % 3;
        auto f = testutil::random_polynomial(d, rng);
        auto theta = testutil::random_isometry(d, rng, 3.0);
        auto g = compose_isometry(f, theta);
        Eigen::VectorXd p = testutil::random_vector(d, rng);
        CHECK(close_rel(evaluate(g, p), evaluate(f, theta.apply(p)), 1e-9));
    }
}

TEST_CASE("non-orthogonal matrices are rejected at isometry construction") {
    Eigen::Matrix2d skew;
    skew << 1, 1, 0, 1;
    CHECK_THROWS_AS(Isometry(skew, Eigen::Vector2d::Zero()), ConfigError);
}

TEST_CASE("order-2 distance is equivariant under isometries") {
    std::mt19937_64 rng(46);
    for (int trial = 0; trial < 1000; ++trial) {
        int d = 2 + trial % 3;
        auto f = testutil::random_polynomial(d, rng);
        auto theta = testutil::random_isometry(d, rng, 2.0);
        Eigen::VectorXd p = testutil::random_vector(d, rng);
        // the transformed model f o theta^-1 scores theta(p) like f scores p
        auto g = compose_isometry(f, theta.inverse());
        double original = dist_2(f, p);
        double transformed = dist_2(g, theta.apply(p));
        CHECK(std::abs(transformed - original) <= 1e-8 * (1.0 + original));
    }
}

TEST_CASE("hs inner product is isometry-invariant") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 1000; ++trial) {
        int d = 2 + trial % 3;
        auto f = testutil::random_polynomial(d, rng);
        auto g = testutil::random_polynomial(d, rng);
        auto theta = testutil::random_isometry(d, rng, 2.0);
        double before = hs_inner(f, g);
        double after = hs_inner(compose_isometry(f, theta), compose_isometry(g, theta));
        CHECK(std::abs(after - before) <= 1e-9 * (1.0 + std::abs(before)));
    }
}

TEST_CASE("algebraic distance objective is not translation-invariant") {
    // Euclidean-normalized squared algebraic distances change under a shift
    // of cloud and model, while the raw values are shift-invariant.
    std::mt19937_64 rng(48);
    Eigen::MatrixXd points(40, 2);
    for (int i = 0; i < 40; ++i) {
        double angle = 2.0 * 3.14159265358979 * i / 40.0;
        points(i, 0) = std::cos(angle) + 0.05 * testutil::random_vector(1, rng)[0];
        points(i, 1) = std::sin(angle) + 0.05 * testutil::random_vector(1, rng)[0];
    }
    PointCloud cloud(points);

    auto objective = [](const QuadraticPolynomial& q, const PointCloud& c) {
        double acc = 0.0;
        for (int i = 0; i < c.size(); ++i) {
            double v = evaluate(q, c.point(i));
            acc += v * v;
        }
        return acc;
    };
    auto normalized = [](const QuadraticPolynomial& q) {
        Eigen::VectorXd v = q.coefficients();
        return QuadraticPolynomial::from_coefficients(q.dim(), v / v.norm());
    };

    auto f = normalized(unit_circle());
    Isometry shift = Isometry::translation(Eigen::Vector2d(10, 0));
    auto g = compose_isometry(f, shift.inverse());

    double base = objective(f, cloud);
    // without renormalization the shifted objective matches exactly
    CHECK(close_rel(objective(g, shift.apply(cloud)), base, 1e-9));
    // with Euclidean renormalization it does not
    double renormalized = objective(normalized(g), shift.apply(cloud));
    CHECK(std::abs(renormalized - base) > 0.01 * std::abs(base));
}
