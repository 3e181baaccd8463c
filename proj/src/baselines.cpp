#include "quadrics/baselines.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/SVD>

#include "quadrics/errors.hpp"

namespace quadrics {

PcaModel pca_fit(const PointCloud& cloud, int k, bool centered) {
    int d = cloud.dim();
    int n = cloud.size();
    if (k < 1 || k > d || k > n) {
        throw ConfigError("subspace dimension " + std::to_string(k) + " out of range for " +
                          std::to_string(n) + " points in dimension " + std::to_string(d));
    }
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
    Eigen::MatrixXd data = cloud.points();
    if (centered) {
        mean = data.colwise().mean().transpose();
        data.rowwise() -= mean.transpose();
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(data, Eigen::ComputeThinV);
    return PcaModel{d, k, svd.matrixV().leftCols(k), centered, std::move(mean)};
}

double pca_distance(const PcaModel& model, const Eigen::VectorXd& p) {
    if (p.size() != model.dim) {
        throw DimensionError("point of dimension " + std::to_string(p.size()) +
                             " against subspace model of dimension " + std::to_string(model.dim));
    }
    Eigen::VectorXd x = p - model.mean;
    return (x - model.basis * (model.basis.transpose() * x)).norm();
}

Eigen::VectorXd feature_map(const Eigen::VectorXd& p) {
    int d = static_cast<int>(p.size());
    Eigen::VectorXd phi(coefficient_count(d));
    int idx = 0;
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j, ++idx) {
            phi[idx] = p[i] * p[j];
        }
    }
    phi.segment(idx, d) = p;
    phi[idx + d] = 1.0;
    return phi;
}

Eigen::VectorXd feature_map_tilde(const Eigen::VectorXd& p) {
    const double sqrt2 = std::sqrt(2.0);
    int d = static_cast<int>(p.size());
    Eigen::VectorXd phi(coefficient_count(d));
    int idx = 0;
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j, ++idx) {
            phi[idx] = i == j ? p[i] * p[j] : sqrt2 * p[i] * p[j];
        }
    }
    phi.segment(idx, d) = sqrt2 * p;
    phi[idx + d] = 1.0;
    return phi;
}

Eigen::MatrixXd feature_matrix(const PointCloud& cloud) {
    Eigen::MatrixXd phi(cloud.size(), coefficient_count(cloud.dim()));
    for (int i = 0; i < cloud.size(); ++i) {
        phi.row(i) = feature_map(cloud.point(i)).transpose();
    }
    return phi;
}

QBaseExact qbase_exact(const PointCloud& cloud, int m) {
    int total = coefficient_count(cloud.dim());
    if (m < 1 || m > total) {
        throw ConfigError("quadric count " + std::to_string(m) +
                          " out of range for feature dimension " + std::to_string(total));
    }
    Eigen::MatrixXd phi = feature_matrix(cloud);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(phi, Eigen::ComputeFullV);
    Eigen::VectorXd singular = svd.singularValues();  // descending, length min(n, D)

    // Directions beyond rank(phi) carry zero singular value.
    Eigen::VectorXd squared = Eigen::VectorXd::Zero(total);
    squared.head(singular.size()) = singular.array().square();

    // The m smallest directions, in ascending order of singular value.
    double objective = 0.0;
    Eigen::MatrixXd coeffs(total, m);
    for (int k = 0; k < m; ++k) {
        int col = total - 1 - k;
        coeffs.col(k) = svd.matrixV().col(col);
        objective += squared[col];
    }
    return QBaseExact{model_from_coefficients(cloud.dim(), coeffs), objective};
}

double norm_score(const Eigen::VectorXd& p, NormSign sign) {
    double norm = p.norm();
    return sign == NormSign::kPositive ? norm : -norm;
}

}  // namespace quadrics
