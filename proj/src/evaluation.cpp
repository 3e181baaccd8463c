#include "quadrics/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "quadrics/errors.hpp"

namespace quadrics {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct PairTable {
    PairScores pairs;
    int positives = 0;
    int negatives = 0;
};

PairTable gallery_pairs(const IdentificationSetup& setup) {
    if (setup.gallery.size() != setup.identities.size()) {
        throw ConfigError("gallery and identity list sizes differ");
    }
    int n = static_cast<int>(setup.gallery.size());
    PairTable table;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            bool same = setup.identities[i] == setup.identities[j];
            table.pairs.scores.push_back(setup.similarity(setup.gallery[i], setup.gallery[j]));
            table.pairs.same.push_back(same ? 1 : 0);
            (same ? table.positives : table.negatives) += 1;
        }
    }
    if (table.positives == 0) {
        throw ConfigError("identification setup has no same-identity pair");
    }
    return table;
}

double rate_at_threshold(const IdentificationSetup& setup, bool require_undistracted) {
    PairTable table = gallery_pairs(setup);
    double sth = similarity_threshold(table.pairs, setup.target_fpr);

    // Highest similarity of each gallery entry to any distractor; a genuine
    // pair is undistracted when its similarity beats both entries' maxima.
    std::vector<double> distracted_by(setup.gallery.size(), -kInf);
    if (require_undistracted) {
        for (std::size_t i = 0; i < setup.gallery.size(); ++i) {
            for (const auto& d : setup.distractors) {
                distracted_by[i] = std::max(distracted_by[i], setup.similarity(setup.gallery[i], d));
            }
        }
    }

    int n = static_cast<int>(setup.gallery.size());
    int hit = 0;
    int pair_index = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j, ++pair_index) {
            if (!table.pairs.same[pair_index]) continue;
            double s = table.pairs.scores[pair_index];
            bool positive = s >= sth;
            if (positive && require_undistracted) {
                positive = s > std::max(distracted_by[i], distracted_by[j]);
            }
            if (positive) ++hit;
        }
    }
    return static_cast<double>(hit) / table.positives;
}

}  // namespace

double auc_roc(const LabeledScores& data) {
    if (data.scores.size() != data.labels.size()) {
        throw ConfigError("scores and labels sizes differ");
    }
    std::size_t n = data.scores.size();
    long long n_pos = std::count(data.labels.begin(), data.labels.end(), 1);
    long long n_neg = static_cast<long long>(n) - n_pos;
    if (n_pos == 0 || n_neg == 0) {
        throw ConfigError("AUC needs both an inlier and an outlier");
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return data.scores[a] < data.scores[b]; });

    // Walk tie groups in ascending score order; within a group outliers and
    // inliers tie (weight 1/2), everything below is strictly smaller.
    double pairs = 0.0;
    long long neg_below = 0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        long long group_pos = 0;
        long long group_neg = 0;
        while (j < n && data.scores[order[j]] == data.scores[order[i]]) {
            (data.labels[order[j]] == 1 ? group_pos : group_neg) += 1;
            ++j;
        }
        pairs += static_cast<double>(group_pos) * neg_below +
                 0.5 * static_cast<double>(group_pos) * group_neg;
        neg_below += group_neg;
        i = j;
    }
    return pairs / (static_cast<double>(n_pos) * n_neg);
}

double cosine_similarity(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    if (x.size() != y.size()) {
        throw DimensionError("cosine similarity of vectors with different dimensions");
    }
    double nx = x.norm();
    double ny = y.norm();
    if (nx == 0.0 || ny == 0.0) {
        throw ConfigError("cosine similarity of a zero vector");
    }
    return x.dot(y) / (nx * ny);
}

SimilarityFn robustify(SimilarityFn similarity, ScoreFn scorer, double threshold) {
    return [similarity = std::move(similarity), scorer = std::move(scorer),
            threshold](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
        return std::max(scorer(x), scorer(y)) < threshold ? similarity(x, y) : 0.0;
    };
}

double similarity_threshold(const PairScores& pairs, double target_fpr) {
    if (pairs.scores.size() != pairs.same.size()) {
        throw ConfigError("pair scores and labels sizes differ");
    }
    if (target_fpr < 0.0 || target_fpr > 1.0) {
        throw ConfigError("target false positive rate must lie in [0, 1]");
    }
    std::vector<double> negatives;
    for (std::size_t i = 0; i < pairs.scores.size(); ++i) {
        if (!pairs.same[i]) negatives.push_back(pairs.scores[i]);
    }
    if (negatives.empty()) {
        throw ConfigError("similarity threshold needs at least one negative pair");
    }
    std::sort(negatives.begin(), negatives.end());

    std::vector<double> candidates = pairs.scores;
    candidates.push_back(-kInf);
    candidates.push_back(kInf);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    // fpr(a) = fraction of negatives with score >= a, non-increasing in a;
    // pick the smallest candidate inside the budget (it maximizes tpr).
    for (double a : candidates) {
        auto first = std::lower_bound(negatives.begin(), negatives.end(), a);
        double fpr = static_cast<double>(negatives.end() - first) / negatives.size();
        if (fpr <= target_fpr) {
            return a;
        }
    }
    return kInf;  // unreachable: fpr(+inf) = 0
}

double identification_rate(const IdentificationSetup& setup) {
    return rate_at_threshold(setup, false);
}

double full_identification_rate(const IdentificationSetup& setup) {
    return rate_at_threshold(setup, true);
}

double threshold_search(const IdentificationSetup& validation, const ScoreFn& scorer,
                        const std::vector<double>& grid) {
    if (grid.empty()) {
        throw ConfigError("threshold grid is empty");
    }
    double baseline = identification_rate(validation);
    double best_rate = -1.0;
    double best_threshold = grid.front();
    for (double t : grid) {
        IdentificationSetup robust = validation;
        robust.similarity = robustify(validation.similarity, scorer, t);
        double rate = identification_rate(robust);
        if (rate > best_rate) {
            best_rate = rate;
            best_threshold = t;
        }
    }
    if (best_rate >= baseline) {
        return best_threshold;
    }
    // Every grid point hurts: mark one percent of the validation embeddings
    // as outliers instead.
    std::vector<double> scores;
    scores.reserve(validation.gallery.size() + validation.distractors.size());
    for (const auto& x : validation.gallery) scores.push_back(scorer(x));
    for (const auto& x : validation.distractors) scores.push_back(scorer(x));
    std::sort(scores.begin(), scores.end());
    std::size_t rank = static_cast<std::size_t>(
        std::ceil(0.99 * static_cast<double>(scores.size())));
    if (rank > 0) --rank;
    return scores[std::min(rank, scores.size() - 1)];
}

}  // namespace quadrics
