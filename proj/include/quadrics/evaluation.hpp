#pragma once

#include <functional>
#include <vector>

#include <Eigen/Core>

namespace quadrics {

/// Scores with binary labels: 0 = inlier, 1 = outlier.
struct LabeledScores {
    std::vector<double> scores;
    std::vector<int> labels;
};

/// Exact Mann-Whitney AUC: P(score_outlier > score_inlier) + P(tie)/2.
/// Throws ConfigError unless both classes are present.
double auc_roc(const LabeledScores& data);

/// Throws ConfigError on a zero vector.
double cosine_similarity(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

using SimilarityFn = std::function<double(const Eigen::VectorXd&, const Eigen::VectorXd&)>;
using ScoreFn = std::function<double(const Eigen::VectorXd&)>;

/// s_h(x, y) = s(x, y) when max(o(x), o(y)) < t, else 0. The boundary
/// max(o(x), o(y)) = t already counts as outlier.
SimilarityFn robustify(SimilarityFn similarity, ScoreFn scorer, double threshold);

/// Pair similarity scores with ground truth: 1 = same class, 0 = different.
struct PairScores {
    std::vector<double> scores;
    std::vector<int> same;
};

/// Smallest threshold a with fpr(a) <= target_fpr, where a pair is declared
/// positive when its score is >= a and candidates are the observed scores
/// plus the two infinities. fpr is computed over the different-class pairs.
/// target_fpr = 1 yields -infinity (everything positive); an unreachable
/// budget yields +infinity. Throws ConfigError if target_fpr is outside
/// [0, 1] or no negative pair exists.
double similarity_threshold(const PairScores& pairs, double target_fpr);

/// Identification problem: a labeled gallery, a distractor set and a
/// similarity, evaluated at a target false positive rate.
struct IdentificationSetup {
    std::vector<Eigen::VectorXd> gallery;
    std::vector<int> identities;               // one per gallery entry
    std::vector<Eigen::VectorXd> distractors;  // may be empty
    SimilarityFn similarity;
    double target_fpr;
};

/// True positive rate of the pair classifier at similarity_threshold(f),
/// over all unordered same-identity gallery pairs (self-pairs excluded).
double identification_rate(const IdentificationSetup& setup);

/// As identification_rate, but a genuine pair also has to beat every
/// distractor: s(x, y) > max(s(x, d), s(y, d)) for all d. Never exceeds
/// identification_rate.
double full_identification_rate(const IdentificationSetup& setup);

/// Grid search for the robustification threshold: returns the grid point
/// maximizing the identification rate of robustify(s, scorer, t) on the
/// validation setup. If every grid point strictly lowers the rate below the
/// unrobustified baseline, falls back to the 99th percentile of the outlier
/// scores of the validation embeddings (the one-percent rule).
double threshold_search(const IdentificationSetup& validation, const ScoreFn& scorer,
                        const std::vector<double>& grid);

}  // namespace quadrics
