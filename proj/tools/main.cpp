#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "quadrics/baselines.hpp"
#include "quadrics/csv.hpp"
#include "quadrics/datagen.hpp"
#include "quadrics/errors.hpp"
#include "quadrics/evaluation.hpp"
#include "quadrics/fitting.hpp"
#include "quadrics/model_io.hpp"
#include "quadrics/text.hpp"

namespace {

using namespace quadrics;

struct GenArgs {
    std::string curve = "tennis";
    CurveSpec spec;
    int outliers = 0;
    double factor = 2.0;
    std::string out;
    std::string labels_out;
};

struct FitArgs {
    std::string input;
    std::string model_out;
    std::string trace_out;
    std::string loss = "qfull";
    std::string schedule = "cosine";
    FitConfig config;
};

struct ScoreArgs {
    std::string input;
    std::string out;
    std::string scorer = "quadric";
    std::string model_path;
    std::string train_path;
    int pca_k = 2;
    bool pca_non_centered = false;
    bool negate_norm = false;
    bool normalize = false;
};

struct EvalArgs {
    std::string scores_path;
    std::string labels_path;
    std::string gallery_path;
    std::string gallery_ids_path;
    std::string distractors_path;
    std::string model_path;
    std::string out;
    double fpr = 1e-3;
    std::vector<double> grid;
};

void run_gen(const GenArgs& args) {
    PointCloud cloud = sample_curve(args.spec);
    std::vector<int> labels(cloud.size(), 0);
    if (args.outliers > 0) {
        // Outlier directions continue the generation seed stream's role but
        // use an offset seed so the curve sample is unchanged by --outliers.
        OutlierInjection injected =
            inject_outliers(cloud, args.outliers, args.factor, args.spec.seed + 1);
        cloud = injected.cloud;
        labels.resize(cloud.size(), 0);
        for (int idx : injected.outlier_indices) labels[idx] = 1;
    }
    write_point_cloud(args.out, cloud);
    if (!args.labels_out.empty()) {
        write_labels(args.labels_out, labels);
    }
}

void run_fit(const FitArgs& args) {
    FitConfig config = args.config;
    config.loss = loss_variant_from_string(args.loss);
    if (args.schedule == "cosine") {
        config.lr_schedule = LrSchedule::kCosineDecay;
    } else if (args.schedule == "constant") {
        config.lr_schedule = LrSchedule::kConstant;
    } else {
        throw ConfigError("unknown schedule '" + args.schedule + "'");
    }
    PointCloud cloud = read_point_cloud(args.input);
    auto [model, trace] = fit(cloud, config);
    save_model(args.model_out, model, config.loss, config.lambda);
    if (!args.trace_out.empty()) {
        std::ofstream out(args.trace_out, std::ios::binary);
        if (!out) throw Error("cannot open '" + args.trace_out + "' for writing");
        out << "epoch,data,penalty,total,seconds\n";
        for (std::size_t e = 0; e < trace.epochs.size(); ++e) {
            const EpochStats& s = trace.epochs[e];
            out << e << ',' << format_double(s.data_term) << ',' << format_double(s.penalty_term)
                << ',' << format_double(s.total_loss) << ',' << format_double(s.seconds) << '\n';
        }
    }
}

void run_score(const ScoreArgs& args) {
    PointCloud cloud = read_point_cloud(args.input);
    if (args.normalize) cloud = cloud.normalized();

    std::vector<double> scores(cloud.size());
    if (args.scorer == "quadric") {
        if (args.model_path.empty()) throw ConfigError("--scorer quadric needs --model");
        ModelFile file = load_model(args.model_path);
        Eigen::VectorXd batch = score_batch(file.model, cloud);
        for (int i = 0; i < cloud.size(); ++i) scores[i] = batch[i];
    } else if (args.scorer == "pca") {
        PointCloud train =
            args.train_path.empty() ? cloud : read_point_cloud(args.train_path);
        if (args.normalize && !args.train_path.empty()) train = train.normalized();
        PcaModel model = pca_fit(train, args.pca_k, !args.pca_non_centered);
        for (int i = 0; i < cloud.size(); ++i) scores[i] = pca_distance(model, cloud.point(i));
    } else if (args.scorer == "norm") {
        NormSign sign = args.negate_norm ? NormSign::kNegative : NormSign::kPositive;
        for (int i = 0; i < cloud.size(); ++i) scores[i] = norm_score(cloud.point(i), sign);
    } else {
        throw ConfigError("unknown scorer '" + args.scorer + "'");
    }
    write_scores(args.out, scores);
}

void run_eval(const EvalArgs& args) {
    std::vector<std::string> report;

    if (!args.scores_path.empty() || !args.labels_path.empty()) {
        if (args.scores_path.empty() || args.labels_path.empty()) {
            throw ConfigError("--scores and --labels must be given together");
        }
        LabeledScores data{read_scores(args.scores_path), read_labels(args.labels_path)};
        report.push_back("auc=" + format_double(auc_roc(data)));
    }

    if (!args.gallery_path.empty()) {
        if (args.gallery_ids_path.empty()) {
            throw ConfigError("--gallery needs --gallery-ids");
        }
        PointCloud gallery = read_point_cloud(args.gallery_path);
        std::vector<int> ids;
        {
            // Identity labels are arbitrary integers, not just 0/1.
            std::ifstream in(args.gallery_ids_path, std::ios::binary);
            if (!in) throw Error("cannot open '" + args.gallery_ids_path + "'");
            std::string line;
            std::size_t row = 0;
            while (std::getline(in, line)) {
                if (!line.empty() && line.back() == '\r') line.pop_back();
                if (line.empty()) continue;
                ids.push_back(static_cast<int>(
                    parse_integer(line, args.gallery_ids_path + ":" + std::to_string(row + 1))));
                ++row;
            }
        }
        if (static_cast<int>(ids.size()) != gallery.size()) {
            throw ConfigError("gallery and identity counts differ");
        }
        IdentificationSetup setup;
        for (int i = 0; i < gallery.size(); ++i) setup.gallery.push_back(gallery.point(i));
        setup.identities = ids;
        if (!args.distractors_path.empty()) {
            PointCloud distractors = read_point_cloud(args.distractors_path);
            for (int i = 0; i < distractors.size(); ++i) {
                setup.distractors.push_back(distractors.point(i));
            }
        }
        setup.similarity = [](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
            return cosine_similarity(x, y);
        };
        setup.target_fpr = args.fpr;

        if (!args.model_path.empty() && !args.grid.empty()) {
            ModelFile file = load_model(args.model_path);
            ScoreFn scorer = [model = file.model](const Eigen::VectorXd& p) {
                return outlier_score(model, p);
            };
            double t = threshold_search(setup, scorer, args.grid);
            setup.similarity = robustify(setup.similarity, scorer, t);
            report.push_back("t=" + format_double(t));
        }
        report.push_back("ir=" + format_double(identification_rate(setup)));
        if (!setup.distractors.empty()) {
            report.push_back("full_ir=" + format_double(full_identification_rate(setup)));
        }
    }

    if (report.empty()) {
        throw ConfigError("nothing to evaluate: give --scores/--labels or --gallery");
    }
    for (const auto& line : report) std::cout << line << '\n';
    if (!args.out.empty()) {
        std::ofstream out(args.out, std::ios::binary);
        if (!out) throw Error("cannot open '" + args.out + "' for writing");
        for (const auto& line : report) out << line << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fit an intersection of quadric hypersurfaces to a point cloud and use it for "
                 "outlier scoring and similarity robustification"};
    app.require_subcommand(1);

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "Generate a synthetic point cloud");
    gen->add_option("--curve", gen_args.curve, "Curve family")
        ->check(CLI::IsMember({"tennis"}))
        ->capture_default_str();
    gen->add_option("--n", gen_args.spec.n, "Number of curve samples")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    gen->add_option("--a", gen_args.spec.a, "Curve parameter a")->capture_default_str();
    gen->add_option("--b", gen_args.spec.b, "Curve parameter b")->capture_default_str();
    gen->add_option("--noise", gen_args.spec.noise_sigma, "Gaussian noise sigma")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    gen->add_option("--outliers", gen_args.outliers, "Outliers to append")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    gen->add_option("--factor", gen_args.factor, "Outlier norm as a multiple of the median norm")
        ->capture_default_str();
    gen->add_option("--seed", gen_args.spec.seed, "Random seed")->capture_default_str();
    gen->add_option("--out", gen_args.out, "Output cloud CSV")->required();
    gen->add_option("--labels", gen_args.labels_out, "Output labels CSV (0 inlier, 1 outlier)");

    FitArgs fit_args;
    CLI::App* fit_cmd = app.add_subcommand("fit", "Fit a quadric intersection model");
    fit_cmd->add_option("--input", fit_args.input, "Input cloud CSV")
        ->required()
        ->check(CLI::ExistingFile);
    fit_cmd->add_option("--model", fit_args.model_out, "Output model file")->required();
    fit_cmd->add_option("--trace", fit_args.trace_out, "Output training trace CSV");
    fit_cmd->add_option("--loss", fit_args.loss, "Loss variant")
        ->check(CLI::IsMember({"qfull", "qbase"}))
        ->capture_default_str();
    fit_cmd->add_option("--m", fit_args.config.quadric_count, "Number of quadrics")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    fit_cmd->add_option("--lambda", fit_args.config.lambda, "Orthogonality multiplier")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    fit_cmd->add_option("--lr", fit_args.config.learning_rate, "Learning rate")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    fit_cmd->add_option("--batch", fit_args.config.batch_size, "Batch size")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    fit_cmd->add_option("--epochs", fit_args.config.epochs, "Epochs")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    fit_cmd->add_option("--seed", fit_args.config.seed, "Random seed")->capture_default_str();
    fit_cmd->add_flag("--normalize", fit_args.config.normalize_inputs,
                      "Project points onto the unit sphere before fitting");
    fit_cmd->add_option("--schedule", fit_args.schedule, "Learning rate schedule")
        ->check(CLI::IsMember({"cosine", "constant"}))
        ->capture_default_str();

    ScoreArgs score_args;
    CLI::App* score = app.add_subcommand("score", "Score points with a fitted model");
    score->add_option("--input", score_args.input, "Input cloud CSV")
        ->required()
        ->check(CLI::ExistingFile);
    score->add_option("--out", score_args.out, "Output scores CSV")->required();
    score->add_option("--scorer", score_args.scorer, "Scorer")
        ->check(CLI::IsMember({"quadric", "pca", "norm"}))
        ->capture_default_str();
    score->add_option("--model", score_args.model_path, "Model file for the quadric scorer")
        ->check(CLI::ExistingFile);
    score->add_option("--train", score_args.train_path,
                      "Training cloud for the pca scorer (defaults to --input)")
        ->check(CLI::ExistingFile);
    score->add_option("--pca-k", score_args.pca_k, "Subspace dimension for the pca scorer")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    score->add_flag("--pca-non-centered", score_args.pca_non_centered,
                    "Fit PCA without centering");
    score->add_flag("--negate-norm", score_args.negate_norm,
                    "Negate the norm scorer (low-norm outlier convention)");
    score->add_flag("--normalize", score_args.normalize,
                    "Project points onto the unit sphere before scoring");

    EvalArgs eval_args;
    CLI::App* eval = app.add_subcommand("eval", "Evaluate scores and similarities");
    eval->add_option("--scores", eval_args.scores_path, "Scores CSV")->check(CLI::ExistingFile);
    eval->add_option("--labels", eval_args.labels_path, "Labels CSV")->check(CLI::ExistingFile);
    eval->add_option("--gallery", eval_args.gallery_path, "Gallery embeddings CSV")
        ->check(CLI::ExistingFile);
    eval->add_option("--gallery-ids", eval_args.gallery_ids_path, "Gallery identity labels")
        ->check(CLI::ExistingFile);
    eval->add_option("--distractors", eval_args.distractors_path, "Distractor embeddings CSV")
        ->check(CLI::ExistingFile);
    eval->add_option("--model", eval_args.model_path, "Model for similarity robustification")
        ->check(CLI::ExistingFile);
    eval->add_option("--fpr", eval_args.fpr, "Target false positive rate")
        ->capture_default_str();
    eval->add_option("--grid", eval_args.grid, "Robustification threshold grid")->delimiter(',');
    eval->add_option("--out", eval_args.out, "Also write the report to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) run_gen(gen_args);
        if (fit_cmd->parsed()) run_fit(fit_args);
        if (score->parsed()) run_score(score_args);
        if (eval->parsed()) run_eval(eval_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
