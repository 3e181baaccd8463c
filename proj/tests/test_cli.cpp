#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "quadrics/csv.hpp"
#include "quadrics/evaluation.hpp"

#ifndef QUADRICS_CLI_PATH
#error "QUADRICS_CLI_PATH must point at the CLI binary"
#endif

namespace {

namespace fs = std::filesystem;

int run_cli(const std::string& args, const fs::path& stdout_file = {}) {
    std::string redirect =
        stdout_file.empty() ? std::string(" > /dev/null") : " > " + stdout_file.string();
    std::string cmd = std::string(QUADRICS_CLI_PATH) + " " + args + redirect + " 2> /dev/null";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

fs::path temp_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("quadrics_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void spit(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

}  // namespace

TEST_CASE("gen writes the tennis fixture deterministically") {
    fs::path dir = temp_dir("gen");
    std::string flags = "gen --curve tennis --n 99 --noise 0.05 --outliers 1 --factor 2 --seed 7";
    CHECK(run_cli(flags + " --out " + (dir / "cloud.csv").string() + " --labels " +
                  (dir / "labels.csv").string()) == 0);

    auto cloud = quadrics::read_point_cloud(dir / "cloud.csv");
    CHECK(cloud.size() == 100);
    CHECK(cloud.dim() == 3);
    auto labels = quadrics::read_labels(dir / "labels.csv");
    REQUIRE(labels.size() == 100);
    CHECK(std::count(labels.begin(), labels.end(), 1) == 1);
    CHECK(labels.back() == 1);

    CHECK(run_cli(flags + " --out " + (dir / "cloud2.csv").string() + " --labels " +
                  (dir / "labels2.csv").string()) == 0);
    CHECK(slurp(dir / "cloud.csv") == slurp(dir / "cloud2.csv"));
    CHECK(slurp(dir / "labels.csv") == slurp(dir / "labels2.csv"));
}

TEST_CASE("gen rejects a zero sample count") {
    fs::path dir = temp_dir("gen_zero");
    CHECK(run_cli("gen --n 0 --out " + (dir / "c.csv").string()) == 2);
}

TEST_CASE("fit produces a model file and distinct loss headers") {
    fs::path dir = temp_dir("fit");
    REQUIRE(run_cli("gen --n 60 --noise 0.02 --seed 3 --out " + (dir / "cloud.csv").string()) ==
            0);

    std::string common = "fit --input " + (dir / "cloud.csv").string() +
                         " --m 2 --epochs 40 --seed 1 --trace " + (dir / "trace.csv").string();
    CHECK(run_cli(common + " --loss qfull --model " + (dir / "full.qim").string()) == 0);
    CHECK(run_cli(common + " --loss qbase --model " + (dir / "base.qim").string()) == 0);

    std::string full = slurp(dir / "full.qim");
    std::string base = slurp(dir / "base.qim");
    CHECK(full.substr(0, 7) == "QIM v1\n");
    CHECK(full.find("loss=qfull") != std::string::npos);
    CHECK(base.find("loss=qbase") != std::string::npos);

    std::string trace = slurp(dir / "trace.csv");
    CHECK(trace.substr(0, trace.find('\n')) == "epoch,data,penalty,total,seconds");
    CHECK(std::count(trace.begin(), trace.end(), '\n') == 41);  // header + 40 epochs
}

TEST_CASE("fit fails cleanly on a missing input") {
    fs::path dir = temp_dir("fit_missing");
    CHECK(run_cli("fit --input " + (dir / "nope.csv").string() + " --model " +
                  (dir / "m.qim").string()) != 0);
}

TEST_CASE("score supports the three scorers") {
    fs::path dir = temp_dir("score");
    spit(dir / "cloud.csv", "3,4\n0.5,0\n0,0\n");

    CHECK(run_cli("score --scorer norm --input " + (dir / "cloud.csv").string() + " --out " +
                  (dir / "norms.csv").string()) == 0);
    auto norms = quadrics::read_scores(dir / "norms.csv");
    REQUIRE(norms.size() == 3);
    CHECK(norms[0] == 5.0);
    CHECK(norms[1] == 0.5);
    CHECK(norms[2] == 0.0);

    // a quadric model file written by hand: the unit circle
    spit(dir / "circle.qim", "QIM v1\nd=2 m=1 loss=qfull lambda=1\n1 0 1 0 0 -1\n");
    CHECK(run_cli("score --scorer quadric --model " + (dir / "circle.qim").string() +
                  " --input " + (dir / "cloud.csv").string() + " --out " +
                  (dir / "q.csv").string()) == 0);
    auto qscores = quadrics::read_scores(dir / "q.csv");
    REQUIRE(qscores.size() == 3);
    CHECK(qscores[0] > qscores[1]);  // (3,4) is far off the circle

    CHECK(run_cli("score --scorer pca --pca-k 1 --input " + (dir / "cloud.csv").string() +
                  " --out " + (dir / "p.csv").string()) == 0);
    CHECK(quadrics::read_scores(dir / "p.csv").size() == 3);

    // dimension mismatch between model and cloud
    spit(dir / "cloud3.csv", "1,2,3\n");
    CHECK(run_cli("score --scorer quadric --model " + (dir / "circle.qim").string() +
                  " --input " + (dir / "cloud3.csv").string() + " --out " +
                  (dir / "bad.csv").string()) == 1);

    spit(dir / "empty.csv", "");
    CHECK(run_cli("score --scorer norm --input " + (dir / "empty.csv").string() + " --out " +
                  (dir / "e.csv").string()) == 1);
}

TEST_CASE("eval reproduces the auc example from files") {
    fs::path dir = temp_dir("eval");
    spit(dir / "scores.csv", "0.1\n0.4\n0.35\n0.8\n");
    spit(dir / "labels.csv", "0\n0\n1\n1\n");
    fs::path report = dir / "report.txt";
    CHECK(run_cli("eval --scores " + (dir / "scores.csv").string() + " --labels " +
                      (dir / "labels.csv").string() + " --out " + report.string(),
                  dir / "stdout.txt") == 0);
    CHECK(slurp(report) == "auc=0.75\n");
    CHECK(slurp(dir / "stdout.txt") == "auc=0.75\n");
}

TEST_CASE("eval rejects degenerate label files") {
    fs::path dir = temp_dir("eval_bad");
    spit(dir / "scores.csv", "0.1\n0.4\n");
    spit(dir / "ones.csv", "1\n1\n");
    CHECK(run_cli("eval --scores " + (dir / "scores.csv").string() + " --labels " +
                  (dir / "ones.csv").string()) == 1);
    spit(dir / "junk.csv", "1\nzebra\n");
    CHECK(run_cli("eval --scores " + (dir / "scores.csv").string() + " --labels " +
                  (dir / "junk.csv").string()) == 1);
}

TEST_CASE("eval reports identification rates") {
    fs::path dir = temp_dir("eval_ir");
    spit(dir / "gallery.csv", "1,0.05\n1,-0.05\n0.05,1\n-0.05,1\n");
    spit(dir / "ids.csv", "0\n0\n1\n1\n");
    spit(dir / "distractors.csv", "0.7,0.7\n");

    fs::path out = dir / "stdout.txt";
    CHECK(run_cli("eval --gallery " + (dir / "gallery.csv").string() + " --gallery-ids " +
                      (dir / "ids.csv").string() + " --fpr 0.25",
                  out) == 0);
    std::string no_distractors = slurp(out);
    CHECK(no_distractors.find("ir=") != std::string::npos);
    CHECK(no_distractors.find("full_ir=") == std::string::npos);

    CHECK(run_cli("eval --gallery " + (dir / "gallery.csv").string() + " --gallery-ids " +
                      (dir / "ids.csv").string() + " --distractors " +
                      (dir / "distractors.csv").string() + " --fpr 0.25",
                  out) == 0);
    std::string with_distractors = slurp(out);
    CHECK(with_distractors.find("ir=") != std::string::npos);
    CHECK(with_distractors.find("full_ir=") != std::string::npos);
}

TEST_CASE("eval runs the robustification grid search") {
    fs::path dir = temp_dir("eval_grid");
    spit(dir / "gallery.csv", "1,0.03\n1,-0.03\n0.03,1\n-0.03,1\n1000,1\n");
    spit(dir / "ids.csv", "0\n0\n1\n1\n2\n");
    spit(dir / "model.qim", "QIM v1\nd=2 m=1 loss=qfull lambda=1\n1 0 1 0 0 -1\n");

    fs::path out = dir / "stdout.txt";
    CHECK(run_cli("eval --gallery " + (dir / "gallery.csv").string() + " --gallery-ids " +
                      (dir / "ids.csv").string() + " --fpr 0.15 --model " +
                      (dir / "model.qim").string() + " --grid 500,1e9",
                  out) == 0);
    std::string report = slurp(out);
    CHECK(report.find("t=") != std::string::npos);
    CHECK(report.find("ir=") != std::string::npos);
}

TEST_CASE("fit and score are byte-deterministic") {
    fs::path dir = temp_dir("determinism");
    REQUIRE(run_cli("gen --n 40 --noise 0.05 --outliers 1 --seed 11 --out " +
                    (dir / "cloud.csv").string()) == 0);
    std::string fit_flags = "fit --input " + (dir / "cloud.csv").string() +
                            " --m 2 --epochs 30 --seed 5 --model ";
    CHECK(run_cli(fit_flags + (dir / "a.qim").string()) == 0);
    CHECK(run_cli(fit_flags + (dir / "b.qim").string()) == 0);
    CHECK(slurp(dir / "a.qim") == slurp(dir / "b.qim"));

    std::string score_flags = "score --scorer quadric --model " + (dir / "a.qim").string() +
                              " --input " + (dir / "cloud.csv").string() + " --out ";
    CHECK(run_cli(score_flags + (dir / "s1.csv").string()) == 0);
    CHECK(run_cli(score_flags + (dir / "s2.csv").string()) == 0);
    CHECK(slurp(dir / "s1.csv") == slurp(dir / "s2.csv"));
}
