#include "quadrics/csv.hpp"

#include <fstream>
#include <string>
#include <vector>

#include "quadrics/errors.hpp"
#include "quadrics/text.hpp"

namespace quadrics {

namespace {

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open '" + path.string() + "'");
    }
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot open '" + path.string() + "' for writing");
    }
    return out;
}

std::string location(const std::filesystem::path& path, std::size_t row, std::size_t col) {
    return path.string() + ":" + std::to_string(row + 1) + ":" + std::to_string(col + 1);
}

}  // namespace

PointCloud read_point_cloud(const std::filesystem::path& path) {
    auto lines = read_lines(path);
    if (lines.empty()) {
        throw ParseError("'" + path.string() + "' contains no points");
    }
    std::vector<std::vector<double>> rows;
    std::size_t dim = 0;
    for (std::size_t r = 0; r < lines.size(); ++r) {
        std::vector<double> row;
        std::string_view line = lines[r];
        std::size_t pos = 0;
        std::size_t col = 0;
        while (true) {
            std::size_t next = line.find(',', pos);
            std::string_view field =
                line.substr(pos, next == std::string_view::npos ? next : next - pos);
            row.push_back(parse_double(field, location(path, r, col)));
            if (next == std::string_view::npos) break;
            pos = next + 1;
            ++col;
        }
        if (r == 0) {
            dim = row.size();
        } else if (row.size() != dim) {
            throw ParseError(location(path, r, 0) + ": expected " + std::to_string(dim) +
                             " fields, got " + std::to_string(row.size()));
        }
        rows.push_back(std::move(row));
    }
    Eigen::MatrixXd points(rows.size(), dim);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            points(r, c) = rows[r][c];
        }
    }
    return PointCloud(std::move(points));
}

void write_point_cloud(const std::filesystem::path& path, const PointCloud& cloud) {
    auto out = open_out(path);
    for (int i = 0; i < cloud.size(); ++i) {
        for (int j = 0; j < cloud.dim(); ++j) {
            if (j > 0) out << ',';
            out << format_double(cloud.points()(i, j));
        }
        out << '\n';
    }
    if (!out) throw Error("failed writing '" + path.string() + "'");
}

std::vector<int> read_labels(const std::filesystem::path& path) {
    auto lines = read_lines(path);
    std::vector<int> labels;
    labels.reserve(lines.size());
    for (std::size_t r = 0; r < lines.size(); ++r) {
        long long v = parse_integer(lines[r], location(path, r, 0));
        if (v != 0 && v != 1) {
            throw ParseError(location(path, r, 0) + ": label must be 0 or 1, got " +
                             std::to_string(v));
        }
        labels.push_back(static_cast<int>(v));
    }
    return labels;
}

void write_labels(const std::filesystem::path& path, const std::vector<int>& labels) {
    auto out = open_out(path);
    for (int label : labels) {
        out << label << '\n';
    }
    if (!out) throw Error("failed writing '" + path.string() + "'");
}

std::vector<double> read_scores(const std::filesystem::path& path) {
    auto lines = read_lines(path);
    std::vector<double> scores;
    scores.reserve(lines.size());
    for (std::size_t r = 0; r < lines.size(); ++r) {
        scores.push_back(parse_double(lines[r], location(path, r, 0)));
    }
    return scores;
}

void write_scores(const std::filesystem::path& path, const std::vector<double>& scores) {
    auto out = open_out(path);
    for (double s : scores) {
        out << format_double(s) << '\n';
    }
    if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace quadrics
