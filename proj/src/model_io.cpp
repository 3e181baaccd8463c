#include "quadrics/model_io.hpp"

#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "quadrics/errors.hpp"
#include "quadrics/text.hpp"

namespace quadrics {

namespace {

constexpr std::string_view kMagic = "QIM v1";

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (pos < line.size()) {
        std::size_t next = line.find(' ', pos);
        if (next == std::string_view::npos) next = line.size();
        if (next > pos) fields.push_back(line.substr(pos, next - pos));
        pos = next + 1;
    }
    return fields;
}

std::string_view header_value(std::string_view field, std::string_view key) {
    if (field.size() <= key.size() || field.substr(0, key.size()) != key ||
        field[key.size()] != '=') {
        throw ParseError("line 2: expected '" + std::string(key) + "=<value>', got '" +
                         std::string(field) + "'");
    }
    return field.substr(key.size() + 1);
}

}  // namespace

std::string to_string(LossVariant variant) {
    return variant == LossVariant::kQFull ? "qfull" : "qbase";
}

LossVariant loss_variant_from_string(std::string_view text) {
    if (text == "qfull") return LossVariant::kQFull;
    if (text == "qbase") return LossVariant::kQBase;
    throw ParseError("unknown loss variant '" + std::string(text) + "'");
}

std::string serialize(const QuadricIntersection& model, LossVariant loss, double lambda) {
    std::string out;
    out += kMagic;
    out += '\n';
    out += "d=" + std::to_string(model.dim()) + " m=" + std::to_string(model.size()) +
           " loss=" + to_string(loss) + " lambda=" + format_double(lambda) + "\n";
    for (int k = 0; k < model.size(); ++k) {
        Eigen::VectorXd coeffs = model.quadric(k).coefficients();
        for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
            if (i > 0) out += ' ';
            out += format_double(coeffs[i]);
        }
        out += '\n';
    }
    return out;
}

ModelFile deserialize(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t next = text.find('\n', pos);
        if (next == std::string_view::npos) next = text.size();
        lines.push_back(text.substr(pos, next - pos));
        pos = next + 1;
    }
    if (lines.empty() || lines[0] != kMagic) {
        throw ParseError("line 1: expected '" + std::string(kMagic) + "' header");
    }
    if (lines.size() < 2) {
        throw ParseError("line 2: missing model header");
    }
    auto fields = split_fields(lines[1]);
    if (fields.size() != 4) {
        throw ParseError("line 2: expected 4 header fields, got " +
                         std::to_string(fields.size()));
    }
    long long d = parse_integer(header_value(fields[0], "d"), "line 2");
    long long m = parse_integer(header_value(fields[1], "m"), "line 2");
    LossVariant loss = loss_variant_from_string(header_value(fields[2], "loss"));
    double lambda = parse_double(header_value(fields[3], "lambda"), "line 2");
    if (d < 1) {
        throw ParseError("line 2: dimension must be positive, got " + std::to_string(d));
    }
    if (m < 1) {
        throw ParseError("line 2: quadric count must be positive, got " + std::to_string(m));
    }
    int dim = static_cast<int>(d);
    int expected = coefficient_count(dim);
    if (lines.size() < 2 + static_cast<std::size_t>(m)) {
        throw ParseError("truncated file: expected " + std::to_string(m) +
                         " coefficient lines, got " + std::to_string(lines.size() - 2));
    }
    std::vector<QuadraticPolynomial> quadrics;
    quadrics.reserve(m);
    for (long long k = 0; k < m; ++k) {
        std::string where = "line " + std::to_string(k + 3);
        auto entries = split_fields(lines[2 + k]);
        if (static_cast<int>(entries.size()) != expected) {
            throw ParseError(where + ": expected " + std::to_string(expected) +
                             " coefficients, got " + std::to_string(entries.size()));
        }
        Eigen::VectorXd coeffs(expected);
        for (int i = 0; i < expected; ++i) {
            coeffs[i] = parse_double(entries[i], where);
        }
        quadrics.push_back(QuadraticPolynomial::from_coefficients(dim, coeffs));
    }
    for (std::size_t extra = 2 + m; extra < lines.size(); ++extra) {
        if (!lines[extra].empty()) {
            throw ParseError("line " + std::to_string(extra + 1) + ": trailing content");
        }
    }
    return ModelFile{QuadricIntersection(std::move(quadrics)), loss, lambda};
}

void save_model(const std::filesystem::path& path, const QuadricIntersection& model,
                LossVariant loss, double lambda) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot open '" + path.string() + "' for writing");
    }
    out << serialize(model, loss, lambda);
    if (!out) {
        throw Error("failed writing '" + path.string() + "'");
    }
}

ModelFile load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return deserialize(buffer.str());
}

}  // namespace quadrics
