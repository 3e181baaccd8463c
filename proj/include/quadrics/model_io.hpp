#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "quadrics/intersection.hpp"

namespace quadrics {

/// A deserialized model file: the model plus the fitting metadata carried in
/// the header.
struct ModelFile {
    QuadricIntersection model;
    LossVariant loss;
    double lambda;
};

std::string to_string(LossVariant variant);
LossVariant loss_variant_from_string(std::string_view text);

/// Versioned text format, one line per quadric:
///
///   QIM v1
///   d=<int> m=<int> loss=<qfull|qbase> lambda=<decimal>
///   <D space-separated coefficients in canonical monomial order> (m lines)
///
/// Coefficients are written in shortest round-trip decimal form, so
/// deserialize(serialize(model)) reproduces every coefficient bit-exactly.
std::string serialize(const QuadricIntersection& model, LossVariant loss, double lambda);

/// Throws ParseError on malformed input (with line location), unknown version
/// or inconsistent dimensions.
ModelFile deserialize(std::string_view text);

void save_model(const std::filesystem::path& path, const QuadricIntersection& model,
                LossVariant loss, double lambda);
ModelFile load_model(const std::filesystem::path& path);

}  // namespace quadrics
