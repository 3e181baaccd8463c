#pragma once

#include <filesystem>
#include <vector>

#include "quadrics/point_cloud.hpp"

namespace quadrics {

// Point clouds: no header, one point per row, comma-separated decimal fields.
// Labels / identities: one integer per row. Scores: one decimal per row.
// All decimals are written in shortest round-trip form.

PointCloud read_point_cloud(const std::filesystem::path& path);
void write_point_cloud(const std::filesystem::path& path, const PointCloud& cloud);

std::vector<int> read_labels(const std::filesystem::path& path);
void write_labels(const std::filesystem::path& path, const std::vector<int>& labels);

std::vector<double> read_scores(const std::filesystem::path& path);
void write_scores(const std::filesystem::path& path, const std::vector<double>& scores);

}  // namespace quadrics
