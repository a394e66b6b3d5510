#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <string>

namespace spdclat {

// Shortest representation that round-trips to the same double.
std::string format_double(double value);

// Write-then-rename so readers never observe a partial file.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

std::string csv_real(const Eigen::MatrixXd& m);

// Complex entries as interleaved re,im column pairs.
std::string csv_complex(const Eigen::MatrixXcd& m);

std::string csv_vector(const Eigen::VectorXd& v);

} // namespace spdclat
