#pragma once

#include <iosfwd>
#include <string>

#include <Eigen/Dense>

namespace covparam {

/// Format a double with 17 significant digits (value-preserving and
/// byte-stable across runs).
std::string format_double(double value);

/// Read a matrix from CSV: one row per line, comma-separated values,
/// no header, '.' decimal point. Throws ValidationError on ragged rows,
/// unparsable fields, or empty input.
Eigen::MatrixXd load_matrix_csv(const std::string& path);
Eigen::MatrixXd read_matrix_csv(std::istream& in, const std::string& origin = "<stream>");

/// Write a matrix in the same CSV dialect, 17 significant digits.
void save_matrix_csv(const std::string& path, const Eigen::MatrixXd& m);
void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m);

}  // namespace covparam
