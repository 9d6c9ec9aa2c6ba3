#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace distkit {

// Named real-valued columns of equal length, plus the class labels of a
// wine-format file.
struct Dataset {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;
  std::optional<std::vector<long long>> labels;

  std::size_t nrows() const noexcept { return columns.empty() ? 0 : columns.front().size(); }
  std::size_t ncols() const noexcept { return columns.size(); }

  // Column by name. "log:NAME" yields the natural log of column NAME.
  // Throws InvalidParameter for unknown names.
  std::vector<double> column(const std::string& name) const;
  // Rows are observations, one matrix column per requested name.
  Eigen::MatrixXd matrix(const std::vector<std::string>& names) const;
};

// Comma-separated values with '.' decimals. A first row holding any
// non-numeric field is a header; without one, columns are named "1", "2", ...
// A headerless file with at least two columns whose first column is all
// integers is read as wine format: that column becomes "label" (kept in
// `labels` and also as a column) and the rest are numbered from 1.
Dataset parse_csv(std::istream& in);
Dataset read_csv(const std::string& path);

// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

// Header row then one row per index; columns must share a length.
void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::span<const double>>& columns);

}  // namespace distkit
