#include "distkit/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "distkit/error.hpp"

namespace distkit {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(std::string_view(line).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::optional<double> parse_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  const char* first = s.data();
  if (*first == '+') ++first;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

std::vector<double> Dataset::column(const std::string& name) const {
  if (name.rfind("log:", 0) == 0) {
    std::vector<double> v = column(name.substr(4));
    for (double& x : v) x = std::log(x);
    return v;
  }
  for (std::size_t j = 0; j < names.size(); ++j)
    if (names[j] == name) return columns[j];
  std::string known;
  for (const auto& n : names) known += (known.empty() ? "" : ", ") + n;
  throw Error(ErrorCode::InvalidParameter, "no column \"" + name + "\" (have: " + known + ")");
}

Eigen::MatrixXd Dataset::matrix(const std::vector<std::string>& cols) const {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(nrows()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const auto v = column(cols[j]);
    for (std::size_t i = 0; i < v.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v[i];
  }
  return m;
}

Dataset parse_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    rows.push_back(split(line));
  }
  Dataset ds;
  if (rows.empty()) return ds;

  bool header = false;
  for (const auto& f : rows.front())
    if (!parse_number(f)) header = true;
  const std::size_t width = rows.front().size();
  const std::size_t first_data = header ? 1 : 0;

  ds.columns.assign(width, {});
  for (std::size_t r = first_data; r < rows.size(); ++r) {
    if (rows[r].size() != width)
      throw Error(ErrorCode::DimensionMismatch, "CSV row " + std::to_string(r + 1) + " has " +
                                                    std::to_string(rows[r].size()) + " fields, expected " +
                                                    std::to_string(width));
    for (std::size_t j = 0; j < width; ++j) {
      const auto v = parse_number(rows[r][j]);
      if (!v)
        throw Error(ErrorCode::InvalidParameter,
                    "CSV row " + std::to_string(r + 1) + ": \"" + rows[r][j] + "\" is not a number");
      ds.columns[j].push_back(*v);
    }
  }

  if (header) {
    ds.names = rows.front();
    return ds;
  }
  bool wine = width >= 2 && !ds.columns.front().empty();
  for (double v : ds.columns.front())
    if (v != std::floor(v) || std::abs(v) > 1e15) wine = false;
  for (std::size_t j = 0; j < width; ++j) ds.names.push_back(std::to_string(wine ? j : j + 1));
  if (wine) {
    ds.names.front() = "label";
    ds.labels.emplace();
    for (double v : ds.columns.front()) ds.labels->push_back(static_cast<long long>(v));
  }
  return ds;
}

Dataset read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  return parse_csv(in);
}

std::string format_double(double x) {
  if (std::isnan(x)) return "NaN";
  if (std::isinf(x)) return x > 0 ? "Inf" : "-Inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::span<const double>>& columns) {
  for (std::size_t j = 0; j < header.size(); ++j) out << (j ? "," : "") << header[j];
  out << '\n';
  const std::size_t n = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns)
    if (c.size() != n) throw Error(ErrorCode::DimensionMismatch, "CSV columns differ in length");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) out << (j ? "," : "") << format_double(columns[j][i]);
    out << '\n';
  }
}

}  // namespace distkit
