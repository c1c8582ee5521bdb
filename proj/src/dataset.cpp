#include "ale/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <unordered_set>

namespace ale {

Dataset::Dataset(std::vector<std::string> columns, Matrix values,
                 std::optional<std::vector<double>> response, std::string response_name)
    : columns_(std::move(columns)),
      values_(std::move(values)),
      response_(std::move(response)),
      response_name_(std::move(response_name)) {
  if (values_.cols() != columns_.size()) fail("dataset: ", columns_.size(), " column names for ", values_.cols(), " columns");
  if (values_.cols() < 1) fail("dataset: needs at least one predictor column");
  if (values_.rows() < 2) fail("dataset: needs at least two rows, got ", values_.rows());
  std::unordered_set<std::string_view> seen;
  for (const auto& c : columns_) {
    if (!seen.insert(c).second) fail("dataset: duplicate column name '", c, "'");
  }
  if (!response_name_.empty() && seen.count(response_name_)) fail("dataset: duplicate column name '", response_name_, "'");
  for (std::size_t i = 0; i < values_.rows(); ++i) {
    for (std::size_t j = 0; j < values_.cols(); ++j) {
      if (!std::isfinite(values_(i, j))) fail("dataset: non-finite value at row ", i + 1, ", column ", columns_[j]);
    }
  }
  if (response_) {
    if (response_->size() != values_.rows()) fail("dataset: response length ", response_->size(), " does not match ", values_.rows(), " rows");
    for (std::size_t i = 0; i < response_->size(); ++i) {
      if (!std::isfinite((*response_)[i])) fail("dataset: non-finite response at row ", i + 1);
    }
  }
}

const std::vector<double>& Dataset::response() const {
  if (!response_) fail("dataset: no response column loaded");
  return *response_;
}

int Dataset::column_index(std::string_view name) const {
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    if (columns_[j] == name) return static_cast<int>(j);
  }
  return -1;
}

std::vector<double> Dataset::column(int j) const {
  std::vector<double> out(n());
  for (std::size_t i = 0; i < n(); ++i) out[i] = values_(i, static_cast<std::size_t>(j));
  return out;
}

namespace {

std::vector<std::string> split_fields(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(delim, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_cell(const std::string& raw, std::size_t data_row, const std::string& column) {
  const std::string s = trim(raw);
  double v = 0;
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end || s.empty()) {
    fail("csv: cannot parse '", s, "' as a number at (row ", data_row, ", col ", column, ")");
  }
  if (!std::isfinite(v)) fail("csv: non-finite value at (row ", data_row, ", col ", column, ")");
  return v;
}

}  // namespace

Dataset load_csv(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) fail("csv: cannot open '", path, "'");

  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.empty()) fail("csv: '", path, "' is empty");

  std::vector<std::string> names;
  std::size_t first_data = 0;
  if (options.has_header) {
    for (auto& f : split_fields(lines[0], options.delimiter)) names.push_back(trim(f));
    first_data = 1;
  } else {
    const std::size_t width = split_fields(lines[0], options.delimiter).size();
    for (std::size_t j = 0; j < width; ++j) names.push_back("x" + std::to_string(j + 1));
  }
  if (lines.size() <= first_data) fail("csv: '", path, "' has a header but no data rows");

  int response_col = -1;
  std::string response_name;
  if (options.response_column == "auto") {
    for (std::size_t j = 0; j < names.size(); ++j) {
      if (names[j] == "y") response_col = static_cast<int>(j);
    }
  } else if (options.response_column != "none" && !options.response_column.empty()) {
    for (std::size_t j = 0; j < names.size(); ++j) {
      if (names[j] == options.response_column) response_col = static_cast<int>(j);
    }
    if (response_col < 0) fail("csv: response column '", options.response_column, "' not found in '", path, "'");
  }
  if (response_col >= 0) response_name = names[static_cast<std::size_t>(response_col)];

  const std::size_t n = lines.size() - first_data;
  const std::size_t width = names.size();
  const std::size_t d = response_col >= 0 ? width - 1 : width;
  if (d < 1) fail("csv: '", path, "' has no predictor columns");

  std::vector<std::string> predictor_names;
  for (std::size_t j = 0; j < width; ++j) {
    if (static_cast<int>(j) != response_col) predictor_names.push_back(names[j]);
  }

  Matrix values(n, d);
  std::optional<std::vector<double>> response;
  if (response_col >= 0) response.emplace(n);

  for (std::size_t r = 0; r < n; ++r) {
    const auto fields = split_fields(lines[first_data + r], options.delimiter);
    if (fields.size() != width) {
      fail("csv: row ", r + 1, " has ", fields.size(), " fields, expected ", width);
    }
    std::size_t out_j = 0;
    for (std::size_t j = 0; j < width; ++j) {
      const double v = parse_cell(fields[j], r + 1, names[j]);
      if (static_cast<int>(j) == response_col) {
        (*response)[r] = v;
      } else {
        values(r, out_j++) = v;
      }
    }
  }

  return Dataset(std::move(predictor_names), std::move(values), std::move(response), std::move(response_name));
}

void save_csv(const Dataset& data, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("csv: cannot write '", path, "'");
  for (std::size_t j = 0; j < data.dims(); ++j) {
    if (j) out << ',';
    out << data.columns()[j];
  }
  if (data.has_response()) out << ',' << (data.response_name().empty() ? "y" : data.response_name());
  out << '\n';
  for (std::size_t i = 0; i < data.n(); ++i) {
    for (std::size_t j = 0; j < data.dims(); ++j) {
      if (j) out << ',';
      out << format_full(data.values()(i, j));
    }
    if (data.has_response()) out << ',' << format_full(data.response()[i]);
    out << '\n';
  }
  if (!out) fail("csv: write to '", path, "' failed");
}

}  // namespace ale
