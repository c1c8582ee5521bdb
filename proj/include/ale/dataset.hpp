#ifndef ALE_DATASET_HPP
#define ALE_DATASET_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ale/common.hpp"

namespace ale {

/// Immutable numeric training table: n rows of d predictors plus an
/// optional response column. Estimators never read the response; it is
/// kept for generators and tree fitting.
class Dataset {
 public:
  Dataset(std::vector<std::string> columns, Matrix values,
          std::optional<std::vector<double>> response = std::nullopt,
          std::string response_name = "");

  std::size_t n() const { return values_.rows(); }
  std::size_t dims() const { return values_.cols(); }

  const std::vector<std::string>& columns() const { return columns_; }
  const Matrix& values() const { return values_; }

  bool has_response() const { return response_.has_value(); }
  const std::vector<double>& response() const;
  const std::string& response_name() const { return response_name_; }

  /// -1 when no column has that name.
  int column_index(std::string_view name) const;

  std::vector<double> column(int j) const;

 private:
  std::vector<std::string> columns_;
  Matrix values_;
  std::optional<std::vector<double>> response_;
  std::string response_name_;
};

struct CsvOptions {
  char delimiter = ',';
  bool has_header = true;
  // "auto": use a column named "y" as response when present.
  // "none": all columns are predictors. Anything else: required column name.
  std::string response_column = "none";
};

Dataset load_csv(const std::string& path, const CsvOptions& options = {});

/// Writes the dataset (predictors plus response, when present) back out as
/// comma-delimited text with one header row, full 17-digit precision.
void save_csv(const Dataset& data, const std::string& path);

}  // namespace ale

#endif  // ALE_DATASET_HPP
