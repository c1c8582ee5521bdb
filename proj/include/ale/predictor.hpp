#ifndef ALE_PREDICTOR_HPP
#define ALE_PREDICTOR_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ale/common.hpp"

namespace ale {

/// Exact count of prediction rows requested from a model. ALE effects cost
/// 2^{|J|}*n rows regardless of grid resolution; partial dependence costs
/// K^{|J|}*n. The ledger is how tests and run reports verify both.
class EvalLedger {
 public:
  std::int64_t total_rows_predicted() const { return total_; }
  void add(std::int64_t m) { total_ += m; }
  void reset() { total_ = 0; }

 private:
  std::int64_t total_ = 0;
};

/// The sole channel to the black-box model: a batch map from an m x d
/// matrix of predictor rows to m predictions. Implementations must be
/// deterministic (identical input matrix, identical output vector).
/// predict() is issued from one logical thread; any internal row-level
/// parallelism belongs to the implementation.
class Predictor {
 public:
  virtual ~Predictor() = default;

  virtual std::string label() const = 0;

  std::vector<double> predict(const Matrix& rows) {
    std::vector<double> out = evaluate(rows);
    if (out.size() != rows.rows()) {
      fail("predictor '", label(), "' returned ", out.size(), " predictions for ", rows.rows(), " rows");
    }
    ledger_.add(static_cast<std::int64_t>(rows.rows()));
    return out;
  }

  EvalLedger& ledger() { return ledger_; }
  const EvalLedger& ledger() const { return ledger_; }

 private:
  virtual std::vector<double> evaluate(const Matrix& rows) = 0;

  EvalLedger ledger_;
};

}  // namespace ale

#endif  // ALE_PREDICTOR_HPP
