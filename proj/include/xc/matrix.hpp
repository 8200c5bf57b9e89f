#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "xc/report.hpp"

namespace xc {

/// Dense row-major integer matrix with optional row/column labels.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols, std::int64_t fill = 0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  static IntMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows);
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::int64_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const std::vector<std::int64_t>& data() const { return data_; }

  bool nonnegative() const;
  /// Indicator of the nonzero entries.
  IntMatrix support() const;
  IntMatrix transpose() const;

  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;

  /// Entries only, one row per line.
  std::string to_csv() const;
  static IntMatrix from_csv(const std::string& text);
  json to_json() const;
  static IntMatrix from_json(const json& j);

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

}  // namespace xc
