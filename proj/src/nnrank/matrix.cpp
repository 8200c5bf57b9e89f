#include <sstream>

#include "xc/common.hpp"
#include "xc/matrix.hpp"

namespace xc {

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool IntMatrix::nonnegative() const {
  for (auto v : data_) {
    if (v < 0) return false;
  }
  return true;
}

IntMatrix IntMatrix::support() const {
  IntMatrix s(rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) s.data_[k] = data_[k] != 0 ? 1 : 0;
  return s;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  t.row_labels = col_labels;
  t.col_labels = row_labels;
  return t;
}

std::string IntMatrix::to_csv() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) out << ',';
      out << (*this)(i, j);
    }
    out << '\n';
  }
  return out.str();
}

IntMatrix IntMatrix::from_csv(const std::string& text) {
  std::vector<std::vector<std::int64_t>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::int64_t> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stoll(cell, &used));
        if (cell.find_first_not_of(" \t", used) != std::string::npos) throw Error("");
      } catch (const std::exception&) {
        throw Error("bad CSV cell: '" + cell + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  return from_rows(rows);
}

json IntMatrix::to_json() const {
  json j;
  j["rows"] = rows_;
  j["cols"] = cols_;
  json entries = json::array();
  for (std::size_t i = 0; i < rows_; ++i) {
    json row = json::array();
    for (std::size_t j2 = 0; j2 < cols_; ++j2) row.push_back((*this)(i, j2));
    entries.push_back(row);
  }
  j["entries"] = entries;
  if (!row_labels.empty()) j["row_labels"] = row_labels;
  if (!col_labels.empty()) j["col_labels"] = col_labels;
  return j;
}

IntMatrix IntMatrix::from_json(const json& j) {
  std::vector<std::vector<std::int64_t>> rows;
  const json& entries = j.is_array() ? j : j.at("entries");
  for (const auto& r : entries) rows.push_back(r.get<std::vector<std::int64_t>>());
  IntMatrix m = from_rows(rows);
  if (j.is_object()) {
    if (j.contains("row_labels")) m.row_labels = j["row_labels"].get<std::vector<std::string>>();
    if (j.contains("col_labels")) m.col_labels = j["col_labels"].get<std::vector<std::string>>();
  }
  return m;
}

}  // namespace xc
