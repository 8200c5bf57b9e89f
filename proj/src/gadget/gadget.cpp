#include "xc/gadget.hpp"

#include <bit>
#include <sstream>

namespace xc::gadget {

Gadget::Gadget(int dim, std::vector<Bit> table)
    : dim_(dim), bits_(std::countr_zero(static_cast<unsigned>(dim))), table_(std::move(table)) {}

Gadget Gadget::from_rows(const std::vector<std::vector<Bit>>& rows) {
  const auto dim = rows.size();
  if (dim < 2 || !std::has_single_bit(dim)) {
    throw Error("gadget dimension must be a power of two >= 2");
  }
  std::vector<Bit> table;
  table.reserve(dim * dim);
  for (const auto& row : rows) {
    if (row.size() != dim) throw Error("gadget table must be square");
    for (Bit b : row) {
      if (b > 1) throw Error("gadget entries must be bits");
      table.push_back(b);
    }
  }
  return Gadget(static_cast<int>(dim), std::move(table));
}

std::vector<std::vector<Bit>> Gadget::rows() const {
  std::vector<std::vector<Bit>> out(static_cast<std::size_t>(dim_));
  for (int x = 0; x < dim_; ++x) {
    for (int y = 0; y < dim_; ++y) out[static_cast<std::size_t>(x)].push_back((*this)(x, y));
  }
  return out;
}

std::string Gadget::to_text() const {
  std::string s;
  for (int x = 0; x < dim_; ++x) {
    for (int y = 0; y < dim_; ++y) s.push_back((*this)(x, y) ? '1' : '0');
    s.push_back('\n');
  }
  return s;
}

Gadget Gadget::from_text(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::vector<Bit>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<Bit> row;
    for (char c : line) {
      if (c == '0' || c == '1') {
        row.push_back(static_cast<Bit>(c - '0'));
      } else if (c != ' ' && c != '\r') {
        throw Error("gadget text must contain only 0/1");
      }
    }
    rows.push_back(std::move(row));
  }
  return from_rows(rows);
}

namespace {

// x_1 is the most significant of `bits` bits.
int coord(int value, int bits, int i) { return (value >> (bits - i)) & 1; }

Gadget from_formula(int bits) {
  const int dim = 1 << bits;
  std::vector<std::vector<Bit>> rows(static_cast<std::size_t>(dim),
                                     std::vector<Bit>(static_cast<std::size_t>(dim)));
  for (int x = 0; x < dim; ++x) {
    for (int y = 0; y < dim; ++y) {
      int v = coord(x, bits, 1) ^ coord(y, bits, 1);
      for (int i = 2; i <= bits; ++i) v ^= coord(x, bits, i) & coord(y, bits, i);
      rows[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = static_cast<Bit>(v);
    }
  }
  return Gadget::from_rows(rows);
}

}  // namespace

Gadget build_gadget() { return from_formula(3); }
Gadget build_smaller_gadget() { return from_formula(2); }
Gadget xor_gadget() { return from_formula(1); }

Gadget build_via_leadsto(const Gadget& base, int steps) {
  if (steps < 0 || steps > 2) throw Error("leadsto steps must be in {0,1,2}");
  if (base != xor_gadget()) throw Error("leadsto base must be the 2x2 XOR matrix");
  Gadget m = base;
  for (int s = 0; s < steps; ++s) {
    const int d = m.dim();
    std::vector<std::vector<Bit>> rows(static_cast<std::size_t>(2 * d),
                                       std::vector<Bit>(static_cast<std::size_t>(2 * d)));
    for (int x = 0; x < d; ++x) {
      for (int a = 0; a < 2; ++a) {
        for (int y = 0; y < d; ++y) {
          for (int b = 0; b < 2; ++b) {
            rows[static_cast<std::size_t>(2 * x + a)][static_cast<std::size_t>(2 * y + b)] =
                static_cast<Bit>(m(x, y) ^ (a & b));
          }
        }
      }
    }
    m = Gadget::from_rows(rows);
  }
  return m;
}

}  // namespace xc::gadget
