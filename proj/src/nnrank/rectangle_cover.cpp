#include <algorithm>
#include <bit>
#include <bitset>
#include <set>

#include "xc/nnrank.hpp"

namespace xc::nnrank {

namespace {

constexpr std::size_t kExactLimit = 16;
using Cells = std::bitset<kExactLimit * kExactLimit>;

std::vector<std::uint32_t> row_masks(const IntMatrix& m) {
  std::vector<std::uint32_t> rows(m.rows(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) != 0) rows[i] |= 1U << j;
    }
  }
  return rows;
}

std::vector<std::size_t> bits_of(std::uint32_t mask) {
  std::vector<std::size_t> out;
  for (; mask; mask &= mask - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
  return out;
}

struct CoverSearch {
  std::vector<Cells> rects;
  std::vector<std::vector<std::size_t>> covering;  // per cell
  std::size_t cols = 0;
  const IntMatrix* m = nullptr;
  std::size_t best = 0;
  std::vector<std::size_t> best_choice;
  std::vector<std::size_t> choice;

  // Cells pairwise unable to share a rectangle need distinct rectangles.
  std::size_t fooling_bound(const Cells& uncovered) const {
    std::vector<std::pair<std::size_t, std::size_t>> chosen;
    for (std::size_t c = uncovered._Find_first(); c < uncovered.size(); c = uncovered._Find_next(c)) {
      const std::size_t i = c / cols;
      const std::size_t j = c % cols;
      bool ok = true;
      for (const auto& [a, b] : chosen) {
        if ((*m)(i, b) != 0 && (*m)(a, j) != 0) {
          ok = false;
          break;
        }
      }
      if (ok) chosen.emplace_back(i, j);
    }
    return chosen.size();
  }

  void run(const Cells& uncovered) {
    if (uncovered.none()) {
      if (choice.size() < best) {
        best = choice.size();
        best_choice = choice;
      }
      return;
    }
    if (choice.size() + fooling_bound(uncovered) >= best) return;
    std::size_t cell = 0;
    std::size_t fewest = SIZE_MAX;
    for (std::size_t c = uncovered._Find_first(); c < uncovered.size(); c = uncovered._Find_next(c)) {
      if (covering[c].size() < fewest) {
        fewest = covering[c].size();
        cell = c;
      }
    }
    auto options = covering[cell];
    std::stable_sort(options.begin(), options.end(), [&](std::size_t a, std::size_t b) {
      return (rects[a] & uncovered).count() > (rects[b] & uncovered).count();
    });
    for (auto r : options) {
      choice.push_back(r);
      run(uncovered & ~rects[r]);
      choice.pop_back();
    }
  }
};

}  // namespace

std::vector<Rectangle> maximal_rectangles(const IntMatrix& m) {
  if (m.rows() > kExactLimit || m.cols() > kExactLimit) throw ResourceError("maximal rectangles limited to 16 x 16");
  const auto rows = row_masks(m);
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  const std::uint32_t all_cols = m.cols() == 32 ? ~0U : (1U << m.cols()) - 1;
  for (std::uint32_t s = 1; s < (1U << m.rows()); ++s) {
    std::uint32_t c = all_cols;
    for (std::uint32_t t = s; t; t &= t - 1) c &= rows[static_cast<std::size_t>(std::countr_zero(t))];
    if (c == 0) continue;
    std::uint32_t r = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if ((rows[i] & c) == c) r |= 1U << i;
    }
    seen.insert({r, c});
  }
  std::vector<Rectangle> out;
  for (const auto& [r, c] : seen) out.push_back(Rectangle{bits_of(r), bits_of(c)});
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> greedy_fooling_set(const IntMatrix& m) {
  std::vector<std::pair<std::size_t, std::size_t>> chosen;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) == 0) continue;
      bool ok = true;
      for (const auto& [a, b] : chosen) {
        if (m(i, b) != 0 && m(a, j) != 0) {
          ok = false;
          break;
        }
      }
      if (ok) chosen.emplace_back(i, j);
    }
  }
  return chosen;
}

CoverBound rectangle_cover_lower_bound(const IntMatrix& m) {
  CoverBound out;
  if (m.rows() > kExactLimit || m.cols() > kExactLimit) {
    out.value = greedy_fooling_set(m).size();
    out.method = "fooling-set";
    return out;
  }
  out.method = "branch-and-bound";
  out.exact = true;
  const auto rects = maximal_rectangles(m);
  CoverSearch s;
  s.cols = m.cols();
  s.m = &m;
  s.covering.resize(m.rows() * m.cols());
  Cells target;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) != 0) target.set(i * m.cols() + j);
    }
  }
  for (std::size_t k = 0; k < rects.size(); ++k) {
    Cells c;
    for (auto i : rects[k].rows) {
      for (auto j : rects[k].cols) {
        c.set(i * m.cols() + j);
        s.covering[i * m.cols() + j].push_back(k);
      }
    }
    s.rects.push_back(c);
  }

  // Greedy cover seeds the incumbent.
  Cells left = target;
  std::vector<std::size_t> greedy;
  while (left.any()) {
    std::size_t pick = 0;
    std::size_t gain = 0;
    for (std::size_t k = 0; k < s.rects.size(); ++k) {
      const auto g = (s.rects[k] & left).count();
      if (g > gain) {
        gain = g;
        pick = k;
      }
    }
    greedy.push_back(pick);
    left &= ~s.rects[pick];
  }
  s.best = greedy.size();
  s.best_choice = greedy;
  s.run(target);

  out.value = s.best;
  for (auto k : s.best_choice) out.cover.push_back(rects[k]);
  return out;
}

std::size_t brute_force_rectangle_cover(const IntMatrix& m) {
  if (m.rows() > 6 || m.cols() > 6) throw ResourceError("brute-force cover limited to 6 x 6");
  const auto rows = row_masks(m);
  std::uint64_t target = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) target |= static_cast<std::uint64_t>(rows[i]) << (i * 8);
  if (target == 0) return 0;

  std::vector<std::uint64_t> rects;
  for (std::uint32_t c = 1; c < (1U << m.cols()); ++c) {
    std::uint64_t cells = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if ((rows[i] & c) == c) cells |= static_cast<std::uint64_t>(c) << (i * 8);
    }
    if (cells != 0) rects.push_back(cells);
  }
  std::sort(rects.begin(), rects.end());
  rects.erase(std::unique(rects.begin(), rects.end()), rects.end());

  for (std::size_t k = 1; k <= rects.size(); ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      std::uint64_t cover = 0;
      for (auto i : idx) cover |= rects[i];
      if (cover == target) return k;
      std::size_t pos = k;
      while (pos > 0 && idx[pos - 1] == rects.size() - k + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  throw Error("no rectangle cover found");
}

}  // namespace xc::nnrank
