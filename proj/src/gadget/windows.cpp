#include <algorithm>

#include "xc/gadget.hpp"

namespace xc::gadget {

namespace {

Bit value_on(const Gadget& g, Shape shape, int line, int free) {
  return shape == Shape::horizontal ? g(line, free) : g(free, line);
}

bool pair_is(const Gadget& g, Shape shape, int line, std::array<int, 2> pair, Bit v) {
  return value_on(g, shape, line, pair[0]) == v && value_on(g, shape, line, pair[1]) == v;
}

Bit stretched_value(bool nand, int a, int b) { return static_cast<Bit>((a & b) ^ (nand ? 1 : 0)); }

bool is_embedding(const Gadget& g, const StretchedEmbedding& e) {
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      if (!pair_is(g, e.shape, e.lines[static_cast<std::size_t>(a)],
                   e.pairs[static_cast<std::size_t>(b)], stretched_value(e.nand, a, b))) {
        return false;
      }
    }
  }
  return true;
}

std::vector<std::array<int, 2>> all_pairs(int dim) {
  std::vector<std::array<int, 2>> out;
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) out.push_back({i, j});
  }
  return out;
}

bool disjoint(std::array<int, 2> p, std::array<int, 2> q) {
  return p[0] != q[0] && p[0] != q[1] && p[1] != q[0] && p[1] != q[1];
}

}  // namespace

std::array<int, 2> Window::span() const {
  if (shape == Shape::horizontal) return {cells[0].col, cells[1].col};
  return {cells[0].row, cells[1].row};
}

Window make_window(Bit value, Shape shape, int line, int a, int b) {
  if (a == b) throw Error("window cells must be distinct");
  if (a > b) std::swap(a, b);
  Window w;
  w.value = value;
  w.shape = shape;
  if (shape == Shape::horizontal) {
    w.cells = {Cell{line, a}, Cell{line, b}};
  } else {
    w.cells = {Cell{a, line}, Cell{b, line}};
  }
  return w;
}

std::vector<Window> enumerate_windows(const Gadget& g, Bit z) {
  std::vector<Window> out;
  for (Shape shape : {Shape::horizontal, Shape::vertical}) {
    for (int line = 0; line < g.dim(); ++line) {
      for (int a = 0; a < g.dim(); ++a) {
        if (value_on(g, shape, line, a) != z) continue;
        for (int b = a + 1; b < g.dim(); ++b) {
          if (value_on(g, shape, line, b) == z) out.push_back(make_window(z, shape, line, a, b));
        }
      }
    }
  }
  return out;
}

std::size_t window_index(const Gadget& g, const Window& w) {
  const auto all = enumerate_windows(g, w.value);
  const auto it = std::lower_bound(all.begin(), all.end(), w, [](const Window& l, const Window& r) {
    if (l.shape != r.shape) return l.shape < r.shape;
    if (l.line() != r.line()) return l.line() < r.line();
    return l.span() < r.span();
  });
  if (it == all.end() || *it != w) throw Error("not a window of this gadget");
  return static_cast<std::size_t>(it - all.begin());
}

Window StretchedEmbedding::window_at(int a, int b) const {
  const auto& p = pairs[static_cast<std::size_t>(b)];
  return make_window(stretched_value(nand, a, b), shape, lines[static_cast<std::size_t>(a)],
                     p[0], p[1]);
}

std::vector<StretchedEmbedding> enumerate_stretched_embeddings(const Gadget& g) {
  std::vector<StretchedEmbedding> out;
  const auto pairs = all_pairs(g.dim());
  for (Shape shape : {Shape::horizontal, Shape::vertical}) {
    for (bool nand : {false, true}) {
      for (int l0 = 0; l0 < g.dim(); ++l0) {
        for (int l1 = 0; l1 < g.dim(); ++l1) {
          if (l0 == l1) continue;
          for (const auto& p0 : pairs) {
            for (const auto& p1 : pairs) {
              if (!disjoint(p0, p1)) continue;
              StretchedEmbedding e{shape, nand, {l0, l1}, {p0, p1}};
              if (is_embedding(g, e)) out.push_back(e);
            }
          }
        }
      }
    }
  }
  return out;
}

std::vector<StretchedEmbedding> embeddings_with(const Gadget& g, const Window& w, int a, int b) {
  if (a < 0 || a > 1 || b < 0 || b > 1) throw Error("stretched input position must be a bit pair");
  std::vector<StretchedEmbedding> out;
  const bool nand = stretched_value(false, a, b) != w.value;
  const auto pairs = all_pairs(g.dim());
  for (int other_line = 0; other_line < g.dim(); ++other_line) {
    if (other_line == w.line()) continue;
    for (const auto& other_pair : pairs) {
      if (!disjoint(other_pair, w.span())) continue;
      StretchedEmbedding e;
      e.shape = w.shape;
      e.nand = nand;
      e.lines[static_cast<std::size_t>(a)] = w.line();
      e.lines[static_cast<std::size_t>(1 - a)] = other_line;
      e.pairs[static_cast<std::size_t>(b)] = w.span();
      e.pairs[static_cast<std::size_t>(1 - b)] = other_pair;
      if (is_embedding(g, e)) out.push_back(e);
    }
  }
  return out;
}

DirectedFlips directed_flips(const Gadget& g, const Window& w) {
  const auto found = embeddings_with(g, w, 1, 1);
  if (found.size() != 1) {
    throw Error("window is the stretched (1,1)-input of " + std::to_string(found.size()) +
                " embeddings; expected exactly one");
  }
  const auto& e = found.front();
  return DirectedFlips{e.window_at(1, 0), e.window_at(0, 0), e.window_at(0, 1)};
}

Window directed_flip(const Gadget& g, const Window& w, FlipKind kind) {
  const auto f = directed_flips(g, w);
  switch (kind) {
    case FlipKind::left: return f.left;
    case FlipKind::nw: return f.nw;
    case FlipKind::up: return f.up;
  }
  return f.nw;
}

}  // namespace xc::gadget
