#include "xc/lifting.hpp"

namespace xc::lifting {

EdgeLabeling evaluate(const Gadget& g, const LiftedInput& in) {
  if (in.x.size() != in.y.size()) throw Error("x and y must have the same length");
  EdgeLabeling z(in.x.size());
  for (std::size_t i = 0; i < in.x.size(); ++i) z.set(i, g(in.x[i], in.y[i]) != 0);
  return z;
}

EdgeLabeling MultiWindow::labeling() const {
  EdgeLabeling z(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) z.set(i, coords[i].value != 0);
  return z;
}

bool MultiWindow::contains(const LiftedInput& in) const {
  if (in.x.size() != coords.size() || in.y.size() != coords.size()) return false;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const gadget::Cell c{in.x[i], in.y[i]};
    if (c != coords[i].cells[0] && c != coords[i].cells[1]) return false;
  }
  return true;
}

LiftedInput MultiWindow::cell(std::uint64_t mask) const {
  LiftedInput in;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const auto& c = coords[i].cells[(mask >> i) & 1U];
    in.x.push_back(c.row);
    in.y.push_back(c.col);
  }
  return in;
}

MultiWindow sample_window(const Gadget& g, const EdgeLabeling& z, Rng& rng) {
  const std::array<std::vector<Window>, 2> windows{gadget::enumerate_windows(g, 0),
                                                   gadget::enumerate_windows(g, 1)};
  MultiWindow w;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const auto& pool = windows[z[i]];
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    w.coords.push_back(pool[pick(rng)]);
  }
  return w;
}

LiftedInput sample_input_in_window(const MultiWindow& w, Rng& rng) {
  std::bernoulli_distribution coin(0.5);
  LiftedInput in;
  for (const auto& win : w.coords) {
    const auto& c = win.cells[coin(rng) ? 1 : 0];
    in.x.push_back(c.row);
    in.y.push_back(c.col);
  }
  return in;
}

LiftedInput block_flip(const Gadget& g, const LiftedInput& in, const EdgeSet& b) {
  if (b.size() != in.x.size()) throw Error("flip set length must equal the number of coordinates");
  LiftedInput out = in;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i]) out.x[i] = g.alice_flip(out.x[i]);
  }
  return out;
}

namespace {

Window alice_flip_window(const Gadget& g, const Window& w) {
  const auto value = static_cast<gadget::Bit>(w.value ^ 1);
  if (w.shape == gadget::Shape::horizontal) {
    return gadget::make_window(value, w.shape, g.alice_flip(w.line()), w.span()[0], w.span()[1]);
  }
  return gadget::make_window(value, w.shape, w.line(), g.alice_flip(w.span()[0]), g.alice_flip(w.span()[1]));
}

}  // namespace

MultiWindow block_flip(const Gadget& g, const MultiWindow& w, const EdgeSet& b) {
  if (b.size() != w.size()) throw Error("flip set length must equal the number of coordinates");
  MultiWindow out = w;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i]) out.coords[i] = alice_flip_window(g, w.coords[i]);
  }
  return out;
}

MultiWindow directed_block_flip(const Gadget& g, const MultiWindow& w, const EdgeSet& b,
                                gadget::FlipKind kind) {
  if (b.size() != w.size()) throw Error("flip set length must equal the number of coordinates");
  MultiWindow out = w;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i]) out.coords[i] = gadget::directed_flip(g, w.coords[i], kind);
  }
  return out;
}

FanoWindows build_fano_windows(const Gadget& g, const tseitin::FanoScaffold& s, Rng& rng) {
  FanoWindows out;
  out.w7 = sample_window(g, s.z7, rng);
  for (std::size_t e = 0; e < 7; ++e) {
    const EdgeSet flip = s.line_paths[e][0].edges ^ s.line_paths[e][1].edges;
    out.w_lines[e] = block_flip(g, out.w7, flip);
    if (out.w_lines[e].labeling() != s.z_lines[e]) throw Error("flipped window does not match its labeling");
  }
  return out;
}

}  // namespace xc::lifting
