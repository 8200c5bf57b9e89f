#include <algorithm>
#include <cmath>
#include <map>
#include <thread>

#include <boost/math/distributions/chi_squared.hpp>

#include "xc/gadget_verify.hpp"

namespace xc::gadget {

json WalkStatistics::to_json() const {
  return json{{"walks", walks},
              {"length", length},
              {"chi_square", chi_square},
              {"degrees_of_freedom", degrees_of_freedom},
              {"p_value", p_value},
              {"tested_steps", tested_steps},
              {"step_tv", step_tv},
              {"max_tv", max_tv},
              {"start_tv", start_tv},
              {"end_tv", end_tv}};
}

namespace {

constexpr std::size_t kChunk = 4096;

struct Tally {
  std::vector<std::size_t> pairs;                // start * n + end
  std::vector<std::vector<std::size_t>> edges;   // per tested step, per category
};

}  // namespace

WalkStatistics walk_statistics(const WindowDigraph& dg, std::size_t walks, std::uint64_t seed,
                               std::size_t workers) {
  if (walks == 0) throw Error("walk statistics need at least one walk");
  const auto tour = eulerian_tour(dg);
  const std::size_t n = dg.nodes.size();
  const std::size_t L = dg.non_loop_edges;

  // Categories: self-loop at v is v; non-loop edge k (in out-list order) is n + k.
  std::map<std::pair<int, int>, std::size_t> category;
  for (std::size_t v = 0; v < n; ++v) {
    for (int w : dg.out[v]) category.emplace(std::pair{static_cast<int>(v), w}, n + category.size());
  }
  const std::size_t cats = n + L;

  WalkStatistics s;
  s.walks = walks;
  s.length = 2 * L;
  s.tested_steps = {0, L - 1, L, 2 * L - 1};

  const std::size_t chunks = (walks + kChunk - 1) / kChunk;
  std::vector<Tally> tallies(chunks);
  auto run_chunk = [&](std::size_t c) {
    Tally t;
    t.pairs.assign(n * n, 0);
    t.edges.assign(s.tested_steps.size(), std::vector<std::size_t>(cats, 0));
    Rng rng(derive_seed(seed, c));
    const std::size_t count = std::min(kChunk, walks - c * kChunk);
    for (std::size_t k = 0; k < count; ++k) {
      const auto walk = sample_walk(dg, tour, rng);
      ++t.pairs[static_cast<std::size_t>(walk.front()) * n + static_cast<std::size_t>(walk.back())];
      for (std::size_t i = 0; i < s.tested_steps.size(); ++i) {
        const auto step = s.tested_steps[i];
        const int a = walk[step];
        const int b = walk[step + 1];
        const std::size_t cat = a == b ? static_cast<std::size_t>(a) : category.at({a, b});
        ++t.edges[i][cat];
      }
    }
    tallies[c] = std::move(t);
  };
  const std::size_t threads = std::clamp<std::size_t>(workers, 1, chunks);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t c = w; c < chunks; c += threads) run_chunk(c);
    });
  }
  for (auto& th : pool) th.join();

  std::vector<double> table(n * n, 0.0);
  std::vector<std::vector<double>> edges(s.tested_steps.size(), std::vector<double>(cats, 0.0));
  for (const auto& t : tallies) {
    for (std::size_t i = 0; i < table.size(); ++i) table[i] += static_cast<double>(t.pairs[i]);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      for (std::size_t c = 0; c < cats; ++c) edges[i][c] += static_cast<double>(t.edges[i][c]);
    }
  }

  const double total = static_cast<double>(walks);
  std::vector<double> rows(n, 0.0), cols(n, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      rows[a] += table[a * n + b];
      cols[b] += table[a * n + b];
    }
  }
  std::size_t live_rows = 0, live_cols = 0;
  for (std::size_t a = 0; a < n; ++a) {
    if (rows[a] > 0) ++live_rows;
    if (cols[a] > 0) ++live_cols;
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const double expected = rows[a] * cols[b] / total;
      if (expected > 0) s.chi_square += (table[a * n + b] - expected) * (table[a * n + b] - expected) / expected;
    }
  }
  s.degrees_of_freedom = static_cast<double>((std::max<std::size_t>(live_rows, 2) - 1) *
                                             (std::max<std::size_t>(live_cols, 2) - 1));
  const boost::math::chi_squared dist(s.degrees_of_freedom);
  s.p_value = boost::math::cdf(boost::math::complement(dist, s.chi_square));

  for (std::size_t a = 0; a < n; ++a) {
    s.start_tv += std::abs(rows[a] / total - 1.0 / static_cast<double>(n));
    s.end_tv += std::abs(cols[a] / total - 1.0 / static_cast<double>(n));
  }
  s.start_tv /= 2;
  s.end_tv /= 2;

  const double loop_mass = 0.5 / static_cast<double>(n);
  const double edge_mass = 0.5 / static_cast<double>(L);
  for (const auto& e : edges) {
    double tv = 0.0;
    for (std::size_t c = 0; c < cats; ++c) tv += std::abs(e[c] / total - (c < n ? loop_mass : edge_mass));
    s.step_tv.push_back(tv / 2);
  }
  s.max_tv = *std::max_element(s.step_tv.begin(), s.step_tv.end());
  return s;
}

}  // namespace xc::gadget
