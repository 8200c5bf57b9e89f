#include <algorithm>

#include "catch_amalgamated.hpp"
#include "xc/nnrank.hpp"

using namespace xc::nnrank;
using xc::IntMatrix;

namespace {

IntMatrix random_01(std::size_t r, std::size_t c, xc::Rng& rng) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<std::int64_t>(rng() & 1U);
  }
  return m;
}

IntMatrix square_slack() {
  return polytope_slack_matrix({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, {{-1, 0}, {0, -1}, {1, 0}, {0, 1}}, {0, 0, 1, 1});
}

}  // namespace

TEST_CASE("exact rank") {
  REQUIRE(rank(IntMatrix::identity(5)).rank == 5);
  REQUIRE(rank(IntMatrix(3, 4, 2)).rank == 1);
  REQUIRE(rank(IntMatrix::from_rows({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}})).rank == 2);
  REQUIRE(rank(square_slack()).rank == 3);
}

TEST_CASE("modular rank agrees with exact rank on small matrices") {
  xc::Rng rng(1);
  for (int t = 0; t < 100; ++t) {
    const std::size_t r = 1 + rng() % 9, c = 1 + rng() % 9;
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<std::int64_t>(rng() % 4);
    }
    if (r > 2) {
      for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = m(0, j) + 3 * m(1, j);
    }
    const auto exact = rank(m);
    const auto modp = rank(m, 0);
    REQUIRE(exact.over_rationals);
    REQUIRE_FALSE(modp.over_rationals);
    REQUIRE(modp.rank == exact.rank);
  }
}

TEST_CASE("rectangle covers") {
  REQUIRE(rectangle_cover_lower_bound(IntMatrix::identity(4)).value == 4);
  REQUIRE(rectangle_cover_lower_bound(IntMatrix(5, 3, 1)).value == 1);
  REQUIRE(rectangle_cover_lower_bound(IntMatrix(3, 3, 0)).value == 0);
  const auto sq = rectangle_cover_lower_bound(square_slack());
  REQUIRE(sq.exact);
  REQUIRE(sq.value == 4);
  REQUIRE(sq.cover.size() == 4);
}

TEST_CASE("branch-and-bound matches brute force on 500 seeded matrices") {
  xc::Rng rng(2);
  for (int t = 0; t < 500; ++t) {
    const auto m = random_01(1 + rng() % 5, 1 + rng() % 5, rng);
    const auto bb = rectangle_cover_lower_bound(m);
    REQUIRE(bb.exact);
    REQUIRE(bb.value == brute_force_rectangle_cover(m));
    const auto support = m.support();
    IntMatrix covered(m.rows(), m.cols());
    for (const auto& rect : bb.cover) {
      for (auto i : rect.rows) {
        for (auto j : rect.cols) {
          REQUIRE(support(i, j) == 1);
          covered(i, j) = 1;
        }
      }
    }
    REQUIRE(covered == support);
  }
}

TEST_CASE("fooling sets are pairwise fooling") {
  xc::Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const auto m = random_01(8, 8, rng);
    const auto fs = greedy_fooling_set(m);
    for (std::size_t a = 0; a < fs.size(); ++a) {
      REQUIRE(m(fs[a].first, fs[a].second) != 0);
      for (std::size_t b = a + 1; b < fs.size(); ++b) {
        const bool cross = m(fs[a].first, fs[b].second) != 0 && m(fs[b].first, fs[a].second) != 0;
        REQUIRE_FALSE(cross);
      }
    }
    REQUIRE(fs.size() <= rectangle_cover_lower_bound(m).value);
  }
}

TEST_CASE("NMF upper bounds") {
  NmfOptions opt;
  opt.restarts = 10;
  opt.iterations = 2000;
  const auto r1 = IntMatrix::from_rows({{1, 2, 3}, {2, 4, 6}, {3, 6, 9}});
  const auto f1 = nmf_upper_bound(r1, 1, opt);
  REQUIRE(f1.has_value());
  REQUIRE(f1->residual <= 1e-6);
  REQUIRE(max_residual(r1, *f1) == Catch::Approx(f1->residual).margin(1e-12));
  REQUIRE_FALSE(nmf_upper_bound(IntMatrix::identity(4), 3, opt).has_value());
  const auto f4 = nmf_upper_bound(IntMatrix::identity(4), 4, opt);
  REQUIRE(f4.has_value());
  for (double v : f4->w) REQUIRE(v >= 0);
  for (double v : f4->h) REQUIRE(v >= 0);
}

TEST_CASE("rank bounds certify I4 and the square exactly") {
  const auto b = compute_rank_bounds(IntMatrix::identity(4));
  REQUIRE(b.lower == 4);
  REQUIRE(b.upper == 4);
  REQUIRE(b.exact == std::optional<std::size_t>{4});
  const auto sq = compute_rank_bounds(square_slack());
  REQUIRE(sq.exact == std::optional<std::size_t>{4});
  REQUIRE(sq.lower_kind == "rectangle-cover");
}

TEST_CASE("KW slack matrix of a threshold function") {
  const MonotoneOracle at_least_two = [](const BitVector& v) { return std::count(v.begin(), v.end(), 1) >= 2; };
  const std::vector<BitVector> ones{{1, 1, 0, 0}, {1, 1, 1, 1}, {0, 1, 0, 1}};
  const std::vector<BitVector> zeros{{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, 1, 0}};
  const auto m = kw_slack_matrix(at_least_two, ones, zeros);
  for (std::size_t i = 0; i < ones.size(); ++i) {
    for (std::size_t j = 0; j < zeros.size(); ++j) {
      std::int64_t w = 0;
      for (std::size_t k = 0; k < 4; ++k) w += (ones[i][k] == 1 && zeros[j][k] == 0) ? 1 : 0;
      REQUIRE(m(i, j) == w - 1);
    }
  }
  REQUIRE(m(1, 0) == 3);
  REQUIRE_THROWS_AS(kw_slack_matrix(at_least_two, {{1, 0, 0, 0}}, zeros), xc::Error);
}

TEST_CASE("slack extension inequality") {
  const auto sq = square_slack();
  const auto same = check_slack_extension_inequality(sq, sq);
  REQUIRE(same.consistent);
  REQUIRE(same.both_exact);
  const auto alone = check_slack_extension_inequality(std::nullopt, IntMatrix::identity(3));
  REQUIRE(alone.consistent);
  REQUIRE_FALSE(alone.p.has_value());
  REQUIRE_THROWS_AS(polytope_slack_matrix({{2, 0}}, {{1, 0}}, {1}), xc::Error);
}

TEST_CASE("matrix IO roundtrips") {
  const auto m = IntMatrix::from_rows({{1, 0, 2}, {3, 4, 0}});
  REQUIRE(IntMatrix::from_csv(m.to_csv()) == m);
  REQUIRE(IntMatrix::from_json(m.to_json()) == m);
  REQUIRE(m.transpose().transpose() == m);
}

TEST_CASE("witness protocol") {
  xc::Rng rng(5);
  BitVector x{1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0};
  BitVector y(11, 0);
  const auto est = simulate_witness_protocol(first_witness, x, y, 100000, rng);
  REQUIRE(est.exact == xc::Rational(1, 5));
  REQUIRE(est.z_score() <= 4.0);
  BitVector x1{1, 0, 0, 1};
  BitVector y1{0, 0, 0, 1};
  const auto unique = simulate_witness_protocol(first_witness, x1, y1, 1000, rng);
  REQUIRE(unique.exact == 0);
  REQUIRE(unique.accepted == 0);
  const KwSolver bad = [](const BitVector&, const BitVector&) { return std::size_t{3}; };
  REQUIRE_THROWS_AS(simulate_witness_protocol(bad, x1, y1, 10, rng), xc::Error);
}
