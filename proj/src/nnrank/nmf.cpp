#include <algorithm>
#include <cmath>
#include <thread>

#include "xc/kernels.hpp"
#include "xc/nnrank.hpp"

namespace xc::nnrank {

double max_residual(const IntMatrix& m, const Factorization& f) {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      double v = 0.0;
      for (std::size_t k = 0; k < f.rank; ++k) v += f.w[i * f.rank + k] * f.h[k * m.cols() + j];
      worst = std::max(worst, std::abs(static_cast<double>(m(i, j)) - v));
    }
  }
  return worst;
}

namespace {

constexpr double kEps = 1e-12;
constexpr std::size_t kCheckEvery = 25;

std::vector<double> transpose(const std::vector<double>& a, std::size_t rows, std::size_t cols) {
  std::vector<double> t(a.size());
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) t[j * rows + i] = a[i * cols + j];
  }
  return t;
}

class Fit {
 public:
  Fit(const IntMatrix& m, std::size_t r) : m_(m), rows_(m.rows()), cols_(m.cols()), r_(r) {
    v_.resize(rows_ * cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) v_[i * cols_ + j] = static_cast<double>(m(i, j));
    }
  }

  Factorization run(std::uint64_t seed, std::size_t restart, const NmfOptions& o) {
    const auto& k = kernels::active();
    Rng rng(seed);
    double mean = 0.0;
    for (double x : v_) mean += x;
    mean /= static_cast<double>(std::max<std::size_t>(v_.size(), 1));
    const double scale = std::sqrt(std::max(mean, 1e-3) / static_cast<double>(r_));
    std::uniform_real_distribution<double> u(0.1, 1.0);
    Factorization f;
    f.rank = r_;
    f.seed = seed;
    f.restart = restart;
    f.w.resize(rows_ * r_);
    f.h.resize(r_ * cols_);
    for (auto& x : f.w) x = u(rng) * scale;
    for (auto& x : f.h) x = u(rng) * scale;

    std::vector<double> num_h(r_ * cols_), den_h(r_ * cols_), gram(r_ * r_);
    std::vector<double> num_w(rows_ * r_), den_w(rows_ * r_);

    std::size_t it = 0;
    f.residual = max_residual(m_, f);
    for (; it < o.iterations && f.residual > o.tolerance; ++it) {
      auto wt = transpose(f.w, rows_, r_);
      k.matmul(wt.data(), v_.data(), num_h.data(), r_, rows_, cols_);
      k.matmul(wt.data(), f.w.data(), gram.data(), r_, rows_, r_);
      k.matmul(gram.data(), f.h.data(), den_h.data(), r_, r_, cols_);
      k.multiplicative_update(f.h.data(), num_h.data(), den_h.data(), f.h.size(), kEps);

      auto ht = transpose(f.h, r_, cols_);
      k.matmul(v_.data(), ht.data(), num_w.data(), rows_, cols_, r_);
      k.matmul(f.h.data(), ht.data(), gram.data(), r_, cols_, r_);
      k.matmul(f.w.data(), gram.data(), den_w.data(), rows_, r_, r_);
      k.multiplicative_update(f.w.data(), num_w.data(), den_w.data(), f.w.size(), kEps);

      if ((it + 1) % kCheckEvery == 0) f.residual = max_residual(m_, f);
    }
    f.residual = max_residual(m_, f);

    // HALS polish
    for (std::size_t sweep = 0; sweep < o.iterations && f.residual > o.tolerance; ++sweep, ++it) {
      hals_sweep(f);
      if ((sweep + 1) % kCheckEvery == 0) f.residual = max_residual(m_, f);
    }
    f.residual = max_residual(m_, f);
    f.iterations = it;
    return f;
  }

 private:
  void hals_sweep(Factorization& f) {
    const auto& k = kernels::active();
    std::vector<double> wt = transpose(f.w, rows_, r_);
    std::vector<double> wtv(r_ * cols_), wtw(r_ * r_);
    k.matmul(wt.data(), v_.data(), wtv.data(), r_, rows_, cols_);
    k.matmul(wt.data(), f.w.data(), wtw.data(), r_, rows_, r_);
    for (std::size_t a = 0; a < r_; ++a) {
      const double d = wtw[a * r_ + a];
      if (d <= kEps) continue;
      for (std::size_t j = 0; j < cols_; ++j) {
        double s = wtv[a * cols_ + j];
        for (std::size_t b = 0; b < r_; ++b) s -= wtw[a * r_ + b] * f.h[b * cols_ + j];
        f.h[a * cols_ + j] = std::max(0.0, f.h[a * cols_ + j] + s / d);
      }
    }
    std::vector<double> ht = transpose(f.h, r_, cols_);
    std::vector<double> vht(rows_ * r_), hht(r_ * r_);
    k.matmul(v_.data(), ht.data(), vht.data(), rows_, cols_, r_);
    k.matmul(f.h.data(), ht.data(), hht.data(), r_, cols_, r_);
    for (std::size_t a = 0; a < r_; ++a) {
      const double d = hht[a * r_ + a];
      if (d <= kEps) continue;
      for (std::size_t i = 0; i < rows_; ++i) {
        double s = vht[i * r_ + a];
        for (std::size_t b = 0; b < r_; ++b) s -= f.w[i * r_ + b] * hht[b * r_ + a];
        f.w[i * r_ + a] = std::max(0.0, f.w[i * r_ + a] + s / d);
      }
    }
  }

  const IntMatrix& m_;
  std::size_t rows_;
  std::size_t cols_;
  std::size_t r_;
  std::vector<double> v_;
};

}  // namespace

std::optional<Factorization> nmf_upper_bound(const IntMatrix& m, std::size_t r, const NmfOptions& options) {
  if (r == 0) throw Error("NMF rank must be at least 1");
  if (!m.nonnegative()) throw Error("NMF needs a nonnegative matrix");
  if (m.rows() == 0 || m.cols() == 0) return Factorization{r, {}, {}, 0.0, options.seed, 0, 0};
  const std::size_t workers = std::max<std::size_t>(1, options.workers);
  for (std::size_t start = 0; start < options.restarts; start += workers) {
    const std::size_t batch = std::min(workers, options.restarts - start);
    std::vector<Factorization> results(batch);
    auto work = [&](std::size_t b) {
      Fit fit(m, r);
      results[b] = fit.run(derive_seed(options.seed, start + b), start + b, options);
    };
    if (batch == 1) {
      work(0);
    } else {
      std::vector<std::thread> threads;
      for (std::size_t b = 0; b < batch; ++b) threads.emplace_back(work, b);
      for (auto& t : threads) t.join();
    }
    for (auto& f : results) {
      if (f.residual <= options.tolerance) return f;
    }
  }
  return std::nullopt;
}

}  // namespace xc::nnrank
