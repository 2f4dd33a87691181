#pragma once

// Reference implementations used only by the tests. Nothing here calls the
// library's numerical code: dense matrices, Gaussian elimination with partial
// pivoting, and the covariance written out from scratch.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracle {

using Dense = std::vector<std::vector<double>>;

inline std::vector<double> gauss_solve(Dense a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
    if (a[piv][k] == 0.0) throw std::runtime_error("singular");
    std::swap(a[k], a[piv]);
    std::swap(b[k], b[piv]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

inline std::vector<double> matvec(const Dense& a, const std::vector<double>& x) {
  std::vector<double> y(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  return y;
}

inline double max_abs(const Dense& a) {
  double m = 0.0;
  for (const auto& r : a)
    for (double x : r) m = std::max(m, std::abs(x));
  return m;
}

inline double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

inline double rel_diff(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return norm(d) / norm(b);
}

enum class Spectrum { uniform, log_spaced };

/// Q diag(eig) Q' with Q from Gram-Schmidt on a Gaussian matrix. Eigenvalues
/// are 1 and cond plus n-2 values drawn uniformly in between, or log-spaced
/// on [1, cond].
inline Dense random_spd(std::size_t n, double cond, std::uint64_t seed, Spectrum spectrum = Spectrum::uniform) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(1.0, cond);
  Dense q(n, std::vector<double>(n));
  for (auto& r : q)
    for (auto& x : r) x = g(rng);
  for (std::size_t j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t k = 0; k < j; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += q[i][j] * q[i][k];
        for (std::size_t i = 0; i < n; ++i) q[i][j] -= s * q[i][k];
      }
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += q[i][j] * q[i][j];
    s = std::sqrt(s);
    for (std::size_t i = 0; i < n; ++i) q[i][j] /= s;
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (spectrum == Spectrum::log_spaced) {
      const double t = n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0;
      eig[i] = std::pow(cond, t);
    } else {
      eig[i] = i == 0 ? 1.0 : (i == 1 ? cond : u(rng));
    }
  }
  Dense a(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += q[i][k] * eig[k] * q[j][k];
      a[i][j] = a[j][i] = s;
    }
  return a;
}

inline std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

/// Squared-exponential covariance between two scaled points.
inline double se(const std::vector<double>& a, const std::vector<double>& b, double sf, const std::vector<double>& ls) {
  double d2 = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m) {
    const double t = (a[m] - b[m]) / ls[m];
    d2 += t * t;
  }
  return sf * sf * std::exp(-0.5 * d2);
}

inline Dense covariance(const std::vector<std::vector<double>>& x, double sf, double sn, const std::vector<double>& ls) {
  const std::size_t n = x.size();
  Dense c(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c[i][j] = se(x[i], x[j], sf, ls) + (i == j ? sn * sn : 0.0);
  return c;
}

struct Prediction {
  double mean;
  double variance;
};

/// Mean and variance from a dense solve; x and x_star already scaled.
inline Prediction predict(const std::vector<std::vector<double>>& x, const std::vector<double>& y,
                          const std::vector<double>& x_star, double sf, double sn, const std::vector<double>& ls) {
  const auto c = covariance(x, sf, sn, ls);
  std::vector<double> cs(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) cs[i] = se(x_star, x[i], sf, ls);
  const auto alpha = gauss_solve(c, y);
  const auto w = gauss_solve(c, cs);
  double mean = 0.0, q = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mean += cs[i] * alpha[i];
    q += cs[i] * w[i];
  }
  return {mean, sf * sf + sn * sn - q};
}

/// Leave-one-out MAE by explicit refits.
inline double loo_mae(const std::vector<std::vector<double>>& x, const std::vector<double>& y, double sf, double sn,
                      const std::vector<double>& ls) {
  double total = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    std::vector<std::vector<double>> xt;
    std::vector<double> yt;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (i == k) continue;
      xt.push_back(x[i]);
      yt.push_back(y[i]);
    }
    total += std::abs(predict(xt, yt, x[k], sf, sn, ls).mean - y[k]);
  }
  return total / static_cast<double>(x.size());
}

/// Min-max scaling written out independently; constant columns go to 0.5.
inline std::vector<std::vector<double>> scale(const std::vector<std::vector<double>>& raw) {
  const std::size_t d = raw.front().size();
  std::vector<double> lo(d, INFINITY), hi(d, -INFINITY);
  for (const auto& r : raw)
    for (std::size_t m = 0; m < d; ++m) {
      lo[m] = std::min(lo[m], r[m]);
      hi[m] = std::max(hi[m], r[m]);
    }
  auto out = raw;
  for (auto& r : out)
    for (std::size_t m = 0; m < d; ++m) r[m] = hi[m] > lo[m] ? (r[m] - lo[m]) / (hi[m] - lo[m]) : 0.5;
  return out;
}

}  // namespace oracle
