#pragma once

// Test-side oracles. Deliberately independent of the library: long double
// arithmetic, full scans, brute force where the problem is tiny.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

namespace oracle {

struct Simplex {
  long double tau = 0;
  std::vector<std::size_t> active;  // ascending
};

// Sort and scan in long double; kappa is the largest j that satisfies the
// criterion anywhere in the scan (no early exit).
inline Simplex simplex(const std::vector<double>& d, double b) {
  std::vector<long double> s(d.begin(), d.end());
  std::sort(s.begin(), s.end(), std::greater<>());
  long double prefix = 0, at_kappa = 0;
  std::size_t kappa = 1;
  for (std::size_t j = 0; j < s.size(); ++j) {
    prefix += s[j];
    if ((prefix - b) / static_cast<long double>(j + 1) < s[j]) {
      kappa = j + 1;
      at_kappa = prefix;
    }
  }
  if (kappa == 1) at_kappa = s[0];
  Simplex out;
  out.tau = (at_kappa - b) / static_cast<long double>(kappa);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (static_cast<long double>(d[i]) > out.tau) out.active.push_back(i);
  }
  return out;
}

// Active sets can legitimately differ on entries within rounding of tau.
inline bool same_active_up_to_ties(const std::vector<double>& d, const std::vector<std::size_t>& a,
                                   const std::vector<std::size_t>& b, double tau, double tol) {
  std::vector<std::size_t> diff;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
  for (std::size_t i : diff) {
    if (std::fabs(d[i] - tau) > tol) return false;
  }
  return true;
}

inline Simplex weighted(const std::vector<double>& d, const std::vector<double>& w, double b) {
  const std::size_t n = d.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return static_cast<long double>(d[i]) / w[i] > static_cast<long double>(d[j]) / w[j];
  });
  long double wd = 0, ww = 0, best = 0;
  bool found = false;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t i = order[j];
    wd += static_cast<long double>(w[i]) * d[i];
    ww += static_cast<long double>(w[i]) * w[i];
    const long double p = (wd - b) / ww;
    if (p < static_cast<long double>(d[i]) / w[i]) {
      best = p;
      found = true;
    }
  }
  if (!found) {
    const std::size_t i = order[0];
    best = (static_cast<long double>(w[i]) * d[i] - b) / (static_cast<long double>(w[i]) * w[i]);
  }
  Simplex out;
  out.tau = best;
  for (std::size_t i = 0; i < n; ++i) {
    if (static_cast<long double>(d[i]) / w[i] > best) out.active.push_back(i);
  }
  return out;
}

// Projection onto the convex hull of the given points by enumerating vertex
// subsets and solving each equality-constrained least squares problem.
inline Eigen::VectorXd hull_projection(const std::vector<Eigen::VectorXd>& vertices,
                                       const Eigen::VectorXd& y) {
  const int m = static_cast<int>(vertices.size());
  const int dim = static_cast<int>(y.size());
  double best = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_x = vertices[0];
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::vector<int> pick;
    for (int v = 0; v < m; ++v) {
      if (mask & (1u << v)) pick.push_back(v);
    }
    if (static_cast<int>(pick.size()) > dim + 1) continue;
    const int k = static_cast<int>(pick.size());
    // KKT system for min ||V l - y||^2 s.t. sum l = 1.
    Eigen::MatrixXd v(dim, k);
    for (int c = 0; c < k; ++c) v.col(c) = vertices[static_cast<std::size_t>(pick[static_cast<std::size_t>(c)])];
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(k + 1, k + 1);
    kkt.topLeftCorner(k, k) = v.transpose() * v;
    kkt.block(0, k, k, 1).setOnes();
    kkt.block(k, 0, 1, k).setOnes();
    Eigen::VectorXd rhs(k + 1);
    rhs.head(k) = v.transpose() * y;
    rhs(k) = 1.0;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(kkt);
    if (!lu.isInvertible()) continue;
    const Eigen::VectorXd sol = lu.solve(rhs);
    const Eigen::VectorXd lambda = sol.head(k);
    if (lambda.minCoeff() < -1e-12) continue;
    const Eigen::VectorXd x = v * lambda;
    const double dist = (x - y).norm();
    if (dist < best) {
      best = dist;
      best_x = x;
    }
  }
  return best_x;
}

// Vertices of the centered parity polytope: even-weight 0/1 vectors - 1/2.
inline std::vector<Eigen::VectorXd> parity_vertices(int n) {
  std::vector<Eigen::VectorXd> out;
  for (unsigned bits = 0; bits < (1u << n); ++bits) {
    if (__builtin_popcount(bits) % 2 != 0) continue;
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = ((bits >> i) & 1u) ? 0.5 : -0.5;
    out.push_back(v);
  }
  return out;
}

inline Eigen::VectorXd parity_projection(const std::vector<double>& d) {
  const int n = static_cast<int>(d.size());
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) y(i) = d[static_cast<std::size_t>(i)];
  return hull_projection(parity_vertices(n), y);
}

// Composite Simpson rule with an even number of panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  if (panels % 2 != 0) ++panels;
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return s * h / 3.0;
}

struct TailMoments {
  double prob = 0;
  double mean = 0;
  double var = 0;
};

// Tail moments of N(mu, var) beyond t by quadrature of the density.
inline TailMoments normal_tail(double mu, double var, double t) {
  const double sd = std::sqrt(var);
  const double pi = std::acos(-1.0);
  auto pdf = [&](double x) { return std::exp(-0.5 * (x - mu) * (x - mu) / var) / (sd * std::sqrt(2 * pi)); };
  const double hi = std::max(t, mu) + 14.0 * sd;
  const int panels = 200000;
  TailMoments m;
  m.prob = simpson(pdf, t, hi, panels);
  m.mean = simpson([&](double x) { return x * pdf(x); }, t, hi, panels) / m.prob;
  const double second = simpson([&](double x) { return (x - m.mean) * (x - m.mean) * pdf(x); }, t, hi, panels);
  m.var = second / m.prob;
  return m;
}

}  // namespace oracle
