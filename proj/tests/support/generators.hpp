#pragma once

// Hand-rolled random instance generators for the property tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace gen {

enum class Shape { uniform, normal, constant, duplicates, sorted, reverse_sorted, wide };

inline const char* name(Shape s) {
  switch (s) {
    case Shape::uniform: return "uniform";
    case Shape::normal: return "normal";
    case Shape::constant: return "constant";
    case Shape::duplicates: return "duplicates";
    case Shape::sorted: return "sorted";
    case Shape::reverse_sorted: return "reverse-sorted";
    case Shape::wide: return "wide";
  }
  return "?";
}

inline constexpr Shape kAllShapes[] = {Shape::uniform,  Shape::normal,         Shape::constant,
                                       Shape::duplicates, Shape::sorted, Shape::reverse_sorted,
                                       Shape::wide};

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double normal(double mu, double sd) { return std::normal_distribution<double>(mu, sd)(rng_); }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  // Scale b spread over four decades.
  double scale() { return std::pow(10.0, uniform(-2.0, 2.0)); }

  std::vector<double> vector(Shape shape, std::size_t n) {
    std::vector<double> d(n);
    switch (shape) {
      case Shape::uniform:
        for (auto& x : d) x = uniform(0.0, 1.0);
        break;
      case Shape::normal:
        for (auto& x : d) x = normal(0.0, 1.0);
        break;
      case Shape::constant: {
        const double c = uniform(-5.0, 5.0);
        std::fill(d.begin(), d.end(), c);
        break;
      }
      case Shape::duplicates: {
        std::vector<double> pool(index(1, 5));
        for (auto& x : pool) x = uniform(-1.0, 1.0);
        for (auto& x : d) x = pool[index(0, pool.size() - 1)];
        break;
      }
      case Shape::sorted:
        for (auto& x : d) x = uniform(0.0, 1.0);
        std::sort(d.begin(), d.end());
        break;
      case Shape::reverse_sorted:
        for (auto& x : d) x = uniform(0.0, 1.0);
        std::sort(d.begin(), d.end(), std::greater<>());
        break;
      case Shape::wide:
        for (auto& x : d) x = normal(0.0, 1.0) * std::pow(10.0, uniform(-3.0, 3.0));
        break;
    }
    return d;
  }

  std::vector<double> weights(std::size_t n) {
    std::vector<double> w(n);
    for (auto& x : w) x = uniform(0.2, 3.0);
    return w;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace gen
