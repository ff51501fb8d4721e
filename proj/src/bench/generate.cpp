#include <cmath>
#include <random>
#include <sstream>

#include "simplexproj/bench.hpp"
#include "text.hpp"

namespace simplexproj::bench {

ParseError::ParseError(const std::string& what, std::size_t line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
      line_(line) {}

Distribution Distribution::parse(std::string_view spec) {
  const std::string s = detail::trim(spec);
  const auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')') {
    throw ParseError("distribution must look like name(args): " + s, 0);
  }
  const std::string name = detail::trim(std::string_view(s).substr(0, open));
  const auto args = detail::split(std::string_view(s).substr(open + 1, s.size() - open - 2), ',');
  std::vector<double> v;
  for (const auto& a : args) v.push_back(detail::parse_double(a, 0));

  auto expect = [&](std::size_t count) {
    if (v.size() != count) {
      throw ParseError(name + " takes " + std::to_string(count) + " argument(s)", 0);
    }
  };
  Distribution d;
  if (name == "uniform") {
    expect(2);
    if (!(v[0] < v[1])) throw ParseError("uniform needs l < u", 0);
    d = {Kind::uniform, v[0], v[1]};
  } else if (name == "normal") {
    expect(2);
    if (!(v[1] > 0.0)) throw ParseError("normal needs a positive variance", 0);
    d = {Kind::normal, v[0], v[1]};
  } else if (name == "sparse-uniform") {
    expect(1);
    if (!(v[0] >= 0.0 && v[0] < 1.0)) throw ParseError("sparse-uniform rate must be in [0,1)", 0);
    d = {Kind::sparse_uniform, v[0], 0.0};
  } else if (name == "constant") {
    expect(1);
    d = {Kind::constant, v[0], 0.0};
  } else if (name == "duplicates") {
    expect(1);
    if (!(v[0] >= 1.0) || v[0] != std::floor(v[0])) {
      throw ParseError("duplicates needs a positive integer pool size", 0);
    }
    d = {Kind::duplicates, v[0], 0.0};
  } else {
    throw ParseError("unknown distribution: " + name, 0);
  }
  return d;
}

std::string Distribution::label() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case Kind::uniform:
      os << "uniform(" << p1 << "," << p2 << ")";
      break;
    case Kind::normal:
      os << "normal(" << p1 << "," << p2 << ")";
      break;
    case Kind::sparse_uniform:
      os << "sparse-uniform(" << p1 << ")";
      break;
    case Kind::constant:
      os << "constant(" << p1 << ")";
      break;
    case Kind::duplicates:
      os << "duplicates(" << p1 << ")";
      break;
  }
  return os.str();
}

std::vector<double> generate_vector(const Distribution& dist, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> d(n);
  switch (dist.kind) {
    case Distribution::Kind::uniform: {
      std::uniform_real_distribution<double> u(dist.p1, dist.p2);
      for (auto& x : d) x = u(rng);
      break;
    }
    case Distribution::Kind::normal: {
      std::normal_distribution<double> g(dist.p1, std::sqrt(dist.p2));
      for (auto& x : d) x = g(rng);
      break;
    }
    case Distribution::Kind::sparse_uniform: {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      std::bernoulli_distribution zero(dist.p1);
      for (auto& x : d) x = zero(rng) ? 0.0 : u(rng);
      break;
    }
    case Distribution::Kind::constant:
      for (auto& x : d) x = dist.p1;
      break;
    case Distribution::Kind::duplicates: {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      std::vector<double> pool(static_cast<std::size_t>(dist.p1));
      for (auto& x : pool) x = u(rng);
      std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
      for (auto& x : d) x = pool[pick(rng)];
      break;
    }
  }
  return d;
}

ProjectionInstance generate_instance(const Distribution& dist, std::size_t n, double b,
                                     std::uint64_t seed) {
  if (n == 0) throw InvalidInstance("instance size must be at least 1");
  return ProjectionInstance(generate_vector(dist, n, seed), b);
}

}  // namespace simplexproj::bench
