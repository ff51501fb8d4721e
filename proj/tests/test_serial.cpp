#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "simplexproj/core.hpp"
#include "simplexproj/serial.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace simplexproj;

namespace {

struct Named {
  const char* name;
  std::function<ProjectionResult(InstanceView)> run;
};

const std::vector<Named>& solvers() {
  static const std::vector<Named> all{
      {"sort_scan", [](InstanceView i) { return sort_scan(i); }},
      {"pivot_median", [](InstanceView i) { return pivot_partition(i, PivotRule::median()); }},
      {"pivot_random", [](InstanceView i) { return pivot_partition(i, PivotRule::random(17)); }},
      {"pivot_michelot", [](InstanceView i) { return pivot_partition(i, PivotRule::michelot()); }},
      {"michelot", [](InstanceView i) { return michelot(i); }},
      {"condat", [](InstanceView i) { return condat(i); }},
      {"bucket", [](InstanceView i) { return bucket(i); }},
      {"bucket_c2", [](InstanceView i) { return bucket(i, {2, 0.0}); }},
  };
  return all;
}

double rel(double a, double b) { return std::fabs(a - b) / std::max(1.0, std::fabs(b)); }

}  // namespace

TEST_CASE("sort_scan examples") {
  CHECK(sort_scan(ProjectionInstance({2, 1, 0}, 1)).projection.tau == 1.0);
  const auto two = sort_scan(ProjectionInstance({1, 1}, 1)).projection;
  CHECK(two.tau == 0.5);
  CHECK(two.values == std::vector<double>{0.5, 0.5});
  const auto full = sort_scan(ProjectionInstance({0.4, 0.3, 0.3}, 1.1)).projection;
  CHECK(full.support() == 3);
  CHECK(full.tau == doctest::Approx(-1.0 / 30).epsilon(1e-14));
}

TEST_CASE("pivot_partition examples") {
  const ProjectionInstance inst({2, 1, 0}, 1);
  CHECK(pivot_partition(inst, PivotRule::median()).projection.tau == 1.0);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    CHECK(pivot_partition(inst, PivotRule::random(seed)).projection.tau == 1.0);
  }
  const auto one = pivot_partition(ProjectionInstance({5}, 2), PivotRule::median()).projection;
  CHECK(one.tau == 3.0);
  CHECK(one.values == std::vector<double>{2.0});
}

TEST_CASE("random pivots are reproducible from the seed") {
  gen::Gen g(3);
  const auto d = g.vector(gen::Shape::uniform, 5000);
  const ProjectionInstance inst(d, 1.0);
  const auto a = pivot_partition(inst, PivotRule::random(42));
  const auto b = pivot_partition(inst, PivotRule::random(42));
  CHECK(a.stats.pivots == b.stats.pivots);
  CHECK(a.stats.elements_scanned == b.stats.elements_scanned);
}

TEST_CASE("michelot examples") {
  const auto r = michelot(ProjectionInstance({2, 1, 0}, 1));
  CHECK(r.projection.tau == 1.0);
  CHECK(r.stats.outer_iterations == 3);
  REQUIRE(r.stats.pivots.size() == 3);
  CHECK(r.stats.pivots[0] == doctest::Approx(2.0 / 3.0));
  CHECK(r.stats.pivots[1] == 1.0);
  CHECK(r.stats.pivots[2] == 1.0);

  const auto on = michelot(ProjectionInstance({0.4, 0.3, 0.3}, 1));
  CHECK(on.stats.outer_iterations == 1);
  CHECK(std::fabs(on.projection.tau) < 1e-15);
  CHECK(on.projection.support() == 3);

  const auto two = michelot(ProjectionInstance({1, 1}, 1));
  CHECK(two.projection.tau == 0.5);
  CHECK(two.stats.outer_iterations == 1);
}

TEST_CASE("filter examples") {
  auto f = filter(ProjectionInstance({2, 1, 0}, 1));
  CHECK(f.indices == std::vector<std::size_t>{0});
  CHECK(f.pivot == 1.0);
  f = filter(ProjectionInstance({0, 1, 2}, 1));
  CHECK(f.indices == std::vector<std::size_t>{2});
  CHECK(f.pivot == 1.0);
  f = filter(ProjectionInstance({5}, 2));
  CHECK(f.indices == std::vector<std::size_t>{0});
  CHECK(f.pivot == 3.0);
}

TEST_CASE("condat examples") {
  CHECK(condat(ProjectionInstance({2, 1, 0}, 1)).projection.tau == 1.0);
  const auto r = condat(ProjectionInstance({0, 1, 2}, 1)).projection;
  CHECK(r.tau == 1.0);
  CHECK(r.to_dense(3) == std::vector<double>{0, 0, 1});
  CHECK(condat(ProjectionInstance({1, 1}, 1)).projection.tau == 0.5);
}

TEST_CASE("bucket examples") {
  const auto e = bucket_estimate(ProjectionInstance({2, 1, 0}, 1), {4, 1e-9});
  CHECK(std::fabs(e.tau_bar - 1.0) <= 1e-9);
  CHECK(bucket(ProjectionInstance({2, 1, 0}, 1), {4, 1e-9}).projection.tau == 1.0);

  const auto eq = bucket(ProjectionInstance({3, 3, 3}, 1)).projection;
  CHECK(eq.tau == doctest::Approx(3.0 - 1.0 / 3.0));
  for (double v : eq.values) CHECK(v == doctest::Approx(1.0 / 3.0));

  const auto e2 = bucket_estimate(ProjectionInstance({2, 1, 0, 1.5}, 1), {2, 1e-9});
  CHECK(std::fabs(e2.tau_bar - 1.25) <= 1e-9);
}

TEST_CASE("bucket rounds") {
  CHECK(BucketParams::rounds(64, 1.0, 1e-9) == 5);
  CHECK(BucketParams::rounds(2, 1.0, 0.25) == 2);
  CHECK(BucketParams::rounds(2, 1.0, 2.0) == 1);
  CHECK_THROWS_AS(BucketParams::rounds(1, 1.0, 1e-9), InvalidInstance);
  CHECK_THROWS_AS(BucketParams::rounds(4, 1.0, 0.0), InvalidInstance);
  CHECK_THROWS_AS(bucket(ProjectionInstance({1, 2}, 1), {1, 1e-9}), InvalidInstance);
}

TEST_CASE("solvers reject non-finite entries") {
  const std::vector<double> bad{1.0, std::numeric_limits<double>::infinity()};
  for (const auto& s : solvers()) {
    CAPTURE(s.name);
    CHECK_THROWS_AS(s.run(InstanceView(bad, 1.0)), InvalidInstance);
  }
}

TEST_CASE("every serial solver matches the oracle") {
  gen::Gen g(1234);
  const std::size_t sizes[] = {1, 2, 3, 10, 1000};
  for (auto shape : gen::kAllShapes) {
    for (std::size_t n : sizes) {
      const int trials = n >= 1000 ? 40 : 150;
      for (int t = 0; t < trials; ++t) {
        const auto d = g.vector(shape, n);
        const double b = g.scale();
        const ProjectionInstance inst(d, b);
        const auto o = oracle::simplex(d, b);
        const auto tau_o = static_cast<double>(o.tau);
        for (const auto& s : solvers()) {
          CAPTURE(s.name);
          CAPTURE(gen::name(shape));
          CAPTURE(n);
          const auto r = s.run(inst);
          CHECK(rel(r.projection.tau, tau_o) <= 1e-9);
          CHECK(explain_kkt(inst, r.projection) == "");
          CHECK(oracle::same_active_up_to_ties(d, r.projection.indices, o.active, tau_o, 1e-12 * std::max(1.0, std::fabs(tau_o))));
        }
      }
    }
  }
}

TEST_CASE("solvers handing over the same active set agree bitwise") {
  gen::Gen g(55);
  for (int t = 0; t < 300; ++t) {
    const auto d = g.vector(gen::Shape::normal, g.index(1, 2000));
    const ProjectionInstance inst(d, g.scale());
    const auto ref = sort_scan(inst).projection;
    for (const auto& s : solvers()) {
      const auto r = s.run(inst).projection;
      if (r.indices == ref.indices) CHECK(r.tau == ref.tau);
    }
  }
}

TEST_CASE("michelot pivots increase to tau") {
  gen::Gen g(8);
  for (int t = 0; t < 300; ++t) {
    const auto d = g.vector(gen::kAllShapes[g.index(0, 6)], g.index(1, 3000));
    const auto r = michelot(ProjectionInstance(d, g.scale()));
    const auto& p = r.stats.pivots;
    REQUIRE(!p.empty());
    for (std::size_t i = 1; i < p.size(); ++i) CHECK(p[i] >= p[i - 1]);
    CHECK(rel(p.back(), r.projection.tau) <= 1e-12);
    CHECK(r.stats.outer_iterations == p.size());
  }
}

TEST_CASE("filter sandwich and superset") {
  gen::Gen g(9);
  for (int t = 0; t < 1000; ++t) {
    const auto shape = gen::kAllShapes[g.index(0, 6)];
    const std::size_t n = g.index(1, 2000);
    const auto d = g.vector(shape, n);
    const double b = g.scale();
    const auto f = filter(ProjectionInstance(d, b));
    const auto o = oracle::simplex(d, b);
    long double mean = 0;
    for (double x : d) mean += x;
    mean /= static_cast<long double>(n);
    const double slack = 1e-12 * std::max(1.0, std::fabs(static_cast<double>(o.tau)));
    CAPTURE(gen::name(shape));
    CHECK(static_cast<double>(mean - b / static_cast<long double>(n)) <= f.pivot + slack);
    CHECK(f.pivot <= static_cast<double>(o.tau) + slack);
    for (std::size_t i : o.active) {
      CHECK(std::binary_search(f.indices.begin(), f.indices.end(), i));
    }
  }
}

TEST_CASE("condat scans no more than michelot") {
  gen::Gen g(10);
  for (int t = 0; t < 1000; ++t) {
    const auto d = g.vector(gen::kAllShapes[g.index(0, 6)], g.index(1, 3000));
    const ProjectionInstance inst(d, g.scale());
    CHECK(condat(inst).stats.elements_scanned <= michelot(inst).stats.elements_scanned);
  }
}

TEST_CASE("bucket estimate stays within the tolerance") {
  gen::Gen g(11);
  for (double tol : {1e-3, 1e-6, 1e-9}) {
    for (std::size_t c : {2u, 16u, 64u}) {
      for (int t = 0; t < 100; ++t) {
        const auto d = g.vector(gen::kAllShapes[g.index(0, 6)], g.index(1, 3000));
        const double b = g.scale();
        const auto e = bucket_estimate(ProjectionInstance(d, b), {c, tol});
        const auto o = oracle::simplex(d, b);
        const double tau = static_cast<double>(o.tau);
        CHECK(std::fabs(e.tau_bar - tau) <= tol + 1e-12 * std::max(1.0, std::fabs(tau)));
        CHECK(e.stats.outer_iterations <= e.max_rounds);
        for (std::size_t i : o.active) {
          CHECK(std::binary_search(e.candidates.begin(), e.candidates.end(), i));
        }
      }
    }
  }
}

TEST_CASE("work counters cover a full read of the input") {
  gen::Gen g(12);
  const auto d = g.vector(gen::Shape::uniform, 10000);
  const ProjectionInstance inst(d, 1.0);
  for (const auto& s : solvers()) {
    if (std::string(s.name) == "condat") continue;  // post-filter count by definition
    CAPTURE(s.name);
    CHECK(s.run(inst).stats.elements_scanned >= d.size());
  }
}
