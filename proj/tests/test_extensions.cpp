#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "simplexproj/core.hpp"
#include "simplexproj/l1_ball.hpp"
#include "simplexproj/lasso.hpp"
#include "simplexproj/parallel.hpp"
#include "simplexproj/parity.hpp"
#include "simplexproj/serial.hpp"
#include "simplexproj/solvers.hpp"
#include "simplexproj/weighted.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace simplexproj;

namespace {

double rel(double a, double b) { return std::fabs(a - b) / std::max(1.0, std::fabs(b)); }

double l1(const std::vector<double>& x) {
  long double s = 0;
  for (double v : x) s += std::fabs(v);
  return static_cast<double>(s);
}

}  // namespace

TEST_CASE("l1 ball examples") {
  const std::vector<double> inside{0.2, -0.1};
  const auto in = project_l1_ball(InstanceView(inside, 1.0));
  CHECK(in.interior);
  CHECK(in.projection.to_dense(2) == inside);

  const std::vector<double> d{2, -1.5, 0.2};
  const auto out = project_l1_ball(InstanceView(d, 1.0));
  CHECK_FALSE(out.interior);
  CHECK(out.projection.tau == 1.25);
  CHECK(out.projection.to_dense(3) == std::vector<double>{0.75, -0.25, 0});

  const std::vector<double> e{2, -1};
  CHECK(project_l1_ball(InstanceView(e, 1.0)).projection.to_dense(2) == std::vector<double>{1, 0});
}

TEST_CASE("l1 ball properties") {
  gen::Gen g(21);
  for (int t = 0; t < 1500; ++t) {
    const std::size_t n = g.index(1, 500);
    auto d = g.vector(gen::Shape::normal, n);
    for (auto& x : d) {
      if (g.coin(0.2)) x = 0.0;
    }
    const double b = g.scale();
    const Algorithm alg = all_algorithms()[g.index(0, all_algorithms().size() - 1)];
    const auto res = project_l1_ball(InstanceView(d, b), make_backend(alg, 3, 1));
    const auto x = res.projection.to_dense(n);
    CAPTURE(to_string(alg));
    CHECK(l1(x) <= b * (1 + 1e-9));
    if (l1(d) <= b) {
      CHECK(res.interior);
      CHECK(x == d);
    } else {
      std::vector<double> mag(n);
      for (std::size_t i = 0; i < n; ++i) mag[i] = std::fabs(d[i]);
      const auto o = oracle::simplex(mag, b);
      CHECK(rel(res.projection.tau, static_cast<double>(o.tau)) <= 1e-9);
      CHECK(res.projection.tau > 0.0);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (d[i] == 0.0) CHECK(x[i] == 0.0);
      CHECK(x[i] * d[i] >= 0.0);
    }
  }
}

TEST_CASE("weighted examples") {
  const WeightedInstance unit({2, 1, 0}, {1, 1, 1}, 1);
  CHECK(weighted_michelot(unit).projection.tau == 1.0);

  const WeightedInstance two({3, 3}, {1, 2}, 1);
  for (const auto& r : {weighted_michelot(two), weighted_condat(two), weighted_sort_scan_parallel(two, 1),
                        weighted_sort_scan_parallel(two, 4)}) {
    CHECK(r.projection.tau == 2.0);
    CHECK(r.projection.to_dense(2) == std::vector<double>{1, 0});
    CHECK(verify_weighted_kkt(two, r.projection));
  }
  CHECK(weighted_filter(two).indices.front() == 0);

  const WeightedInstance one({5}, {2}, 2);
  const auto r1 = weighted_michelot(one).projection;
  CHECK(r1.tau == 2.0);
  CHECK(r1.values == std::vector<double>{1.0});
  CHECK(weighted_filter(one).indices == std::vector<std::size_t>{0});

  const WeightedInstance pair({2, 1}, {1, 1}, 1);
  CHECK(weighted_sort_scan_parallel(pair, 2).projection.to_dense(2) == std::vector<double>{1, 0});

  const WeightedInstance dist({3, 3, 0.1, 0.1}, {1, 2, 1, 1}, 1);
  for (auto variant : {WeightedVariant::pivot, WeightedVariant::condat}) {
    const auto r = distributed_weighted_project(dist, 2, variant).projection;
    CHECK(r.tau == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.to_dense(4) == std::vector<double>{1, 0, 0, 0});
  }

  CHECK_THROWS_AS(WeightedInstance({1, 2}, {1, 0}, 1), InvalidInstance);
  const std::vector<double> dd{1, 2};
  const std::vector<double> ww{1, -1};
  CHECK_THROWS_AS(weighted_michelot(WeightedView(dd, ww, 1)), InvalidInstance);
}

TEST_CASE("weighted solvers match the weighted oracle") {
  gen::Gen g(22);
  for (int t = 0; t < 600; ++t) {
    const std::size_t n = t % 10 == 0 ? g.index(1, 5) : g.index(5, 1500);
    const auto d = g.vector(gen::kAllShapes[g.index(0, 6)], n);
    const auto w = g.weights(n);
    const double b = g.scale();
    const WeightedInstance inst(d, w, b);
    const auto o = oracle::weighted(d, w, b);
    const double tau = static_cast<double>(o.tau);
    std::vector<ProjectionResult> results{weighted_michelot(inst), weighted_condat(inst)};
    for (std::size_t k : {1u, 2u, 3u, 4u, 7u, 8u}) {
      results.push_back(weighted_sort_scan_parallel(inst, k));
      results.push_back(distributed_weighted_project(inst, k, WeightedVariant::pivot));
      results.push_back(distributed_weighted_project(inst, k, WeightedVariant::condat));
    }
    for (const auto& r : results) {
      CHECK(rel(r.projection.tau, tau) <= 1e-9);
      CHECK(explain_weighted_kkt(inst, r.projection) == "");
    }
    const auto f = weighted_filter(inst);
    for (std::size_t i : o.active) CHECK(std::binary_search(f.indices.begin(), f.indices.end(), i));
  }
}

TEST_CASE("unit weights reduce to the unweighted solvers") {
  gen::Gen g(23);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = g.index(1, 1000);
    const auto d = g.vector(gen::kAllShapes[g.index(0, 6)], n);
    const std::vector<double> w(n, 1.0);
    const double b = g.scale();
    const ProjectionInstance plain(d, b);
    const WeightedInstance inst(d, w, b);
    const auto ref = michelot(plain).projection;
    const std::size_t k = g.index(1, 8);
    const std::pair<ProjectionResult, SparseProjection> pairs[] = {
        {weighted_michelot(inst), ref},
        {weighted_condat(inst), condat(plain).projection},
        {weighted_sort_scan_parallel(inst, k), parallel_sort_scan(plain, k).projection},
        {distributed_weighted_project(inst, k, WeightedVariant::pivot),
         parallel_pivot_partition(plain, k, PivotRule::michelot()).projection},
        {distributed_weighted_project(inst, k, WeightedVariant::condat), parallel_condat(plain, k).projection},
    };
    for (const auto& [weighted, unweighted] : pairs) {
      CHECK(weighted.projection.indices == unweighted.indices);
      CHECK(std::fabs(weighted.projection.tau - unweighted.tau) <= 1e-12 * std::max(1.0, std::fabs(unweighted.tau)));
    }
    CHECK(weighted_filter(inst).indices == filter(plain).indices);

    auto signed_d = d;
    for (auto& x : signed_d) {
      if (g.coin()) x = -x;
    }
    const auto wb = project_weighted_l1_ball(WeightedInstance(signed_d, w, b));
    const auto ub = project_l1_ball(InstanceView(signed_d, b));
    CHECK(wb.interior == ub.interior);
    CHECK(wb.projection.indices == ub.projection.indices);
    const auto xw = wb.projection.to_dense(n);
    const auto xu = ub.projection.to_dense(n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::fabs(xw[i] - xu[i]) <= 1e-12 * std::max(1.0, std::fabs(signed_d[i])));
  }
}

TEST_CASE("weighted l1 ball examples") {
  const auto in = project_weighted_l1_ball(WeightedInstance({0.1, -0.1}, {1, 1}, 1));
  CHECK(in.interior);
  CHECK(in.projection.to_dense(2) == std::vector<double>{0.1, -0.1});

  const auto out = project_weighted_l1_ball(WeightedInstance({-3, 3}, {2, 1}, 1));
  CHECK_FALSE(out.interior);
  CHECK(out.projection.tau == 2.0);
  CHECK(out.projection.to_dense(2) == std::vector<double>{0, 1});
}

TEST_CASE("parity examples") {
  const std::vector<double> vertex{-0.5, -0.5, -0.5};
  const auto v = project_parity_polytope(vertex);
  CHECK(v.x == vertex);

  const std::vector<double> inner{0.3, 0.2, -0.1};
  CHECK(parity_signs(inner) == std::vector<std::uint8_t>{1, 1, 1});
  const auto p = project_parity_polytope(inner);
  CHECK(p.box_only);
  CHECK(p.x == inner);
  // d + 1/2 as a convex combination of 000, 110, 101, 011
  const double lam[] = {0.05, 0.55, 0.25, 0.15};
  const double verts[4][3] = {{0, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
  for (int i = 0; i < 3; ++i) {
    double s = 0;
    for (int j = 0; j < 4; ++j) s += lam[j] * verts[j][i];
    CHECK(s == doctest::Approx(inner[static_cast<std::size_t>(i)] + 0.5));
  }

  const std::vector<double> outer{-0.7, -0.6, -0.8};
  const auto q = project_parity_polytope(outer);
  for (double x : q.x) CHECK(x == doctest::Approx(-0.5).epsilon(1e-12));

  const std::vector<double> one{0.1};
  CHECK_THROWS_AS(project_parity_polytope(one), InvalidInstance);
}

TEST_CASE("parity signs have odd weight") {
  gen::Gen g(24);
  for (int t = 0; t < 5000; ++t) {
    const std::size_t n = g.index(1, 12);
    std::vector<double> d(n);
    for (auto& x : d) x = g.coin(0.1) ? 0.0 : g.uniform(-1.5, 1.5);
    const auto f = parity_signs(d);
    const auto weight = std::accumulate(f.begin(), f.end(), std::size_t{0});
    CHECK(weight % 2 == 1);
  }
}

TEST_CASE("parity projection matches the hull oracle") {
  gen::Gen g(25);
  int checked = 0;
  for (std::size_t n : {2u, 3u, 4u}) {
    for (int t = 0; t < 120; ++t) {
      std::vector<double> d(n);
      for (auto& x : d) x = g.uniform(-1.5, 1.5);
      const Algorithm alg = all_algorithms()[g.index(0, all_algorithms().size() - 1)];
      const auto got = project_parity_polytope(d, make_backend(alg, 2, 3));
      const auto want = oracle::parity_projection(d);
      CAPTURE(n);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(got.x[i] >= -0.5);
        CHECK(got.x[i] <= 0.5);
        CHECK(std::fabs(got.x[i] - want(static_cast<int>(i))) <= 1e-6);
      }
      ++checked;
    }
  }
  CHECK(checked >= 200);
}

TEST_CASE("parity projection stays in the box at larger n") {
  gen::Gen g(26);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = g.index(2, 2000);
    std::vector<double> d(n);
    for (auto& x : d) x = g.normal(0.0, 1.0);
    const auto r = project_parity_polytope(d);
    for (double x : r.x) {
      CHECK(x >= -0.5 - 1e-12);
      CHECK(x <= 0.5 + 1e-12);
    }
  }
}

TEST_CASE("lasso examples") {
  LassoData data;
  data.a.cols = 1;
  const std::size_t c[] = {0};
  const double v[] = {1.0};
  data.a.add_row(c, v);
  data.labels = {1.0};
  LassoConfig cfg;
  cfg.batch = 1;
  cfg.iterations = 1;
  const auto trace = lasso_pgd_minibatch(data, cfg, make_backend(Algorithm::condat), {0.0});
  REQUIRE(trace.x.size() == 1);
  CHECK(trace.x[0] == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(trace.projection_ns.size() == 1);

  // Zero residual: y = A x0 with x0 feasible.
  LassoData fit;
  fit.a.cols = 3;
  const std::size_t c2[] = {0, 2};
  const double v2[] = {1.0, -2.0};
  const std::vector<double> x0{0.2, 0.0, 0.1};
  for (int r = 0; r < 5; ++r) {
    fit.a.add_row(c2, v2);
    fit.labels.push_back(0.2 - 0.2);
  }
  cfg.iterations = 3;
  cfg.batch = 2;
  const auto still = lasso_pgd_minibatch(fit, cfg, make_backend(Algorithm::sort_scan), x0);
  CHECK(still.x == x0);

  CHECK_THROWS(lasso_pgd_minibatch(fit, cfg, make_backend(Algorithm::condat), {0.0, 0.0}));
  LassoConfig bad;
  bad.alpha = 0.0;
  CHECK_THROWS(bad.validate());
  SparseMatrix m;
  m.cols = 2;
  const std::size_t oob[] = {2};
  CHECK_THROWS(m.add_row(oob, v));
}

TEST_CASE("lasso iterates stay feasible") {
  gen::Gen g(27);
  for (int t = 0; t < 20; ++t) {
    LassoData data;
    const std::size_t cols = g.index(5, 300);
    data.a.cols = cols;
    const std::size_t rows = g.index(1, 200);
    for (std::size_t r = 0; r < rows; ++r) {
      std::vector<std::size_t> c;
      std::vector<double> v;
      for (std::size_t j = 0; j < cols; ++j) {
        if (g.coin(0.1)) {
          c.push_back(j);
          v.push_back(g.normal(0, 1));
        }
      }
      data.a.add_row(c, v);
      data.labels.push_back(g.normal(0, 3));
    }
    LassoConfig cfg;
    cfg.iterations = 8;
    cfg.radius = g.scale();
    cfg.seed = static_cast<std::uint64_t>(t);
    const auto x0 = sparse_uniform_start(cols, 0.5, static_cast<std::uint64_t>(t));
    const Algorithm alg = all_algorithms()[g.index(0, all_algorithms().size() - 1)];
    const auto trace = lasso_pgd_minibatch(data, cfg, make_backend(alg, 2), x0);
    CHECK(trace.l1_norms.size() == cfg.iterations);
    for (double norm : trace.l1_norms) CHECK(norm <= cfg.radius * (1 + 1e-9));
    CHECK(l1(trace.x) <= cfg.radius * (1 + 1e-9));

    const auto again = lasso_pgd_minibatch(data, cfg, make_backend(alg, 2), x0);
    CHECK(again.x == trace.x);
  }
}

TEST_CASE("sparse uniform start") {
  const auto x = sparse_uniform_start(100000, 0.5, 3);
  const auto zeros = static_cast<double>(std::count(x.begin(), x.end(), 0.0));
  CHECK(std::fabs(zeros - 50000) <= 3 * std::sqrt(100000 * 0.25));
  for (double v : x) {
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
  }
}
