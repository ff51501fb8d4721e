#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "simplexproj/bench.hpp"
#include "simplexproj/core.hpp"
#include "simplexproj/kernels.hpp"
#include "simplexproj/l1_ball.hpp"
#include "simplexproj/lasso.hpp"
#include "simplexproj/parallel.hpp"
#include "simplexproj/parity.hpp"
#include "simplexproj/solvers.hpp"
#include "simplexproj/weighted.hpp"

namespace sp = simplexproj;

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<double> read_numbers(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<double> v{std::istream_iterator<double>(in), std::istream_iterator<double>()};
  if (!in.eof()) throw std::runtime_error("non-numeric content in " + path);
  return v;
}

void print_stats(const sp::SolverStats& s) {
  std::cout << "elements_scanned " << s.elements_scanned << "\n"
            << "outer_iterations " << s.outer_iterations << "\n";
  if (s.reduced_size > 0) std::cout << "reduced_size " << s.reduced_size << "\n";
  if (s.dense_fallback) std::cout << "dense_fallback yes\n";
}

void print_values(const sp::SparseProjection& p, std::size_t limit) {
  if (limit == 0) return;
  const std::size_t shown = std::min(limit, p.indices.size());
  for (std::size_t j = 0; j < shown; ++j) std::cout << "  " << p.indices[j] << " " << p.values[j] << "\n";
  if (shown < p.indices.size()) std::cout << "  ... " << p.indices.size() - shown << " more\n";
}

struct ProjectOptions {
  std::string alg = "condat";
  std::size_t n = 1000000;
  std::string dist = "uniform(0,1)";
  double b = 1.0;
  std::size_t k = 1;
  std::uint64_t seed = 0;
  std::string weights;
  bool l1 = false;
  bool parity = false;
  std::size_t show = 0;
};

sp::ProjectionResult weighted_solve(const std::string& alg, sp::WeightedView w, std::size_t k) {
  if (alg == "michelot") return sp::weighted_michelot(w);
  if (alg == "condat") return sp::weighted_condat(w);
  if (alg == "sortscan" || alg == "psortscan") return sp::weighted_sort_scan_parallel(w, k);
  if (alg == "ppivot") return sp::distributed_weighted_project(w, k, sp::WeightedVariant::pivot);
  if (alg == "pcondat") return sp::distributed_weighted_project(w, k, sp::WeightedVariant::condat);
  throw CLI::ValidationError("--alg", "no weighted variant of " + alg);
}

int run_project(const ProjectOptions& o) {
  const auto alg = sp::parse_algorithm(o.alg);
  if (!alg) throw CLI::ValidationError("--alg", "unknown algorithm " + o.alg);
  const auto dist = sp::bench::Distribution::parse(o.dist);
  const std::vector<double> d = sp::bench::generate_vector(dist, o.n, o.seed);
  const sp::SimplexBackend backend = sp::make_backend(*alg, o.k, o.seed);

  std::cout << "kernels " << sp::kernels::active().name << "\n"
            << "threads " << sp::worker_threads() << "\n";

  if (o.parity) {
    const auto start = Clock::now();
    const auto res = sp::project_parity_polytope(d, backend);
    const double ms = elapsed_ms(start);
    double dist2 = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) dist2 += (res.x[i] - d[i]) * (res.x[i] - d[i]);
    std::cout << "parity polytope, n " << d.size() << "\n"
              << "box_only " << (res.box_only ? "yes" : "no") << "\n"
              << "distance " << std::sqrt(dist2) << "\n"
              << "time_ms " << ms << "\n";
    return 0;
  }

  if (!o.weights.empty()) {
    std::vector<double> w = read_numbers(o.weights);
    if (w.size() != d.size()) {
      throw std::runtime_error("weight file has " + std::to_string(w.size()) + " entries, expected " +
                               std::to_string(d.size()));
    }
    const sp::WeightedInstance inst(d, std::move(w), o.b);
    const auto start = Clock::now();
    if (o.l1) {
      const auto res = sp::project_weighted_l1_ball(inst);
      const double ms = elapsed_ms(start);
      std::cout << "weighted l1 ball, n " << o.n << ", b " << o.b << "\n"
                << "interior " << (res.interior ? "yes" : "no") << "\n"
                << "support " << res.projection.support() << "\n"
                << "time_ms " << ms << "\n";
      print_values(res.projection, o.show);
      return 0;
    }
    const auto res = weighted_solve(o.alg, inst, o.k);
    const double ms = elapsed_ms(start);
    const std::string why = sp::explain_weighted_kkt(inst, res.projection);
    std::cout << "weighted " << o.alg << ", n " << o.n << ", b " << o.b << ", k " << o.k << "\n"
              << std::setprecision(17) << "tau " << res.projection.tau << "\n"
              << std::setprecision(6) << "support " << res.projection.support() << "\n"
              << "time_ms " << ms << "\n"
              << "kkt " << (why.empty() ? "ok" : why) << "\n";
    print_stats(res.stats);
    print_values(res.projection, o.show);
    return why.empty() ? 0 : 1;
  }

  const sp::ProjectionInstance inst(d, o.b);
  if (o.l1) {
    const auto start = Clock::now();
    const auto res = sp::project_l1_ball(inst, backend);
    const double ms = elapsed_ms(start);
    std::cout << "l1 ball via " << o.alg << ", n " << o.n << ", b " << o.b << ", k " << o.k << "\n"
              << "interior " << (res.interior ? "yes" : "no") << "\n"
              << std::setprecision(17) << "tau " << res.projection.tau << "\n"
              << std::setprecision(6) << "support " << res.projection.support() << "\n"
              << "time_ms " << ms << "\n";
    print_values(res.projection, o.show);
    return 0;
  }

  const auto start = Clock::now();
  const auto res = backend(inst);
  const double ms = elapsed_ms(start);
  const std::string why = sp::explain_kkt(inst, res.projection);
  std::cout << o.alg << ", n " << o.n << ", " << dist.label() << ", b " << o.b << ", k " << o.k << "\n"
            << std::setprecision(17) << "tau " << res.projection.tau << "\n"
            << std::setprecision(6) << "support " << res.projection.support() << "\n"
            << "time_ms " << ms << "\n"
            << "kkt " << (why.empty() ? "ok" : why) << "\n";
  print_stats(res.stats);
  print_values(res.projection, o.show);
  return why.empty() ? 0 : 1;
}

int run_bench(const std::string& config, const std::string& out_path) {
  sp::bench::BenchConfig cfg = sp::bench::read_config(config);
  if (!out_path.empty()) cfg.out = out_path;
  const auto records = sp::bench::run_benchmark(cfg);
  if (cfg.out.empty() || cfg.out == "-") {
    sp::bench::write_csv(std::cout, records);
  } else {
    std::ofstream out(cfg.out);
    if (!out) throw std::runtime_error("cannot write " + cfg.out);
    sp::bench::write_csv(out, records);
    std::cerr << records.size() << " records written to " << cfg.out << "\n";
  }
  return 0;
}

struct LassoOptions {
  std::string data;
  sp::LassoConfig cfg;
  std::size_t k = 1;
  std::string alg;
  double rate = 0.5;
  std::size_t cols = 0;
};

int run_lasso(const LassoOptions& o) {
  const sp::LassoData data = sp::bench::read_libsvm(o.data, o.cols);
  const std::string name = o.alg.empty() ? (o.k > 1 ? "pcondat" : "condat") : o.alg;
  const auto alg = sp::parse_algorithm(name);
  if (!alg) throw CLI::ValidationError("--alg", "unknown algorithm " + name);
  auto x0 = sp::sparse_uniform_start(data.a.cols, o.rate, o.cfg.seed);
  const auto trace = sp::lasso_pgd_minibatch(data, o.cfg, sp::make_backend(*alg, o.k, o.cfg.seed), x0);

  std::cout << "samples " << data.a.rows << ", features " << data.a.cols << ", nnz " << data.a.nnz()
            << "\n"
            << "projection " << name << ", k " << o.k << "\n"
            << "iter  projection_ms  l1_norm  support\n";
  double total = 0.0;
  for (std::size_t t = 0; t < trace.projection_ns.size(); ++t) {
    total += trace.projection_ns[t];
    std::cout << std::setw(4) << t + 1 << std::setw(15) << std::fixed << std::setprecision(3)
              << trace.projection_ns[t] / 1e6 << std::setw(9) << std::setprecision(6)
              << trace.l1_norms[t] << std::setw(9) << trace.support[t] << "\n";
  }
  std::cout << "total projection_ms " << std::setprecision(3) << total / 1e6 << "\n";
  return 0;
}

int run_report(const std::string& in_path, const std::string& baseline_name, const std::string& csv_out) {
  const auto baseline = sp::bench::parse_baseline(baseline_name);
  if (!baseline) throw CLI::ValidationError("--baseline", "expected fastest-serial or same-algorithm-serial");
  std::ifstream in(in_path);
  if (!in) throw std::runtime_error("cannot open " + in_path);
  const auto report = sp::bench::speedup_report(sp::bench::read_csv(in), *baseline);
  sp::bench::write_report_table(std::cout, report);
  if (!csv_out.empty()) {
    std::ofstream out(csv_out);
    if (!out) throw std::runtime_error("cannot write " + csv_out);
    sp::bench::write_report_csv(out, report);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Euclidean projection onto the simplex, l1 ball and relatives"};
  app.require_subcommand(1);

  ProjectOptions po;
  auto* project = app.add_subcommand("project", "Solve one generated instance");
  project->add_option("--alg", po.alg, "sortscan|pp-median|pp-random|michelot|condat|bucket|psortscan|ppivot|pcondat")
      ->capture_default_str();
  project->add_option("--n", po.n, "Vector length")->capture_default_str()->check(CLI::PositiveNumber);
  project->add_option("--dist", po.dist, "uniform(l,u) | normal(mu,var) | sparse-uniform(rate) | constant(c) | duplicates(m)")
      ->capture_default_str();
  project->add_option("--b", po.b, "Scale / radius")->capture_default_str()->check(CLI::PositiveNumber);
  project->add_option("--k", po.k, "Workers for parallel methods")->capture_default_str()->check(CLI::PositiveNumber);
  project->add_option("--seed", po.seed, "Generator seed")->capture_default_str();
  project->add_option("--weighted", po.weights, "Whitespace-separated weights, one per entry")
      ->check(CLI::ExistingFile);
  project->add_flag("--l1", po.l1, "Project onto the l1 ball instead");
  project->add_flag("--parity", po.parity, "Project onto the centered parity polytope");
  project->add_option("--show", po.show, "Print up to this many nonzeros");

  std::string config;
  std::string bench_out;
  auto* bench = app.add_subcommand("bench", "Run a benchmark configuration and write CSV");
  bench->add_option("--config", config, "key = value configuration file")->required()->check(CLI::ExistingFile);
  bench->add_option("--out", bench_out, "CSV output (default: config 'out', else stdout)");

  LassoOptions lo;
  auto* lasso = app.add_subcommand("lasso", "Mini-batch projected gradient descent on LIBSVM data");
  lasso->add_option("--data", lo.data, "LIBSVM file")->required()->check(CLI::ExistingFile);
  lasso->add_option("--alpha", lo.cfg.alpha, "Step size")->capture_default_str();
  lasso->add_option("--batch", lo.cfg.batch, "Rows per mini-batch")->capture_default_str();
  lasso->add_option("--iters", lo.cfg.iterations, "Iterations")->capture_default_str();
  lasso->add_option("--b", lo.cfg.radius, "l1 radius")->capture_default_str();
  lasso->add_option("--k", lo.k, "Workers")->capture_default_str()->check(CLI::PositiveNumber);
  lasso->add_option("--alg", lo.alg, "Simplex solver (default condat, pcondat when k > 1)");
  lasso->add_option("--seed", lo.cfg.seed, "Seed for the start point and the batches")->capture_default_str();
  lasso->add_option("--sparse-rate", lo.rate, "Fraction of zeros in the start point")->capture_default_str();
  lasso->add_option("--cols", lo.cols, "Column count if larger than the max feature index");

  std::string report_in;
  std::string baseline = "fastest-serial";
  std::string report_csv;
  auto* report = app.add_subcommand("report", "Median times and speedups from a benchmark CSV");
  report->add_option("--in", report_in, "Benchmark CSV")->required()->check(CLI::ExistingFile);
  report->add_option("--baseline", baseline, "fastest-serial | same-algorithm-serial")->capture_default_str();
  report->add_option("--csv", report_csv, "Also write the report as CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*project) return run_project(po);
    if (*bench) return run_bench(config, bench_out);
    if (*lasso) return run_lasso(lo);
    if (*report) return run_report(report_in, baseline, report_csv);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
