#pragma once

// Data-parallel inner loops shared by the solvers. Every kernel has a scalar
// reference implementation and, on x86-64, an AVX2 variant. The table is
// chosen once at first use from CPUID; SIMPLEXPROJ_ISA=scalar|avx2 overrides.
//
// All sums are Neumaier-compensated. Variants agree exactly on counts, order
// and extrema; sums agree to a few ulps of sum(|x|).

#include <cstddef>
#include <span>
#include <string_view>

namespace simplexproj::kernels {

enum class Isa { scalar, avx2 };

struct SumCount {
  double sum = 0.0;
  std::size_t count = 0;
};

struct MinMax {
  double min = 0.0;
  double max = 0.0;
};

struct KernelTable {
  Isa isa;
  std::string_view name;
  double (*sum)(const double* x, std::size_t n);
  double (*abs_sum)(const double* x, std::size_t n);
  // Sum and count of the entries strictly greater than t.
  SumCount (*sum_count_above)(const double* x, std::size_t n, double t);
  // Requires n >= 1.
  MinMax (*min_max)(const double* x, std::size_t n);
  // Stable compaction of (vals, idx) to the entries with vals > t, written to
  // (out_vals, out_idx), which may alias the inputs. Slots past the returned
  // count are clobbered. Returns the compensated sum and the number kept.
  SumCount (*compact_above)(const double* vals, const std::size_t* idx, std::size_t n, double t,
                            double* out_vals, std::size_t* out_idx);
  // Sum of clamp(x_i, lo, hi).
  double (*clamp_sum)(const double* x, std::size_t n, double lo, double hi);
  // True when no entry is NaN or infinite.
  bool (*all_finite)(const double* x, std::size_t n);
};

/// The table selected for this process.
const KernelTable& active();

/// A specific table, or nullptr when the CPU or the build lacks it.
const KernelTable* table(Isa isa);

bool supported(Isa isa);

/// Replaces the active table (tests and benchmarks). Throws if unsupported.
void force(Isa isa);

std::string_view to_string(Isa isa);

inline double sum(std::span<const double> x) { return active().sum(x.data(), x.size()); }
inline double abs_sum(std::span<const double> x) { return active().abs_sum(x.data(), x.size()); }
inline SumCount sum_count_above(std::span<const double> x, double t) {
  return active().sum_count_above(x.data(), x.size(), t);
}
inline MinMax min_max(std::span<const double> x) { return active().min_max(x.data(), x.size()); }
inline SumCount compact_above(std::span<const double> vals, std::span<const std::size_t> idx,
                              double t, double* out_vals, std::size_t* out_idx) {
  return active().compact_above(vals.data(), idx.data(), vals.size(), t, out_vals, out_idx);
}
inline double clamp_sum(std::span<const double> x, double lo, double hi) {
  return active().clamp_sum(x.data(), x.size(), lo, hi);
}

inline bool all_finite(std::span<const double> x) { return active().all_finite(x.data(), x.size()); }

namespace detail {
extern const KernelTable kScalarTable;
#if defined(SIMPLEXPROJ_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif
}  // namespace detail

}  // namespace simplexproj::kernels
