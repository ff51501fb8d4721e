// Compiled with -mavx2. Only reached after the dispatcher has checked CPUID.

#include "simplexproj/kernels.hpp"
#include "simplexproj/summation.hpp"

#include <immintrin.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>

namespace simplexproj::kernels {
namespace {

constexpr std::size_t kLanes = 4;

inline __m256d abs_pd(__m256d x) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x); }

// Lane-wise Neumaier step: s + c tracks the running sum of each lane.
inline void accumulate(__m256d& s, __m256d& c, __m256d x) {
  const __m256d t = _mm256_add_pd(s, x);
  const __m256d s_big = _mm256_cmp_pd(abs_pd(s), abs_pd(x), _CMP_GE_OQ);
  const __m256d err_s = _mm256_add_pd(_mm256_sub_pd(s, t), x);
  const __m256d err_x = _mm256_add_pd(_mm256_sub_pd(x, t), s);
  c = _mm256_add_pd(c, _mm256_blendv_pd(err_x, err_s, s_big));
  s = t;
}

struct LaneSums {
  __m256d s0 = _mm256_setzero_pd();
  __m256d c0 = _mm256_setzero_pd();
  __m256d s1 = _mm256_setzero_pd();
  __m256d c1 = _mm256_setzero_pd();

  // Folds both accumulators and the scalar tail into one compensated value.
  double finish(CompensatedSum& tail) const {
    alignas(32) std::array<double, kLanes> a{}, b{}, ca{}, cb{};
    _mm256_store_pd(a.data(), s0);
    _mm256_store_pd(b.data(), s1);
    _mm256_store_pd(ca.data(), c0);
    _mm256_store_pd(cb.data(), c1);
    for (std::size_t l = 0; l < kLanes; ++l) {
      tail.add(a[l]);
      tail.add(b[l]);
    }
    double comp = 0.0;
    for (std::size_t l = 0; l < kLanes; ++l) comp += ca[l] + cb[l];
    tail.add(comp);
    return tail.value();
  }
};

template <typename Transform>
double reduce(const double* x, std::size_t n, Transform f) {
  LaneSums acc;
  std::size_t i = 0;
  for (; i + 2 * kLanes <= n; i += 2 * kLanes) {
    accumulate(acc.s0, acc.c0, f(_mm256_loadu_pd(x + i)));
    accumulate(acc.s1, acc.c1, f(_mm256_loadu_pd(x + i + kLanes)));
  }
  for (; i + kLanes <= n; i += kLanes) accumulate(acc.s0, acc.c0, f(_mm256_loadu_pd(x + i)));
  CompensatedSum tail;
  alignas(32) std::array<double, kLanes> buf{};
  if (i < n) {
    std::fill(buf.begin(), buf.end(), 0.0);
    std::copy(x + i, x + n, buf.begin());
    const __m256d v = f(_mm256_load_pd(buf.data()));
    _mm256_store_pd(buf.data(), v);
    for (std::size_t l = 0; l < n - i; ++l) tail.add(buf[l]);
  }
  return acc.finish(tail);
}

double sum_avx2(const double* x, std::size_t n) {
  return reduce(x, n, [](__m256d v) { return v; });
}

double abs_sum_avx2(const double* x, std::size_t n) {
  return reduce(x, n, [](__m256d v) { return abs_pd(v); });
}

double clamp_sum_avx2(const double* x, std::size_t n, double lo, double hi) {
  const __m256d vlo = _mm256_set1_pd(lo);
  const __m256d vhi = _mm256_set1_pd(hi);
  return reduce(x, n, [&](__m256d v) { return _mm256_min_pd(_mm256_max_pd(v, vlo), vhi); });
}

SumCount sum_count_above_avx2(const double* x, std::size_t n, double t) {
  const __m256d vt = _mm256_set1_pd(t);
  LaneSums acc;
  __m256i count = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d v = _mm256_loadu_pd(x + i);
    const __m256d keep = _mm256_cmp_pd(v, vt, _CMP_GT_OQ);
    accumulate(acc.s0, acc.c0, _mm256_and_pd(keep, v));
    // keep lanes are all-ones, i.e. -1 as int64.
    count = _mm256_sub_epi64(count, _mm256_castpd_si256(keep));
  }
  alignas(32) std::array<std::int64_t, kLanes> lanes{};
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes.data()), count);
  std::size_t total = 0;
  for (auto c : lanes) total += static_cast<std::size_t>(c);
  CompensatedSum tail;
  for (; i < n; ++i) {
    if (x[i] > t) {
      tail.add(x[i]);
      ++total;
    }
  }
  return {acc.finish(tail), total};
}

MinMax min_max_avx2(const double* x, std::size_t n) {
  if (n < kLanes) {
    return detail::kScalarTable.min_max(x, n);
  }
  __m256d lo = _mm256_loadu_pd(x);
  __m256d hi = lo;
  std::size_t i = kLanes;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d v = _mm256_loadu_pd(x + i);
    lo = _mm256_min_pd(lo, v);
    hi = _mm256_max_pd(hi, v);
  }
  alignas(32) std::array<double, kLanes> a{}, b{};
  _mm256_store_pd(a.data(), lo);
  _mm256_store_pd(b.data(), hi);
  MinMax r{a[0], b[0]};
  for (std::size_t l = 1; l < kLanes; ++l) {
    r.min = std::min(r.min, a[l]);
    r.max = std::max(r.max, b[l]);
  }
  for (; i < n; ++i) {
    r.min = std::min(r.min, x[i]);
    r.max = std::max(r.max, x[i]);
  }
  return r;
}

// For each 4-bit keep mask, the 32-bit lane permutation that packs the kept
// 64-bit lanes to the front in their original order.
constexpr std::array<std::array<std::int32_t, 8>, 16> make_pack_table() {
  std::array<std::array<std::int32_t, 8>, 16> table{};
  for (int mask = 0; mask < 16; ++mask) {
    int out = 0;
    for (int lane = 0; lane < 4; ++lane) {
      if (mask & (1 << lane)) {
        table[mask][2 * out] = 2 * lane;
        table[mask][2 * out + 1] = 2 * lane + 1;
        ++out;
      }
    }
    for (; out < 4; ++out) {
      table[mask][2 * out] = 0;
      table[mask][2 * out + 1] = 1;
    }
  }
  return table;
}

alignas(32) constexpr auto kPackTable = make_pack_table();

SumCount compact_above_avx2(const double* vals, const std::size_t* idx, std::size_t n, double t,
                            double* out_vals, std::size_t* out_idx) {
  static_assert(sizeof(std::size_t) == 8, "index packing assumes 64-bit size_t");
  const __m256d vt = _mm256_set1_pd(t);
  LaneSums acc;
  std::size_t w = 0;
  std::size_t r = 0;
  for (; r + kLanes <= n; r += kLanes) {
    const __m256d v = _mm256_loadu_pd(vals + r);
    const __m256i ix = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(idx + r));
    const __m256d keep = _mm256_cmp_pd(v, vt, _CMP_GT_OQ);
    const int mask = _mm256_movemask_pd(keep);
    accumulate(acc.s0, acc.c0, _mm256_and_pd(keep, v));
    const __m256i perm = _mm256_load_si256(reinterpret_cast<const __m256i*>(kPackTable[mask].data()));
    const __m256d packed_v =
        _mm256_castps_pd(_mm256_permutevar8x32_ps(_mm256_castpd_ps(v), perm));
    const __m256i packed_i = _mm256_permutevar8x32_epi32(ix, perm);
    // w + 3 <= r + 3 < n, and lanes r..r+3 are already in registers, so the
    // full-width store is in bounds and safe when the output aliases the input.
    _mm256_storeu_pd(out_vals + w, packed_v);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out_idx + w), packed_i);
    w += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(mask)));
  }
  CompensatedSum tail;
  for (; r < n; ++r) {
    const double v = vals[r];
    if (v > t) {
      tail.add(v);
      out_vals[w] = v;
      out_idx[w] = idx[r];
      ++w;
    }
  }
  return {acc.finish(tail), w};
}

// x - x is 0 for finite x and NaN otherwise.
bool all_finite_avx2(const double* x, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  __m256d ok = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d v = _mm256_loadu_pd(x + i);
    ok = _mm256_and_pd(ok, _mm256_cmp_pd(_mm256_sub_pd(v, v), zero, _CMP_EQ_OQ));
  }
  if (_mm256_movemask_pd(ok) != 0xF) return false;
  return detail::kScalarTable.all_finite(x + i, n - i);
}

}  // namespace

namespace detail {
const KernelTable kAvx2Table{
    Isa::avx2,          "avx2",       &sum_avx2,          &abs_sum_avx2,
    &sum_count_above_avx2, &min_max_avx2, &compact_above_avx2, &clamp_sum_avx2,
    &all_finite_avx2,
};
}  // namespace detail

}  // namespace simplexproj::kernels
