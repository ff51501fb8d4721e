#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

namespace simplexproj::detail {

// Stable sort of [first, last) by key(e) descending; equal keys keep their
// input order. One counting pass scatters the entries into value-range
// buckets, each bucket is then sorted in cache. Keys must be finite.
template <typename T, typename KeyFn>
void sort_descending(T* first, T* last, KeyFn key) {
  const auto n = static_cast<std::size_t>(last - first);
  auto greater = [&](const T& a, const T& b) { return key(a) > key(b); };
  if (n < 256) {
    std::stable_sort(first, last, greater);
    return;
  }
  double lo = key(first[0]);
  double hi = lo;
  for (std::size_t i = 1; i < n; ++i) {
    const double x = key(first[i]);
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  if (!(hi > lo)) return;  // all keys equal

  const std::size_t buckets = n / 32;
  const double scale = static_cast<double>(buckets) / (hi - lo);
  // Rounding is monotone, so larger keys never land in a later bucket.
  auto bucket_of = [&](double x) {
    const double pos = (hi - x) * scale;
    return std::min(buckets - 1, static_cast<std::size_t>(pos));
  };

  std::vector<std::size_t> ids(n);
  std::vector<std::size_t> offsets(buckets + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    ids[i] = bucket_of(key(first[i]));
    ++offsets[ids[i] + 1];
  }
  for (std::size_t b = 0; b < buckets; ++b) offsets[b + 1] += offsets[b];
  std::vector<T> out(n);
  {
    std::vector<std::size_t> next(offsets.begin(), offsets.end() - 1);
    for (std::size_t i = 0; i < n; ++i) out[next[ids[i]]++] = first[i];
  }
  for (std::size_t b = 0; b < buckets; ++b) {
    T* s = out.data() + offsets[b];
    T* e = out.data() + offsets[b + 1];
    if (e - s <= 32) {
      for (T* it = s + 1; it < e; ++it) {  // insertion sort, stable
        T v = *it;
        T* j = it;
        for (; j > s && greater(v, *(j - 1)); --j) *j = *(j - 1);
        *j = v;
      }
    } else {
      std::stable_sort(s, e, greater);
    }
  }
  std::copy(out.begin(), out.end(), first);
}

}  // namespace simplexproj::detail
