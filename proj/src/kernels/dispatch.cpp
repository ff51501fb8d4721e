#include "simplexproj/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace simplexproj::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(SIMPLEXPROJ_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable* pick_default() {
  if (const char* env = std::getenv("SIMPLEXPROJ_ISA")) {
    const std::string want(env);
    if (want == "scalar") return &detail::kScalarTable;
    if (want == "avx2" && supported(Isa::avx2)) return table(Isa::avx2);
  }
  if (supported(Isa::avx2)) return table(Isa::avx2);
  return &detail::kScalarTable;
}

std::atomic<const KernelTable*>& slot() {
  static std::atomic<const KernelTable*> current{pick_default()};
  return current;
}

}  // namespace

const KernelTable* table(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return &detail::kScalarTable;
    case Isa::avx2:
#if defined(SIMPLEXPROJ_HAVE_AVX2)
      return cpu_has_avx2() ? &detail::kAvx2Table : nullptr;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

bool supported(Isa isa) { return table(isa) != nullptr; }

const KernelTable& active() { return *slot().load(std::memory_order_acquire); }

void force(Isa isa) {
  const KernelTable* t = table(isa);
  if (t == nullptr) {
    throw std::runtime_error("kernel ISA not available: " + std::string(to_string(isa)));
  }
  slot().store(t, std::memory_order_release);
}

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace simplexproj::kernels
