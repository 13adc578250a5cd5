#include <atomic>
#include <cstdlib>
#include <string>

#include "chiral_casimir/errors.hpp"
#include "chiral_casimir/kernels.hpp"

namespace chiral_casimir::kernels {

namespace {

const KernelTable* choose_default() {
  const char* env = std::getenv("CHIRAL_CASIMIR_SIMD");
  const std::string want = env ? env : "auto";
  if (want == "scalar") {
    return &scalar_table();
  }
  const KernelTable* avx2 = avx2_table();
  if (avx2 != nullptr && cpu_supports_avx2()) {
    return avx2;
  }
  return &scalar_table();
}

std::atomic<const KernelTable*>& slot() {
  static std::atomic<const KernelTable*> table{choose_default()};
  return table;
}

}  // namespace

bool cpu_supports_avx2() {
#if defined(__GNUC__) && (defined(__x86_64__) || defined(__i386__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& active() { return *slot().load(std::memory_order_acquire); }

void set_backend(Backend backend) {
  if (backend == Backend::scalar) {
    slot().store(&scalar_table(), std::memory_order_release);
    return;
  }
  const KernelTable* avx2 = avx2_table();
  if (avx2 == nullptr || !cpu_supports_avx2()) {
    throw DomainError("set_backend: AVX2 kernels unavailable on this build or CPU");
  }
  slot().store(avx2, std::memory_order_release);
}

std::string_view backend_name(Backend backend) {
  switch (backend) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace chiral_casimir::kernels
