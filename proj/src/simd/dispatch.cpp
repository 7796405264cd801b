#include "bergman/errors.hpp"
#include "bergman/simd/kernels.hpp"

#include <string>

namespace bergman::simd {
namespace {

thread_local const KernelTable* override_table = nullptr;

const KernelTable& select_best() {
  if (isa_supported(Isa::avx2)) return *avx2::table();
  if (isa_supported(Isa::neon)) return *neon::table();
  return scalar::table();
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return avx2::table() != nullptr && __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon: return neon::table() != nullptr;
  }
  return false;
}

const KernelTable& table_for(Isa isa) {
  if (!isa_supported(isa)) {
    throw CapacityError("instruction set '" + std::string(isa_name(isa)) +
                        "' is not available on this host");
  }
  switch (isa) {
    case Isa::avx2: return *avx2::table();
    case Isa::neon: return *neon::table();
    default: return scalar::table();
  }
}

const KernelTable& active() {
  if (override_table != nullptr) return *override_table;
  static const KernelTable& best = select_best();
  return best;
}

ScopedIsa::ScopedIsa(Isa isa) : previous_(override_table) { override_table = &table_for(isa); }
ScopedIsa::~ScopedIsa() { override_table = previous_; }

}  // namespace bergman::simd
