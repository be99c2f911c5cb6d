#pragma once

#include <cstdint>
#include <cstdlib>

namespace polymix {

// POLYMIX_BUDGET, when set to a positive integer, replaces the built-in
// cell and candidate budgets.
inline std::uint64_t budget_from_env(std::uint64_t fallback) {
  if (const char* s = std::getenv("POLYMIX_BUDGET")) {
    char* end = nullptr;
    auto v = std::strtoull(s, &end, 10);
    if (end != s && *end == '\0' && v > 0) return v;
  }
  return fallback;
}

}  // namespace polymix
