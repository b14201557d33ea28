#pragma once

#include <cstdint>

namespace plr::detail {

/// Numerator of v_m(w/p) for an already reduced w (deg w < m = deg p).
/// Synthetic division, no validation; callers hold the rule invariants.
inline std::uint64_t vm_of_reduced(std::uint64_t w, std::uint64_t pmask, int m) {
  std::uint64_t r = w;
  std::uint64_t num = 0;
  for (int l = 0; l < m; ++l) {
    r <<= 1;
    num <<= 1;
    if ((r >> m) & 1) {
      r ^= pmask;
      num |= 1;
    }
  }
  return num;
}

}
