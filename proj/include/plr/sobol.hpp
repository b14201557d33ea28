#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "plr/lattice.hpp"

namespace plr {

/// One direction-number row in the published Joe-Kuo text format: the
/// primitive polynomial degree, the code packing its middle coefficients
/// (most significant bit first), and the initial direction integers.
struct DirectionEntry {
  int degree = 0;
  std::uint32_t a = 0;
  std::vector<std::uint32_t> m_init;
};

struct DirectionTable {
  std::vector<DirectionEntry> entries;  // entry k drives dimension k + 2
  std::string source_sha256;

  /// Dimensions the table can serve; dimension 1 is built in.
  int dimensions() const { return static_cast<int>(entries.size()) + 1; }
};

/// Parses the Joe-Kuo format: a header line, then one "d s a m_1 .. m_s" row
/// per dimension d = 2, 3, ... in order. Direction integers must be odd and
/// m_k < 2^k. Parse and validation errors carry the 1-based line number.
DirectionTable load_direction_table(const std::string& path);

/// First 2^m points of the Sobol' sequence with coordinates truncated to m
/// digits. Dimension 1 is the van der Corput radical inverse. Requires
/// 1 <= m <= 31 and s within the table.
PointSet sobol_points(const DirectionTable& dt, int m, int s);

}
