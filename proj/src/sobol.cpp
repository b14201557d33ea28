#include "plr/sobol.hpp"

#include <bit>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "plr/io.hpp"
#include "parallel.hpp"

namespace plr {

namespace {

[[noreturn]] void fail_line(int lineno, const std::string& what) {
  throw std::runtime_error("sobol: line " + std::to_string(lineno) + ": " + what);
}

bool blank(const std::string& line) {
  for (char c : line) {
    if (c != ' ' && c != '\t' && c != '\r') return false;
  }
  return true;
}

}  // namespace

DirectionTable load_direction_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("sobol: cannot open direction file: " + path);

  DirectionTable dt;
  dt.source_sha256 = sha256_file(path);

  std::string line;
  int lineno = 0;
  if (std::getline(in, line)) ++lineno;  // header row: "d s a m_i"
  std::uint64_t expected_d = 2;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    std::istringstream row(line);
    std::uint64_t d = 0;
    int degree = 0;
    std::uint64_t a = 0;
    if (!(row >> d >> degree >> a)) fail_line(lineno, "expected \"d s a m_i\" integers");
    if (d != expected_d) {
      fail_line(lineno, "dimension " + std::to_string(d) + " out of order (expected " +
                            std::to_string(expected_d) + ")");
    }
    if (degree < 1 || degree > 31) fail_line(lineno, "polynomial degree out of range [1, 31]");
    if (degree >= 1 && (a >> (degree - 1)) != 0) {
      fail_line(lineno, "polynomial code has more than degree-1 bits");
    }
    DirectionEntry e;
    e.degree = degree;
    e.a = static_cast<std::uint32_t>(a);
    e.m_init.resize(static_cast<std::size_t>(degree));
    for (int k = 1; k <= degree; ++k) {
      std::uint64_t mk = 0;
      if (!(row >> mk)) fail_line(lineno, "truncated row: expected " + std::to_string(degree) +
                                              " direction integers");
      if ((mk & 1) == 0) fail_line(lineno, "direction integer m_" + std::to_string(k) +
                                               " must be odd");
      if (mk >= (std::uint64_t{1} << k)) {
        fail_line(lineno, "direction integer m_" + std::to_string(k) + " must be below 2^" +
                              std::to_string(k));
      }
      e.m_init[k - 1] = static_cast<std::uint32_t>(mk);
    }
    std::string extra;
    if (row >> extra) fail_line(lineno, "trailing tokens after the direction integers");
    dt.entries.push_back(std::move(e));
    ++expected_d;
  }
  return dt;
}

PointSet sobol_points(const DirectionTable& dt, int m, int s) {
  if (m < 1 || m > 31) throw std::invalid_argument("sobol: m out of range [1, 31]");
  if (s < 1) throw std::invalid_argument("sobol: s must be at least 1");
  if (s > dt.dimensions()) {
    throw std::invalid_argument("sobol: request for " + std::to_string(s) +
                                " dimensions but the table provides " +
                                std::to_string(dt.dimensions()));
  }
  const std::size_t n = std::size_t{1} << m;
  PointSet ps;
  ps.n = n;
  ps.s = s;
  ps.precision_bits = m;
  ps.numer.assign(n * static_cast<std::size_t>(s), 0);

  parallel_for_blocks(static_cast<std::size_t>(s), [&](std::size_t jidx) {
    const int j = static_cast<int>(jidx) + 1;
    // Direction integers m_1..m_m for this dimension, extended past the
    // initial values by the primitive-polynomial recurrence.
    std::vector<std::uint64_t> mv(static_cast<std::size_t>(m));
    if (j == 1) {
      for (int k = 1; k <= m; ++k) mv[k - 1] = 1;
    } else {
      const DirectionEntry& e = dt.entries[static_cast<std::size_t>(j) - 2];
      const int d = e.degree;
      for (int k = 1; k <= m && k <= d; ++k) mv[k - 1] = e.m_init[k - 1];
      for (int k = d + 1; k <= m; ++k) {
        std::uint64_t v = mv[k - d - 1] ^ (mv[k - d - 1] << d);
        for (int i = 1; i <= d - 1; ++i) {
          if ((e.a >> (d - 1 - i)) & 1) v ^= mv[k - i - 1] << i;
        }
        mv[k - 1] = v;
      }
    }
    // Column k of the generating matrix as an m-digit numerator.
    std::vector<std::uint64_t> v(static_cast<std::size_t>(m));
    for (int k = 1; k <= m; ++k) v[k - 1] = mv[k - 1] << (m - k);
    // Point n is the XOR of the columns picked by n's binary digits.
    const std::size_t stride = static_cast<std::size_t>(s);
    for (std::size_t i = 1; i < n; ++i) {
      ps.numer[i * stride + jidx] =
          ps.numer[(i & (i - 1)) * stride + jidx] ^ v[std::countr_zero(i)];
    }
  });
  return ps;
}

}
