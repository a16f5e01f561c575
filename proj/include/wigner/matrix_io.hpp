#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "wigner/ensembles.hpp"

namespace wigner {

/// Layout, little-endian: "WGNR", u32 version, u32 n, u32 count, u32 flags
/// (bit 0: every matrix is real), then per matrix the lower triangle
/// (row ≥ col) row by row as complex64 pairs (float32 re, float32 im).
inline constexpr std::uint32_t kMatrixFormatVersion = 1;

void write_matrices(std::ostream& out, const std::vector<HermitianSample>& matrices);

/// Throws std::invalid_argument on a malformed or truncated stream.
std::vector<HermitianSample> read_matrices(std::istream& in);

}  // namespace wigner
