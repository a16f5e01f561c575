#include "wigner/matrix_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace wigner {

namespace {

constexpr std::array<char, 4> kMagic{'W', 'G', 'N', 'R'};

template <typename T>
void put(std::ostream& out, T value) {
  static_assert(sizeof(T) == 4);
  std::uint32_t bits;
  std::memcpy(&bits, &value, 4);
  const std::array<char, 4> bytes{static_cast<char>(bits & 0xff), static_cast<char>((bits >> 8) & 0xff),
                                  static_cast<char>((bits >> 16) & 0xff), static_cast<char>((bits >> 24) & 0xff)};
  out.write(bytes.data(), 4);
}

template <typename T>
T get(std::istream& in) {
  std::array<unsigned char, 4> bytes{};
  if (!in.read(reinterpret_cast<char*>(bytes.data()), 4)) throw std::invalid_argument("truncated matrix file");
  const std::uint32_t bits = bytes[0] | (bytes[1] << 8) | (bytes[2] << 16) | (static_cast<std::uint32_t>(bytes[3]) << 24);
  T value;
  std::memcpy(&value, &bits, 4);
  return value;
}

}  // namespace

void write_matrices(std::ostream& out, const std::vector<HermitianSample>& matrices) {
  const int n = matrices.empty() ? 0 : matrices.front().n();
  for (const auto& m : matrices) {
    if (m.n() != n) throw std::invalid_argument("all matrices in a file must share n");
  }
  const bool all_real = std::all_of(matrices.begin(), matrices.end(), [](const auto& m) { return m.is_real(); });
  out.write(kMagic.data(), 4);
  put<std::uint32_t>(out, kMatrixFormatVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(n));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(matrices.size()));
  put<std::uint32_t>(out, all_real ? 1u : 0u);
  for (const auto& m : matrices) {
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c <= r; ++c) {
        put<float>(out, static_cast<float>(m(r, c).real()));
        put<float>(out, static_cast<float>(m(r, c).imag()));
      }
    }
  }
  if (!out) throw std::runtime_error("failed to write matrix stream");
}

std::vector<HermitianSample> read_matrices(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), 4) || magic != kMagic) throw std::invalid_argument("not a WGNR matrix file");
  const auto version = get<std::uint32_t>(in);
  if (version != kMatrixFormatVersion) throw std::invalid_argument("unsupported matrix file version " + std::to_string(version));
  const auto n = get<std::uint32_t>(in);
  const auto count = get<std::uint32_t>(in);
  const auto flags = get<std::uint32_t>(in);
  if (n > 1u << 15) throw std::invalid_argument("matrix size in file is implausibly large");
  std::vector<HermitianSample> out;
  out.reserve(count);
  for (std::uint32_t k = 0; k < count; ++k) {
    HermitianSample m(static_cast<int>(n));
    for (int r = 0; r < static_cast<int>(n); ++r) {
      for (int c = 0; c <= r; ++c) {
        const double re = get<float>(in);
        const double im = get<float>(in);
        m.set(r, c, {re, (flags & 1u) ? 0.0 : im});
      }
    }
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace wigner
