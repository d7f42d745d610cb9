#pragma once

#include <cstdint>
#include <string_view>

namespace qubodec {

/// Stateless 64-bit mix (splitmix64 finalizer). Used to derive independent
/// RNG streams from structured keys so that stream identity never depends on
/// scheduling order, worker count, or how many sibling streams exist.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Order-sensitive combiner: mix64(a, b) != mix64(b, a) in general.
inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  return splitmix64(a ^ (b * 0x9e3779b97f4a7c15ULL + 0x7f4a7c15ULL));
}

/// FNV-1a, pinned here (rather than std::hash) so derived seeds are stable
/// across standard libraries and builds.
inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace qubodec
