#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace sad {

std::string sha256_hex(const std::string& data);

std::string base64_encode(const std::string& data);
std::string base64_decode(const std::string& data);  // throws Error on bad input

constexpr std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string rfc3339_utc_now();

// RNG helpers. std::uniform_int_distribution is implementation-defined, so
// everything that must reproduce across platforms draws through these.
inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(rng() % n);
}

inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Fisher-Yates permutation of 0..n-1 from a fixed seed.
std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed);

// Runs fn(0..n-1) on up to `workers` threads. fn must not throw; callers
// that can fail record errors into their own per-index slots.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

std::string ascii_lower(std::string s);

}  // namespace sad
