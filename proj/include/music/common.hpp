#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace music {

// ============================================================================
// Deterministic RNG
//
// Thin wrappers around a fixed xoshiro256** stream so that every draw in the
// project is reproducible across compilers and standard libraries (the
// std::*_distribution classes are implementation-defined).
// ============================================================================

class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    // splitmix64 expansion of the seed into the xoshiro state
    std::uint64_t x = seed;
    for (auto& s : state_) {
      x += 0x9e3779b97f4a7c15ULL;
      std::uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      s = z ^ (z >> 31);
    }
  }

  std::uint64_t next_u64() {
    auto rotl = [](std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double strictly inside (0, 1).
  double uniform_open() {
    double u;
    do {
      u = uniform();
    } while (u <= 0.0);
    return u;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n) by rejection (unbiased).
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % n;
  }

  /// Standard normal via Box-Muller (uses two uniforms per pair, caches one).
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = uniform_open();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  /// Serialize / restore the full generator state (for training resume).
  std::string save_state() const {
    std::string s;
    for (auto v : state_) s += std::to_string(v) + " ";
    s += have_cached_ ? "1 " : "0 ";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%a", cached_);
    s += buf;
    return s;
  }

  void load_state(const std::string& s) {
    std::istringstream is(s);
    for (auto& v : state_) is >> v;
    int hc = 0;
    is >> hc;
    have_cached_ = hc != 0;
    std::string hex;
    is >> hex;
    cached_ = hex.empty() ? 0.0 : std::strtod(hex.c_str(), nullptr);
    if (!is) throw std::runtime_error("Rng::load_state: malformed state string");
  }

 private:
  std::uint64_t state_[4] = {};
  bool have_cached_ = false;
  double cached_ = 0.0;
};

/// Derive an independent child seed from (seed, stream tags).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ seed;
  auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  mix(a);
  mix(b);
  mix(seed);
  return h;
}

// ============================================================================
// Content hashing (FNV-1a, 64 bit) for manifests and resumability checks
// ============================================================================

inline std::uint64_t fnv1a(std::span<const std::uint8_t> bytes,
                           std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t hash_bytes(const void* data, std::size_t n,
                                std::uint64_t h = 0xcbf29ce484222325ULL) {
  return fnv1a({static_cast<const std::uint8_t*>(data), n}, h);
}

inline std::uint64_t hash_string(const std::string& s) {
  return hash_bytes(s.data(), s.size());
}

std::uint64_t hash_file(const std::string& path);

/// Hash of a CSV file with the named column masked out (used for history
/// files whose wall-time column is not reproducible).
std::uint64_t hash_csv_excluding(const std::string& path, const std::string& column);

inline std::string hash_hex(std::uint64_t h) {
  char buf[19];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ============================================================================
// Little-endian binary IO for float64 payloads
// ============================================================================

static_assert(sizeof(double) == 8, "IEEE double required");

inline bool host_is_little_endian() {
  const std::uint16_t probe = 1;
  std::uint8_t b;
  std::memcpy(&b, &probe, 1);
  return b == 1;
}

void write_f64_le(std::ostream& os, std::span<const double> values);
void read_f64_le(std::istream& is, std::span<double> values);

void write_f64_file(const std::string& path, std::span<const double> values);
std::vector<double> read_f64_file(const std::string& path);

}  // namespace music
