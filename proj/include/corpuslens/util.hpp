#ifndef CORPUSLENS_UTIL_HPP
#define CORPUSLENS_UTIL_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace corpuslens::util {

// Fixed-point decimal formatting, C locale, e.g. format_fixed(0.5, 6) == "0.500000".
std::string format_fixed(double value, int places);

// Shortest round-trip representation (used where full precision is required).
std::string format_full(double value);

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
// Writes with LF endings exactly as given; creates parent directories.
void write_file(const std::filesystem::path& path, std::string_view content);

// Runs fn(i) for i in [0, n) on up to `threads` workers. Results must be
// written to disjoint slots; iteration order inside a worker is ascending.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

// Worker cap: explicit value if > 0, else CORPUS_LENS_THREADS env var, else
// hardware concurrency.
unsigned resolve_threads(unsigned requested);

// splitmix64; deterministic across platforms, used everywhere randomness
// feeds an artifact.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound). bound must be > 0.
    std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }

    // Uniform double in [0, 1).
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller.
    double next_gaussian();

  private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// FNV-1a 64-bit with a seed mix; stable across platforms.
std::uint64_t hash64(std::string_view s, std::uint64_t seed);

}  // namespace corpuslens::util

#endif
