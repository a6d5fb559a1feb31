#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace trs {

inline constexpr const char* kVersion = "0.1.0";

// Error taxonomy. Everything user-facing derives from trs::Error so the CLI
// can map failures to exit codes in one place.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class PreprocessError : public Error {
public:
    using Error::Error;
};

// Segment is unusable for the requested transform (all-zero signal, zero
// R-amplitude sum, ...). Callers typically skip-and-log rather than abort.
class DegenerateError : public Error {
public:
    using Error::Error;
};

// Tensor shapes do not line up with the declared architecture.
class StructuralError : public Error {
public:
    using Error::Error;
};

// Non-finite loss or gradient during training.
class TrainingFault : public Error {
public:
    using Error::Error;
};

inline bool all_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

// splitmix64: used to derive independent, reproducible RNG streams from a
// tuple of integers (seed, epoch, batch, item, ...). The stream for a draw
// depends only on its key, never on evaluation order.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
    return splitmix64(a ^ (0x9e3779b97f4a7c15ULL + (b << 6) + (b >> 2) + b));
}

template <typename... Rest>
std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b, Rest... rest) {
    return hash_combine(hash_combine(a, b), static_cast<std::uint64_t>(rest)...);
}

// Small counter-based generator: each next() advances a splitmix64 walk.
// Cheap to construct per (seed, epoch, batch, item) key.
class StreamRng {
public:
    explicit StreamRng(std::uint64_t key) : state_(splitmix64(key)) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform in [lo, hi)
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

private:
    std::uint64_t state_;
};

// FNV-1a over a string; stable across platforms, used for config provenance
// hashes embedded in output artifacts.
inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

}  // namespace trs
