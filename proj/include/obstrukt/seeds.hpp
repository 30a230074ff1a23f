#pragma once

// Seed registry: one base seed, independent named streams derived from it.
//
// Streams are std::mt19937_64 engines keyed by splitmix64(base ^ fnv1a(name)).
// Bounded integers use rejection sampling on raw 64-bit output instead of
// std::uniform_int_distribution, whose algorithm differs between standard
// libraries; the same seed therefore yields the same maps everywhere.

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "obstrukt/errors.hpp"

namespace obstrukt {

inline constexpr std::uint64_t kDefaultSeed = 1;

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

class RandomStream {
public:
    explicit RandomStream(std::uint64_t key) : engine_(key) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [lo, hi].
    long long uniform(long long lo, long long hi)
    {
        if (hi < lo) throw InvalidInput("empty sampling range");
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<long long>(next());
        const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % span);
        std::uint64_t r;
        do r = next();
        while (r >= limit);
        return lo + static_cast<long long>(r % span);
    }

    /// Uniform index in [0, n).
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform(0, static_cast<long long>(n) - 1)); }

private:
    std::mt19937_64 engine_;
};

class SeedRegistry {
public:
    explicit SeedRegistry(std::uint64_t base = kDefaultSeed) : base_(base) {}

    /// Base seed from OBSTRUKT_SEED, else the default; an explicit value wins over both.
    static SeedRegistry from_environment(std::optional<std::uint64_t> explicit_seed = std::nullopt)
    {
        if (explicit_seed) return SeedRegistry(*explicit_seed);
        if (const char* env = std::getenv("OBSTRUKT_SEED")) {
            char* end = nullptr;
            const unsigned long long v = std::strtoull(env, &end, 10);
            if (end == env || *end != '\0') throw InvalidInput("OBSTRUKT_SEED is not a nonnegative integer");
            return SeedRegistry(v);
        }
        return SeedRegistry(kDefaultSeed);
    }

    std::uint64_t base() const { return base_; }

    RandomStream stream(std::string_view name) const { return RandomStream(key(name)); }
    std::uint64_t key(std::string_view name) const { return splitmix64(base_ ^ fnv1a(name)); }

private:
    std::uint64_t base_;
};

} // namespace obstrukt
