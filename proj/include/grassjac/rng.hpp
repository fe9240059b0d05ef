#pragma once

#include <cstdint>
#include <string_view>

namespace grassjac {

// Deterministic splitmix64 stream. We do not use <random> distributions:
// their output is implementation-defined and every report must replay
// byte-identically from its seed on any platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, n), n > 0, by rejection
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = n * ((~0ull) / n);
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    // uniform integer in [lo, hi], lo <= hi
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // derive an independent child stream for a named purpose
    Rng fork(std::string_view tag) const {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (char c : tag) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ull;
        }
        Rng child(state_ ^ h);
        child.next_u64();
        return child;
    }

    Rng fork(std::string_view tag, std::uint64_t index) const {
        Rng child = fork(tag);
        child.state_ ^= 0x6a09e667f3bcc909ull * (index + 1);
        child.next_u64();
        return child;
    }

private:
    std::uint64_t state_;
};

} // namespace grassjac
