#pragma once

#include <cstdint>
#include <cmath>
#include <initializer_list>
#include <string_view>

namespace ctrlgraph::rng {

// Counter-based generator: every draw is a pure function of (key, index).
// No state advances, so draws can be evaluated in any order, from any
// thread, and always agree bit for bit.

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// A stream is identified by a single 64-bit key obtained by folding the
// master seed with an arbitrary sequence of tag words (experiment id,
// dimension, trial index, substream purpose, ...).
struct Stream {
    std::uint64_t key = 0;

    std::uint64_t at(std::uint64_t index) const {
        std::uint64_t z = key + kGolden * (index + 1);
        return mix64(mix64(z) ^ (z >> 29));
    }

    // uniform in [0, 1) with 53 random bits
    double uniform_at(std::uint64_t index) const {
        return static_cast<double>(at(index) >> 11) * 0x1.0p-53;
    }

    bool bernoulli_at(std::uint64_t index, double p) const {
        return uniform_at(index) < p;
    }

    // uniform integer in [lo, hi], inclusive
    long long uniform_int_at(std::uint64_t index, long long lo, long long hi) const {
        const auto range = static_cast<unsigned long long>(hi - lo + 1);
        const auto x = static_cast<unsigned __int128>(at(index));
        return lo + static_cast<long long>((x * range) >> 64);
    }

    // standard normal via Box-Muller; consumes indices 2*index and 2*index+1
    double gaussian_at(std::uint64_t index) const {
        const double u1 = (static_cast<double>(at(2 * index)) + 1.0) * 0x1.0p-64;
        const double u2 = uniform_at(2 * index + 1);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925 * u2);
    }
};

inline std::uint64_t fold(std::uint64_t key, std::uint64_t word) {
    return mix64(key + kGolden + word);
}

inline std::uint64_t fold(std::uint64_t key, std::string_view tag) {
    for (unsigned char c : tag) key = fold(key, c);
    return key;
}

// derive_stream(master, "edges", n, trial) and friends
template <class... Tags>
Stream derive_stream(std::uint64_t master_seed, Tags... tags) {
    std::uint64_t key = mix64(master_seed ^ kGolden);
    ((key = fold(key, tags)), ...);
    return Stream{key};
}

// Stateful convenience wrapper for consumers that just want "the next draw".
class Sampler {
public:
    explicit Sampler(Stream s) : stream_(s) {}

    std::uint64_t next_u64() { return stream_.at(cursor_++); }
    double uniform() { return stream_.uniform_at(cursor_++); }
    bool bernoulli(double p) { return stream_.bernoulli_at(cursor_++, p); }
    long long uniform_int(long long lo, long long hi) { return stream_.uniform_int_at(cursor_++, lo, hi); }
    double gaussian() { double g = stream_.gaussian_at(cursor_); ++cursor_; return g; }

    const Stream& stream() const { return stream_; }

private:
    Stream stream_;
    std::uint64_t cursor_ = 0;
};

}  // namespace ctrlgraph::rng
