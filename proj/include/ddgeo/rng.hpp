#pragma once

#include <cstdint>

#include "ddgeo/rational.hpp"

namespace ddgeo {

// Deterministic splitmix64 stream. The standard library generators are
// portable but its distributions are not, so sampling is spelled out here
// and every pinned value stays valid on any platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound); bound > 0. Rejection keeps it unbiased.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v % bound;
    }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

    // Independent child stream; distinct ids give distinct streams.
    Rng derive(std::uint64_t stream_id) const {
        Rng child(state_ ^ (0x9e3779b97f4a7c15ULL * (stream_id + 1)));
        child.next();
        return child;
    }

  private:
    std::uint64_t state_;
};

}  // namespace ddgeo
