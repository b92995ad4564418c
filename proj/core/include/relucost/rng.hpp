#ifndef RELUCOST_RNG_HPP
#define RELUCOST_RNG_HPP

#include <cmath>
#include <cstdint>

namespace relucost {

// splitmix64 step; used for seeding and for deriving independent stream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Mixes a tag into a seed, for deriving unrelated sub-seeds deterministically.
inline std::uint64_t seed_combine(std::uint64_t seed, std::uint64_t tag) {
    std::uint64_t sm = seed ^ (0xD1B54A32D192ED03ULL * (tag + 1));
    return splitmix64(sm);
}

// xoshiro256** with hand-rolled uniform/normal transforms. std::mt19937 plus the
// standard-library distributions would not give byte-identical output across
// standard library implementations, which the determinism contract requires.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    // Independent child stream; children with distinct indices do not overlap
    // with each other or with the parent in any realistic sample budget.
    Rng stream(std::uint64_t index) const {
        std::uint64_t sm = s_[0] ^ (0x9E3779B97F4A7C15ULL * (index + 1));
        sm ^= s_[1];
        return Rng(splitmix64(sm));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on [0,1) with 53 random bits.
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on {0, ..., n-1}, unbiased via rejection.
    std::uint64_t uniform_below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    // Standard normal via Box-Muller; second value cached.
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 == 0.0) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4];
    double cached_ = 0.0;
    bool have_cached_ = false;
};

}  // namespace relucost

#endif
