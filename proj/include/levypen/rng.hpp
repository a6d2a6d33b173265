#pragma once

#include <cmath>
#include <cstdint>

namespace levypen {

// Stream purposes keep the draws of unrelated simulation stages statistically
// independent even when they interleave, and make replica streams insensitive
// to evaluation order.
enum class StreamPurpose : std::uint64_t {
    increments = 1,
    bridge = 2,
    clock = 3,
    sup_law = 4,
    post_max = 5,
    scratch = 6,
};

// Philox4x32-10 counter-based generator. A stream is keyed by
// (master seed, replica index, purpose); the running draw counter occupies the
// low 64 bits of the 128-bit counter, so distinct streams never overlap.
class Rng {
public:
    Rng(std::uint64_t master_seed, std::uint64_t replica, StreamPurpose purpose)
        : ctr0_(0), ctr1_(0), ctr2_(static_cast<std::uint32_t>(replica)),
          ctr3_(static_cast<std::uint32_t>(static_cast<std::uint64_t>(purpose) |
                                           (replica >> 32 << 8))),
          buf_pos_(4), have_cached_normal_(false), cached_normal_(0.0) {
        const std::uint64_t k = splitmix64(master_seed ^ 0x9e3779b97f4a7c15ull);
        key0_ = static_cast<std::uint32_t>(k);
        key1_ = static_cast<std::uint32_t>(k >> 32);
    }

    std::uint32_t next_u32() {
        if (buf_pos_ == 4) fill();
        return buf_[buf_pos_++];
    }

    std::uint64_t next_u64() {
        const std::uint64_t lo = next_u32();
        const std::uint64_t hi = next_u32();
        return (hi << 32) | lo;
    }

    // Uniform on (0, 1]: never returns 0, so log(u) is always finite.
    double uniform01() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1p-53;
    }

    // Uniform on (-1, 1).
    double uniform_sym() { return 2.0 * uniform01() - 1.0; }

    // Standard normal, Marsaglia polar method with one cached value.
    double normal() {
        if (have_cached_normal_) {
            have_cached_normal_ = false;
            return cached_normal_;
        }
        double u, v, s;
        do {
            u = uniform_sym();
            v = uniform_sym();
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double r = std::sqrt(-2.0 * std::log(s) / s);
        cached_normal_ = v * r;
        have_cached_normal_ = true;
        return u * r;
    }

    // Standard exponential (mean 1).
    double exponential() { return -std::log(uniform01()); }

    // Standard symmetric Cauchy.
    double cauchy() { return std::tan(3.14159265358979323846 * (uniform01() - 0.5)); }

    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

private:
    static void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                        std::uint32_t& lo) {
        const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
        hi = static_cast<std::uint32_t>(p >> 32);
        lo = static_cast<std::uint32_t>(p);
    }

    void fill() {
        std::uint32_t c0 = ctr0_, c1 = ctr1_, c2 = ctr2_, c3 = ctr3_;
        std::uint32_t k0 = key0_, k1 = key1_;
        for (int round = 0; round < 10; ++round) {
            std::uint32_t hi0, lo0, hi1, lo1;
            mulhilo(0xD2511F53u, c0, hi0, lo0);
            mulhilo(0xCD9E8D57u, c2, hi1, lo1);
            const std::uint32_t n0 = hi1 ^ c1 ^ k0;
            const std::uint32_t n1 = lo1;
            const std::uint32_t n2 = hi0 ^ c3 ^ k1;
            const std::uint32_t n3 = lo0;
            c0 = n0; c1 = n1; c2 = n2; c3 = n3;
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        buf_[0] = c0; buf_[1] = c1; buf_[2] = c2; buf_[3] = c3;
        buf_pos_ = 0;
        if (++ctr0_ == 0) ++ctr1_;
    }

    std::uint32_t key0_, key1_;
    std::uint32_t ctr0_, ctr1_, ctr2_, ctr3_;
    std::uint32_t buf_[4];
    int buf_pos_;
    bool have_cached_normal_;
    double cached_normal_;
};

}  // namespace levypen
