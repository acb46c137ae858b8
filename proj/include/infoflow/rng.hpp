#pragma once

#include <cstdint>
#include <vector>

namespace infoflow {

// Self-contained splitmix64 generator. Standard-library distributions are
// implementation defined, so seeded runs would not reproduce across
// toolchains; this keeps reports byte-identical for a given seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // Rejection-free modulo is fine at desk scale; bias is < 2^-50 for n < 2^14.
        return next_u64() % n;
    }

    // Uniform double in [0, 1).
    double real() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform double in (0, 1].
    double positive_real() {
        return 1.0 - real();
    }

    bool coin() { return (next_u64() & 1u) != 0; }

    // k positive weights normalized to sum 1.
    std::vector<double> simplex(std::size_t k) {
        std::vector<double> w(k);
        double total = 0.0;
        for (auto& x : w) {
            x = positive_real();
            total += x;
        }
        for (auto& x : w) x /= total;
        return w;
    }

private:
    std::uint64_t state_;
};

} // namespace infoflow
