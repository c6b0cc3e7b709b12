#pragma once
#include <cmath>
#include <cstdint>
#include <random>

// Deterministic random helpers.  mt19937_64 has a mandated bit stream, and we
// derive doubles from the raw bits ourselves so identical seeds produce
// identical values regardless of the standard library's distribution
// implementations.

namespace qcam {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Uniform on [0, 1): top 53 bits of the generator output.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal via Box-Muller; one spare value cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    std::uint64_t integer(std::uint64_t n) { return gen_() % n; }  // small n only

    std::uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace qcam
