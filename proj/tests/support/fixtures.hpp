#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "swanson/swanson.hpp"

namespace fixtures {

inline swanson::FactorizationParams pstar() { return swanson::solve_forward(1.0, 1.0, 1.0); }

// Uniform on [lo, hi) from the raw 64-bit stream, identical on every platform.
class Draw {
public:
    explicit Draw(std::uint64_t seed) : gen_(seed) {}
    double operator()(double lo, double hi) {
        return lo + (hi - lo) * static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }
    int integer(int lo, int hi) { return lo + static_cast<int>(gen_() % (hi - lo + 1)); }

private:
    std::mt19937_64 gen_;
};

// Forward parameters with a random similarity gauge attached.
inline std::vector<swanson::Model> forward_models(int count, std::uint64_t seed = 2024) {
    Draw u(seed);
    std::vector<swanson::Model> out;
    for (int i = 0; i < count; ++i) {
        const auto fp = swanson::solve_forward(u(0.3, 3.0), u(0.2, 3.0), u(0.3, 2.5));
        double alpha = u(-1.0, 1.0);
        const double beta = u(-1.0, 1.0);
        if (alpha == beta) alpha += 0.5;
        out.push_back(swanson::Model::with_gauge(fp, alpha, beta, u(-4.0, -1.1)));
    }
    return out;
}

// (omega, alpha, beta) triples whose inverse solve is feasible.
inline constexpr std::array<std::array<double, 3>, 5> kInverseInputs{{
    {13.8897, -5.00882, -7.81023},
    {-1.00936, 0.547608, -6.63710},
    {-1.61635, 1.02341, -7.91450},
    {1.44923, -9.51183, 2.92878},
    {6.97067, -5.49876, -1.75508},
}};

inline std::vector<swanson::Model> inverse_models() {
    std::vector<swanson::Model> out;
    for (const auto& t : kInverseInputs) {
        const swanson::ModelParams mp{t[0], t[1], t[2], 0.0};
        out.push_back(swanson::Model::inverse(swanson::solve_inverse(mp).params, mp));
    }
    return out;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

} // namespace fixtures
