#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "stlf/series.hpp"

namespace testsupport {

inline constexpr double kPi = std::numbers::pi;

// Half-hourly load-like series: daily cycle, weekly modulation, 5 % noise.
inline std::vector<double> synthetic_load(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i);
        const double weekly = std::sin(2.0 * kPi * t / 336.0);
        const double clean = 1000.0 + 300.0 * std::sin(2.0 * kPi * t / 48.0) * (1.0 + 0.3 * weekly) + 100.0 * weekly;
        x[i] = clean * (1.0 + 0.05 * noise(rng));
    }
    return x;
}

inline std::vector<double> uniform_values(std::size_t n, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0)
{
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> out(n);
    for (auto& v : out) v = u(rng);
    return out;
}

// O(n^2) DFT, used as an FFT-free reference.
inline std::vector<std::complex<double>> naive_dft(const std::vector<std::complex<double>>& x, bool inverse)
{
    const std::size_t n = x.size();
    const double sign = inverse ? 1.0 : -1.0;
    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double ang = sign * 2.0 * kPi * static_cast<double>((k * j) % n) / static_cast<double>(n);
            acc += x[j] * std::polar(1.0, ang);
        }
        out[k] = inverse ? acc / static_cast<double>(n) : acc;
    }
    return out;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace testsupport
