#include "stlf/ewt.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <ostream>
#include <sstream>

#include <unsupported/Eigen/FFT>

#include "stlf/errors.hpp"

namespace stlf::ewt {

namespace {

constexpr double kPi = std::numbers::pi;

using Spectrum = std::vector<std::complex<double>>;

// Peaks below this fraction of the largest magnitude are round-off, not signal.
constexpr double kPeakFloor = 1e-12;

Spectrum forward(std::span<const double> x)
{
    Eigen::FFT<double> fft;
    std::vector<double> in(x.begin(), x.end());
    Spectrum out;
    fft.fwd(out, in);
    return out;
}

Spectrum inverse(const Spectrum& spectrum)
{
    Eigen::FFT<double> fft;
    Spectrum out;
    fft.inv(out, spectrum);
    return out;
}

double fold(double omega)
{
    double w = std::fmod(std::abs(omega), 2.0 * kPi);
    return w > kPi ? 2.0 * kPi - w : w;
}

double bin_omega(std::size_t k, std::size_t n)
{
    const std::size_t m = std::min(k, n - k);
    return 2.0 * kPi * static_cast<double>(m) / static_cast<double>(n);
}

// Real part of an inverse transform; the imaginary residual must be round-off.
std::vector<double> real_part(const Spectrum& z, double scale)
{
    std::vector<double> out(z.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        out[i] = z[i].real();
        worst = std::max(worst, std::abs(z[i].imag()));
    }
    if (worst > 1e-10 * std::max(1.0, scale)) {
        std::ostringstream os;
        os << "imaginary residual " << worst << " after filtering exceeds tolerance";
        throw NumericalError(os.str());
    }
    return out;
}

double max_abs(std::span<const double> x)
{
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

double beta(double x) noexcept
{
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double x2 = x * x;
    return x2 * x2 * (35.0 - 84.0 * x + 70.0 * x2 - 20.0 * x2 * x);
}

void Boundaries::validate() const
{
    double prev = 0.0;
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        const double w = omegas[i];
        if (!std::isfinite(w) || w <= prev || w >= kPi) {
            throw ConfigError("boundary " + std::to_string(i) +
                              " must be finite, strictly increasing and inside (0, pi)");
        }
        prev = w;
    }
}

Boundaries detect_boundaries(std::span<const double> window, std::size_t num_components)
{
    if (num_components == 0) throw ConfigError("num_components must be at least 1");
    if (window.size() < 2 * num_components) {
        throw SizingError("window of length " + std::to_string(window.size()) + " cannot hold " +
                          std::to_string(num_components) + " components (need >= " +
                          std::to_string(2 * num_components) + ")");
    }
    for (double v : window) {
        if (!std::isfinite(v)) throw DataError("non-finite value in decomposition window");
    }
    Boundaries result;
    if (num_components == 1) return result;

    const std::size_t n = window.size();
    const Spectrum spec = forward(window);
    const std::size_t half = n / 2;
    std::vector<double> mag(half + 1);
    for (std::size_t k = 0; k <= half; ++k) mag[k] = std::abs(spec[k]);

    const double top = *std::max_element(mag.begin() + 1, mag.end());
    struct Peak {
        std::size_t bin;
        double magnitude;
    };
    std::vector<Peak> peaks;
    for (std::size_t k = 1; k + 1 <= half; ++k) {
        if (mag[k] > mag[k - 1] && mag[k] > mag[k + 1] && mag[k] > kPeakFloor * top) {
            peaks.push_back({k, mag[k]});
        }
    }

    if (peaks.size() < num_components) {
        result.uniform_fallback = true;
        for (std::size_t i = 1; i < num_components; ++i) {
            result.omegas.push_back(kPi * static_cast<double>(i) / static_cast<double>(num_components));
        }
        return result;
    }

    std::stable_sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) {
        if (a.magnitude != b.magnitude) return a.magnitude > b.magnitude;
        return a.bin < b.bin;
    });
    peaks.resize(num_components);
    std::sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) { return a.bin < b.bin; });
    for (std::size_t i = 0; i + 1 < peaks.size(); ++i) {
        const double mid_bin = 0.5 * static_cast<double>(peaks[i].bin + peaks[i + 1].bin);
        result.omegas.push_back(2.0 * kPi * mid_bin / static_cast<double>(n));
    }
    result.validate();
    return result;
}

double max_gamma(const Boundaries& boundaries)
{
    boundaries.validate();
    double bound = 1.0;
    const auto& w = boundaries.omegas;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double next = i + 1 < w.size() ? w[i + 1] : kPi;
        bound = std::min(bound, (next - w[i]) / (next + w[i]));
    }
    return bound;
}

FilterBank::FilterBank(Boundaries boundaries, std::optional<double> gamma, std::size_t grid_size)
    : boundaries_(std::move(boundaries))
{
    if (grid_size < 2) throw ConfigError("filter bank grid needs at least 2 points");
    const double bound = max_gamma(boundaries_);
    if (boundaries_.omegas.empty()) {
        gamma_ = gamma.value_or(0.0);
    } else if (!gamma) {
        gamma_ = 0.5 * bound;
    } else {
        gamma_ = *gamma;
        if (!(gamma_ > 0.0) || gamma_ > bound) {
            std::ostringstream os;
            os << "gamma " << gamma_ << " violates the transition constraint 0 < gamma <= " << bound;
            throw ConfigError(os.str());
        }
    }

    grid_.resize(grid_size);
    for (std::size_t i = 0; i < grid_size; ++i) {
        grid_[i] = kPi * static_cast<double>(i) / static_cast<double>(grid_size - 1);
    }
    sampled_.assign(filter_count(), std::vector<double>(grid_size));
    for (std::size_t f = 0; f < filter_count(); ++f) {
        for (std::size_t i = 0; i < grid_size; ++i) sampled_[f][i] = response(f, grid_[i]);
    }
}

double FilterBank::scaling_response(double w) const
{
    const auto& b = boundaries_.omegas;
    if (b.empty()) return 1.0;
    const double w1 = b.front();
    if (w <= (1.0 - gamma_) * w1) return 1.0;
    if (w >= (1.0 + gamma_) * w1) return 0.0;
    return std::cos(0.5 * kPi * beta((w - (1.0 - gamma_) * w1) / (2.0 * gamma_ * w1)));
}

// Band n (0-based) spans boundary n to boundary n + 1; the top band has no
// upper transition and stays open up to pi.
double FilterBank::wavelet_response(std::size_t n, double w) const
{
    const auto& b = boundaries_.omegas;
    const double lo = b[n];
    if (w <= (1.0 - gamma_) * lo) return 0.0;
    if (w < (1.0 + gamma_) * lo) {
        return std::sin(0.5 * kPi * beta((w - (1.0 - gamma_) * lo) / (2.0 * gamma_ * lo)));
    }
    if (n + 1 == b.size()) return 1.0;
    const double hi = b[n + 1];
    if (w <= (1.0 - gamma_) * hi) return 1.0;
    if (w >= (1.0 + gamma_) * hi) return 0.0;
    return std::cos(0.5 * kPi * beta((w - (1.0 - gamma_) * hi) / (2.0 * gamma_ * hi)));
}

double FilterBank::response(std::size_t index, double omega) const
{
    if (index >= filter_count()) {
        throw IndexError("filter index " + std::to_string(index) + " out of range");
    }
    const double w = fold(omega);
    return index == 0 ? scaling_response(w) : wavelet_response(index - 1, w);
}

std::vector<std::vector<double>> FilterBank::bin_responses(std::size_t n) const
{
    std::vector<std::vector<double>> out(filter_count(), std::vector<double>(n));
    for (std::size_t f = 0; f < filter_count(); ++f) {
        for (std::size_t k = 0; k < n; ++k) out[f][k] = response(f, bin_omega(k, n));
    }
    return out;
}

void FilterBank::write_csv(std::ostream& os) const
{
    os << "omega,scaling";
    for (std::size_t f = 1; f < filter_count(); ++f) os << ",wavelet_" << f;
    os << '\n';
    const auto old = os.precision(17);
    for (std::size_t i = 0; i < grid_.size(); ++i) {
        os << grid_[i];
        for (std::size_t f = 0; f < filter_count(); ++f) os << ',' << sampled_[f][i];
        os << '\n';
    }
    os.precision(old);
}

Components decompose(std::span<const double> window, const FilterBank& bank)
{
    if (window.size() < 2) throw SizingError("decomposition window needs at least 2 samples");
    for (std::size_t i = 0; i < window.size(); ++i) {
        if (!std::isfinite(window[i])) {
            throw DataError("non-finite value at window index " + std::to_string(i));
        }
    }
    const std::size_t n = window.size();
    const Spectrum spec = forward(window);
    const auto filters = bank.bin_responses(n);
    const double scale = max_abs(window);

    Components out;
    out.sub_series.reserve(filters.size());
    Spectrum filtered(n);
    for (const auto& f : filters) {
        for (std::size_t k = 0; k < n; ++k) filtered[k] = spec[k] * f[k];
        out.sub_series.push_back(real_part(inverse(filtered), scale));
    }
    return out;
}

std::vector<double> reconstruct(const Components& components, const FilterBank& bank)
{
    if (components.count() != bank.filter_count()) {
        throw ShapeError("component count " + std::to_string(components.count()) +
                         " does not match filter count " + std::to_string(bank.filter_count()));
    }
    const std::size_t n = components.length();
    if (n < 2) throw ShapeError("components must hold at least 2 samples");
    for (const auto& c : components.sub_series) {
        if (c.size() != n) throw ShapeError("components have mismatched lengths");
    }
    const auto filters = bank.bin_responses(n);
    Spectrum acc(n);
    double scale = 0.0;
    for (std::size_t f = 0; f < filters.size(); ++f) {
        const auto& c = components.sub_series[f];
        scale = std::max(scale, max_abs(c));
        const Spectrum spec = forward(c);
        for (std::size_t k = 0; k < n; ++k) acc[k] += spec[k] * filters[f][k];
    }
    return real_part(inverse(acc), scale);
}

}  // namespace stlf::ewt
