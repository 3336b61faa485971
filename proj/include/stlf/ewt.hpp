#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace stlf::ewt {

/// Transition polynomial x^4 (35 - 84x + 70x^2 - 20x^3), clamped to [0, 1]
/// outside the unit interval.
double beta(double x) noexcept;

/// Segment boundaries in normalized angular frequency, strictly increasing
/// inside (0, pi). N - 1 boundaries describe N sub-bands.
struct Boundaries {
    std::vector<double> omegas;
    /// Set when the spectrum had too few local maxima and (0, pi) was
    /// segmented uniformly instead.
    bool uniform_fallback = false;

    std::size_t band_count() const noexcept { return omegas.size() + 1; }
    void validate() const;
};

/// Boundaries from the num_components largest local maxima of the magnitude
/// spectrum over (0, pi): one boundary halfway between each pair of
/// consecutive retained maxima. Ties between equal peaks go to the lower
/// frequency.
Boundaries detect_boundaries(std::span<const double> window, std::size_t num_components);

/// Largest feasible transition ratio, min_n (w_{n+1} - w_n) / (w_{n+1} + w_n)
/// with pi appended as the final boundary.
double max_gamma(const Boundaries& boundaries);

/// Meyer-type filter bank: one scaling filter and one wavelet per band above
/// it. Filter responses are real, even and satisfy
///     phi_1(w)^2 + sum_n psi_n(w)^2 = 1.
class FilterBank {
public:
    static constexpr std::size_t kDefaultGridSize = 4096;

    /// gamma = nullopt picks half the feasible maximum. An explicit gamma
    /// above max_gamma() is a configuration error.
    FilterBank(Boundaries boundaries, std::optional<double> gamma,
               std::size_t grid_size = kDefaultGridSize);

    const Boundaries& boundaries() const noexcept { return boundaries_; }
    double gamma() const noexcept { return gamma_; }
    std::size_t filter_count() const noexcept { return boundaries_.band_count(); }
    std::size_t grid_size() const noexcept { return grid_.size(); }

    /// Response of filter `index` (0 = scaling, i = i-th wavelet) at angular
    /// frequency omega; |omega| beyond pi is folded back into [0, pi].
    double response(std::size_t index, double omega) const;

    /// Uniform grid over [0, pi] and the sampled responses on it.
    const std::vector<double>& grid() const noexcept { return grid_; }
    const std::vector<double>& sampled(std::size_t index) const { return sampled_.at(index); }

    /// Responses at the bins of a length-n DFT, one row per filter.
    std::vector<std::vector<double>> bin_responses(std::size_t n) const;

    /// CSV with columns omega, scaling, wavelet_1, ...
    void write_csv(std::ostream& os) const;

private:
    double scaling_response(double w) const;
    double wavelet_response(std::size_t n, double w) const;

    Boundaries boundaries_;
    double gamma_ = 0.0;
    std::vector<double> grid_;
    std::vector<std::vector<double>> sampled_;
};

/// Sub-series of one window: scaling component first, then the wavelet
/// components in ascending frequency.
struct Components {
    std::vector<std::vector<double>> sub_series;

    std::size_t count() const noexcept { return sub_series.size(); }
    std::size_t length() const noexcept { return sub_series.empty() ? 0 : sub_series.front().size(); }
};

Components decompose(std::span<const double> window, const FilterBank& bank);
std::vector<double> reconstruct(const Components& components, const FilterBank& bank);

}  // namespace stlf::ewt
