// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "semiq/pa_model.hpp"

#include "semiq/philox.hpp"

#include <algorithm>
#include <cmath>

namespace semiq {

namespace {

void require_sigma(double sigma)
{
    if (!std::isfinite(sigma) || std::abs(sigma) > 1.0) throw DomainError("sigma must lie in [-1, 1]");
}

void require_gain(double x, const char* what)
{
    if (!std::isfinite(x) || x < 0.0) throw DomainError(what);
}

std::complex<double> complex_normal(const Philox4x32& gen, std::uint64_t index, std::uint32_t stream)
{
    // CN(0, 1): each component has variance 1/2.
    const auto [a, b] = normal_pair(gen.block(index, stream));
    return {a * 0.70710678118654752440, b * 0.70710678118654752440};
}

} // namespace

void PaScenario::validate() const
{
    detail::require(std::isfinite(carrier_freq) && carrier_freq > 0.0, "carrier frequency must be > 0");
    detail::require(std::isfinite(antenna_sep_wavelengths) && antenna_sep_wavelengths > 0.0,
                    "antenna separation must be > 0");
    detail::require(std::isfinite(speed) && speed >= 0.0, "speed must be >= 0");
    detail::require(std::isfinite(delay) && delay >= 0.0, "delay must be >= 0");
    detail::require(std::isfinite(power) && power > 0.0, "power must be > 0");
    detail::require(kappa >= 0.0 && kappa <= 1.0, "kappa must lie in [0, 1]");
}

double effective_distance(const PaScenario& s)
{
    s.validate();
    return std::abs(s.antenna_sep() - s.speed * s.delay);
}

CorrelationState correlation_state(double d, double wavelength)
{
    detail::require(std::isfinite(d) && d >= 0.0, "distance must be >= 0");
    detail::require(std::isfinite(wavelength) && wavelength > 0.0, "wavelength must be > 0");
    CorrelationState c;
    c.effective_distance = d;
    const double j = std::clamp(bessel_j0(2.0 * kPi * d / wavelength), -1.0, 1.0);
    c.jakes_offdiag = j;
    // Phi = [[1, j], [j, 1]] has eigenvalues 1 +- j on (1, 1)/sqrt2 and (1, -1)/sqrt2.
    const double rp = std::sqrt(1.0 + j);
    const double rm = std::sqrt(1.0 - j);
    c.phi1 = 0.5 * (rp + rm);
    c.phi2 = 0.5 * (rp - rm);
    // phi1^2 - phi2^2 = sqrt(1 - j^2); only sigma^2 is used downstream.
    const double diff = c.phi1 * c.phi1 - c.phi2 * c.phi2;
    const double denom = std::sqrt(c.phi2 * c.phi2 + diff * diff);
    c.sigma = denom > 0.0 ? std::min(1.0, std::abs(diff) / denom) : 0.0;
    return c;
}

double correlation_sigma(double d, double wavelength)
{
    return correlation_state(d, wavelength).sigma;
}

CorrelationState correlation_state(const PaScenario& s)
{
    return correlation_state(effective_distance(s), s.wavelength());
}

double conditional_gain_cdf(double x, double g_hat, double sigma, const ToleranceConfig& tol)
{
    require_gain(x, "x must be finite and >= 0");
    require_gain(g_hat, "g_hat must be finite and >= 0");
    require_sigma(sigma);
    if (sigma == 0.0) return x >= g_hat ? 1.0 : 0.0;
    const double s = std::abs(sigma);
    return marcum_cdf(std::sqrt(2.0 * g_hat) / s, std::sqrt(2.0 * x) / s, tol);
}

double conditional_gain_pdf(double x, double g_hat, double sigma)
{
    require_gain(x, "x must be finite and >= 0");
    require_gain(g_hat, "g_hat must be finite and >= 0");
    require_sigma(sigma);
    if (sigma == 0.0) throw DomainError("sigma must be nonzero for a density");
    const double s2 = sigma * sigma;
    const double gap = std::sqrt(x) - std::sqrt(g_hat);
    return std::exp(-gap * gap / s2) * bessel_i0_scaled(2.0 * std::sqrt(x * g_hat) / s2) / s2;
}

EffectiveGain apply_estimation_error(double g_hat, double sigma, double kappa)
{
    require_gain(g_hat, "g_hat must be finite and >= 0");
    require_sigma(sigma);
    if (!(kappa >= 0.0 && kappa <= 1.0)) throw DomainError("kappa must lie in [0, 1]");
    if (kappa == 1.0) return {g_hat, sigma};
    const double k2 = kappa * kappa;
    return {k2 * g_hat, std::sqrt(k2 * sigma * sigma + 1.0 - k2)};
}

ChannelNoise draw_noise(std::uint64_t seed, std::uint64_t index)
{
    const Philox4x32 gen(seed);
    return {complex_normal(gen, index, 0), complex_normal(gen, index, 1), complex_normal(gen, index, 2)};
}

ChannelDraw compose_channel(const ChannelNoise& n, double sigma, double kappa)
{
    require_sigma(sigma);
    if (!(kappa >= 0.0 && kappa <= 1.0)) throw DomainError("kappa must lie in [0, 1]");
    const double s2 = sigma * sigma;
    const double keep = std::sqrt(1.0 - s2);
    std::complex<double> h;
    if (kappa == 1.0) {
        h = keep * n.h_hat + sigma * n.q;
    } else {
        h = kappa * keep * n.h_hat + kappa * sigma * n.q + std::sqrt(1.0 - kappa * kappa) * n.z;
    }
    return {n.h_hat, (1.0 - s2) * std::norm(n.h_hat), std::norm(h)};
}

ChannelDraw sample_channel(const PaScenario& s, const CorrelationState& c, std::uint64_t seed, std::uint64_t index)
{
    s.validate();
    return compose_channel(draw_noise(seed, index), c.sigma, s.kappa);
}

} // namespace semiq
