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

#pragma once

#include "semiq/specfun.hpp"

#include <complex>
#include <cstdint>

namespace semiq {

inline constexpr double kSpeedOfLight = 299792458.0;

/// Physical configuration in SI units. Use the io helpers to build one
/// from GHz / km/h / ms / dB values.
struct PaScenario {
    double carrier_freq = 2.68e9;         // Hz
    double antenna_sep_wavelengths = 1.5; // d_a / lambda
    double speed = 0.0;                   // m/s
    double delay = 0.0;                   // s
    double power = 1.0;                   // linear, unit noise variance
    double kappa = 1.0;                   // estimation correlation in [0, 1]

    void validate() const;
    double wavelength() const { return kSpeedOfLight / carrier_freq; }
    double antenna_sep() const { return antenna_sep_wavelengths * wavelength(); }
};

struct CorrelationState {
    double effective_distance = 0.0; // m
    double sigma = 0.0;
    double jakes_offdiag = 1.0;      // J0(2 pi d / lambda)
    double phi1 = 0.0;               // diagonal of Phi^(1/2)
    double phi2 = 0.0;               // off-diagonal of Phi^(1/2)
};

struct ChannelDraw {
    std::complex<double> h_hat;
    double g_hat = 0.0; // (1 - sigma^2) |h_hat|^2
    double g = 0.0;     // |h|^2
};

/// Conditional distribution parameters after folding in estimation error.
struct EffectiveGain {
    double g_hat = 0.0;
    double sigma = 0.0;
};

/// |d_a - v delta| in metres.
double effective_distance(const PaScenario& s);

/// Jakes correlation, symmetric square root of Phi and the mixing weight
/// sigma (taken nonnegative) for mismatch distance d.
CorrelationState correlation_state(double d, double wavelength);
double correlation_sigma(double d, double wavelength);
CorrelationState correlation_state(const PaScenario& s);

/// CDF of g given g_hat: 1 - Q1(sqrt(2 g_hat) / sigma, sqrt(2 x) / sigma).
/// sigma == 0 is the point mass at g_hat.
double conditional_gain_cdf(double x, double g_hat, double sigma, const ToleranceConfig& tol = {});

/// Noncentral chi-square density of g given g_hat, sigma > 0.
double conditional_gain_pdf(double x, double g_hat, double sigma);

/// g_hat -> kappa^2 g_hat, sigma^2 -> kappa^2 sigma^2 + 1 - kappa^2.
EffectiveGain apply_estimation_error(double g_hat, double sigma, double kappa);

/// Unit-variance circular Gaussians (h_hat, q, z) for one slot.
struct ChannelNoise {
    std::complex<double> h_hat;
    std::complex<double> q;
    std::complex<double> z;
};

ChannelNoise draw_noise(std::uint64_t seed, std::uint64_t index);

/// h = kappa sqrt(1 - sigma^2) h_hat + kappa sigma q + sqrt(1 - kappa^2) z.
ChannelDraw compose_channel(const ChannelNoise& n, double sigma, double kappa);

/// Deterministic draw number `index` of the stream keyed by `seed`.
ChannelDraw sample_channel(const PaScenario& s, const CorrelationState& c, std::uint64_t seed,
                           std::uint64_t index = 0);

} // namespace semiq
