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

#include "semiq/semilinear.hpp"
#include "semiq/specfun.hpp"

#include <string_view>

namespace semiq {

enum class Policy { Lemma4Approx, ExactSearch, NoAdaptation, Genie };

std::string_view to_string(Policy p);
Policy parse_policy(std::string_view name);

struct RateDecision {
    double rate = 0.0;               // npcu
    Policy policy = Policy::ExactSearch;
    double conditional_outage = 0.0;
    double closed_form_rate = 0.0;   // Lemma4 value before any fallback
    bool fallback = false;           // Lemma4 result replaced by the search
    bool degenerate = false;         // Lambert-W argument out of domain
};

/// rate * Q1(sqrt(2 g_hat)/sigma, sqrt(2 (e^rate - 1) / (P sigma^2))).
double instantaneous_throughput(double rate, double g_hat, double sigma, double power,
                                const ToleranceConfig& tol = {});

/// Probability that log(1 + g P) < rate given g_hat.
double conditional_outage(double rate, double g_hat, double sigma, double power,
                          const ToleranceConfig& tol = {});

/// Threshold beta(R) = sqrt(2 (e^R - 1) / (P sigma^2)) on the Marcum axis.
double rate_to_beta(double rate, double sigma, double power);

/// The Lambert-W rate 2 W(y) - 2 with
/// y = (1 + o1 o2 - o3) e sqrt(2 P sigma^2) / (2 o1), clamped at 0.
/// Sets degenerate when y is outside the domain of W0.
double lemma4_closed_form(const SemiLinearFit& fit, double sigma, double power, bool* degenerate = nullptr);

/// Closed-form rate; when beta(R) falls outside [c1, c2] of the fit the
/// exact search result is returned instead and `fallback` is set.
RateDecision optimal_rate_lemma4(double g_hat, double sigma, double power, const SemiLinearFit& fit,
                                 const ToleranceConfig& tol = {});
RateDecision optimal_rate_lemma4(double g_hat, double sigma, double power,
                                 FitVariant variant = FitVariant::Corollary2, const ToleranceConfig& tol = {});

/// Maximizer of the instantaneous throughput over R >= 0. The maximizer is
/// bracketed on [0, ln(1 + P (g_hat + 10 sigma sqrt(g_hat + 1)))] and
/// refined as the root of the derivative. sigma == 0 gives ln(1 + P g_hat).
RateDecision optimal_rate_exact(double g_hat, double sigma, double power, const ToleranceConfig& tol = {});

/// Fixed rate W(P) over Rayleigh fading: W(P) exp(-(e^{W(P)} - 1) / P).
double no_adaptation_rate(double power);
double no_adaptation_throughput(double power);

/// E[ln(1 + g P)] for unit-mean exponential g: e^{1/P} E1(1/P).
double genie_throughput(double power);

} // namespace semiq
