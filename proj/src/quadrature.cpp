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

#include "semiq/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <tuple>

namespace semiq {

namespace {

// Kronrod nodes on [0,1] (symmetric); odd indices are the Gauss points.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double sum = f(center - dx) + f(center + dx);
        kronrod += kWgk[j] * sum;
        if (j % 2 == 1) gauss += kWg[j / 2] * sum;
    }
    const double value = kronrod * half;
    const double error = std::abs((kronrod - gauss) * half);
    if (!std::isfinite(value)) throw AccuracyError("integrate: integrand is not finite", error);
    return {a, b, value, error};
}

} // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const ToleranceConfig& tol, const std::vector<double>& breakpoints)
{
    tol.validate();
    if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("integrate: limits must be finite");
    if (a == b) return {};
    if (b < a) {
        auto r = integrate(f, b, a, tol, breakpoints);
        r.value = -r.value;
        return r;
    }

    std::vector<double> cuts{a};
    for (double p : breakpoints) {
        if (p > a && p < b) cuts.push_back(p);
    }
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::priority_queue<Segment> heap;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) heap.push(gk15(f, cuts[i], cuts[i + 1]));

    auto totals = [&heap]() {
        // Copy keeps the heap intact; sizes stay small.
        auto copy = heap;
        double value = 0.0;
        double error = 0.0;
        while (!copy.empty()) {
            value += copy.top().value;
            error += copy.top().error;
            copy.pop();
        }
        return std::pair{value, error};
    };

    int splits = 0;
    double value = 0.0;
    double error = 0.0;
    double running_value = 0.0;
    double running_error = 0.0;
    {
        auto [v, e] = totals();
        running_value = v;
        running_error = e;
    }
    while (true) {
        if (running_error <= std::max(tol.abs_tol, tol.rel_tol * std::abs(running_value))) break;
        if (splits >= tol.max_subdivisions) {
            throw AccuracyError("integrate: subdivision cap reached with error " +
                                    std::to_string(running_error),
                                running_error);
        }
        const Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval cannot be split further in double precision.
            throw AccuracyError("integrate: interval collapsed before reaching tolerance", running_error);
        }
        const Segment left = gk15(f, worst.a, mid);
        const Segment right = gk15(f, mid, worst.b);
        heap.push(left);
        heap.push(right);
        ++splits;
        running_value += left.value + right.value - worst.value;
        running_error += left.error + right.error - worst.error;
        // Resum periodically so drift in the running totals cannot stall convergence.
        if (splits % 64 == 0) {
            auto [v, e] = totals();
            running_value = v;
            running_error = e;
        }
    }
    std::tie(value, error) = totals();
    return {value, error, splits, 0.0};
}

} // namespace semiq
