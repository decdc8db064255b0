// Copyright 2026 The QNT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qnt/chi_squared.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qnt/errors.h"

namespace qnt {

namespace {

constexpr int kMaxIterations = 10000;
constexpr double kEps = 1e-16;

// P(a, x) by the power series  e^-x x^a / Γ(a+1) · Σ x^n / ((a+1)...(a+n)).
double lower_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int n = 0; n < kMaxIterations; n++) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) {
            break;
        }
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Q(a, x) by the continued fraction for Γ(a, x), modified Lentz.
double upper_fraction(double a, double x) {
    const double tiny = std::numeric_limits<double>::min() / kEps;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIterations; i++) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) {
            d = tiny;
        }
        c = b + an / c;
        if (std::abs(c) < tiny) {
            c = tiny;
        }
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) {
            break;
        }
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_q(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0)) {
        throw ValidationError("gamma_q: requires a > 0 and x >= 0");
    }
    if (x == 0.0) {
        return 1.0;
    }
    if (std::isinf(x)) {
        return 0.0;
    }
    if (x < a + 1.0) {
        return std::max(0.0, 1.0 - lower_series(a, x));
    }
    return std::min(1.0, upper_fraction(a, x));
}

double chi_squared_p_value(double stat, double df) {
    if (!(df > 0.0)) {
        throw ValidationError("chi_squared_p_value: degrees of freedom must be positive");
    }
    if (stat <= 0.0) {
        return 1.0;
    }
    return gamma_q(df / 2.0, stat / 2.0);
}

}  // namespace qnt
