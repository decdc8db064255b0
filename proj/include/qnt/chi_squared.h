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

#pragma once

namespace qnt {

/// Regularized upper incomplete gamma function Q(a, x) = Γ(a, x) / Γ(a).
/// Series expansion for x < a + 1, Lentz continued fraction otherwise.
/// Requires a > 0 and x >= 0.
double gamma_q(double a, double x);

/// Upper-tail probability of a chi-squared statistic with `df` degrees of
/// freedom: Q(df/2, stat/2).
double chi_squared_p_value(double stat, double df);

}  // namespace qnt
