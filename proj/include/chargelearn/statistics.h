// Copyright 2026 The chargelearn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CHARGELEARN_STATISTICS_H
#define CHARGELEARN_STATISTICS_H

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "chargelearn/rng.h"

namespace chargelearn {

inline constexpr size_t kDefaultResamples = 1000;

struct Estimate {
    double value = 0;
    double error = 0;
};

double mean(std::span<const double> xs);
/// Unbiased (n - 1) sample variance; 0 for fewer than two samples.
double sample_variance(std::span<const double> xs);
/// Mean with its standard error sqrt(var / n).
Estimate mean_estimate(std::span<const double> xs);

using Statistic = std::function<double(std::span<const double>)>;

/// Nonparametric bootstrap standard error of `stat` over `xs`.
double bootstrap_error(std::span<const double> xs, const Statistic &stat, size_t resamples, Rng &rng);

/// Bootstrap error of a difference of statistics on paired samples (same resampled indices
/// for both series).
double paired_bootstrap_error(
    std::span<const double> xs, std::span<const double> ys, const Statistic &stat, size_t resamples, Rng &rng);

struct PeakFit {
    /// Vertex of the local quadratic, or the grid maximum when there is no interior peak.
    double location = 0;
    double location_error = 0;
    double height = 0;
    /// False when the maximum sits on the first or last grid point, or the local fit is not concave.
    bool interior = false;
    size_t points_used = 0;
    size_t argmax = 0;
};

/// Quadratic fit through the largest grid value and up to two neighbors on each side,
/// weighted by 1/errors^2 (unit weights when every error is 0). The location error comes
/// from the fit covariance, inflated by the reduced chi^2 when there are spare degrees of freedom.
PeakFit variance_peak(std::span<const double> xs, std::span<const double> values, std::span<const double> errors);

enum class BinderForm {
    /// 1 - mu4 / (3 mu2^2).
    Standard,
    /// (1 - mu4) / (3 mu2^2).
    Literal,
};

const char *binder_form_name(BinderForm form);
BinderForm parse_binder_form(std::string_view name);

struct BinderMoments {
    size_t count = 0;
    double mean = 0;
    double mu2 = 0;
    double mu4 = 0;
    /// Empty when mu2 == 0.
    std::optional<double> binder;
};

/// Central moments of equally weighted samples and the Binder ratio.
BinderMoments binder_moments(std::span<const double> samples, BinderForm form = BinderForm::Standard);

/// Abscissas where two piecewise-linear curves on a shared grid cross. NaN entries break the curves.
std::vector<double> curve_crossings(std::span<const double> xs, std::span<const double> a, std::span<const double> b);

}  // namespace chargelearn

#endif
