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

#include "chargelearn/statistics.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace chargelearn {

double mean(std::span<const double> xs) {
    if (xs.empty()) {
        return 0;
    }
    double total = 0;
    for (double x : xs) {
        total += x;
    }
    return total / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs) {
    if (xs.size() < 2) {
        return 0;
    }
    double m = mean(xs);
    double total = 0;
    for (double x : xs) {
        total += (x - m) * (x - m);
    }
    return total / static_cast<double>(xs.size() - 1);
}

Estimate mean_estimate(std::span<const double> xs) {
    Estimate e;
    e.value = mean(xs);
    if (xs.size() > 1) {
        e.error = std::sqrt(sample_variance(xs) / static_cast<double>(xs.size()));
    }
    return e;
}

namespace {

double spread(const std::vector<double> &reps) {
    return std::sqrt(sample_variance(reps));
}

}  // namespace

double bootstrap_error(std::span<const double> xs, const Statistic &stat, size_t resamples, Rng &rng) {
    if (xs.size() < 2 || resamples < 2) {
        return 0;
    }
    std::vector<double> sample(xs.size());
    std::vector<double> reps;
    reps.reserve(resamples);
    for (size_t r = 0; r < resamples; r++) {
        for (auto &s : sample) {
            s = xs[uniform_index(rng, xs.size())];
        }
        reps.push_back(stat(sample));
    }
    return spread(reps);
}

double paired_bootstrap_error(
    std::span<const double> xs, std::span<const double> ys, const Statistic &stat, size_t resamples, Rng &rng) {
    if (xs.size() != ys.size()) {
        throw std::invalid_argument("paired_bootstrap_error: series lengths differ");
    }
    if (xs.size() < 2 || resamples < 2) {
        return 0;
    }
    std::vector<double> a(xs.size()), b(ys.size());
    std::vector<double> reps;
    reps.reserve(resamples);
    for (size_t r = 0; r < resamples; r++) {
        for (size_t k = 0; k < xs.size(); k++) {
            size_t idx = uniform_index(rng, xs.size());
            a[k] = xs[idx];
            b[k] = ys[idx];
        }
        reps.push_back(stat(a) - stat(b));
    }
    return spread(reps);
}

namespace {

// Solves the 3x3 normal equations by Gauss-Jordan with partial pivoting; returns the inverse.
std::optional<std::array<std::array<double, 3>, 3>> invert3(std::array<std::array<double, 3>, 3> m) {
    std::array<std::array<double, 3>, 3> inv{};
    for (int i = 0; i < 3; i++) {
        inv[i][i] = 1;
    }
    for (int col = 0; col < 3; col++) {
        int pivot = col;
        for (int r = col + 1; r < 3; r++) {
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) {
                pivot = r;
            }
        }
        if (std::abs(m[pivot][col]) < 1e-300) {
            return std::nullopt;
        }
        std::swap(m[pivot], m[col]);
        std::swap(inv[pivot], inv[col]);
        double d = m[col][col];
        for (int k = 0; k < 3; k++) {
            m[col][k] /= d;
            inv[col][k] /= d;
        }
        for (int r = 0; r < 3; r++) {
            if (r == col) {
                continue;
            }
            double f = m[r][col];
            for (int k = 0; k < 3; k++) {
                m[r][k] -= f * m[col][k];
                inv[r][k] -= f * inv[col][k];
            }
        }
    }
    return inv;
}

}  // namespace

PeakFit variance_peak(std::span<const double> xs, std::span<const double> values, std::span<const double> errors) {
    const size_t n = xs.size();
    if (values.size() != n || errors.size() != n) {
        throw std::invalid_argument("variance_peak: grid, values and errors must have equal length");
    }
    if (n < 4) {
        throw std::invalid_argument("variance_peak: need at least 4 grid points, got " + std::to_string(n));
    }
    for (size_t k = 1; k < n; k++) {
        if (!(xs[k] > xs[k - 1])) {
            throw std::invalid_argument("variance_peak: grid must be strictly increasing");
        }
    }
    size_t top = static_cast<size_t>(std::max_element(values.begin(), values.end()) - values.begin());
    PeakFit fit;
    fit.argmax = top;
    fit.location = xs[top];
    fit.height = values[top];
    double spacing = top + 1 < n ? xs[top + 1] - xs[top] : xs[top] - xs[top - 1];
    fit.location_error = spacing / 2;
    if (top == 0 || top + 1 == n) {
        return fit;
    }

    size_t lo = top >= 2 ? top - 2 : 0;
    size_t hi = std::min(n - 1, top + 2);
    fit.points_used = hi - lo + 1;
    bool weighted = std::all_of(errors.begin() + lo, errors.begin() + hi + 1, [](double e) { return e > 0; });

    // Centered on the maximum for conditioning: y = a u^2 + b u + c with u = x - x_top.
    std::array<std::array<double, 3>, 3> normal{};
    std::array<double, 3> rhs{};
    for (size_t k = lo; k <= hi; k++) {
        double u = xs[k] - xs[top];
        double w = weighted ? 1 / (errors[k] * errors[k]) : 1.0;
        double basis[3] = {u * u, u, 1};
        for (int r = 0; r < 3; r++) {
            rhs[r] += w * basis[r] * values[k];
            for (int c = 0; c < 3; c++) {
                normal[r][c] += w * basis[r] * basis[c];
            }
        }
    }
    auto cov = invert3(normal);
    if (!cov) {
        return fit;
    }
    double coef[3] = {0, 0, 0};
    for (int r = 0; r < 3; r++) {
        for (int c = 0; c < 3; c++) {
            coef[r] += (*cov)[r][c] * rhs[c];
        }
    }
    double a = coef[0], b = coef[1], c0 = coef[2];
    if (!(a < 0)) {
        return fit;
    }

    double chi2 = 0;
    for (size_t k = lo; k <= hi; k++) {
        double u = xs[k] - xs[top];
        double w = weighted ? 1 / (errors[k] * errors[k]) : 1.0;
        double r = values[k] - (a * u * u + b * u + c0);
        chi2 += w * r * r;
    }
    size_t dof = fit.points_used - 3;
    double scale = 1;
    if (dof > 0) {
        double reduced = chi2 / static_cast<double>(dof);
        scale = weighted ? std::max(1.0, reduced) : reduced;
    }

    double u_star = -b / (2 * a);
    double ga = b / (2 * a * a);
    double gb = -1 / (2 * a);
    double var = scale * (ga * ga * (*cov)[0][0] + 2 * ga * gb * (*cov)[0][1] + gb * gb * (*cov)[1][1]);
    fit.location = xs[top] + u_star;
    fit.location_error = std::sqrt(std::max(0.0, var));
    fit.height = c0 - b * b / (4 * a);
    fit.interior = fit.location > xs.front() && fit.location < xs.back();
    return fit;
}

const char *binder_form_name(BinderForm form) {
    return form == BinderForm::Standard ? "standard" : "literal";
}

BinderForm parse_binder_form(std::string_view name) {
    if (name == "standard") {
        return BinderForm::Standard;
    }
    if (name == "literal") {
        return BinderForm::Literal;
    }
    throw std::invalid_argument("unknown Binder form '" + std::string(name) + "' (expected standard or literal)");
}

BinderMoments binder_moments(std::span<const double> samples, BinderForm form) {
    if (samples.size() < 2) {
        throw std::invalid_argument("binder_moments: need at least 2 samples");
    }
    BinderMoments out;
    out.count = samples.size();
    out.mean = mean(samples);
    double m2 = 0, m4 = 0;
    for (double s : samples) {
        double d = s - out.mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    out.mu2 = m2 / static_cast<double>(samples.size());
    out.mu4 = m4 / static_cast<double>(samples.size());
    if (out.mu2 > 0) {
        double denom = 3 * out.mu2 * out.mu2;
        out.binder = form == BinderForm::Standard ? 1 - out.mu4 / denom : (1 - out.mu4) / denom;
    }
    return out;
}

std::vector<double> curve_crossings(std::span<const double> xs, std::span<const double> a, std::span<const double> b) {
    if (a.size() != xs.size() || b.size() != xs.size()) {
        throw std::invalid_argument("curve_crossings: curves must match the grid");
    }
    std::vector<double> out;
    for (size_t k = 0; k + 1 < xs.size(); k++) {
        double d0 = a[k] - b[k];
        double d1 = a[k + 1] - b[k + 1];
        if (std::isnan(d0) || std::isnan(d1)) {
            continue;
        }
        if (d0 == 0) {
            if (out.empty() || out.back() != xs[k]) {
                out.push_back(xs[k]);
            }
            continue;
        }
        if ((d0 < 0) != (d1 < 0) && d1 != 0) {
            out.push_back(xs[k] + (xs[k + 1] - xs[k]) * d0 / (d0 - d1));
        } else if (d1 == 0 && k + 2 == xs.size()) {
            out.push_back(xs[k + 1]);
        }
    }
    return out;
}

}  // namespace chargelearn
