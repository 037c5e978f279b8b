// SPDX-License-Identifier: Apache-2.0
//
// pccsim: polar-cap codebooks for limited-feedback MISO beamforming
// Copyright (c) 2026 the pccsim authors

#pragma once

#include <cstddef>
#include <utility>

namespace pccsim {

// Closed-form statistics of the channel conditioned on the LOS gain
// g_sq = |G_LOS|^2, for a Rician factor k (linear) and n_t antennas.
struct CondStats
{
    double mean_num = 0.0;        // E[|h^H basis|^2 | g]
    double mean_den = 0.0;        // E[||h||^2 | g]
    double cv_num = 0.0;          // coefficient of variation of the numerator
    double cv_den = 0.0;          // coefficient of variation of the denominator
    double delta_mean_approx = 0.0; // approximate E[cap radius | g]
};

double db_to_linear(double value_db);
double linear_to_db(double value_linear);

// (k n_t g_sq + 1) / (k + 1)
double cond_mean_num(double k, std::size_t n_t, double g_sq);

// (k n_t g_sq + n_t) / (k + 1)
double cond_mean_den(double k, std::size_t n_t, double g_sq);

// sqrt((2 k n_t g_sq + 1) / (k n_t g_sq + 1)^2)
double cv_num(double k, std::size_t n_t, double g_sq);

// sqrt((2 k g_sq + 1) / (n_t (k g_sq + 1)^2))
double cv_den(double k, std::size_t n_t, double g_sq);

// sqrt((n_t - 1) / (n_t (k g_sq + 1))), the ratio-of-means approximation of
// the conditional mean cap radius. Small coefficients of variation of the
// numerator and denominator make it tight.
double delta_mean_approx(double k, std::size_t n_t, double g_sq);

CondStats cond_stats(double k, std::size_t n_t, double g_sq);

// The two fourth-moment scales whose gap justifies the approximation:
// (2 k^2 n_t^2, 2 k^2 n_t + (2k + 1)(n_t - 1)). Reported as numbers, not
// thresholded.
std::pair<double, double> validity_expectations(double k, std::size_t n_t);

} // namespace pccsim
