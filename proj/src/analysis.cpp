// SPDX-License-Identifier: Apache-2.0
//
// pccsim: polar-cap codebooks for limited-feedback MISO beamforming
// Copyright (c) 2026 the pccsim authors

#include "pccsim/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace pccsim {

namespace {

void check_args(double k, std::size_t n_t, double g_sq)
{
    if (!(k >= 0.0))
        throw std::invalid_argument("analysis: k must be >= 0");
    if (n_t < 1)
        throw std::invalid_argument("analysis: n_t must be >= 1");
    if (!(g_sq >= 0.0))
        throw std::invalid_argument("analysis: g_sq must be >= 0");
}

} // namespace

double db_to_linear(double value_db)
{
    return std::pow(10.0, value_db / 10.0);
}

double linear_to_db(double value_linear)
{
    if (!(value_linear > 0.0))
        throw std::invalid_argument("linear_to_db: value must be positive");
    return 10.0 * std::log10(value_linear);
}

double cond_mean_num(double k, std::size_t n_t, double g_sq)
{
    check_args(k, n_t, g_sq);
    const double nt = static_cast<double>(n_t);
    return (k * nt * g_sq + 1.0) / (k + 1.0);
}

double cond_mean_den(double k, std::size_t n_t, double g_sq)
{
    check_args(k, n_t, g_sq);
    const double nt = static_cast<double>(n_t);
    return (k * nt * g_sq + nt) / (k + 1.0);
}

double cv_num(double k, std::size_t n_t, double g_sq)
{
    check_args(k, n_t, g_sq);
    const double m = k * static_cast<double>(n_t) * g_sq;
    return std::sqrt((2.0 * m + 1.0) / ((m + 1.0) * (m + 1.0)));
}

double cv_den(double k, std::size_t n_t, double g_sq)
{
    check_args(k, n_t, g_sq);
    const double nt = static_cast<double>(n_t);
    const double m = k * g_sq;
    return std::sqrt((2.0 * m + 1.0) / (nt * (m + 1.0) * (m + 1.0)));
}

double delta_mean_approx(double k, std::size_t n_t, double g_sq)
{
    check_args(k, n_t, g_sq);
    const double nt = static_cast<double>(n_t);
    return std::sqrt((nt - 1.0) / (nt * (k * g_sq + 1.0)));
}

CondStats cond_stats(double k, std::size_t n_t, double g_sq)
{
    CondStats s;
    s.mean_num = cond_mean_num(k, n_t, g_sq);
    s.mean_den = cond_mean_den(k, n_t, g_sq);
    s.cv_num = cv_num(k, n_t, g_sq);
    s.cv_den = cv_den(k, n_t, g_sq);
    s.delta_mean_approx = delta_mean_approx(k, n_t, g_sq);
    return s;
}

std::pair<double, double> validity_expectations(double k, std::size_t n_t)
{
    if (!(k >= 0.0))
        throw std::invalid_argument("analysis: k must be >= 0");
    if (n_t < 1)
        throw std::invalid_argument("analysis: n_t must be >= 1");
    const double nt = static_cast<double>(n_t);
    const double lhs = 2.0 * k * k * nt * nt;
    const double rhs = 2.0 * k * k * nt + (2.0 * k + 1.0) * (nt - 1.0);
    return {lhs, rhs};
}

} // namespace pccsim
