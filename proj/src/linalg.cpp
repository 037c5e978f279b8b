// SPDX-License-Identifier: Apache-2.0
//
// pccsim: polar-cap codebooks for limited-feedback MISO beamforming
// Copyright (c) 2026 the pccsim authors

#include "pccsim/linalg.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pccsim {

double vec_norm(const cvec &v)
{
    double s = 0.0;
    for (const auto &e : v)
        s += std::norm(e);
    return std::sqrt(s);
}

cplx inner_product(const cvec &x, const cvec &y)
{
    if (x.size() != y.size())
        throw std::invalid_argument("inner_product: dimension mismatch");
    cplx s = 0.0;
    for (std::size_t i = 0; i < x.size(); i++)
        s += std::conj(x[i]) * y[i];
    return s;
}

cvec normalized(const cvec &v)
{
    const double n = vec_norm(v);
    if (n == 0.0)
        throw std::invalid_argument("normalized: zero vector");
    cvec out(v.size());
    for (std::size_t i = 0; i < v.size(); i++)
        out[i] = v[i] / n;
    return out;
}

bool is_unit(const cvec &v, double tol)
{
    return std::abs(vec_norm(v) - 1.0) <= tol;
}

double chordal_distance(const cvec &x, const cvec &y)
{
    const double ip = std::norm(inner_product(x, y));
    return std::sqrt(std::max(0.0, 1.0 - ip));
}

UnitaryMatrix unitary_completion(const cvec &w1)
{
    const std::size_t n = w1.size();
    if (n == 0)
        throw std::invalid_argument("unitary_completion: empty vector");

    UnitaryMatrix m;
    m.dim = n;
    m.cols.assign(n, cvec(n, 0.0));

    if (std::abs(1.0 - w1[0]) <= 1e-14 || n == 1)
    {
        for (std::size_t i = 0; i < n; i++)
            m.cols[i][i] = 1.0;
        m.cols[0] = w1;
        return m;
    }

    // Householder reflector H = I - 2 u u^H / (u^H u) with u = w1 - alpha e1.
    // alpha = -w1[0]/|w1[0]| keeps u[0] away from cancellation; H maps w1 to
    // alpha e1, so H with its first column scaled by alpha has w1 as column 0.
    const cplx alpha = (w1[0] == 0.0) ? cplx(-1.0, 0.0) : -w1[0] / std::abs(w1[0]);
    cvec u = w1;
    u[0] -= alpha;
    double un2 = 0.0;
    for (const auto &e : u)
        un2 += std::norm(e);

    for (std::size_t j = 0; j < n; j++)
    {
        const cplx scale = 2.0 * std::conj(u[j]) / un2;
        for (std::size_t i = 0; i < n; i++)
            m.cols[j][i] = -scale * u[i];
        m.cols[j][j] += 1.0;
    }
    for (std::size_t i = 0; i < n; i++)
        m.cols[0][i] *= alpha;
    // pin the contract exactly; the computed column agrees to ~1e-15 anyway
    m.cols[0] = w1;
    return m;
}

cvec mat_vec(const UnitaryMatrix &m, const cvec &x)
{
    if (m.dim != x.size())
        throw std::invalid_argument("mat_vec: dimension mismatch");
    cvec y(m.dim, 0.0);
    for (std::size_t j = 0; j < m.dim; j++)
        for (std::size_t i = 0; i < m.dim; i++)
            y[i] += m.cols[j][i] * x[j];
    return y;
}

double unitarity_error(const UnitaryMatrix &m)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < m.dim; i++)
        for (std::size_t j = 0; j < m.dim; j++)
        {
            cplx g = inner_product(m.cols[i], m.cols[j]);
            if (i == j)
                g -= 1.0;
            worst = std::max(worst, std::abs(g));
        }
    return worst;
}

cvec array_response(double theta, std::size_t n_t, double d_over_lambda)
{
    if (!(theta >= 0.0 && theta <= std::numbers::pi))
        throw std::invalid_argument("array_response: theta must lie in [0, pi]");
    if (n_t < 1)
        throw std::invalid_argument("array_response: n_t must be positive");
    if (!(d_over_lambda > 0.0))
        throw std::invalid_argument("array_response: d_over_lambda must be positive");

    const double phase_step = -2.0 * std::numbers::pi * d_over_lambda * std::cos(theta);
    cvec a(n_t);
    for (std::size_t k = 0; k < n_t; k++)
        a[k] = std::polar(1.0, phase_step * static_cast<double>(k));
    return a;
}

cvec normalized_array_response(double theta, std::size_t n_t, double d_over_lambda)
{
    cvec a = array_response(theta, n_t, d_over_lambda);
    const double s = 1.0 / std::sqrt(static_cast<double>(n_t));
    for (auto &e : a)
        e *= s;
    return a;
}

} // namespace pccsim
