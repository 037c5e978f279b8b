// SPDX-License-Identifier: Apache-2.0
//
// pccsim: polar-cap codebooks for limited-feedback MISO beamforming
// Copyright (c) 2026 the pccsim authors

#include "pccsim/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pccsim {

void validate(const ChannelParams &params)
{
    if (params.n_t < 2)
        throw std::invalid_argument("ChannelParams: n_t must be at least 2");
    if (!(params.k_factor >= 0.0))
        throw std::invalid_argument("ChannelParams: k_factor must be nonnegative");
    if (!(params.theta >= 0.0 && params.theta <= std::numbers::pi))
        throw std::invalid_argument("ChannelParams: theta must lie in [0, pi]");
    if (!(params.d_over_lambda > 0.0))
        throw std::invalid_argument("ChannelParams: d_over_lambda must be positive");
}

cplx sample_complex_gaussian(RngStream &rng)
{
    return rng.cnormal();
}

namespace {

ChannelRealization assemble(const ChannelParams &params, cplx g_los, cvec h_nlos)
{
    const double k = params.k_factor;
    const cvec a = array_response(params.theta, params.n_t, params.d_over_lambda);
    const double los_scale = std::sqrt(k / (k + 1.0));
    const double nlos_scale = 1.0 / std::sqrt(k + 1.0);

    ChannelRealization out;
    out.g_los = g_los;
    out.h_nlos = std::move(h_nlos);
    out.h.resize(params.n_t);
    for (std::size_t i = 0; i < params.n_t; i++)
        out.h[i] = los_scale * g_los * a[i] + nlos_scale * out.h_nlos[i];
    return out;
}

} // namespace

ChannelRealization sample_channel(const ChannelParams &params, RngStream &rng)
{
    validate(params);
    const cplx g_los = rng.cnormal();
    cvec h_nlos(params.n_t);
    for (auto &e : h_nlos)
        e = rng.cnormal();
    return assemble(params, g_los, std::move(h_nlos));
}

ChannelRealization sample_channel_given_glos_sq(const ChannelParams &params,
                                                double g_los_sq, RngStream &rng)
{
    validate(params);
    if (!(g_los_sq >= 0.0))
        throw std::invalid_argument("sample_channel_given_glos_sq: g_los_sq must be nonnegative");
    const cplx g_los =
        std::polar(std::sqrt(g_los_sq), rng.uniform(0.0, 2.0 * std::numbers::pi));
    cvec h_nlos(params.n_t);
    for (auto &e : h_nlos)
        e = rng.cnormal();
    return assemble(params, g_los, std::move(h_nlos));
}

double glos_sq_percentile(double p)
{
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("glos_sq_percentile: p must lie in (0, 1)");
    return -std::log1p(-p);
}

} // namespace pccsim
