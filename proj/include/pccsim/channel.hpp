// SPDX-License-Identifier: Apache-2.0
//
// pccsim: polar-cap codebooks for limited-feedback MISO beamforming
// Copyright (c) 2026 the pccsim authors

#pragma once

#include "pccsim/linalg.hpp"
#include "pccsim/rng.hpp"

namespace pccsim {

// Rician channel parameters. k_factor is the linear (not dB) K-factor.
struct ChannelParams
{
    std::size_t n_t = 4;
    double k_factor = 1.0;
    double theta = 0.0;           // LOS angle of departure, radians in [0, pi]
    double d_over_lambda = 0.5;   // antenna spacing over carrier wavelength
};

// One draw of h = sqrt(K/(K+1)) g_los a(theta) + h_nlos / sqrt(K+1).
struct ChannelRealization
{
    cvec h;
    cplx g_los;
    cvec h_nlos;
};

void validate(const ChannelParams &params);

// CN(0,1): real and imaginary parts independent N(0, 1/2).
cplx sample_complex_gaussian(RngStream &rng);

// Draws g_los ~ CN(0,1) and h_nlos i.i.d. CN(0,1), then assembles h.
// Draw order is part of the reproducibility contract: g_los first, then the
// n_t entries of h_nlos in index order.
ChannelRealization sample_channel(const ChannelParams &params, RngStream &rng);

// Same, but |g_los|^2 is pinned to g_los_sq with a uniformly drawn phase.
// Draw order: one uniform for the phase, then h_nlos entries.
ChannelRealization sample_channel_given_glos_sq(const ChannelParams &params,
                                                double g_los_sq, RngStream &rng);

// p-quantile of the Exp(1) law of |G_LOS|^2, i.e. -ln(1-p).
double glos_sq_percentile(double p);

} // namespace pccsim
