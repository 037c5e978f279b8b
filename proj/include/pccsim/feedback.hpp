// SPDX-License-Identifier: Apache-2.0
//
// pccsim: polar-cap codebooks for limited-feedback MISO beamforming
// Copyright (c) 2026 the pccsim authors

#pragma once

#include "pccsim/codebooks.hpp"
#include "pccsim/linalg.hpp"

#include <cstddef>
#include <optional>

namespace pccsim {

// What the receiver feeds back: the winning codeword index plus, for the
// adaptive scheme, the cap radius (optionally quantized to radius_bits).
struct FeedbackReport
{
    std::size_t best_index = 0;
    double radius = 0.0;
    std::optional<unsigned> radius_bits;
    std::optional<double> radius_quantized;
};

struct LinkMetrics
{
    double bf_gain = 0.0;
    double snr = 0.0;
    double p_s = 1.0;
    double n_0 = 1.0;
};

// Index of the codeword maximizing |h^H f_j|; ties break to the lowest index.
std::size_t select_codeword(const cvec &h, const Codebook &cb);

// Midpoint of the cell of radius under a uniform 2^bits partition of [0,1]
// with half-open cells; radius = 1 lands in the top cell.
double quantize_radius(double radius, unsigned bits);

FeedbackReport make_feedback_report(std::size_t best_index, double radius,
                                    std::optional<unsigned> radius_bits = std::nullopt);

// Transmitter-side beamformer from the feedback alone: index 0 is the array
// response basis; index j >= 1 lifts Grassmannian codeword j-1 onto the cap
// of the given radius. Matches the receiver-side adaptive codebook entry
// without materializing the other codewords.
cvec tx_reconstruct(const ChannelParams &params, double radius, std::size_t best_index,
                    const Codebook &grassmannian);

// |h^H f|^2 / ||h||^2, clamped to [0,1].
double beamforming_gain(const cvec &h, const cvec &f);

// p_s |h^H f|^2 / n_0.
double received_snr(const cvec &h, const cvec &f, double p_s, double n_0);

} // namespace pccsim
