// SPDX-License-Identifier: Apache-2.0
//
// pccsim: polar-cap codebooks for limited-feedback MISO beamforming
// Copyright (c) 2026 the pccsim authors

#include "pccsim/feedback.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pccsim {

std::size_t select_codeword(const cvec &h, const Codebook &cb)
{
    if (cb.words.empty())
        throw std::invalid_argument("select_codeword: empty codebook");
    if (h.size() != cb.dim)
        throw std::invalid_argument("select_codeword: dimension mismatch");
    if (vec_norm(h) == 0.0)
        throw std::invalid_argument("select_codeword: zero channel");

    std::size_t best = 0;
    double best_metric = -1.0;
    for (std::size_t j = 0; j < cb.words.size(); j++)
    {
        const double metric = std::norm(inner_product(h, cb.words[j]));
        if (metric > best_metric)
        {
            best_metric = metric;
            best = j;
        }
    }
    return best;
}

double quantize_radius(double radius, unsigned bits)
{
    if (bits < 1)
        throw std::invalid_argument("quantize_radius: bits must be >= 1");
    if (!(radius >= 0.0 && radius <= 1.0))
        throw std::invalid_argument("quantize_radius: radius outside [0,1]");
    const double cells = std::ldexp(1.0, static_cast<int>(bits));
    const double idx = std::min(std::floor(radius * cells), cells - 1.0);
    return (idx + 0.5) / cells;
}

FeedbackReport make_feedback_report(std::size_t best_index, double radius,
                                    std::optional<unsigned> radius_bits)
{
    FeedbackReport r;
    r.best_index = best_index;
    r.radius = radius;
    if (radius_bits)
    {
        r.radius_bits = radius_bits;
        r.radius_quantized = quantize_radius(radius, *radius_bits);
    }
    return r;
}

cvec tx_reconstruct(const ChannelParams &params, double radius, std::size_t best_index,
                    const Codebook &grassmannian)
{
    validate(params);
    if (!(radius >= 0.0 && radius <= 1.0))
        throw std::invalid_argument("tx_reconstruct: radius outside [0,1]");
    if (grassmannian.dim + 1 != params.n_t)
        throw std::invalid_argument("tx_reconstruct: grassmannian dim must be n_t - 1");
    if (best_index > grassmannian.words.size())
        throw std::invalid_argument("tx_reconstruct: codeword index out of range");

    const cvec basis = normalized_array_response(params.theta, params.n_t, params.d_over_lambda);
    if (best_index == 0)
        return basis;

    // same arithmetic as the receiver-side codebook construction
    const UnitaryMatrix u = unitary_completion(basis);
    const cvec &g = grassmannian.words[best_index - 1];
    cvec stacked(params.n_t);
    stacked[0] = std::sqrt(std::max(0.0, 1.0 - radius * radius));
    for (std::size_t i = 0; i < g.size(); i++)
        stacked[1 + i] = radius * g[i];
    return mat_vec(u, stacked);
}

double beamforming_gain(const cvec &h, const cvec &f)
{
    if (h.size() != f.size())
        throw std::invalid_argument("beamforming_gain: dimension mismatch");
    double energy = 0.0;
    for (const auto &e : h)
        energy += std::norm(e);
    if (energy == 0.0)
        throw std::invalid_argument("beamforming_gain: zero channel");
    const double gain = std::norm(inner_product(h, f)) / energy;
    return std::clamp(gain, 0.0, 1.0);
}

double received_snr(const cvec &h, const cvec &f, double p_s, double n_0)
{
    if (!(p_s > 0.0) || !(n_0 > 0.0))
        throw std::invalid_argument("received_snr: powers must be positive");
    if (h.size() != f.size())
        throw std::invalid_argument("received_snr: dimension mismatch");
    return p_s * std::norm(inner_product(h, f)) / n_0;
}

} // namespace pccsim
