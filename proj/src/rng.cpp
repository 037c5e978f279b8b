// SPDX-License-Identifier: Apache-2.0
//
// pccsim: polar-cap codebooks for limited-feedback MISO beamforming
// Copyright (c) 2026 the pccsim authors

#include "pccsim/rng.hpp"

#include <cmath>
#include <numbers>

namespace pccsim {

namespace {

constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline std::uint64_t mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t &hi)
{
    const auto prod = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(prod >> 64);
    return static_cast<std::uint64_t>(prod);
}

inline void philox_round(std::array<std::uint64_t, 4> &ctr,
                         const std::array<std::uint64_t, 2> &key)
{
    std::uint64_t hi0, hi1;
    const std::uint64_t lo0 = mulhilo(kMul0, ctr[0], hi0);
    const std::uint64_t lo1 = mulhilo(kMul1, ctr[2], hi1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

} // namespace

std::array<std::uint64_t, 4> philox4x64(const std::array<std::uint64_t, 2> &key,
                                        const std::array<std::uint64_t, 4> &counter)
{
    std::array<std::uint64_t, 4> ctr = counter;
    std::array<std::uint64_t, 2> k = key;
    philox_round(ctr, k);
    for (int r = 1; r < 10; r++)
    {
        k[0] += kWeyl0;
        k[1] += kWeyl1;
        philox_round(ctr, k);
    }
    return ctr;
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : key_{master_seed, stream_id}, counter_{0, 0, 0, 0}, block_{0, 0, 0, 0}, pos_(4)
{
}

void RngStream::refill()
{
    block_ = philox4x64(key_, counter_);
    pos_ = 0;
    // 256-bit little-endian counter increment
    for (auto &word : counter_)
        if (++word != 0)
            break;
}

std::uint64_t RngStream::next_u64()
{
    if (pos_ == 4)
        refill();
    return block_[pos_++];
}

double RngStream::uniform()
{
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi)
{
    return lo + (hi - lo) * uniform();
}

double RngStream::normal()
{
    const double u1 = uniform();
    const double u2 = uniform();
    // Box-Muller; log1p keeps the argument away from log(0) since u1 < 1
    return std::sqrt(-2.0 * std::log1p(-u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

std::complex<double> RngStream::cnormal()
{
    const double u1 = uniform();
    const double u2 = uniform();
    // |z|^2 ~ Exp(1), phase uniform
    return std::polar(std::sqrt(-std::log1p(-u1)), 2.0 * std::numbers::pi * u2);
}

} // namespace pccsim
