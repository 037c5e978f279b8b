// SPDX-License-Identifier: Apache-2.0
//
// pccsim: polar-cap codebooks for limited-feedback MISO beamforming
// Copyright (c) 2026 the pccsim authors

#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace pccsim {

// Philox 4x64 block function, 10 rounds. The output block is a pure function
// of (key, counter), so any position in a stream can be generated without
// generating its predecessors. Matches the Random123 / NumPy definition.
std::array<std::uint64_t, 4> philox4x64(const std::array<std::uint64_t, 2> &key,
                                        const std::array<std::uint64_t, 4> &counter);

// One logical random stream, keyed by (master_seed, stream_id). Streams with
// distinct ids are independent by construction of the block cipher; replaying
// a stream with the same key reproduces the identical sequence regardless of
// what other streams were consumed in between. Value type, cheap to copy.
class RngStream {
  public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

    std::uint64_t next_u64();
    double uniform();                     // [0, 1), 53-bit mantissa
    double uniform(double lo, double hi); // [lo, hi)
    double normal();                      // real N(0, 1)
    std::complex<double> cnormal();       // circularly symmetric CN(0, 1)

    std::uint64_t master_seed() const { return key_[0]; }
    std::uint64_t stream_id() const { return key_[1]; }

  private:
    void refill();

    std::array<std::uint64_t, 2> key_;
    std::array<std::uint64_t, 4> counter_;
    std::array<std::uint64_t, 4> block_;
    int pos_;
};

} // namespace pccsim
