// SPDX-License-Identifier: Apache-2.0
//
// pccsim: polar-cap codebooks for limited-feedback MISO beamforming
// Copyright (c) 2026 the pccsim authors

#pragma once

#include "pccsim/channel.hpp"
#include "pccsim/linalg.hpp"
#include "pccsim/rng.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

namespace pccsim {

enum class CodebookKind
{
    grassmannian,
    rvq,
    dft,
    fixed_pcc,
    adaptive_pcc,
};

std::string to_string(CodebookKind kind);
CodebookKind codebook_kind_from_string(const std::string &name);

// Ordered list of unit-norm codewords. For the PCC kinds, words[0] is the
// basis codeword and every other codeword sits at chordal distance `radius`
// from it.
struct Codebook
{
    std::size_t dim = 0;
    CodebookKind kind = CodebookKind::grassmannian;
    std::vector<cvec> words;
    std::optional<double> radius;
};

struct PackingReport
{
    double min_distance = 0.0;
    double welch_rankin_bound = 0.0;
    std::size_t iterations = 0;
    std::size_t restarts = 0;
    std::uint64_t seed = 0;
};

// Chordal form of the Welch/Rankin bound on the minimum pairwise distance of
// `count` lines in C^dim: sqrt(count (dim-1) / (dim (count-1))). Returns 1
// for count < 2.
double welch_rankin_bound(std::size_t dim, std::size_t count);

inline constexpr std::size_t kPackIters = 1500;
inline constexpr std::size_t kPackRestarts = 20;

// Max-min chordal packing of `count` unit vectors in C^dim. Smoothed max-min
// ascent: the soft maximum (log-sum-exp weights with a temperature schedule)
// of the pairwise |inner product|^2 is driven down by projected gradient
// steps on the unit spheres. Deterministic for fixed (seed, max_iters,
// restarts); the best restart wins. count <= dim short-circuits to the
// canonical orthonormal basis, which is optimal there.
std::pair<Codebook, PackingReport> grassmannian_pack(std::size_t dim, std::size_t count,
                                                     std::uint64_t seed,
                                                     std::size_t max_iters = kPackIters,
                                                     std::size_t restarts = kPackRestarts);

// 2^b_bits i.i.d. unit vectors, each a normalized CN(0, I) draw.
Codebook rvq_codebook(std::size_t n_t, unsigned b_bits, RngStream &rng);

// Oversampled-DFT beams: codeword m has entry k = e^{j 2 pi k m / 2^b} / sqrt(n_t).
// Requires 2^b_bits >= n_t.
Codebook dft_codebook(std::size_t n_t, unsigned b_bits);

// Polar-cap codebook with the given basis and radius: codeword 0 is the
// basis, codeword j >= 1 is U [sqrt(1-r^2); r g_j] where U is the unitary
// completion of the basis and g_j a Grassmannian codeword of dimension
// basis.dim - 1.
Codebook pcc_construct(const cvec &basis, double radius, const Codebook &grassmannian);

// Adaptive PCC: basis is the normalized array response at params.theta and
// the radius is the chordal distance from h/||h|| to that basis. Returns the
// codebook and the radius.
std::pair<Codebook, double> adaptive_pcc(const cvec &h, const ChannelParams &params,
                                         const Codebook &grassmannian);

// Minimum chordal distance over unordered codeword pairs; with
// non_basis_only, codeword 0 is excluded from the pairs.
double min_pairwise_distance(const Codebook &cb, bool non_basis_only = false);

// Text format, bit-exact round-trip:
//   <dim> <count> <kind>            (radius appended for the PCC kinds)
//   <re> <im> ... <re> <im>         (one line per codeword, 17 significant digits)
std::string serialize_codebook(const Codebook &cb);
Codebook parse_codebook(std::istream &in);
void save_codebook(const Codebook &cb, const std::string &path);
Codebook load_codebook(const std::string &path);

// Returns the packing stored at <cache_dir>/packing_dim<D>_count<C>_seed<S>.txt,
// computing and saving it first when absent. An empty cache_dir disables the
// cache. Cached files are saved with full precision, so cached and freshly
// computed packings are bit-identical.
Codebook load_or_compute_packing(std::size_t dim, std::size_t count, std::uint64_t seed,
                                 std::size_t max_iters, std::size_t restarts,
                                 const std::string &cache_dir,
                                 PackingReport *report = nullptr);

} // namespace pccsim
