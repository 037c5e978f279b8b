// SPDX-License-Identifier: Apache-2.0
//
// pccsim: polar-cap codebooks for limited-feedback MISO beamforming
// Copyright (c) 2026 the pccsim authors

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace pccsim {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

// A numerical invariant broke mid-computation (non-finite statistic, packing
// above its bound, corrupted cache). Distinct from invalid_argument so
// callers can tell bad inputs from internal breakage.
struct invariant_violation : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

// Numerical tolerances used by validation helpers across the library.
struct Tolerances
{
    double unit_norm = 1e-12;       // | ||v|| - 1 |
    double unitary = 1e-10;         // max entry of |A^H A - I|
    double pcc_radius = 1e-9;       // basis-to-codeword distance vs radius
    double reconstruct = 1e-12;     // TX/RX codeword agreement
};

inline constexpr Tolerances kTol{};

// Square matrix stored as a list of columns.
struct UnitaryMatrix
{
    std::size_t dim = 0;
    std::vector<cvec> cols;
};

double vec_norm(const cvec &v);

// x^H y
cplx inner_product(const cvec &x, const cvec &y);

cvec normalized(const cvec &v);

bool is_unit(const cvec &v, double tol = kTol.unit_norm);

// Chordal distance sqrt(1 - |x^H y|^2) between unit vectors, clamped at 0 so
// rounding on near-identical inputs cannot produce NaN.
double chordal_distance(const cvec &x, const cvec &y);

// Deterministic unitary matrix whose first column equals w1 (to 1e-12),
// built from a Householder reflector. Returns the identity when
// |1 - w1[0]| <= 1e-14.
UnitaryMatrix unitary_completion(const cvec &w1);

// y = M x
cvec mat_vec(const UnitaryMatrix &m, const cvec &x);

// max entry of |M^H M - I|
double unitarity_error(const UnitaryMatrix &m);

// ULA response, entry k = exp(-j 2 pi k d_over_lambda cos(theta)).
cvec array_response(double theta, std::size_t n_t, double d_over_lambda);

// array_response scaled to unit norm, i.e. divided by sqrt(n_t).
cvec normalized_array_response(double theta, std::size_t n_t, double d_over_lambda);

} // namespace pccsim
