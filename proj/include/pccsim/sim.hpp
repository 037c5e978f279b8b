// SPDX-License-Identifier: Apache-2.0
//
// pccsim: polar-cap codebooks for limited-feedback MISO beamforming
// Copyright (c) 2026 the pccsim authors

#pragma once

#include "pccsim/codebooks.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pccsim {

enum class ThetaMode
{
    uniform, // theta ~ U[0, pi) per trial
    fixed,   // theta = theta_fixed for every trial
};

// One codebook under test; radius is required for fixed_pcc and ignored
// otherwise.
struct CodebookSpec
{
    CodebookKind kind = CodebookKind::adaptive_pcc;
    std::optional<double> radius;
};

std::string to_string(const CodebookSpec &spec);
CodebookSpec codebook_spec_from_string(const std::string &text);

// Label used in result rows: the kind name, with the radius appended for
// fixed_pcc (e.g. "fixed_pcc_0.9").
std::string row_label(const CodebookSpec &spec);

struct ExperimentConfig
{
    std::size_t n_t = 4;
    unsigned b_bits = 4;
    double d_over_lambda = 0.5;
    std::vector<double> k_grid_db = {-10.0, -5.0, 0.0, 3.0, 5.0, 10.0, 15.0, 20.0};
    std::vector<double> g_sq_values;
    std::vector<CodebookSpec> codebook_specs;
    std::size_t trials = 100000;
    std::uint64_t master_seed = 12345;
    ThetaMode theta_mode = ThetaMode::uniform;
    double theta_fixed = 0.0;
    std::uint64_t packing_seed = 7;
    std::optional<unsigned> radius_bits;
};

// Standard comparison set: adaptive PCC, fixed PCC at 0.9/0.6/0.3, RVQ,
// DFT, Grassmannian.
std::vector<CodebookSpec> default_codebook_specs();

void validate(const ExperimentConfig &config);

// Ordered key=value view of the config; embedded verbatim (as comments) in
// every output so results carry their provenance.
std::vector<std::pair<std::string, std::string>> config_echo(const ExperimentConfig &config);

struct ResultRow
{
    double k_db = 0.0;
    double g_sq = 0.0;      // NaN when the experiment does not condition on g
    std::string codebook;   // empty when not applicable
    std::string statistic;
    double value = 0.0;
    double std_error = 0.0; // NaN when absent
    std::size_t trials = 0;
    std::uint64_t master_seed = 0;
};

struct ExperimentResult
{
    ExperimentConfig config;
    std::vector<ResultRow> rows;
};

// Execution knobs that must not influence the numbers: results are
// bit-identical for any thread count.
struct RunOptions
{
    std::size_t threads = 0; // 0 = hardware concurrency
    std::string packing_cache_dir;
};

// Mean radius experiment: per (K, g_sq) grid point, the Monte-Carlo estimate
// of the mean cap radius over conditioned channel draws next to its closed
// form (rows "mean_radius_mc" with standard error, "mean_radius_approx"
// without).
ExperimentResult run_radius_approx_experiment(const ExperimentConfig &config,
                                              const RunOptions &opts = {});

// Mean beamforming gain vs K: per K grid point and codebook spec, row
// "mean_gain" with standard error. G_LOS is drawn from CN(0,1) each trial;
// all specs score the same channel draws.
ExperimentResult run_gain_vs_k_experiment(const ExperimentConfig &config,
                                          const RunOptions &opts = {});

// Gain CDF under conditioning: per (K, g_sq) grid point and codebook spec,
// rows "quantile_0.01" .. "quantile_0.99".
ExperimentResult run_gain_cdf_experiment(const ExperimentConfig &config,
                                         const RunOptions &opts = {});

// Sample mean and its standard error (sample std / sqrt(n)). Pairwise
// summation, so the result does not depend on how trials were scheduled.
// n = 1 yields a NaN standard error.
std::pair<double, double> mc_mean(const std::vector<double> &values);

// Quantiles of the empirical distribution by linear interpolation of the
// order statistics.
std::vector<double> empirical_cdf(const std::vector<double> &values,
                                  const std::vector<double> &quantiles);

// 0.01, 0.02, ..., 0.99
std::vector<double> default_quantile_grid();

// CSV: "# key=value" config echo, header row, one line per result row,
// floats with 17 significant digits. JSON: the same content as a document.
std::string to_csv(const ExperimentResult &result);
std::string to_json(const ExperimentResult &result);

} // namespace pccsim
