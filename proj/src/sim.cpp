// SPDX-License-Identifier: Apache-2.0
//
// pccsim: polar-cap codebooks for limited-feedback MISO beamforming
// Copyright (c) 2026 the pccsim authors

#include "pccsim/sim.hpp"

#include "pccsim/analysis.hpp"
#include "pccsim/feedback.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

namespace pccsim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// shortest representation that round-trips
std::string fmt_shortest(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// fixed 17 significant digits (CSV contract)
std::string fmt_17(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string &text)
{
    double v = 0.0;
    const char *first = text.data();
    const char *last = first + text.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last)
        throw std::invalid_argument("bad number: '" + text + "'");
    return v;
}

double pairwise_sum(const double *x, std::size_t n)
{
    if (n <= 128)
    {
        double s = 0.0;
        for (std::size_t i = 0; i < n; i++)
            s += x[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

// Runs body(t) for every t in [0, trials), partitioned contiguously over
// worker threads. Callers write per-trial slots, so scheduling cannot change
// the aggregate.
template <typename F>
void parallel_trials(std::size_t trials, std::size_t threads, F &&body)
{
    if (threads == 0)
        threads = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    threads = std::min(threads, trials);
    if (threads <= 1)
    {
        for (std::size_t t = 0; t < trials; t++)
            body(t);
        return;
    }

    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t w = 0; w < threads; w++)
    {
        const std::size_t lo = trials * w / threads;
        const std::size_t hi = trials * (w + 1) / threads;
        pool.emplace_back([&, w, lo, hi] {
            try
            {
                for (std::size_t t = lo; t < hi; t++)
                    body(t);
            }
            catch (...)
            {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto &th : pool)
        th.join();
    for (const auto &e : errors)
        if (e)
            std::rethrow_exception(e);
}

double draw_theta(const ExperimentConfig &config, RngStream &rng)
{
    if (config.theta_mode == ThetaMode::uniform)
        return rng.uniform(0.0, std::numbers::pi);
    return config.theta_fixed;
}

void check_unit_interval(double v, const char *what)
{
    if (!(v >= 0.0 && v <= 1.0))
        throw invariant_violation(std::string(what) + " outside [0,1]");
}

struct GainContext
{
    const ExperimentConfig *config = nullptr;
    Codebook ingredient; // (n_t - 1)-dim packing shared by every PCC spec
    Codebook grass_full; // n_t-dim packing for the plain Grassmannian baseline
    Codebook dft;
    bool need_rvq = false;
};

GainContext make_gain_context(const ExperimentConfig &config, const RunOptions &opts)
{
    GainContext ctx;
    ctx.config = &config;
    const std::size_t count = (std::size_t{1} << config.b_bits);
    bool need_pcc = false, need_grass = false, need_dft = false;
    for (const auto &spec : config.codebook_specs)
    {
        switch (spec.kind)
        {
        case CodebookKind::fixed_pcc:
        case CodebookKind::adaptive_pcc:
            need_pcc = true;
            break;
        case CodebookKind::grassmannian:
            need_grass = true;
            break;
        case CodebookKind::dft:
            need_dft = true;
            break;
        case CodebookKind::rvq:
            ctx.need_rvq = true;
            break;
        }
    }
    if (need_pcc)
        ctx.ingredient = load_or_compute_packing(config.n_t - 1, count - 1,
                                                 config.packing_seed, kPackIters,
                                                 kPackRestarts, opts.packing_cache_dir);
    if (need_grass)
        ctx.grass_full = load_or_compute_packing(config.n_t, count, config.packing_seed,
                                                 kPackIters, kPackRestarts,
                                                 opts.packing_cache_dir);
    if (need_dft)
        ctx.dft = dft_codebook(config.n_t, config.b_bits);
    return ctx;
}

// Gain of every configured codebook on one channel draw. rng must already
// have produced theta and the channel; the per-trial RVQ codebook is drawn
// here, after the channel, when configured.
void score_trial(const GainContext &ctx, const ChannelParams &params,
                 const ChannelRealization &real, RngStream &rng, double *out)
{
    const ExperimentConfig &config = *ctx.config;
    std::optional<Codebook> rvq;
    if (ctx.need_rvq)
        rvq = rvq_codebook(config.n_t, config.b_bits, rng);

    std::optional<cvec> basis; // lazily computed array response at theta
    auto theta_basis = [&]() -> const cvec & {
        if (!basis)
            basis = normalized_array_response(params.theta, params.n_t,
                                              params.d_over_lambda);
        return *basis;
    };

    for (std::size_t s = 0; s < config.codebook_specs.size(); s++)
    {
        const auto &spec = config.codebook_specs[s];
        Codebook local;
        const Codebook *cb = nullptr;
        switch (spec.kind)
        {
        case CodebookKind::grassmannian:
            cb = &ctx.grass_full;
            break;
        case CodebookKind::rvq:
            cb = &*rvq;
            break;
        case CodebookKind::dft:
            cb = &ctx.dft;
            break;
        case CodebookKind::fixed_pcc:
            local = pcc_construct(theta_basis(), *spec.radius, ctx.ingredient);
            cb = &local;
            break;
        case CodebookKind::adaptive_pcc:
        {
            auto [acb, radius] = adaptive_pcc(real.h, params, ctx.ingredient);
            check_unit_interval(radius, "adaptive radius");
            if (config.radius_bits)
            {
                // both ends rebuild the codebook from the quantized radius
                const double q = quantize_radius(radius, *config.radius_bits);
                local = pcc_construct(theta_basis(), q, ctx.ingredient);
            }
            else
                local = std::move(acb);
            cb = &local;
            break;
        }
        }
        const std::size_t j = select_codeword(real.h, *cb);
        const double gain = beamforming_gain(real.h, cb->words[j]);
        if (!std::isfinite(gain))
            throw invariant_violation("non-finite beamforming gain");
        check_unit_interval(gain, "beamforming gain");
        out[s] = gain;
    }
}

} // namespace

std::string to_string(const CodebookSpec &spec)
{
    if (spec.kind == CodebookKind::fixed_pcc)
        return to_string(spec.kind) + ":" + fmt_shortest(spec.radius.value_or(kNaN));
    return to_string(spec.kind);
}

CodebookSpec codebook_spec_from_string(const std::string &text)
{
    CodebookSpec spec;
    const auto colon = text.find(':');
    if (colon == std::string::npos)
    {
        spec.kind = codebook_kind_from_string(text);
        if (spec.kind == CodebookKind::fixed_pcc)
            throw std::invalid_argument("codebook spec '" + text +
                                        "': fixed_pcc needs a radius, e.g. fixed_pcc:0.9");
        return spec;
    }
    spec.kind = codebook_kind_from_string(text.substr(0, colon));
    if (spec.kind != CodebookKind::fixed_pcc)
        throw std::invalid_argument("codebook spec '" + text +
                                    "': only fixed_pcc takes a radius");
    spec.radius = parse_double(text.substr(colon + 1));
    if (!(*spec.radius >= 0.0 && *spec.radius <= 1.0))
        throw std::invalid_argument("codebook spec '" + text + "': radius outside [0,1]");
    return spec;
}

std::string row_label(const CodebookSpec &spec)
{
    if (spec.kind == CodebookKind::fixed_pcc)
        return to_string(spec.kind) + "_" + fmt_shortest(spec.radius.value_or(kNaN));
    return to_string(spec.kind);
}

std::vector<CodebookSpec> default_codebook_specs()
{
    return {
        {CodebookKind::adaptive_pcc, std::nullopt},
        {CodebookKind::fixed_pcc, 0.9},
        {CodebookKind::fixed_pcc, 0.6},
        {CodebookKind::fixed_pcc, 0.3},
        {CodebookKind::rvq, std::nullopt},
        {CodebookKind::dft, std::nullopt},
        {CodebookKind::grassmannian, std::nullopt},
    };
}

void validate(const ExperimentConfig &config)
{
    if (config.n_t < 2)
        throw std::invalid_argument("config key n_t: must be >= 2");
    if (config.b_bits < 1)
        throw std::invalid_argument("config key b_bits: must be >= 1");
    if (!(config.d_over_lambda > 0.0))
        throw std::invalid_argument("config key d_over_lambda: must be > 0");
    if (config.trials < 1)
        throw std::invalid_argument("config key trials: must be >= 1");
    if (config.k_grid_db.empty())
        throw std::invalid_argument("config key k_grid_db: must be nonempty");
    for (const double k : config.k_grid_db)
        if (!std::isfinite(k))
            throw std::invalid_argument("config key k_grid_db: entries must be finite");
    for (const double g : config.g_sq_values)
        if (!(g >= 0.0) || !std::isfinite(g))
            throw std::invalid_argument("config key g_sq_values: entries must be >= 0");
    if (!std::isfinite(config.theta_fixed))
        throw std::invalid_argument("config key theta_mode: fixed angle must be finite");
    if (config.radius_bits && *config.radius_bits < 1)
        throw std::invalid_argument("config key radius_bits: must be >= 1 when set");
    const std::size_t count = (std::size_t{1} << config.b_bits);
    for (const auto &spec : config.codebook_specs)
    {
        if (spec.kind == CodebookKind::fixed_pcc)
        {
            if (!spec.radius || !(*spec.radius >= 0.0 && *spec.radius <= 1.0))
                throw std::invalid_argument(
                    "config key codebooks: fixed_pcc radius outside [0,1]");
        }
        if (spec.kind == CodebookKind::dft && count < config.n_t)
            throw std::invalid_argument(
                "config key codebooks: dft requires 2^b_bits >= n_t");
    }
}

std::vector<std::pair<std::string, std::string>> config_echo(const ExperimentConfig &config)
{
    auto join_doubles = [](const std::vector<double> &xs) {
        std::string out;
        for (std::size_t i = 0; i < xs.size(); i++)
        {
            if (i)
                out += ",";
            out += fmt_shortest(xs[i]);
        }
        return out;
    };
    std::string specs;
    for (std::size_t i = 0; i < config.codebook_specs.size(); i++)
    {
        if (i)
            specs += ",";
        specs += to_string(config.codebook_specs[i]);
    }
    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("n_t", std::to_string(config.n_t));
    kv.emplace_back("b_bits", std::to_string(config.b_bits));
    kv.emplace_back("d_over_lambda", fmt_shortest(config.d_over_lambda));
    kv.emplace_back("k_grid_db", join_doubles(config.k_grid_db));
    kv.emplace_back("g_sq_values", join_doubles(config.g_sq_values));
    kv.emplace_back("codebooks", specs);
    kv.emplace_back("trials", std::to_string(config.trials));
    kv.emplace_back("master_seed", std::to_string(config.master_seed));
    kv.emplace_back("theta_mode", config.theta_mode == ThetaMode::uniform
                                      ? std::string("uniform")
                                      : "fixed:" + fmt_shortest(config.theta_fixed));
    kv.emplace_back("packing_seed", std::to_string(config.packing_seed));
    kv.emplace_back("radius_bits", config.radius_bits
                                       ? std::to_string(*config.radius_bits)
                                       : std::string("none"));
    return kv;
}

std::pair<double, double> mc_mean(const std::vector<double> &values)
{
    if (values.empty())
        throw std::invalid_argument("mc_mean: empty input");
    const std::size_t n = values.size();
    const double mean = pairwise_sum(values.data(), n) / static_cast<double>(n);
    if (n == 1)
        return {mean, kNaN};
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; i++)
    {
        const double d = values[i] - mean;
        sq[i] = d * d;
    }
    const double var = pairwise_sum(sq.data(), n) / static_cast<double>(n - 1);
    return {mean, std::sqrt(var / static_cast<double>(n))};
}

std::vector<double> empirical_cdf(const std::vector<double> &values,
                                  const std::vector<double> &quantiles)
{
    if (values.empty())
        throw std::invalid_argument("empirical_cdf: empty input");
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> out;
    out.reserve(quantiles.size());
    const std::size_t n = sorted.size();
    for (const double q : quantiles)
    {
        if (!(q >= 0.0 && q <= 1.0))
            throw std::invalid_argument("empirical_cdf: quantile outside [0,1]");
        const double pos = q * static_cast<double>(n - 1);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const double frac = pos - static_cast<double>(lo);
        double v = sorted[lo];
        if (lo + 1 < n)
            v += frac * (sorted[lo + 1] - sorted[lo]);
        out.push_back(v);
    }
    return out;
}

std::vector<double> default_quantile_grid()
{
    std::vector<double> q;
    q.reserve(99);
    for (int i = 1; i <= 99; i++)
        q.push_back(static_cast<double>(i) / 100.0);
    return q;
}

ExperimentResult run_radius_approx_experiment(const ExperimentConfig &config,
                                              const RunOptions &opts)
{
    validate(config);
    if (config.g_sq_values.empty())
        throw std::invalid_argument("config key g_sq_values: required for this experiment");

    ExperimentResult result;
    result.config = config;
    const std::size_t n_g = config.g_sq_values.size();

    for (std::size_t ik = 0; ik < config.k_grid_db.size(); ik++)
    {
        const double k_db = config.k_grid_db[ik];
        const double k = db_to_linear(k_db);
        for (std::size_t ig = 0; ig < n_g; ig++)
        {
            const double g_sq = config.g_sq_values[ig];
            const std::size_t point = ik * n_g + ig;
            std::vector<double> radii(config.trials);

            parallel_trials(config.trials, opts.threads, [&](std::size_t t) {
                RngStream rng(config.master_seed,
                              static_cast<std::uint64_t>(point) * config.trials + t);
                ChannelParams params{.n_t = config.n_t, .k_factor = k,
                                     .theta = draw_theta(config, rng),
                                     .d_over_lambda = config.d_over_lambda};
                const auto real = sample_channel_given_glos_sq(params, g_sq, rng);
                const cvec basis = normalized_array_response(params.theta, params.n_t,
                                                             params.d_over_lambda);
                const double r = chordal_distance(normalized(real.h), basis);
                check_unit_interval(r, "cap radius");
                radii[t] = r;
            });

            const auto [mean, se] = mc_mean(radii);
            result.rows.push_back({k_db, g_sq, "", "mean_radius_mc", mean, se,
                                   config.trials, config.master_seed});
            result.rows.push_back({k_db, g_sq, "", "mean_radius_approx",
                                   delta_mean_approx(k, config.n_t, g_sq), kNaN,
                                   config.trials, config.master_seed});
        }
    }
    return result;
}

ExperimentResult run_gain_vs_k_experiment(const ExperimentConfig &config,
                                          const RunOptions &opts)
{
    validate(config);
    if (config.codebook_specs.empty())
        throw std::invalid_argument("config key codebooks: must be nonempty");

    ExperimentResult result;
    result.config = config;
    const GainContext ctx = make_gain_context(config, opts);
    const std::size_t n_specs = config.codebook_specs.size();

    for (std::size_t ik = 0; ik < config.k_grid_db.size(); ik++)
    {
        const double k_db = config.k_grid_db[ik];
        const double k = db_to_linear(k_db);
        std::vector<std::vector<double>> gains(n_specs,
                                               std::vector<double>(config.trials));

        parallel_trials(config.trials, opts.threads, [&](std::size_t t) {
            RngStream rng(config.master_seed,
                          static_cast<std::uint64_t>(ik) * config.trials + t);
            ChannelParams params{.n_t = config.n_t, .k_factor = k,
                                 .theta = draw_theta(config, rng),
                                 .d_over_lambda = config.d_over_lambda};
            const auto real = sample_channel(params, rng);
            std::vector<double> out(n_specs);
            score_trial(ctx, params, real, rng, out.data());
            for (std::size_t s = 0; s < n_specs; s++)
                gains[s][t] = out[s];
        });

        for (std::size_t s = 0; s < n_specs; s++)
        {
            const auto [mean, se] = mc_mean(gains[s]);
            result.rows.push_back({k_db, kNaN, row_label(config.codebook_specs[s]),
                                   "mean_gain", mean, se, config.trials,
                                   config.master_seed});
        }
    }
    return result;
}

ExperimentResult run_gain_cdf_experiment(const ExperimentConfig &config,
                                         const RunOptions &opts)
{
    validate(config);
    if (config.g_sq_values.empty())
        throw std::invalid_argument("config key g_sq_values: required for this experiment");
    if (config.codebook_specs.empty())
        throw std::invalid_argument("config key codebooks: must be nonempty");

    ExperimentResult result;
    result.config = config;
    const GainContext ctx = make_gain_context(config, opts);
    const std::size_t n_specs = config.codebook_specs.size();
    const std::size_t n_g = config.g_sq_values.size();
    const auto quantiles = default_quantile_grid();

    for (std::size_t ik = 0; ik < config.k_grid_db.size(); ik++)
    {
        const double k_db = config.k_grid_db[ik];
        const double k = db_to_linear(k_db);
        for (std::size_t ig = 0; ig < n_g; ig++)
        {
            const double g_sq = config.g_sq_values[ig];
            const std::size_t point = ik * n_g + ig;
            std::vector<std::vector<double>> gains(n_specs,
                                                   std::vector<double>(config.trials));

            parallel_trials(config.trials, opts.threads, [&](std::size_t t) {
                RngStream rng(config.master_seed,
                              static_cast<std::uint64_t>(point) * config.trials + t);
                ChannelParams params{.n_t = config.n_t, .k_factor = k,
                                     .theta = draw_theta(config, rng),
                                     .d_over_lambda = config.d_over_lambda};
                const auto real = sample_channel_given_glos_sq(params, g_sq, rng);
                std::vector<double> out(n_specs);
                score_trial(ctx, params, real, rng, out.data());
                for (std::size_t s = 0; s < n_specs; s++)
                    gains[s][t] = out[s];
            });

            for (std::size_t s = 0; s < n_specs; s++)
            {
                const auto qv = empirical_cdf(gains[s], quantiles);
                for (std::size_t iq = 0; iq < quantiles.size(); iq++)
                {
                    char name[32];
                    std::snprintf(name, sizeof(name), "quantile_%.2f", quantiles[iq]);
                    result.rows.push_back({k_db, g_sq,
                                           row_label(config.codebook_specs[s]), name,
                                           qv[iq], kNaN, config.trials,
                                           config.master_seed});
                }
            }
        }
    }
    return result;
}

std::string to_csv(const ExperimentResult &result)
{
    std::string out;
    for (const auto &[key, value] : config_echo(result.config))
        out += "# " + key + "=" + value + "\n";
    out += "k_db,g_sq,codebook,statistic,value,std_error,trials,master_seed\n";
    for (const auto &row : result.rows)
    {
        out += fmt_17(row.k_db);
        out += ",";
        if (!std::isnan(row.g_sq))
            out += fmt_17(row.g_sq);
        out += "," + row.codebook + "," + row.statistic + "," + fmt_17(row.value) + ",";
        if (!std::isnan(row.std_error))
            out += fmt_17(row.std_error);
        out += "," + std::to_string(row.trials) + "," + std::to_string(row.master_seed);
        out += "\n";
    }
    return out;
}

std::string to_json(const ExperimentResult &result)
{
    nlohmann::ordered_json doc;
    nlohmann::ordered_json cfg;
    for (const auto &[key, value] : config_echo(result.config))
        cfg[key] = value;
    doc["config"] = cfg;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto &row : result.rows)
    {
        nlohmann::ordered_json r;
        r["k_db"] = row.k_db;
        if (std::isnan(row.g_sq))
            r["g_sq"] = nullptr;
        else
            r["g_sq"] = row.g_sq;
        r["codebook"] = row.codebook;
        r["statistic"] = row.statistic;
        r["value"] = row.value;
        if (std::isnan(row.std_error))
            r["std_error"] = nullptr;
        else
            r["std_error"] = row.std_error;
        r["trials"] = row.trials;
        r["master_seed"] = row.master_seed;
        doc["rows"].push_back(std::move(r));
    }
    return doc.dump(2) + "\n";
}

} // namespace pccsim
