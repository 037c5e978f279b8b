// SPDX-License-Identifier: Apache-2.0
//
// pccsim: polar-cap codebooks for limited-feedback MISO beamforming
// Copyright (c) 2026 the pccsim authors

#include "pccsim/codebooks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace pccsim {

std::string to_string(CodebookKind kind)
{
    switch (kind)
    {
    case CodebookKind::grassmannian: return "grassmannian";
    case CodebookKind::rvq: return "rvq";
    case CodebookKind::dft: return "dft";
    case CodebookKind::fixed_pcc: return "fixed_pcc";
    case CodebookKind::adaptive_pcc: return "adaptive_pcc";
    }
    throw std::invalid_argument("to_string: unknown codebook kind");
}

CodebookKind codebook_kind_from_string(const std::string &name)
{
    if (name == "grassmannian") return CodebookKind::grassmannian;
    if (name == "rvq") return CodebookKind::rvq;
    if (name == "dft") return CodebookKind::dft;
    if (name == "fixed_pcc") return CodebookKind::fixed_pcc;
    if (name == "adaptive_pcc") return CodebookKind::adaptive_pcc;
    throw std::invalid_argument("unknown codebook kind: " + name);
}

double welch_rankin_bound(std::size_t dim, std::size_t count)
{
    if (dim < 1)
        throw std::invalid_argument("welch_rankin_bound: dim must be positive");
    if (count < 2)
        return 1.0;
    const double d = static_cast<double>(dim);
    const double n = static_cast<double>(count);
    return std::sqrt(n * (d - 1.0) / (d * (n - 1.0)));
}

namespace {

std::vector<cvec> random_unit_words(std::size_t dim, std::size_t count, RngStream &rng)
{
    std::vector<cvec> words(count, cvec(dim));
    for (auto &w : words)
    {
        for (auto &e : w)
            e = rng.cnormal();
        w = normalized(w);
    }
    return words;
}

double min_pairwise(const std::vector<cvec> &words, std::size_t from)
{
    double best = 1.0;
    for (std::size_t i = from; i < words.size(); i++)
        for (std::size_t j = i + 1; j < words.size(); j++)
            best = std::min(best, chordal_distance(words[i], words[j]));
    return best;
}

// One smoothed max-min descent pass; returns the achieved min distance.
double pack_one_restart(std::vector<cvec> &words, std::size_t max_iters)
{
    const std::size_t n = words.size();
    const std::size_t dim = words[0].size();
    constexpr double beta_lo = 30.0, beta_hi = 800.0;

    std::vector<std::vector<cplx>> p(n, std::vector<cplx>(n));
    std::vector<std::vector<double>> w(n, std::vector<double>(n));
    std::vector<cvec> grad(n, cvec(dim));

    for (std::size_t it = 0; it < max_iters; it++)
    {
        const double frac = static_cast<double>(it) / static_cast<double>(max_iters);
        const double beta = beta_lo + (beta_hi - beta_lo) * frac;
        const double step = 0.5 * (1.0 - 0.9 * frac);

        double amax = -1.0;
        for (std::size_t i = 0; i < n; i++)
            for (std::size_t j = i + 1; j < n; j++)
            {
                p[i][j] = inner_product(words[i], words[j]);
                p[j][i] = std::conj(p[i][j]);
                amax = std::max(amax, std::norm(p[i][j]));
            }

        double total = 0.0;
        for (std::size_t i = 0; i < n; i++)
            for (std::size_t j = 0; j < n; j++)
            {
                if (i == j)
                {
                    w[i][j] = 0.0;
                    continue;
                }
                w[i][j] = std::exp(beta * (std::norm(p[i][j]) - amax));
                total += w[i][j];
            }

        // Wirtinger gradient of sum_ij w_ij |p_ij|^2 wrt conj(w_i), all
        // words updated simultaneously from the pre-step values
        for (std::size_t i = 0; i < n; i++)
        {
            std::fill(grad[i].begin(), grad[i].end(), cplx(0.0));
            for (std::size_t j = 0; j < n; j++)
            {
                if (i == j)
                    continue;
                const cplx c = (w[i][j] / total) * std::conj(p[i][j]);
                for (std::size_t k = 0; k < dim; k++)
                    grad[i][k] += c * words[j][k];
            }
        }
        for (std::size_t i = 0; i < n; i++)
        {
            for (std::size_t k = 0; k < dim; k++)
                words[i][k] -= step * grad[i][k];
            words[i] = normalized(words[i]);
        }
    }
    return min_pairwise(words, 0);
}

} // namespace

std::pair<Codebook, PackingReport> grassmannian_pack(std::size_t dim, std::size_t count,
                                                     std::uint64_t seed,
                                                     std::size_t max_iters,
                                                     std::size_t restarts)
{
    if (dim < 1)
        throw std::invalid_argument("grassmannian_pack: dim must be positive");
    if (count < 1)
        throw std::invalid_argument("grassmannian_pack: count must be positive");
    if (restarts < 1)
        throw std::invalid_argument("grassmannian_pack: restarts must be positive");

    Codebook cb;
    cb.dim = dim;
    cb.kind = CodebookKind::grassmannian;

    PackingReport report;
    report.welch_rankin_bound = welch_rankin_bound(dim, count);
    report.iterations = max_iters;
    report.restarts = restarts;
    report.seed = seed;

    if (dim == 1)
    {
        // degenerate: every unit "line" in C^1 is the scalar 1
        cb.words.assign(count, cvec{1.0});
        report.min_distance = count > 1 ? 0.0 : 1.0;
        return {cb, report};
    }
    if (count <= dim)
    {
        // an orthonormal set is optimal: all pairwise distances are 1
        cb.words.assign(count, cvec(dim, 0.0));
        for (std::size_t i = 0; i < count; i++)
            cb.words[i][i] = 1.0;
        report.min_distance = 1.0;
        return {cb, report};
    }

    double best = -1.0;
    for (std::size_t r = 0; r < restarts; r++)
    {
        RngStream rng(seed, r);
        auto words = random_unit_words(dim, count, rng);
        const double achieved = pack_one_restart(words, max_iters);
        if (achieved > best)
        {
            best = achieved;
            cb.words = std::move(words);
        }
    }
    report.min_distance = best;

    if (report.min_distance > report.welch_rankin_bound + 1e-9)
        throw invariant_violation("grassmannian_pack: computed distance exceeds the "
                                 "Welch/Rankin bound; numerical invariant violated");
    return {cb, report};
}

Codebook rvq_codebook(std::size_t n_t, unsigned b_bits, RngStream &rng)
{
    if (n_t < 1)
        throw std::invalid_argument("rvq_codebook: n_t must be positive");
    Codebook cb;
    cb.dim = n_t;
    cb.kind = CodebookKind::rvq;
    cb.words = random_unit_words(n_t, std::size_t{1} << b_bits, rng);
    return cb;
}

Codebook dft_codebook(std::size_t n_t, unsigned b_bits)
{
    if (n_t < 1)
        throw std::invalid_argument("dft_codebook: n_t must be positive");
    const std::size_t count = std::size_t{1} << b_bits;
    if (count < n_t)
        throw std::invalid_argument("dft_codebook: need 2^b_bits >= n_t");

    Codebook cb;
    cb.dim = n_t;
    cb.kind = CodebookKind::dft;
    cb.words.assign(count, cvec(n_t));
    const double scale = 1.0 / std::sqrt(static_cast<double>(n_t));
    for (std::size_t m = 0; m < count; m++)
        for (std::size_t k = 0; k < n_t; k++)
            cb.words[m][k] = scale * std::polar(1.0, 2.0 * std::numbers::pi *
                                                         static_cast<double>(k * m) /
                                                         static_cast<double>(count));
    return cb;
}

Codebook pcc_construct(const cvec &basis, double radius, const Codebook &grassmannian)
{
    if (basis.size() < 2)
        throw std::invalid_argument("pcc_construct: basis dimension must be at least 2");
    if (!is_unit(basis, 1e-9))
        throw std::invalid_argument("pcc_construct: basis must be unit norm");
    if (!(radius >= 0.0 && radius <= 1.0))
        throw std::invalid_argument("pcc_construct: radius must lie in [0, 1]");
    if (grassmannian.dim != basis.size() - 1)
        throw std::invalid_argument("pcc_construct: grassmannian dim must be basis dim - 1");

    const UnitaryMatrix u = unitary_completion(basis);
    const double top = std::sqrt(std::max(0.0, 1.0 - radius * radius));

    Codebook cb;
    cb.dim = basis.size();
    cb.kind = CodebookKind::fixed_pcc;
    cb.radius = radius;
    cb.words.reserve(grassmannian.words.size() + 1);
    cb.words.push_back(basis);
    cvec stacked(basis.size());
    for (const auto &g : grassmannian.words)
    {
        stacked[0] = top;
        for (std::size_t k = 0; k < g.size(); k++)
            stacked[k + 1] = radius * g[k];
        cb.words.push_back(mat_vec(u, stacked));
    }
    return cb;
}

std::pair<Codebook, double> adaptive_pcc(const cvec &h, const ChannelParams &params,
                                         const Codebook &grassmannian)
{
    validate(params);
    if (h.size() != params.n_t)
        throw std::invalid_argument("adaptive_pcc: channel dimension mismatch");
    if (vec_norm(h) == 0.0)
        throw std::invalid_argument("adaptive_pcc: zero channel");

    const cvec basis =
        normalized_array_response(params.theta, params.n_t, params.d_over_lambda);
    double radius = chordal_distance(normalized(h), basis);
    radius = std::clamp(radius, 0.0, 1.0);

    Codebook cb = pcc_construct(basis, radius, grassmannian);
    cb.kind = CodebookKind::adaptive_pcc;
    return {cb, radius};
}

double min_pairwise_distance(const Codebook &cb, bool non_basis_only)
{
    const std::size_t from = non_basis_only ? 1 : 0;
    if (cb.words.size() < from + 2)
        throw std::invalid_argument("min_pairwise_distance: need at least two codewords");
    return min_pairwise(cb.words, from);
}

namespace {

void append_double(std::string &out, double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

} // namespace

std::string serialize_codebook(const Codebook &cb)
{
    std::string out;
    out += std::to_string(cb.dim);
    out += ' ';
    out += std::to_string(cb.words.size());
    out += ' ';
    out += to_string(cb.kind);
    if (cb.radius.has_value())
    {
        out += ' ';
        append_double(out, *cb.radius);
    }
    out += '\n';
    for (const auto &w : cb.words)
    {
        if (w.size() != cb.dim)
            throw std::invalid_argument("serialize_codebook: inconsistent codeword dim");
        for (std::size_t k = 0; k < w.size(); k++)
        {
            if (k > 0)
                out += ' ';
            append_double(out, w[k].real());
            out += ' ';
            append_double(out, w[k].imag());
        }
        out += '\n';
    }
    return out;
}

Codebook parse_codebook(std::istream &in)
{
    std::string header;
    if (!std::getline(in, header))
        throw std::invalid_argument("parse_codebook: missing header line");

    std::istringstream hs(header);
    std::size_t dim = 0, count = 0;
    std::string kind_name;
    if (!(hs >> dim >> count >> kind_name))
        throw std::invalid_argument("parse_codebook: malformed header: " + header);

    Codebook cb;
    cb.dim = dim;
    cb.kind = codebook_kind_from_string(kind_name);

    double radius;
    if (hs >> radius)
        cb.radius = radius;
    if (cb.radius.has_value() !=
        (cb.kind == CodebookKind::fixed_pcc || cb.kind == CodebookKind::adaptive_pcc))
        throw std::invalid_argument("parse_codebook: radius must accompany exactly the PCC kinds");

    cb.words.assign(count, cvec(dim));
    for (std::size_t i = 0; i < count; i++)
    {
        std::string line;
        if (!std::getline(in, line))
            throw std::invalid_argument("parse_codebook: truncated file");
        std::istringstream ls(line);
        for (std::size_t k = 0; k < dim; k++)
        {
            double re, im;
            if (!(ls >> re >> im))
                throw std::invalid_argument("parse_codebook: malformed codeword line");
            cb.words[i][k] = cplx(re, im);
        }
        double extra;
        if (ls >> extra)
            throw std::invalid_argument("parse_codebook: trailing values on codeword line");
    }
    return cb;
}

void save_codebook(const Codebook &cb, const std::string &path)
{
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out)
            throw std::runtime_error("save_codebook: cannot open " + tmp);
        out << serialize_codebook(cb);
        if (!out.flush())
            throw std::runtime_error("save_codebook: write failed for " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

Codebook load_codebook(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("load_codebook: cannot open " + path);
    return parse_codebook(in);
}

Codebook load_or_compute_packing(std::size_t dim, std::size_t count, std::uint64_t seed,
                                 std::size_t max_iters, std::size_t restarts,
                                 const std::string &cache_dir, PackingReport *report)
{
    std::string path;
    if (!cache_dir.empty())
    {
        path = cache_dir + "/packing_dim" + std::to_string(dim) + "_count" +
               std::to_string(count) + "_seed" + std::to_string(seed) + ".txt";
        if (std::filesystem::exists(path))
        {
            Codebook cb = load_codebook(path);
            if (cb.dim != dim || cb.words.size() != count)
                throw invariant_violation("load_or_compute_packing: cache file " + path +
                                         " does not match its key; delete it to recompute");
            if (report)
            {
                report->min_distance = count > 1 ? min_pairwise_distance(cb) : 1.0;
                report->welch_rankin_bound = welch_rankin_bound(dim, count);
                report->iterations = max_iters;
                report->restarts = restarts;
                report->seed = seed;
            }
            return cb;
        }
    }

    auto [cb, rep] = grassmannian_pack(dim, count, seed, max_iters, restarts);
    if (report)
        *report = rep;
    if (!path.empty())
    {
        std::error_code ec;
        std::filesystem::create_directories(cache_dir, ec);
        if (!ec)
            save_codebook(cb, path);
    }
    return cb;
}

} // namespace pccsim
