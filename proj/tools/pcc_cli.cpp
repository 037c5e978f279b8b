// SPDX-License-Identifier: Apache-2.0
//
// pccsim: polar-cap codebooks for limited-feedback MISO beamforming
// Copyright (c) 2026 the pccsim authors

#include "pccsim/analysis.hpp"
#include "pccsim/feedback.hpp"
#include "pccsim/sim.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace pccsim;

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

std::vector<std::string> split(const std::string &text, char sep)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep))
        out.push_back(item);
    return out;
}

std::vector<double> parse_double_list(const std::string &text)
{
    std::vector<double> out;
    if (text.empty())
        return out;
    for (const auto &item : split(text, ','))
        out.push_back(parse_double(item));
    return out;
}

std::vector<CodebookSpec> parse_spec_list(const std::string &text)
{
    std::vector<CodebookSpec> out;
    if (text.empty())
        return out;
    for (const auto &item : split(text, ','))
        out.push_back(codebook_spec_from_string(item));
    return out;
}

std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// One config key as it appears in files and in the "# key=value" echo.
void set_config_key(ExperimentConfig &config, const std::string &key,
                    const std::string &value)
{
    auto to_u64 = [&](const std::string &v) {
        std::uint64_t x = 0;
        const auto res = std::from_chars(v.data(), v.data() + v.size(), x);
        if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
            throw std::invalid_argument("config key " + key + ": bad integer '" + v + "'");
        return x;
    };
    if (key == "n_t")
        config.n_t = static_cast<std::size_t>(to_u64(value));
    else if (key == "b_bits")
        config.b_bits = static_cast<unsigned>(to_u64(value));
    else if (key == "d_over_lambda")
        config.d_over_lambda = parse_double(value);
    else if (key == "k_grid_db")
        config.k_grid_db = parse_double_list(value);
    else if (key == "g_sq_values")
        config.g_sq_values = parse_double_list(value);
    else if (key == "codebooks")
        config.codebook_specs = parse_spec_list(value);
    else if (key == "trials")
        config.trials = static_cast<std::size_t>(to_u64(value));
    else if (key == "master_seed")
        config.master_seed = to_u64(value);
    else if (key == "theta_mode")
    {
        if (value == "uniform")
            config.theta_mode = ThetaMode::uniform;
        else if (value.rfind("fixed:", 0) == 0)
        {
            config.theta_mode = ThetaMode::fixed;
            config.theta_fixed = parse_double(value.substr(6));
        }
        else
            throw std::invalid_argument(
                "config key theta_mode: expected 'uniform' or 'fixed:<radians>'");
    }
    else if (key == "packing_seed")
        config.packing_seed = to_u64(value);
    else if (key == "radius_bits")
    {
        if (value == "none")
            config.radius_bits.reset();
        else
            config.radius_bits = static_cast<unsigned>(to_u64(value));
    }
    else
        throw std::invalid_argument("config file: unknown key '" + key + "'");
}

// Flat key=value file; '#' starts a comment; blank lines ignored.
void apply_config_file(const std::string &path, ExperimentConfig &config)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("config file: cannot open " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line))
    {
        lineno++;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config file: line " + std::to_string(lineno) +
                                        ": expected key=value");
        set_config_key(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

void write_text(const std::string &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::invalid_argument("cannot open output file " + path);
    out << text;
    if (!out)
        throw std::runtime_error("write failed for " + path);
}

ExperimentConfig figure_defaults(int figure)
{
    ExperimentConfig c;
    switch (figure)
    {
    case 2:
        c.k_grid_db = {0.0, 5.0, 10.0, 15.0, 20.0};
        c.g_sq_values = {0.0513, 0.1054};
        break;
    case 3:
        c.codebook_specs = default_codebook_specs();
        break;
    case 4:
        c.k_grid_db = {5.0};
        c.g_sq_values = {0.6931, 0.1054};
        c.codebook_specs = default_codebook_specs();
        break;
    default:
        throw std::invalid_argument("--figure must be 2, 3, or 4");
    }
    return c;
}

struct GenArgs
{
    std::string kind;
    std::size_t nt = 4;
    std::size_t dim = 0;
    std::size_t count = 0;
    unsigned bits = 4;
    std::uint64_t seed = 7;
    double radius = -1.0;
    double theta = 0.0;
    double d_over_lambda = 0.5;
    std::size_t iters = kPackIters;
    std::size_t restarts = kPackRestarts;
    std::string out;
};

int cmd_gen_codebook(const GenArgs &args)
{
    Codebook cb;
    std::optional<PackingReport> report;
    const CodebookKind kind = codebook_kind_from_string(args.kind);
    switch (kind)
    {
    case CodebookKind::grassmannian:
    {
        if (args.dim == 0 || args.count == 0)
            throw std::invalid_argument("gen-codebook: grassmannian needs --dim and --count");
        auto [packed, rep] = grassmannian_pack(args.dim, args.count, args.seed,
                                               args.iters, args.restarts);
        cb = std::move(packed);
        report = rep;
        break;
    }
    case CodebookKind::rvq:
    {
        RngStream rng(args.seed, 0);
        cb = rvq_codebook(args.nt, args.bits, rng);
        break;
    }
    case CodebookKind::dft:
        cb = dft_codebook(args.nt, args.bits);
        break;
    case CodebookKind::fixed_pcc:
    {
        if (!(args.radius >= 0.0 && args.radius <= 1.0))
            throw std::invalid_argument("gen-codebook: fixed_pcc needs --radius in [0,1]");
        const std::size_t count = (std::size_t{1} << args.bits) - 1;
        const Codebook ingredient =
            grassmannian_pack(args.nt - 1, count, args.seed, args.iters, args.restarts)
                .first;
        const cvec basis =
            normalized_array_response(args.theta, args.nt, args.d_over_lambda);
        cb = pcc_construct(basis, args.radius, ingredient);
        break;
    }
    case CodebookKind::adaptive_pcc:
        throw std::invalid_argument(
            "gen-codebook: adaptive_pcc depends on a channel realization; "
            "use 'simulate' instead");
    }

    const std::string text = serialize_codebook(cb);
    if (!args.out.empty())
        write_text(args.out, text);

    std::ostream &report_dst = args.out.empty() ? std::cerr : std::cout;
    if (report)
        report_dst << "min_distance=" << fmt_17(report->min_distance)
                   << " welch_rankin_bound=" << fmt_17(report->welch_rankin_bound)
                   << " iterations=" << report->iterations
                   << " restarts=" << report->restarts << " seed=" << report->seed
                   << "\n";
    if (!args.out.empty())
        std::cout << "wrote " << cb.words.size() << " codewords of dimension " << cb.dim
                  << " to " << args.out << "\n";
    else
        std::cout << text;
    return 0;
}

struct AnalyzeArgs
{
    std::string k_db = "0";
    std::string nt = "4";
    std::string gsq = "0";
    std::string out;
};

int cmd_analyze(const AnalyzeArgs &args)
{
    const auto ks = parse_double_list(args.k_db);
    const auto nts = parse_double_list(args.nt);
    const auto gs = parse_double_list(args.gsq);
    if (ks.empty() || nts.empty() || gs.empty())
        throw std::invalid_argument("analyze: --k-db, --nt, and --gsq must be nonempty");

    std::string csv = "k_db,n_t,g_sq,mean_num,mean_den,cv_num,cv_den,"
                      "delta_mean_approx,validity_lhs,validity_rhs\n";
    for (const double k_db : ks)
        for (const double nt_val : nts)
        {
            if (!(nt_val >= 1.0) || nt_val != static_cast<double>(static_cast<std::size_t>(nt_val)))
                throw std::invalid_argument("analyze: --nt entries must be positive integers");
            const auto n_t = static_cast<std::size_t>(nt_val);
            for (const double g_sq : gs)
            {
                const double k = db_to_linear(k_db);
                const CondStats s = cond_stats(k, n_t, g_sq);
                const auto [lhs, rhs] = validity_expectations(k, n_t);
                csv += fmt_17(k_db) + "," + std::to_string(n_t) + "," + fmt_17(g_sq) +
                       "," + fmt_17(s.mean_num) + "," + fmt_17(s.mean_den) + "," +
                       fmt_17(s.cv_num) + "," + fmt_17(s.cv_den) + "," +
                       fmt_17(s.delta_mean_approx) + "," + fmt_17(lhs) + "," +
                       fmt_17(rhs) + "\n";
            }
        }
    if (!args.out.empty())
    {
        write_text(args.out, csv);
        std::cout << "wrote " << args.out << "\n";
    }
    else
        std::cout << csv;
    return 0;
}

struct SimulateArgs
{
    int figure = 0;
    std::string config_path;
    std::string format = "csv";
    std::string out;
    std::size_t threads = 0;
    std::string packing_cache;
    // raw flag values, applied over the config file when present
    std::string k_db, gsq, codebooks, theta_mode, radius_bits;
    std::uint64_t seed = 0, packing_seed = 0;
    std::size_t trials = 0, nt = 0;
    unsigned bits = 0;
    double d_over_lambda = 0.0;
};

int cmd_simulate(const SimulateArgs &args, const CLI::App *sub)
{
    ExperimentConfig config = figure_defaults(args.figure);
    if (!args.config_path.empty())
        apply_config_file(args.config_path, config);

    // explicit flags win over the config file
    if (sub->count("--trials"))
        config.trials = args.trials;
    if (sub->count("--seed"))
        config.master_seed = args.seed;
    if (sub->count("--nt"))
        config.n_t = args.nt;
    if (sub->count("--bits"))
        config.b_bits = args.bits;
    if (sub->count("--d-over-lambda"))
        config.d_over_lambda = args.d_over_lambda;
    if (sub->count("--k-db"))
        config.k_grid_db = parse_double_list(args.k_db);
    if (sub->count("--gsq"))
        config.g_sq_values = parse_double_list(args.gsq);
    if (sub->count("--codebooks"))
        config.codebook_specs = parse_spec_list(args.codebooks);
    if (sub->count("--theta-mode"))
        set_config_key(config, "theta_mode", args.theta_mode);
    if (sub->count("--radius-bits"))
        set_config_key(config, "radius_bits", args.radius_bits);
    if (sub->count("--packing-seed"))
        config.packing_seed = args.packing_seed;

    RunOptions opts;
    opts.threads = args.threads;
    opts.packing_cache_dir = args.packing_cache;
    ExperimentResult result;
    switch (args.figure)
    {
    case 2:
        result = run_radius_approx_experiment(config, opts);
        break;
    case 3:
        result = run_gain_vs_k_experiment(config, opts);
        break;
    case 4:
        result = run_gain_cdf_experiment(config, opts);
        break;
    }

    const std::string doc = args.format == "json" ? to_json(result) : to_csv(result);
    if (args.out.empty())
    {
        std::cout << doc;
        return 0;
    }
    write_text(args.out, doc);
    std::cout << "wrote " << result.rows.size() << " rows to " << args.out << "\n";
    for (const auto &row : result.rows)
        if (!std::isnan(row.std_error))
        {
            std::cout << "k_db=" << row.k_db;
            if (!std::isnan(row.g_sq))
                std::cout << " g_sq=" << row.g_sq;
            if (!row.codebook.empty())
                std::cout << " codebook=" << row.codebook;
            std::printf(" %s=%.6f se=%.2e\n", row.statistic.c_str(), row.value,
                        row.std_error);
        }
    return 0;
}

struct VerifyArgs
{
    std::string file;
};

int cmd_verify_packing(const VerifyArgs &args)
{
    const Codebook cb = load_codebook(args.file);
    if (cb.words.size() < 2)
        throw std::invalid_argument("verify-packing: need at least two codewords");
    bool units_ok = true;
    for (const auto &w : cb.words)
        if (!is_unit(w, 1e-9))
            units_ok = false;
    const double min_dist = min_pairwise_distance(cb);
    const double bound = welch_rankin_bound(cb.dim, cb.words.size());
    const bool bound_ok = min_dist <= bound + 1e-9;
    std::cout << "dim=" << cb.dim << " count=" << cb.words.size()
              << " min_distance=" << fmt_17(min_dist) << " bound=" << fmt_17(bound)
              << " unit_norms=" << (units_ok ? "ok" : "violated")
              << " status=" << (units_ok && bound_ok ? "ok" : "violation") << "\n";
    return units_ok && bound_ok ? 0 : 3;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"polar-cap codebook toolkit for limited-feedback MISO beamforming"};
    app.require_subcommand(1);

    GenArgs gen;
    auto *gen_cmd = app.add_subcommand(
        "gen-codebook", "Generate a codebook and write it in the text format");
    gen_cmd->add_option("--kind", gen.kind, "grassmannian | rvq | dft | fixed_pcc")
        ->required();
    gen_cmd->add_option("--nt", gen.nt, "antennas (rvq, dft, fixed_pcc)");
    gen_cmd->add_option("--dim", gen.dim, "packing dimension (grassmannian)");
    gen_cmd->add_option("--count", gen.count, "packing size (grassmannian)");
    gen_cmd->add_option("--bits", gen.bits, "codebook bits B, 2^B codewords");
    gen_cmd->add_option("--seed", gen.seed, "packer / rvq seed");
    gen_cmd->add_option("--radius", gen.radius, "cap radius (fixed_pcc)");
    gen_cmd->add_option("--theta", gen.theta, "basis steering angle in radians (fixed_pcc)");
    gen_cmd->add_option("--d-over-lambda", gen.d_over_lambda, "antenna spacing");
    gen_cmd->add_option("--iters", gen.iters, "packer iterations per restart");
    gen_cmd->add_option("--restarts", gen.restarts, "packer restarts");
    gen_cmd->add_option("--out", gen.out, "output path (default: stdout)");

    AnalyzeArgs ana;
    auto *ana_cmd = app.add_subcommand(
        "analyze", "Evaluate the closed-form conditional statistics as CSV");
    ana_cmd->add_option("--k-db", ana.k_db, "comma-separated Rician K values in dB");
    ana_cmd->add_option("--nt", ana.nt, "comma-separated antenna counts");
    ana_cmd->add_option("--gsq", ana.gsq, "comma-separated |G_LOS|^2 values");
    ana_cmd->add_option("--out", ana.out, "output path (default: stdout)");

    SimulateArgs simargs;
    auto *sim_cmd = app.add_subcommand(
        "simulate", "Run a Monte-Carlo experiment (figure 2, 3, or 4 layout)");
    sim_cmd->add_option("--figure", simargs.figure, "experiment layout: 2, 3, or 4")
        ->required();
    sim_cmd->add_option("--config", simargs.config_path, "key=value config file");
    sim_cmd->add_option("--trials", simargs.trials, "Monte-Carlo trials per grid point");
    sim_cmd->add_option("--seed", simargs.seed, "master seed");
    sim_cmd->add_option("--nt", simargs.nt, "antennas");
    sim_cmd->add_option("--bits", simargs.bits, "codebook bits B");
    sim_cmd->add_option("--d-over-lambda", simargs.d_over_lambda, "antenna spacing");
    sim_cmd->add_option("--k-db", simargs.k_db, "comma-separated K grid in dB");
    sim_cmd->add_option("--gsq", simargs.gsq, "comma-separated |G_LOS|^2 grid");
    sim_cmd->add_option("--codebooks", simargs.codebooks,
                        "comma-separated codebook specs, e.g. adaptive_pcc,fixed_pcc:0.9");
    sim_cmd->add_option("--theta-mode", simargs.theta_mode, "uniform | fixed:<radians>");
    sim_cmd->add_option("--radius-bits", simargs.radius_bits,
                        "quantize the fed-back radius: none | <bits>");
    sim_cmd->add_option("--packing-seed", simargs.packing_seed, "Grassmannian seed");
    sim_cmd->add_option("--threads", simargs.threads,
                        "worker threads (0 = all cores); results do not depend on it");
    sim_cmd->add_option("--packing-cache", simargs.packing_cache,
                        "directory for cached packings (default: none)");
    sim_cmd->add_option("--format", simargs.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    sim_cmd->add_option("--out", simargs.out, "output path (default: stdout)");

    VerifyArgs ver;
    auto *ver_cmd = app.add_subcommand(
        "verify-packing", "Recheck unit norms and the distance bound of a codebook file");
    ver_cmd->add_option("--file", ver.file, "codebook file to verify")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try
    {
        if (gen_cmd->parsed())
            return cmd_gen_codebook(gen);
        if (ana_cmd->parsed())
            return cmd_analyze(ana);
        if (sim_cmd->parsed())
            return cmd_simulate(simargs, sim_cmd);
        if (ver_cmd->parsed())
            return cmd_verify_packing(ver);
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    catch (const pccsim::invariant_violation &e)
    {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 3;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
