// SPDX-License-Identifier: Apache-2.0
//
// pccsim: polar-cap codebooks for limited-feedback MISO beamforming
// Copyright (c) 2026 the pccsim authors

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pccsim/codebooks.hpp"

#include <cmath>
#include <filesystem>
#include <numbers>
#include <sstream>
#include <stdexcept>

using namespace pccsim;

namespace {

cvec random_unit(RngStream &rng, std::size_t dim)
{
    cvec v(dim);
    for (auto &e : v)
        e = rng.cnormal();
    return normalized(v);
}

} // namespace

TEST_CASE("welch rankin bound values")
{
    CHECK(welch_rankin_bound(2, 2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(welch_rankin_bound(2, 4) == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));
    CHECK(welch_rankin_bound(3, 15) ==
          doctest::Approx(std::sqrt(15.0 * 2.0 / (3.0 * 14.0))).epsilon(1e-12));
    CHECK(welch_rankin_bound(4, 1) == 1.0);
}

TEST_CASE("packing two lines in C^2 is an orthogonal pair")
{
    const auto [cb, rep] = grassmannian_pack(2, 2, 7);
    CHECK(rep.min_distance == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(min_pairwise_distance(cb) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("packing four lines in C^2 approaches the simplex bound")
{
    const auto [cb, rep] = grassmannian_pack(2, 4, 7);
    CHECK(rep.min_distance >= 0.81);
    CHECK(rep.min_distance <= rep.welch_rankin_bound + 1e-9);
    CHECK(rep.welch_rankin_bound == doctest::Approx(0.8165).epsilon(1e-4));
    CHECK(min_pairwise_distance(cb) == doctest::Approx(rep.min_distance).epsilon(1e-12));
}

TEST_CASE("default packing of 15 lines in C^3 is restart self-consistent")
{
    const auto [cb, rep] = grassmannian_pack(3, 15, 7);
    const auto [cb50, rep50] = grassmannian_pack(3, 15, 7, kPackIters, 50);
    CHECK(rep.min_distance >= 0.95 * rep50.min_distance);
    CHECK(rep.min_distance <= rep.welch_rankin_bound + 1e-9);
    (void)cb;
    (void)cb50;
}

TEST_CASE("packer never exceeds the bound")
{
    for (const auto [d, n] : {std::pair<std::size_t, std::size_t>{2, 3},
                              {2, 6}, {3, 8}, {4, 16}, {5, 7}})
    {
        const auto [cb, rep] = grassmannian_pack(d, n, 3, 400, 4);
        CHECK(rep.min_distance <= rep.welch_rankin_bound + 1e-9);
        for (const auto &w : cb.words)
            CHECK(is_unit(w, 1e-9));
    }
}

TEST_CASE("packer is deterministic for a fixed seed")
{
    const auto [a, ra] = grassmannian_pack(3, 15, 42, 300, 3);
    const auto [b, rb] = grassmannian_pack(3, 15, 42, 300, 3);
    CHECK(ra.min_distance == rb.min_distance);
    REQUIRE(a.words.size() == b.words.size());
    for (std::size_t i = 0; i < a.words.size(); i++)
        for (std::size_t k = 0; k < a.dim; k++)
            CHECK(a.words[i][k] == b.words[i][k]);
}

TEST_CASE("degenerate packings")
{
    const auto [one, rep1] = grassmannian_pack(1, 5, 0);
    for (const auto &w : one.words)
    {
        CHECK(w.size() == 1);
        CHECK(w[0] == cplx(1.0, 0.0));
    }
    CHECK(rep1.min_distance == 0.0);

    const auto [single, rep2] = grassmannian_pack(4, 1, 0);
    CHECK(single.words.size() == 1);
    CHECK(rep2.min_distance == 1.0);

    CHECK_THROWS_AS(grassmannian_pack(0, 4, 0), std::invalid_argument);
    CHECK_THROWS_AS(grassmannian_pack(2, 0, 0), std::invalid_argument);
}

TEST_CASE("rvq codewords are unit norm and replayable")
{
    RngStream rng(5, 0);
    const auto cb = rvq_codebook(4, 4, rng);
    CHECK(cb.words.size() == 16);
    for (const auto &w : cb.words)
        CHECK(is_unit(w, 1e-12));

    RngStream replay(5, 0);
    const auto cb2 = rvq_codebook(4, 4, replay);
    for (std::size_t i = 0; i < 16; i++)
        for (std::size_t k = 0; k < 4; k++)
            CHECK(cb.words[i][k] == cb2.words[i][k]);
}

TEST_CASE("rvq pair correlation matches the Beta(1, n_t - 1) mean")
{
    RngStream rng(6, 0);
    double acc = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; i++)
    {
        const auto x = random_unit(rng, 4);
        const auto y = random_unit(rng, 4);
        acc += std::norm(inner_product(x, y));
    }
    CHECK(acc / n == doctest::Approx(0.25).epsilon(0.04));
}

TEST_CASE("dft codebook small cases")
{
    const auto cb2 = dft_codebook(2, 1);
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(cb2.words[0][0] - cplx(s, 0.0)) <= 1e-15);
    CHECK(std::abs(cb2.words[0][1] - cplx(s, 0.0)) <= 1e-15);
    CHECK(std::abs(cb2.words[1][0] - cplx(s, 0.0)) <= 1e-15);
    CHECK(std::abs(cb2.words[1][1] - cplx(-s, 0.0)) <= 1e-12);

    const auto cb4 = dft_codebook(4, 2);
    CHECK(cb4.words.size() == 4);
    for (std::size_t i = 0; i < 4; i++)
        for (std::size_t j = i + 1; j < 4; j++)
            CHECK(std::abs(inner_product(cb4.words[i], cb4.words[j])) <= 1e-12);

    CHECK_THROWS_AS(dft_codebook(4, 1), std::invalid_argument);
}

TEST_CASE("oversampled dft beams have constant adjacent correlation")
{
    const auto cb = dft_codebook(4, 4);
    CHECK(cb.words.size() == 16);
    for (const auto &w : cb.words)
        CHECK(is_unit(w, 1e-12));
    const double ref = std::abs(inner_product(cb.words[0], cb.words[1]));
    for (std::size_t m = 0; m < 16; m++)
    {
        const double corr =
            std::abs(inner_product(cb.words[m], cb.words[(m + 1) % 16]));
        CHECK(corr == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("pcc with radius zero collapses to the basis")
{
    RngStream rng(8, 0);
    const auto g = grassmannian_pack(3, 15, 7, 200, 2).first;
    const auto basis = random_unit(rng, 4);
    const auto cb = pcc_construct(basis, 0.0, g);
    CHECK(cb.words.size() == 16);
    for (const auto &w : cb.words)
        for (std::size_t k = 0; k < 4; k++)
            CHECK(std::abs(w[k] - basis[k]) <= 1e-12);
}

TEST_CASE("pcc with radius one is orthogonal to the basis")
{
    RngStream rng(9, 0);
    const auto g = grassmannian_pack(3, 15, 7, 200, 2).first;
    const auto basis = random_unit(rng, 4);
    const auto cb = pcc_construct(basis, 1.0, g);
    for (std::size_t j = 1; j < cb.words.size(); j++)
        CHECK(std::abs(inner_product(basis, cb.words[j])) <= 1e-12);
}

TEST_CASE("pcc radius invariant over random pairs")
{
    RngStream rng(10, 0);
    const auto g = grassmannian_pack(3, 15, 7, 200, 2).first;
    for (int t = 0; t < 500; t++)
    {
        const auto basis = random_unit(rng, 4);
        const double radius = rng.uniform();
        const auto cb = pcc_construct(basis, radius, g);
        CHECK(*cb.radius == radius);
        for (std::size_t j = 1; j < cb.words.size(); j++)
        {
            CHECK(is_unit(cb.words[j], 1e-12));
            CHECK(std::abs(chordal_distance(cb.words[0], cb.words[j]) - radius) <= 1e-9);
        }
    }
}

TEST_CASE("pcc non-basis inner products follow the ring structure")
{
    // <w_k, w_l> = (1 - r^2) + r^2 <g_k, g_l>, so the pairwise geometry is an
    // exact function of the ingredient packing and the radius
    RngStream rng(11, 0);
    const auto g = grassmannian_pack(3, 15, 7, 200, 2).first;
    const auto basis = random_unit(rng, 4);
    for (const double radius : {0.3, 0.6, 0.9})
    {
        const auto cb = pcc_construct(basis, radius, g);
        for (std::size_t k = 1; k < cb.words.size(); k++)
            for (std::size_t l = k + 1; l < cb.words.size(); l++)
            {
                const cplx expect = (1.0 - radius * radius) +
                                    radius * radius *
                                        inner_product(g.words[k - 1], g.words[l - 1]);
                CHECK(std::abs(inner_product(cb.words[k], cb.words[l]) - expect) <= 1e-12);
            }
    }
}

TEST_CASE("pcc non-basis separation grows with radius and is linear for small radii")
{
    RngStream rng(12, 0);
    const auto g = grassmannian_pack(3, 15, 7, 200, 2).first;
    const auto basis = random_unit(rng, 4);

    double prev = -1.0;
    for (const double radius : {0.3, 0.6, 0.9})
    {
        const double d = min_pairwise_distance(pcc_construct(basis, radius, g), true);
        CHECK(d > prev);
        prev = d;
    }

    // d^2 = 2 r^2 (1 - Re c) - r^4 |1 - c|^2 for inner product c, so the
    // r^4 term is negligible at small radii and the distance scales with r
    const double d1 = min_pairwise_distance(pcc_construct(basis, 1e-3, g), true);
    const double d2 = min_pairwise_distance(pcc_construct(basis, 2e-3, g), true);
    CHECK(d2 / d1 == doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("pcc argument validation")
{
    RngStream rng(13, 0);
    const auto g3 = grassmannian_pack(3, 15, 7, 100, 2).first;
    const auto g2 = grassmannian_pack(2, 15, 7, 100, 2).first;
    const auto basis = random_unit(rng, 4);
    CHECK_THROWS_AS(pcc_construct(basis, 0.5, g2), std::invalid_argument);
    CHECK_THROWS_AS(pcc_construct(basis, -0.1, g3), std::invalid_argument);
    CHECK_THROWS_AS(pcc_construct(basis, 1.1, g3), std::invalid_argument);
    CHECK_THROWS_AS(pcc_construct(cvec{1.0, 1.0, 0.0, 0.0}, 0.5, g3), std::invalid_argument);
}

TEST_CASE("adaptive pcc on an aligned channel has radius zero")
{
    const auto g = grassmannian_pack(3, 15, 7, 200, 2).first;
    ChannelParams p{.n_t = 4, .k_factor = 1.0, .theta = 0.8, .d_over_lambda = 0.5};
    cvec h = array_response(p.theta, p.n_t, p.d_over_lambda);
    for (auto &e : h)
        e *= cplx(0.3, -1.2);
    const auto [cb, radius] = adaptive_pcc(h, p, g);
    CHECK(radius <= 1e-7);
    CHECK(cb.kind == CodebookKind::adaptive_pcc);
    const auto basis = normalized_array_response(p.theta, p.n_t, p.d_over_lambda);
    for (const auto &w : cb.words)
        CHECK(std::abs(std::abs(inner_product(w, basis)) - 1.0) <= 1e-7);
}

TEST_CASE("adaptive pcc on an orthogonal channel has radius one")
{
    const auto g = grassmannian_pack(3, 15, 7, 200, 2).first;
    ChannelParams p{.n_t = 4, .k_factor = 1.0,
                    .theta = std::numbers::pi / 2.0, .d_over_lambda = 0.5};
    const cvec h{1.0, -1.0, 0.0, 0.0};
    const auto [cb, radius] = adaptive_pcc(h, p, g);
    CHECK(radius == doctest::Approx(1.0).epsilon(1e-12));
    (void)cb;
}

TEST_CASE("adaptive pcc hand-computed radius")
{
    const auto g = grassmannian_pack(3, 15, 7, 200, 2).first;
    ChannelParams p{.n_t = 4, .k_factor = 1.0,
                    .theta = std::numbers::pi / 2.0, .d_over_lambda = 0.5};
    const cvec h{2.0, 1.0, 1.0, 1.0};
    const auto [cb, radius] = adaptive_pcc(h, p, g);
    // |h^H basis|^2/||h||^2 = (25/4)/7, radius = sqrt(3/28)
    CHECK(radius == doctest::Approx(std::sqrt(3.0 / 28.0)).epsilon(1e-12));
    CHECK(*cb.radius == radius);

    const auto basis = normalized_array_response(p.theta, p.n_t, p.d_over_lambda);
    CHECK(std::abs(chordal_distance(normalized(h), basis) - radius) <= 1e-12);
}

TEST_CASE("adaptive pcc is phase invariant")
{
    RngStream rng(14, 0);
    const auto g = grassmannian_pack(3, 15, 7, 200, 2).first;
    ChannelParams p{.n_t = 4, .k_factor = 1.0, .theta = 1.2, .d_over_lambda = 0.5};
    for (int t = 0; t < 100; t++)
    {
        cvec h(4);
        for (auto &e : h)
            e = rng.cnormal();
        const cplx c = std::polar(rng.uniform(0.1, 3.0),
                                  rng.uniform(0.0, 2.0 * std::numbers::pi));
        cvec hc(4);
        for (std::size_t i = 0; i < 4; i++)
            hc[i] = c * h[i];

        const auto [cb1, r1] = adaptive_pcc(h, p, g);
        const auto [cb2, r2] = adaptive_pcc(hc, p, g);
        CHECK(std::abs(r1 - r2) <= 1e-12);
        for (std::size_t j = 0; j < cb1.words.size(); j++)
            CHECK(std::abs(std::abs(inner_product(cb1.words[j], cb2.words[j])) - 1.0) <= 1e-9);
    }
}

TEST_CASE("adaptive pcc rejects a zero channel")
{
    const auto g = grassmannian_pack(3, 15, 7, 100, 2).first;
    ChannelParams p{.n_t = 4, .k_factor = 1.0, .theta = 1.2, .d_over_lambda = 0.5};
    CHECK_THROWS_AS(adaptive_pcc(cvec(4, 0.0), p, g), std::invalid_argument);
}

TEST_CASE("min pairwise distance edge cases")
{
    Codebook ortho;
    ortho.dim = 3;
    ortho.kind = CodebookKind::grassmannian;
    ortho.words = {cvec{1, 0, 0}, cvec{0, 1, 0}, cvec{0, 0, 1}};
    CHECK(min_pairwise_distance(ortho) == doctest::Approx(1.0).epsilon(1e-12));

    Codebook dup = ortho;
    dup.words.push_back(cvec{1, 0, 0});
    CHECK(min_pairwise_distance(dup) == doctest::Approx(0.0).epsilon(1e-12));

    Codebook single;
    single.dim = 2;
    single.words = {cvec{1, 0}};
    CHECK_THROWS_AS(min_pairwise_distance(single), std::invalid_argument);
}

TEST_CASE("codebook serialization round trips bit-exactly")
{
    RngStream rng(15, 0);
    const auto g = grassmannian_pack(3, 15, 7, 200, 2).first;
    const auto basis = random_unit(rng, 4);
    const auto cb = pcc_construct(basis, 0.62345, g);

    const std::string text = serialize_codebook(cb);
    std::istringstream in(text);
    const auto back = parse_codebook(in);

    CHECK(back.dim == cb.dim);
    CHECK(back.kind == cb.kind);
    CHECK(back.radius.has_value());
    CHECK(*back.radius == *cb.radius);
    REQUIRE(back.words.size() == cb.words.size());
    for (std::size_t i = 0; i < cb.words.size(); i++)
        for (std::size_t k = 0; k < cb.dim; k++)
            CHECK(back.words[i][k] == cb.words[i][k]);
    CHECK(serialize_codebook(back) == text);
}

TEST_CASE("parser rejects malformed input")
{
    {
        std::istringstream in("");
        CHECK_THROWS_AS(parse_codebook(in), std::invalid_argument);
    }
    {
        std::istringstream in("junk\n");
        CHECK_THROWS_AS(parse_codebook(in), std::invalid_argument);
    }
    {
        std::istringstream in("2 1 nosuchkind\n1 0 0 0\n");
        CHECK_THROWS_AS(parse_codebook(in), std::invalid_argument);
    }
    {
        // radius on a non-PCC kind
        std::istringstream in("2 1 dft 0.5\n1 0 0 0\n");
        CHECK_THROWS_AS(parse_codebook(in), std::invalid_argument);
    }
    {
        // missing radius on a PCC kind
        std::istringstream in("2 1 fixed_pcc\n1 0 0 0\n");
        CHECK_THROWS_AS(parse_codebook(in), std::invalid_argument);
    }
    {
        // truncated codeword list
        std::istringstream in("2 2 dft\n1 0 0 0\n");
        CHECK_THROWS_AS(parse_codebook(in), std::invalid_argument);
    }
    {
        // short codeword line
        std::istringstream in("2 1 dft\n1 0\n");
        CHECK_THROWS_AS(parse_codebook(in), std::invalid_argument);
    }
    {
        // trailing values
        std::istringstream in("2 1 dft\n1 0 0 0 5\n");
        CHECK_THROWS_AS(parse_codebook(in), std::invalid_argument);
    }
}

TEST_CASE("packing cache round trip")
{
    const auto dir = std::filesystem::temp_directory_path() / "pccsim_cache_test";
    std::filesystem::remove_all(dir);

    PackingReport r1, r2;
    const auto a = load_or_compute_packing(3, 15, 7, 200, 2, dir.string(), &r1);
    CHECK(std::filesystem::exists(dir / "packing_dim3_count15_seed7.txt"));
    const auto b = load_or_compute_packing(3, 15, 7, 200, 2, dir.string(), &r2);

    REQUIRE(a.words.size() == b.words.size());
    for (std::size_t i = 0; i < a.words.size(); i++)
        for (std::size_t k = 0; k < a.dim; k++)
            CHECK(a.words[i][k] == b.words[i][k]);
    CHECK(r1.min_distance == doctest::Approx(r2.min_distance).epsilon(1e-12));

    // cached file with a mismatched key is refused
    std::filesystem::copy_file(dir / "packing_dim3_count15_seed7.txt",
                               dir / "packing_dim4_count15_seed7.txt");
    CHECK_THROWS_AS(load_or_compute_packing(4, 15, 7, 200, 2, dir.string(), nullptr),
                    std::runtime_error);

    std::filesystem::remove_all(dir);
}

TEST_CASE("empty cache dir disables caching")
{
    const auto a = load_or_compute_packing(2, 4, 7, 200, 2, "", nullptr);
    const auto b = grassmannian_pack(2, 4, 7, 200, 2).first;
    for (std::size_t i = 0; i < a.words.size(); i++)
        for (std::size_t k = 0; k < a.dim; k++)
            CHECK(a.words[i][k] == b.words[i][k]);
}
