#include "arith_oracles.hh"

#include <trifree/arith_removal.hh>
#include <trifree/error.hh>
#include <trifree/fourier.hh>
#include <trifree/fpn.hh>
#include <trifree/fpn_io.hh>

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace trifree;
using std::size_t;
using std::vector;

namespace
{
    auto parseval_gap(const DensityFunction & f) -> double
    {
        auto s = dft(f);
        double lhs = 0, rhs = 0;
        for (auto & c : s.c)
            lhs += std::norm(c);
        for (auto v : f.values)
            rhs += v * v;
        return std::abs(lhs - rhs / static_cast<double>(f.values.size()));
    }

    // {x : a.x = c}
    auto hyperplane(const FpnSpace & s, const Digits & a, unsigned c) -> DensityFunction
    {
        DensityFunction f{ s, vector<double>(s.size(), 0.0) };
        for (size_t x = 0; x < s.size(); ++x)
            f.values[x] = oracle::digit_dot(s.digits(x), a, s.p()) == c ? 1.0 : 0.0;
        return f;
    }
}

TEST(FpnSpace, DigitsAreBigEndian)
{
    FpnSpace s(3, 3);
    EXPECT_EQ(s.size(), 27u);
    EXPECT_EQ(s.digits(5), (Digits{ 0, 1, 2 }));
    for (size_t i = 0; i < s.size(); ++i)
        EXPECT_EQ(s.index(s.digits(i)), i);
    EXPECT_EQ(s.add(s.index({ 2, 2, 1 }), s.index({ 1, 2, 2 })), s.index({ 0, 1, 0 }));
    EXPECT_EQ(s.add(7, s.negate(7)), 0u);
}

TEST(FpnSpace, Guards)
{
    for (unsigned p : { 0u, 1u, 4u, 11u })
        try {
            FpnSpace(p, 1);
            ADD_FAILURE() << p;
        }
        catch (const Error & e) {
            EXPECT_EQ(e.kind(), ErrorKind::unsupported_prime);
        }
    EXPECT_NO_THROW(FpnSpace(2, 20));
    try {
        FpnSpace(2, 21);
        FAIL();
    }
    catch (const Error & e) {
        EXPECT_EQ(e.kind(), ErrorKind::size_guard);
    }
    EXPECT_THROW(make_density(FpnSpace(2, 1), { 0.5, 1.5 }), Error);
    EXPECT_THROW(make_density(FpnSpace(2, 1), { 0.5 }), Error);
    EXPECT_THROW(make_linear_map(3, 1, 2, { 1, 3 }), Error);
    EXPECT_EQ(inverse_mod(3, 7), 5u);
}

TEST(Subspace, SpanAndAnnihilator)
{
    FpnSpace s(3, 3);
    auto h = Subspace::span(s, { { 1, 1, 0 }, { 2, 2, 0 }, { 0, 0, 1 } });
    EXPECT_EQ(h.dimension(), 2u);
    EXPECT_EQ(h.codimension(), 1u);
    EXPECT_EQ(h.elements().size(), 9u);
    EXPECT_TRUE(h.contains({ 2, 2, 1 }));
    EXPECT_FALSE(h.contains({ 1, 0, 0 }));
    auto perp = h.annihilator();
    EXPECT_EQ(perp.dimension(), 1u);
    EXPECT_TRUE(perp.contains({ 1, 2, 0 }));
    for (auto x : h.elements())
        for (auto y : perp.elements())
            EXPECT_EQ(oracle::digit_dot(s.digits(x), s.digits(y), 3), 0u);
    EXPECT_EQ(perp.annihilator().dimension(), 2u);
    EXPECT_EQ(Subspace::whole(s).elements().size(), 27u);
    EXPECT_EQ(Subspace::zero(s).elements(), vector<size_t>{ 0 });
}

TEST(LinearMap, ApplyAndRank)
{
    auto phi = make_linear_map(5, 2, 3, { 1, 2, 3, 2, 4, 2 });
    EXPECT_EQ(phi.apply({ 1, 1, 1 }), (Digits{ 1, 3 }));
    EXPECT_EQ(phi.rank(), 2u);
    EXPECT_EQ(make_linear_map(5, 2, 3, { 1, 2, 3, 2, 4, 1 }).rank(), 1u);
    EXPECT_EQ(make_linear_map(5, 2, 2, { 1, 2, 2, 4 }).rank(), 1u);
}

TEST(Dft, Examples)
{
    FpnSpace s(3, 2);
    auto one = dft(constant_density(s, 1.0));
    EXPECT_NEAR(one.c[0].real(), 1.0, 1e-12);
    for (size_t y = 1; y < s.size(); ++y)
        EXPECT_NEAR(std::abs(one.c[y]), 0.0, 1e-12);
    auto point = dft(indicator(s, { 0 }));
    for (auto & c : point.c) {
        EXPECT_NEAR(c.real(), 1.0 / 9, 1e-12);
        EXPECT_NEAR(c.imag(), 0.0, 1e-12);
    }
}

TEST(Dft, MatchesNaiveSum)
{
    std::mt19937_64 rng(11);
    for (auto [p, n] : vector<std::pair<unsigned, size_t>>{ { 3, 3 }, { 2, 4 }, { 5, 2 }, { 7, 2 } }) {
        FpnSpace s(p, n);
        auto f = oracle::random_density(s, rng);
        auto fast = dft(f);
        auto slow = oracle::naive_dft(f);
        for (size_t y = 0; y < s.size(); ++y)
            EXPECT_LT(std::abs(fast.c[y] - slow[y]), 1e-10) << p << " " << n << " " << y;
        auto back = inverse_dft(fast);
        for (size_t x = 0; x < s.size(); ++x)
            EXPECT_NEAR(back[x].real(), f.values[x], 1e-10);
    }
}

TEST(Dft, Parseval)
{
    std::mt19937_64 rng(5);
    for (unsigned p : { 2u, 3u, 5u, 7u })
        for (size_t n = 0; n <= 4 && std::pow(p, n) <= 2401; ++n)
            for (int trial = 0; trial < 5; ++trial)
                EXPECT_LT(parseval_gap(oracle::random_density(FpnSpace(p, n), rng)), 1e-9);
}

TEST(CosetAverage, Examples)
{
    std::mt19937_64 rng(3);
    FpnSpace s(3, 3);
    auto f = oracle::random_density(s, rng);
    auto flat = coset_average(f, Subspace::whole(s));
    for (auto v : flat.values)
        EXPECT_NEAR(v, f.mean(), 1e-12);
    auto same = coset_average(f, Subspace::zero(s));
    for (size_t x = 0; x < s.size(); ++x)
        EXPECT_NEAR(same.values[x], f.values[x], 1e-12);
    try {
        coset_average(f, Subspace::whole(FpnSpace(3, 2)));
        FAIL();
    }
    catch (const Error & e) {
        EXPECT_EQ(e.kind(), ErrorKind::subspace_space_mismatch);
    }
}

TEST(CosetAverage, SpectralIdentityIdempotentMeanPreserving)
{
    std::mt19937_64 rng(8);
    FpnSpace s(3, 3);
    auto h = Subspace::span(s, { { 1, 2, 0 } });
    auto perp = h.annihilator();
    for (int trial = 0; trial < 10; ++trial) {
        auto f = oracle::random_density(s, rng);
        auto fh = coset_average(f, h);
        EXPECT_NEAR(fh.mean(), f.mean(), 1e-12);
        auto twice = coset_average(fh, h);
        for (size_t x = 0; x < s.size(); ++x)
            EXPECT_NEAR(twice.values[x], fh.values[x], 1e-12);
        // constant on cosets
        for (size_t x = 0; x < s.size(); ++x)
            for (auto e : h.elements())
                EXPECT_NEAR(fh.values[s.add(x, e)], fh.values[x], 1e-12);

        auto a = dft(f), b = dft(fh);
        for (size_t y = 0; y < s.size(); ++y) {
            auto diff = std::abs(a.c[y] - b.c[y]);
            if (perp.contains(s.digits(y)))
                EXPECT_LT(diff, 1e-12);
            else
                EXPECT_LT(std::abs(b.c[y]), 1e-12);
        }
    }
}

TEST(WeakRegularity, Examples)
{
    std::mt19937_64 rng(4);
    FpnSpace s(3, 3);
    auto f = oracle::random_density(s, rng);
    EXPECT_TRUE(is_weakly_regular(f, Subspace::zero(s), 0.0));
    auto h = Subspace::span(s, { { 1, 0, 0 }, { 0, 1, 1 } });
    vector<size_t> coset;
    for (auto e : h.elements())
        coset.push_back(s.add(e, s.index({ 0, 0, 1 })));
    EXPECT_TRUE(is_weakly_regular(indicator(s, coset), h, 0.0));
    EXPECT_FALSE(is_weakly_regular(f, Subspace::whole(s), 1e-6));

    DensityFunction flat = constant_density(s, 0.4);
    EXPECT_EQ(weak_regularity_subspace(std::span(&flat, 1), 0.1).codimension(), 0u);
}

TEST(WeakRegularity, HyperplaneGivesCodimensionOne)
{
    FpnSpace s(2, 4);
    Digits a{ 1, 0, 1, 1 };
    auto f = hyperplane(s, a, 1);
    auto naive = oracle::naive_dft(f);
    size_t large = 0;
    for (size_t y = 1; y < s.size(); ++y)
        large += std::abs(naive[y]) >= 0.4;
    EXPECT_EQ(large, 1u);
    auto h = weak_regularity_subspace(std::span(&f, 1), 0.4);
    EXPECT_EQ(h.codimension(), 1u);
    EXPECT_TRUE(h.annihilator().contains(a));
    for (auto x : h.elements())
        EXPECT_EQ(oracle::digit_dot(s.digits(x), a, 2), 0u);

    FpnSpace t(3, 3);
    auto g = hyperplane(t, { 1, 2, 0 }, 2);
    auto ht = weak_regularity_subspace(std::span(&g, 1), 0.3);
    EXPECT_EQ(ht.codimension(), 1u);
    EXPECT_TRUE(ht.annihilator().contains({ 1, 2, 0 }));
}

TEST(WeakRegularity, RandomIndicatorsStayInBound)
{
    std::mt19937_64 rng(21);
    FpnSpace s(3, 5);
    for (double eps : { 0.2, 0.3 })
        for (int trial = 0; trial < 10; ++trial) {
            vector<DensityFunction> fs;
            for (int i = 0; i < 3; ++i)
                fs.push_back(oracle::random_indicator(s, 0.5, rng));
            auto h = weak_regularity_subspace(fs, eps);
            EXPECT_LE(h.codimension(), static_cast<size_t>(std::ceil(3 / (eps * eps))));
            for (auto & f : fs)
                EXPECT_TRUE(is_weakly_regular(f, h, eps));
            EXPECT_LE(counting_lemma_gap(fs[0], fs[1], fs[2], h), 3 * eps);
        }
}

TEST(Lambda, Examples)
{
    FpnSpace s(3, 2);
    auto one = constant_density(s, 1.0);
    EXPECT_NEAR(lambda(one, one, one), 1.0, 1e-12);
    auto point = indicator(s, { 0 });
    EXPECT_NEAR(lambda(point, point, point), 1.0 / 81, 1e-15);
    FpnSpace four(2, 2);
    auto all = indicator(four, { 0, 1, 2, 3 });
    EXPECT_EQ(lambda(all, all, all), 1.0);
    EXPECT_EQ(exact_arith_removal(all, all, all).triangles, 16u);
    try {
        lambda(one, one, constant_density(four, 1.0));
        FAIL();
    }
    catch (const Error & e) {
        EXPECT_EQ(e.kind(), ErrorKind::space_mismatch);
    }
}

TEST(Lambda, DirectSpectralAndNaiveAgree)
{
    std::mt19937_64 rng(17);
    for (unsigned p : { 2u, 3u, 5u })
        for (size_t n = 1; n <= 3; ++n)
            for (int trial = 0; trial < 5; ++trial) {
                FpnSpace s(p, n);
                auto f = oracle::random_density(s, rng);
                auto g = oracle::random_density(s, rng);
                auto h = oracle::random_indicator(s, 0.4, rng);
                double direct = lambda(f, g, h);
                EXPECT_NEAR(direct, lambda_spectral(f, g, h), 1e-9);
                EXPECT_NEAR(direct, oracle::naive_lambda(f, g, h), 1e-12);
            }
}

TEST(CountingLemma, Examples)
{
    std::mt19937_64 rng(2);
    FpnSpace s(3, 3);
    auto f = oracle::random_density(s, rng);
    auto g = oracle::random_density(s, rng);
    auto h = oracle::random_density(s, rng);
    EXPECT_NEAR(counting_lemma_gap(f, g, h, Subspace::zero(s)), 0.0, 1e-12);
    auto sub = Subspace::span(s, { { 0, 1, 1 } });
    EXPECT_NEAR(counting_lemma_gap(coset_average(f, sub), coset_average(g, sub), coset_average(h, sub), sub),
            0.0, 1e-12);
}

TEST(ArithRemoval, Examples)
{
    FpnSpace s(2, 2);
    auto x = indicator(s, { 1 }), y = indicator(s, { 2 }), z = indicator(s, { 0 });
    EXPECT_EQ(exact_arith_removal(x, y, z).deletions, 0u);

    auto zero = indicator(s, { 0 });
    auto single = exact_arith_removal(zero, zero, zero);
    EXPECT_EQ(single.deletions, 1u);
    EXPECT_TRUE(single.exact);

    FpnSpace line(2, 1);
    auto all = indicator(line, { 0, 1 });
    auto result = exact_arith_removal(all, all, all);
    EXPECT_EQ(result.deletions, oracle::arith_removal(all, all, all));
    EXPECT_EQ(result.deletions, 2u);
    EXPECT_EQ(result.removed_x.size() + result.removed_y.size() + result.removed_z.size(), 2u);
}

TEST(ArithRemoval, MatchesSubsetSearch)
{
    std::mt19937_64 rng(9);
    size_t checked = 0;
    for (auto [p, n] : vector<std::pair<unsigned, size_t>>{ { 2, 2 }, { 3, 1 }, { 5, 1 }, { 2, 3 } })
        for (int trial = 0; trial < 6; ++trial) {
            FpnSpace s(p, n);
            double density = s.size() >= 8 ? 0.5 : 0.7;
            auto x = oracle::random_indicator(s, density, rng);
            auto y = oracle::random_indicator(s, density, rng);
            auto z = oracle::random_indicator(s, density, rng);
            if (x.support().size() + y.support().size() + z.support().size() > 21)
                continue;
            ++checked;
            auto exact = exact_arith_removal(x, y, z);
            EXPECT_TRUE(exact.exact);
            EXPECT_EQ(exact.deletions, oracle::arith_removal(x, y, z));
            EXPECT_GE(exact_arith_removal(x, y, z, ArithRemovalMode::greedy).deletions, exact.deletions);

            // the reported deletions clear every triangle
            auto cx = x, cy = y, cz = z;
            for (auto i : exact.removed_x) cx.values[i] = 0;
            for (auto i : exact.removed_y) cy.values[i] = 0;
            for (auto i : exact.removed_z) cz.values[i] = 0;
            EXPECT_EQ(lambda(cx, cy, cz), 0.0);
        }
    EXPECT_GE(checked, 15u);
}

TEST(ArithRemoval, Guards)
{
    FpnSpace s(3, 4);
    auto all = constant_density(s, 1.0);
    try {
        exact_arith_removal(all, all, all);
        FAIL();
    }
    catch (const Error & e) {
        EXPECT_EQ(e.kind(), ErrorKind::instance_too_large);
    }
    auto greedy = exact_arith_removal(all, all, all, ArithRemovalMode::greedy);
    EXPECT_FALSE(greedy.exact);
    EXPECT_GT(greedy.deletions, 0u);
    auto half = constant_density(FpnSpace(2, 1), 0.5);
    EXPECT_THROW(exact_arith_removal(half, half, half), Error);
}

TEST(RoundTrip, TriangleFreeInputIsUntouched)
{
    FpnSpace s(2, 2);
    auto f = make_density(s, { 0.0, 0.7, 0.0, 0.0 });
    auto g = make_density(s, { 0.0, 0.0, 0.9, 0.0 });
    auto h = make_density(s, { 0.5, 0.0, 0.0, 0.0 });
    ASSERT_EQ(lambda(f, g, h), 0.0);
    auto r = weighted_removal_roundtrip(f, g, h, 0.1, 3, 1);
    EXPECT_EQ(r.f.rounded.values, f.values);
    EXPECT_EQ(r.g.rounded.values, g.values);
    EXPECT_EQ(r.h.rounded.values, h.values);
    EXPECT_EQ(r.f.deleted + r.g.deleted + r.h.deleted, 0u);
    EXPECT_TRUE(r.success);
}

TEST(RoundTrip, TriangleRichLiftIsCleared)
{
    FpnSpace s(2, 2);
    auto all = constant_density(s, 1.0);
    auto f = make_density(s, { 0.9, 0.8, 0.7, 0.6 });
    for (size_t m : { 3u, 4u }) {
        for (std::uint64_t seed = 0; seed < 4; ++seed) {
            auto r = weighted_removal_roundtrip(f, all, f, 0.5, m, seed);
            EXPECT_GT(r.lift_triangles, 0u);
            EXPECT_TRUE(r.accounting_holds);
            if (r.success)
                EXPECT_EQ(lambda(r.f.rounded, r.g.rounded, r.h.rounded), 0.0);
            auto again = weighted_removal_roundtrip(f, all, f, 0.5, m, seed);
            EXPECT_EQ(again.f.rounded.values, r.f.rounded.values);
            EXPECT_EQ(again.lambda_after, r.lambda_after);
        }
    }
}

TEST(FpnIo, TableRoundTrip)
{
    std::mt19937_64 rng(6);
    FpnSpace s(3, 2);
    auto f = oracle::random_density(s, rng);
    std::stringstream text;
    write_function(text, f);
    auto back = read_function(text);
    EXPECT_TRUE(back.space == s);
    EXPECT_EQ(back.values, f.values);
}

TEST(FpnIo, CompactTableCompact)
{
    FpnSpace s(5, 2);
    auto f = indicator(s, { 0, 7, 13, 24 });
    std::stringstream compact;
    write_function(compact, f, FunctionLayout::compact);
    EXPECT_EQ(compact.str(), "5 2\nelements: 00 12 23 44\n");
    auto first = read_function(compact);
    std::stringstream table;
    write_function(table, first);
    auto second = read_function(table);
    std::stringstream again;
    write_function(again, second, FunctionLayout::compact);
    EXPECT_EQ(again.str(), compact.str());
    EXPECT_EQ(second.values, f.values);
    EXPECT_THROW(write_function(table, constant_density(s, 0.5), FunctionLayout::compact), Error);
}

TEST(FpnIo, ParseErrorsNameTheLine)
{
    auto line_of = [] (const std::string & text) -> size_t {
        std::istringstream in(text);
        try {
            read_function(in);
        }
        catch (const ParseError & e) {
            return e.line();
        }
        return 0;
    };
    EXPECT_EQ(line_of("3 2\n00 0.5\n# note\n31 0.2\n"), 4u);
    EXPECT_EQ(line_of("3 2\n00 1.5\n"), 2u);
    EXPECT_EQ(line_of("3 2\n00 0.5\n00 0.5\n"), 3u);
    EXPECT_EQ(line_of("3 2\nelements: 00\n01 1\n"), 3u);
    EXPECT_EQ(line_of("4 2\n"), 1u);
    EXPECT_EQ(line_of("3\n"), 1u);
    EXPECT_EQ(line_of("2 3\n01 1\n"), 2u);
}

TEST(FpnIo, Tricolor)
{
    FpnSpace s(3, 2);
    TricolorTriple t{ s, { 0, 4 }, { 0, 2 }, { 0, 3 } };
    std::stringstream text;
    write_tricolor(text, t);
    auto back = read_tricolor(text);
    EXPECT_EQ(back.x, t.x);
    EXPECT_EQ(back.y, t.y);
    EXPECT_EQ(back.z, t.z);
    std::istringstream shortfile("3 2 2\n00\n11\n00\n02\n00\n");
    try {
        read_tricolor(shortfile);
        FAIL();
    }
    catch (const ParseError & e) {
        EXPECT_EQ(e.line(), 6u);
    }
}
