// Acceptance criteria AC1..AC13. One PASS/FAIL line per criterion; a
// criterion also fails when it runs past its time limit.

#include "arith_oracles.hh"
#include "oracles.hh"

#include <trifree/approx_hom.hh>
#include <trifree/arith_constructions.hh>
#include <trifree/arith_removal.hh>
#include <trifree/constructions.hh>
#include <trifree/entropy.hh>
#include <trifree/error.hh>
#include <trifree/fourier.hh>
#include <trifree/removal.hh>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

using namespace trifree;
using std::size_t;
using std::string;
using std::to_string;
using std::vector;

namespace
{
    struct Outcome
    {
        bool ok = true;
        string detail;
        size_t failures = 0;

        // records a failed check, keeping the first few messages
        void fail(const string & what)
        {
            ok = false;
            if (++failures <= 3)
                detail += (detail.empty() ? "" : "; ") + what;
        }
    };

    struct Criterion
    {
        int id;
        string name;
        double limit;
        std::function<Outcome()> run;
    };

    auto fmt(double v) -> string
    {
        char buffer[64];
        std::snprintf(buffer, sizeof buffer, "%.6g", v);
        return buffer;
    }

    auto natural_entropy(const std::map<size_t, size_t> & counts, size_t total) -> double
    {
        double h = 0;
        for (auto & [_, c] : counts)
            if (c > 0) {
                double q = static_cast<double>(c) / static_cast<double>(total);
                h -= q * std::log(q);
            }
        return h;
    }

    // H(Y) and I(bit i; Y) over a uniform vertex of U_v
    struct FibreInfo
    {
        double image_entropy = 0;
        vector<double> info;
    };

    auto fibre_info(const Blowup & b, const VertexMap & phi, Vertex v) -> FibreInfo
    {
        size_t cells = size_t{1} << b.m;
        std::map<size_t, size_t> all;
        vector<std::array<std::map<size_t, size_t>, 2>> split(b.m);
        for (size_t x = 0; x < cells; ++x) {
            size_t image = phi.table[b.vertex(v, static_cast<std::uint32_t>(x))];
            ++all[image];
            for (size_t i = 0; i < b.m; ++i)
                ++split[i][(x >> i) & 1][image];
        }
        FibreInfo out;
        out.image_entropy = natural_entropy(all, cells);
        for (size_t i = 0; i < b.m; ++i)
            out.info.push_back(out.image_entropy - 0.5 * natural_entropy(split[i][0], cells / 2)
                    - 0.5 * natural_entropy(split[i][1], cells / 2));
        return out;
    }

    auto copy_vertices(const HomCopy & copy) -> vector<Vertex>
    {
        std::set<Vertex> vs;
        for (auto & e : copy.edges) {
            vs.insert(e.u);
            vs.insert(e.v);
        }
        return { vs.begin(), vs.end() };
    }

    auto random_graph(size_t n, double p, std::mt19937_64 & rng) -> Graph
    {
        std::bernoulli_distribution coin(p);
        Graph g(n);
        for (size_t u = 0; u < n; ++u)
            for (size_t v = u + 1; v < n; ++v)
                if (coin(rng))
                    g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
        return g;
    }

    auto has_three_ap(const vector<size_t> & s) -> bool
    {
        std::set<size_t> members(s.begin(), s.end());
        for (auto a : s)
            for (auto c : s)
                if (a < c && (a + c) % 2 == 0 && members.count((a + c) / 2))
                    return true;
        return false;
    }

    // ---------------------------------------------------------------- AC1
    auto ac1() -> Outcome
    {
        Outcome out;
        auto b = partial_binary_blowup(named::bowtie(), Pattern(named::complete(3)));
        if (b.graph.size() != 20) out.fail("vertices " + to_string(b.graph.size()));
        if (b.graph.edge_count() != 24) out.fail("edges " + to_string(b.graph.edge_count()));
        if (oracle::triangles(b.graph) != 0) out.fail("blow-up has triangles");
        std::map<Edge, size_t> lifts;
        for (auto & e : b.graph.edges())
            ++lifts[Edge(b.labels[e.u].base, b.labels[e.v].base)];
        size_t expected = size_t{1} << (2 * b.m - 2);
        for (auto & e : named::bowtie().edges())
            if (lifts[e] != expected)
                out.fail("base edge " + to_string(e.u) + "-" + to_string(e.v) + " has " + to_string(lifts[e]) + " lifts");
        if (out.ok)
            out.detail = "20 vertices, 24 edges, triangle-free, 4 lifts per base edge";
        return out;
    }

    // ---------------------------------------------------------------- AC2
    auto ac2() -> Outcome
    {
        Outcome out;
        size_t graphs = 0, injections = 0;
        for (size_t n = 1; n <= 40; ++n)
            for (auto method : { ApFreeMethod::greedy, ApFreeMethod::behrend_spheres }) {
                auto set = build_ap_free_set(n, method);
                auto & s = set.elements;
                if (has_three_ap(s)) {
                    out.fail("n=" + to_string(n) + " set has a progression");
                    continue;
                }
                auto g = rs_graph(n, set);
                ++graphs;
                size_t total = 0;
                bool unique = true;
                for (auto & e : g.edges()) {
                    auto t = oracle::edge_triangles(g, e);
                    total += t;
                    unique = unique && t == 1;
                }
                if (g.edge_count() != 3 * n * s.size()) out.fail("n=" + to_string(n) + " edge count");
                if (total != 3 * n * s.size()) out.fail("n=" + to_string(n) + " triangle count");
                if (! unique) out.fail("n=" + to_string(n) + " edge outside exactly one triangle");

                for (size_t x = 1; x <= n; ++x) {
                    auto extended = s;
                    extended.push_back(x);
                    if (std::count(s.begin(), s.end(), x) || ! has_three_ap(extended))
                        continue;
                    ++injections;
                    auto bad = rs_graph_unchecked(n, extended);
                    bool broken = false;
                    for (auto & e : bad.edges())
                        broken = broken || oracle::edge_triangles(bad, e) != 1;
                    if (! broken)
                        out.fail("n=" + to_string(n) + " injecting " + to_string(x) + " kept uniqueness");
                    break;
                }
            }
        if (out.ok)
            out.detail = to_string(graphs) + " graphs, " + to_string(injections) + " injections all break uniqueness";
        return out;
    }

    // ---------------------------------------------------------------- AC3
    auto ac3() -> Outcome
    {
        Outcome out;
        const size_t points = 100000;
        for (size_t k = 0; k < points; ++k) {
            double q = static_cast<double>(k) / static_cast<double>(points - 1);
            auto gap = pinsker_gap(q);
            if (! (gap.lhs <= gap.rhs))
                out.fail("pinsker at q=" + fmt(q));
        }

        std::mt19937_64 rng(20240611);
        size_t reciprocal_checked = 0, lemma_checked = 0;
        for (double eta : { 0.05, 0.1, 0.19 })
            for (size_t k = 0; k < 10000; ++k) {
                auto inst = random_bisection_instance(rng, 256, eta);
                size_t u = inst.side.size();
                vector<size_t> in_p0(inst.parts, 0), size(inst.parts, 0);
                for (size_t x = 0; x < u; ++x) {
                    ++size[inst.part[x]];
                    in_p0[inst.part[x]] += inst.side[x] == 0;
                }
                // I(part; side) for a uniform element
                double info = 0;
                for (size_t j = 0; j < inst.parts; ++j)
                    for (size_t side = 0; side < 2; ++side) {
                        size_t joint = side == 0 ? in_p0[j] : size[j] - in_p0[j];
                        if (joint == 0)
                            continue;
                        double pj = static_cast<double>(joint) / static_cast<double>(u);
                        info += pj * std::log(pj / ((static_cast<double>(size[j]) / static_cast<double>(u)) * 0.5));
                    }
                size_t u_nb = 0;
                for (size_t j = 0; j < inst.parts; ++j) {
                    if (size[j] == 0 || ! nearly_bisected(in_p0[j], size[j], eta))
                        continue;
                    ++reciprocal_checked;
                    u_nb += size[j];
                    double frac = static_cast<double>(in_p0[j]) / static_cast<double>(size[j]);
                    if (std::abs(frac - 0.5) > eta / std::sqrt(2.0) + 1e-12)
                        out.fail("reciprocal bound broken at eta=" + fmt(eta));
                }
                bool hypothesis = info <= eta * eta * eta;
                try {
                    auto audit = bisection_audit(inst);
                    if (std::abs(audit.mutual_information - info) > 1e-9)
                        out.fail("I mismatch " + fmt(audit.mutual_information) + " vs " + fmt(info));
                    if (audit.u_nb != u_nb)
                        out.fail("U_nb mismatch");
                    if (hypothesis) {
                        ++lemma_checked;
                        if (static_cast<double>(u_nb) < (1 - eta) * static_cast<double>(u))
                            out.fail("|U_nb| < (1-eta)|U| at eta=" + fmt(eta));
                        if (! (audit.tv <= 4 * eta))
                            out.fail("TV " + fmt(audit.tv) + " > 4 eta at eta=" + fmt(eta));
                    }
                }
                catch (const Error & e) {
                    if (e.kind() != ErrorKind::no_nearly_bisected_part || hypothesis)
                        out.fail(string("audit error: ") + e.what());
                }
            }
        if (lemma_checked == 0)
            out.fail("no instance met I <= eta^3");
        if (out.ok)
            out.detail = "1e5 Pinsker points; " + to_string(reciprocal_checked) + " nearly bisected parts; "
                + to_string(lemma_checked) + " instances with I <= eta^3";
        return out;
    }

    // ---------------------------------------------------------------- AC4
    void check_chain(const Blowup & b, const VertexMap & phi, Outcome & out)
    {
        auto rows = chain_bound_audit(b, phi, phi.target_size);
        double log_f = std::log(static_cast<double>(phi.target_size));
        for (auto & row : rows) {
            auto ref = fibre_info(b, phi, row.v);
            double sum = 0;
            for (auto i : ref.info)
                sum += i;
            if (std::abs(sum - row.sum_info) > 1e-12 || std::abs(ref.image_entropy - row.image_entropy) > 1e-12)
                out.fail("chain row disagrees with the direct count");
            if (sum > ref.image_entropy + 1e-9 || ref.image_entropy > log_f + 1e-9)
                out.fail("chain inequality broken at m=" + to_string(b.m));
            if (! row.holds)
                out.fail("audit flagged a chain violation");
        }
    }

    auto ac4() -> Outcome
    {
        Outcome out;
        Pattern k3(named::complete(3));
        size_t cell_maps = 0, random_maps = 0;
        auto triangle = partial_binary_blowup(named::complete(3), k3);
        auto bowtie = partial_binary_blowup(named::bowtie(), k3);
        for (auto * b : { &triangle, &bowtie })
            for (size_t f = 1; f <= 4; ++f)
                for (size_t i = 0; i < b->m; ++i)
                    for_each_claim_map(*b, i, f, ClaimMapScope::cells, [&] (const VertexMap & phi) {
                        ++cell_maps;
                        check_chain(*b, phi, out);
                        return out.failures < 10;
                    });

        std::mt19937_64 rng(99);
        for (size_t m = 1; m <= 6; ++m) {
            auto b = partial_binary_blowup(rs_graph(m, { m, { 1 } }), k3);
            if (b.m != m)
                out.fail("expected " + to_string(m) + " copies");
            for (size_t k = 0; k < 1000; ++k) {
                size_t f = 1 + k % 6;
                std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(f - 1));
                VertexMap phi{ f, vector<Vertex>(b.graph.size()) };
                for (auto & v : phi.table)
                    v = pick(rng);
                ++random_maps;
                check_chain(b, phi, out);
            }
        }
        if (out.ok)
            out.detail = to_string(cell_maps) + " cell-constant maps (m<=2), " + to_string(random_maps)
                + " random maps (m<=6)";
        return out;
    }

    // ---------------------------------------------------------------- AC5
    auto ac5() -> Outcome
    {
        Outcome out;
        Pattern k3(named::complete(3));
        double eta = 1.0 / (16.0 * 3);
        if (claim_eta(k3) != eta)
            out.fail("eta = " + fmt(claim_eta(k3)));
        size_t maps = 0, with_hypothesis = 0;
        auto triangle = partial_binary_blowup(named::complete(3), k3);
        auto bowtie = partial_binary_blowup(named::bowtie(), k3);
        for (auto * b : { &triangle, &bowtie }) {
            double threshold = std::ldexp(1.0, 2 * static_cast<int>(b->m) - 3);
            for (size_t size = 1; size <= 4; ++size)
                for (auto & f : enumerate_hom_free_targets(k3, size))
                    for (size_t i = 0; i < b->m; ++i) {
                        auto verts = copy_vertices(b->copies[i]);
                        for_each_claim_map(*b, i, f.size(), ClaimMapScope::cells, [&] (const VertexMap & phi) {
                            ++maps;
                            bool hypothesis = true;
                            for (auto v : verts)
                                hypothesis = hypothesis && fibre_info(*b, phi, v).info[i] <= eta;
                            size_t violated = 0;
                            for (auto & e : b->graph.edges()) {
                                Edge base(b->labels[e.u].base, b->labels[e.v].base);
                                if (! std::binary_search(b->copies[i].edges.begin(), b->copies[i].edges.end(), base))
                                    continue;
                                auto x = phi.table[e.u], y = phi.table[e.v];
                                violated += x == y || ! f.adjacent(x, y);
                            }
                            auto audit = claim_dagger_audit(*b, f, i, phi, eta);
                            if (audit.hypothesis != hypothesis || audit.violated != violated)
                                out.fail("claim audit disagrees with the direct count");
                            if (hypothesis) {
                                ++with_hypothesis;
                                if (static_cast<double>(violated) < threshold)
                                    out.fail("m=" + to_string(b->m) + " copy " + to_string(i) + ": " + to_string(violated)
                                            + " < 2^(2m-3)");
                            }
                            return out.failures < 10;
                        });
                    }
        }
        if (with_hypothesis == 0)
            out.fail("hypothesis never met");
        if (out.ok)
            out.detail = to_string(maps) + " cell-constant maps, " + to_string(with_hypothesis) + " meet the hypothesis";
        return out;
    }

    // ---------------------------------------------------------------- AC6
    auto ac6() -> Outcome
    {
        Outcome out;
        double sum = 0;
        for (int i = 1; i <= 60; ++i)
            sum += 1 / oracle::g_value(std::ldexp(1.0, -i));
        if (! (sum < 0.5)) out.fail("partial sum " + fmt(sum));
        if (std::abs(sum - g_schedule_partial_sum(60)) > 1e-12) out.fail("library partial sum differs");
        for (int i = 0; i <= 60; ++i) {
            double x = std::ldexp(1.0, -i);
            if (std::abs(g_schedule(x) - oracle::g_value(x)) > 1e-9 * oracle::g_value(x))
                out.fail("g differs at 2^-" + to_string(i));
            if (i < 60) {
                double y = x / 2;
                if (! (g_schedule(y) > g_schedule(x))) out.fail("g not increasing at 2^-" + to_string(i));
                if (! (g_schedule(y) * y < g_schedule(x) * x)) out.fail("g(x) x not decreasing at 2^-" + to_string(i));
            }
        }

        std::mt19937_64 rng(6);
        vector<Graph> graphs;
        for (size_t k = 5; k <= 9; ++k)
            graphs.push_back(named::complete(k));
        for (size_t k = 0; k < 30; ++k)
            graphs.push_back(random_graph(8 + k % 7, 0.5 + 0.015 * static_cast<double>(k), rng));
        size_t runs = 0, steps = 0;
        for (auto & g : graphs)
            for (double eps : { 20.0, 100.0, 400.0 }) {
                if (oracle::triangles(g) == 0)
                    continue;
                auto r = greedy_bounded_codegree(g, eps);
                auto replay = oracle::replay_codegree_deletion(g, eps, r.delta);
                ++runs;
                steps += replay.size();
                if (replay.size() != r.trace.size()) {
                    out.fail("replay length " + to_string(replay.size()) + " vs " + to_string(r.trace.size()));
                    continue;
                }
                for (size_t k = 0; k < replay.size(); ++k)
                    if (! (replay[k].edge == r.trace[k].edge) || replay[k].codegree != r.trace[k].codegree)
                        out.fail("step " + to_string(k) + " differs");
                std::stringstream text;
                write_trace(text, r.trace);
                auto back = read_trace(text);
                for (size_t k = 0; k < back.size(); ++k)
                    if (! (back[k].edge == r.trace[k].edge) || back[k].beta != r.trace[k].beta
                            || back[k].threshold != r.trace[k].threshold)
                        out.fail("trace text round trip changed step " + to_string(k));
            }
        if (steps == 0)
            out.fail("no deletions exercised");
        if (out.ok)
            out.detail = "sum_{i<=60} 1/g(2^-i) = " + fmt(sum) + "; " + to_string(runs) + " replays, " + to_string(steps)
                + " deletions identical";
        return out;
    }

    // ---------------------------------------------------------------- AC7
    auto ac7() -> Outcome
    {
        Outcome out;
        auto g = rs_graph(20, build_ap_free_set(20, ApFreeMethod::behrend_spheres));
        size_t good = 0;
        for (std::uint64_t seed = 0; seed < 1000; ++seed) {
            auto s = sample_diamond_subgraph(g, 1, seed);
            good += s.good_triangles;
            for (auto & e : s.graph.edges())
                if (oracle::edge_triangles(s.graph, e) != 1) {
                    out.fail("seed " + to_string(seed) + " edge outside exactly one triangle");
                    break;
                }
        }
        if (out.ok)
            out.detail = "1000 samples of rs_graph(20), " + to_string(good) + " good triangles in total";
        return out;
    }

    // ---------------------------------------------------------------- AC8
    auto ac8() -> Outcome
    {
        Outcome out;
        std::mt19937_64 rng(8);
        double worst_parseval = 0, worst_lambda = 0;
        for (unsigned p : { 2u, 3u, 5u })
            for (size_t n = 1; n <= 4; ++n) {
                FpnSpace s(p, n);
                for (int trial = 0; trial < 100; ++trial) {
                    vector<DensityFunction> fs;
                    for (int k = 0; k < 3; ++k)
                        fs.push_back((trial + k) % 2 ? oracle::random_density(s, rng)
                                : oracle::random_indicator(s, 0.3 + 0.1 * k, rng));
                    for (auto & f : fs) {
                        auto spectrum = dft(f);
                        double lhs = 0, rhs = 0;
                        for (auto & c : spectrum.c)
                            lhs += std::norm(c);
                        for (auto v : f.values)
                            rhs += v * v;
                        worst_parseval = std::max(worst_parseval, std::abs(lhs - rhs / static_cast<double>(s.size())));
                    }
                    worst_lambda = std::max(worst_lambda,
                            std::abs(lambda(fs[0], fs[1], fs[2]) - lambda_spectral(fs[0], fs[1], fs[2])));
                }
            }
        if (worst_parseval > 1e-9) out.fail("Parseval gap " + fmt(worst_parseval));
        if (worst_lambda > 1e-9) out.fail("Lambda gap " + fmt(worst_lambda));
        // naive transform on one mid-size case
        FpnSpace s(3, 3);
        auto f = oracle::random_density(s, rng);
        auto fast = dft(f);
        auto slow = oracle::naive_dft(f);
        for (size_t y = 0; y < s.size(); ++y)
            if (std::abs(fast.c[y] - slow[y]) > 1e-10)
                out.fail("dft differs from the naive sum");
        if (out.ok)
            out.detail = "1200 triples; max Parseval gap " + fmt(worst_parseval) + ", max Lambda gap " + fmt(worst_lambda);
        return out;
    }

    // ---------------------------------------------------------------- AC9
    auto structured_indicator(const FpnSpace & s, std::mt19937_64 & rng) -> DensityFunction
    {
        std::uniform_int_distribution<unsigned> digit(0, s.p() - 1);
        std::bernoulli_distribution keep(0.5), flip(0.08);
        Digits a(s.n());
        for (auto & d : a)
            d = digit(rng);
        vector<bool> residues(s.p());
        for (size_t r = 0; r < s.p(); ++r)
            residues[r] = keep(rng);
        DensityFunction f{ s, vector<double>(s.size()) };
        for (size_t x = 0; x < s.size(); ++x) {
            bool in = residues[oracle::digit_dot(s.digits(x), a, s.p())];
            f.values[x] = (in != flip(rng)) ? 1.0 : 0.0;
        }
        return f;
    }

    auto ac9() -> Outcome
    {
        Outcome out;
        std::mt19937_64 rng(9);
        FpnSpace s(3, 5);
        size_t instances = 0, max_codim = 0;
        double worst_gap_ratio = 0;
        for (double eps : { 0.2, 0.3 })
            for (size_t k = 0; k < 1000; ++k) {
                vector<DensityFunction> fs;
                std::uniform_real_distribution<double> density(0.1, 0.9);
                for (int j = 0; j < 3; ++j)
                    fs.push_back(k % 2 ? oracle::random_indicator(s, density(rng), rng) : structured_indicator(s, rng));
                auto h = weak_regularity_subspace(fs, eps);
                ++instances;
                max_codim = std::max(max_codim, h.codimension());
                if (h.codimension() > static_cast<size_t>(std::ceil(3 / (eps * eps))))
                    out.fail("codimension " + to_string(h.codimension()));
                auto perp = h.annihilator();
                for (auto & f : fs) {
                    // (f - f_H)^ by the naive sum off H^perp
                    auto fh = coset_average(f, h);
                    DensityFunction diff{ s, vector<double>(s.size()) };
                    for (size_t x = 0; x < s.size(); ++x)
                        diff.values[x] = f.values[x] - fh.values[x];
                    double sup = 0;
                    for (auto & c : dft(diff).c)
                        sup = std::max(sup, std::abs(c));
                    if (sup > eps + 1e-12)
                        out.fail("not eps-weakly-regular: " + fmt(sup));
                }
                double gap = std::abs(oracle::naive_lambda(fs[0], fs[1], fs[2])
                        - oracle::naive_lambda(coset_average(fs[0], h), coset_average(fs[1], h), coset_average(fs[2], h)));
                if (std::abs(gap - counting_lemma_gap(fs[0], fs[1], fs[2], h)) > 1e-12)
                    out.fail("gap disagrees with the direct sum");
                if (gap > 3 * eps)
                    out.fail("counting gap " + fmt(gap) + " > 3 eps");
                worst_gap_ratio = std::max(worst_gap_ratio, gap / (3 * eps));
            }
        if (out.ok)
            out.detail = to_string(instances) + " instances; max codim " + to_string(max_codim)
                + ", max gap / 3 eps = " + fmt(worst_gap_ratio);
        return out;
    }

    // ---------------------------------------------------------------- AC10
    auto ac10() -> Outcome
    {
        Outcome out;
        std::mt19937_64 rng(10);
        FpnSpace s(2, 2);
        size_t runs = 0, successes = 0;
        string rates;
        for (size_t m : { 3u, 4u }) {
            size_t local_runs = 0, local_success = 0;
            size_t fibre = size_t{1} << m;
            for (size_t k = 0; k < 200; ++k) {
                auto f = oracle::random_density(s, rng);
                auto g = oracle::random_density(s, rng);
                auto h = oracle::random_density(s, rng);
                auto r = weighted_removal_roundtrip(f, g, h, 0.5, m, 1000 * m + k);
                ++runs;
                ++local_runs;

                // lifts minus deletions hold no triangle
                vector<DensityFunction> cleared;
                for (auto * side : { &r.f, &r.g, &r.h }) {
                    auto c = side->lift;
                    for (auto e : side->removed)
                        c.values[e] = 0;
                    cleared.push_back(c);
                }
                if (oracle::naive_lambda(cleared[0], cleared[1], cleared[2]) != 0)
                    out.fail("lift still has triangles");

                const DensityFunction * originals[] = { &f, &g, &h };
                const RoundTripSide * sides[] = { &r.f, &r.g, &r.h };
                for (size_t j = 0; j < 3; ++j) {
                    auto & orig = *originals[j];
                    auto & side = *sides[j];
                    vector<size_t> above(s.size(), 0);
                    for (auto e : side.removed)
                        ++above[e / fibre];
                    double l1 = 0;
                    for (size_t x = 0; x < s.size(); ++x) {
                        bool zeroed = static_cast<double>(above[x]) >= orig.values[x] * static_cast<double>(fibre) / 4;
                        double expect = zeroed ? 0.0 : orig.values[x];
                        if (side.rounded.values[x] != expect)
                            out.fail("rounding rule broken");
                        l1 += std::abs(orig.values[x] - expect);
                    }
                    l1 /= static_cast<double>(s.size());
                    if (std::abs(l1 - side.l1) > 1e-15)
                        out.fail("l1 ledger mismatch");
                    if (side.deleted != side.removed.size())
                        out.fail("deletion count mismatch");
                    if (l1 > 4.0 * static_cast<double>(side.removed.size()) / static_cast<double>(s.size() * fibre) + 1e-15)
                        out.fail("l1 above 4 deleted / p^(n+m)");
                }
                double after = oracle::naive_lambda(r.f.rounded, r.g.rounded, r.h.rounded);
                if (r.success != (after == 0))
                    out.fail("success flag disagrees with Lambda");
                if (r.success) {
                    ++successes;
                    ++local_success;
                }
            }
            rates += (rates.empty() ? "" : ", ") + string("m=") + to_string(m) + " failure rate "
                + fmt(1.0 - static_cast<double>(local_success) / static_cast<double>(local_runs));
        }
        if (out.ok)
            out.detail = to_string(runs) + " runs, " + to_string(successes) + " successful with Lambda = 0; " + rates;
        else
            out.detail += " (" + rates + ")";
        return out;
    }

    // ---------------------------------------------------------------- AC11
    auto brute_triangle_free(const ExpandedSets & es) -> bool
    {
        auto & s = es.lifted;
        std::set<size_t> z;
        for (auto & b : es.z_blocks)
            z.insert(b.begin(), b.end());
        for (auto & xb : es.x_blocks)
            for (auto x : xb)
                for (auto & yb : es.y_blocks)
                    for (auto y : yb)
                        if (z.count(s.index(oracle::digit_sum_zero(s.digits(x), s.digits(y), s.p()))))
                            return false;
        return true;
    }

    auto brute_min_missed(const ExpandedSets & es, const LinearMap & phi) -> size_t
    {
        FpnSpace target(phi.p, phi.rows);
        size_t q = target.size(), best = SIZE_MAX;
        vector<size_t> cx(q), cy(q), cz(q);
        auto image = [&] (size_t e) { return target.index(phi.apply(es.lifted.digits(e))); };
        for (auto & b : es.x_blocks) for (auto e : b) ++cx[image(e)];
        for (auto & b : es.y_blocks) for (auto e : b) ++cy[image(e)];
        for (auto & b : es.z_blocks) for (auto e : b) ++cz[image(e)];
        for (size_t mx = 0; mx < (size_t{1} << q); ++mx)
            for (size_t my = 0; my < (size_t{1} << q); ++my)
                for (size_t mz = 0; mz < (size_t{1} << q); ++mz) {
                    bool free = true;
                    for (size_t a = 0; a < q && free; ++a)
                        for (size_t b = 0; b < q && free; ++b)
                            if ((mx >> a & 1) && (my >> b & 1)
                                    && (mz >> target.index(oracle::digit_sum_zero(target.digits(a), target.digits(b), phi.p)) & 1))
                                free = false;
                    if (! free)
                        continue;
                    size_t missed = 0;
                    for (size_t a = 0; a < q; ++a)
                        missed += (mx >> a & 1 ? 0 : cx[a]) + (my >> a & 1 ? 0 : cy[a]) + (mz >> a & 1 ? 0 : cz[a]);
                    best = std::min(best, missed);
                }
        return best;
    }

    auto ac11() -> Outcome
    {
        Outcome out;
        size_t expansions = 0;
        vector<TricolorTriple> triples;
        for (unsigned p : { 2u, 3u, 5u })
            for (size_t n = 1; std::pow(p, n) <= 128; ++n) {
                FpnSpace s(p, n);
                auto mode = s.size() <= max_exhaustive_tricolor_size ? TricolorMode::exhaustive : TricolorMode::greedy;
                auto t = tricolor_search(s, mode).triple;
                if (! verify_tricolor(t))
                    out.fail("search returned an invalid triple");
                // every prefix is a tricolor triple too
                for (size_t l = 1; l <= t.length(); ++l) {
                    if (std::pow(p, n + l) > 4096)
                        break;
                    TricolorTriple prefix{ s, { t.x.begin(), t.x.begin() + l }, { t.y.begin(), t.y.begin() + l },
                        { t.z.begin(), t.z.begin() + l } };
                    auto es = expand_construction(prefix);
                    ++expansions;
                    if (! brute_triangle_free(es))
                        out.fail("expansion p=" + to_string(p) + " n=" + to_string(n) + " l=" + to_string(l) + " has a triangle");
                    if (es.lifted.size() <= 243)
                        triples.push_back(prefix);
                }
            }

        // exhaustive: every phi and every triangle-free target
        size_t exhaustive = 0;
        for (auto & t : triples) {
            auto es = expand_construction(t);
            unsigned p = t.space.p();
            size_t cols = es.lifted.n();
            for (size_t m = 0; std::pow(p, m) <= 4 && std::pow(p, m * cols) <= 4096; ++m) {
                size_t total = static_cast<size_t>(std::pow(p, m * cols));
                for (size_t code = 0; code < total; ++code) {
                    vector<unsigned> entries(m * cols);
                    size_t c = code;
                    for (auto & e : entries) {
                        e = static_cast<unsigned>(c % p);
                        c /= p;
                    }
                    auto phi = make_linear_map(p, m, cols, entries);
                    auto missed = brute_min_missed(es, phi);
                    double bound = (static_cast<double>(t.length()) - static_cast<double>(m))
                        * std::pow(p, t.length()) / 4;
                    ++exhaustive;
                    if (static_cast<double>(missed) < bound)
                        out.fail("missed " + to_string(missed) + " < " + fmt(bound));
                    if (optimal_targets(es, phi).audit.missed != missed)
                        out.fail("optimal targets disagree with brute force");
                }
            }
        }

        std::mt19937_64 rng(11);
        size_t random = 0;
        struct Case { unsigned p; size_t n; };
        for (auto [p, n] : { Case{ 2, 2 }, Case{ 3, 2 }, Case{ 2, 3 }, Case{ 5, 1 } }) {
            FpnSpace s(p, n);
            auto mode = s.size() <= max_exhaustive_tricolor_size ? TricolorMode::exhaustive : TricolorMode::greedy;
            auto t = tricolor_search(s, mode).triple;
            auto es = expand_construction(t);
            std::uniform_int_distribution<unsigned> digit(0, p - 1);
            for (size_t k = 0; k < 250; ++k) {
                size_t m = k % 2 == 0 || std::pow(p, 2) > max_target_space ? 1 : 2;
                vector<unsigned> entries(m * es.lifted.n());
                for (auto & e : entries)
                    e = digit(rng);
                auto r = optimal_targets(es, make_linear_map(p, m, es.lifted.n(), entries));
                ++random;
                if (! r.audit.holds)
                    out.fail("random phi: missed " + to_string(r.audit.missed) + " < " + fmt(r.audit.bound));
            }
        }
        if (out.ok)
            out.detail = to_string(expansions) + " expansions triangle-free; " + to_string(exhaustive)
                + " exhaustive maps, " + to_string(random) + " random maps meet the bound";
        return out;
    }

    // ---------------------------------------------------------------- AC12
    auto ac12() -> Outcome
    {
        Outcome out;
        size_t primes = 0;
        double worst = 0;
        for (unsigned p = 2; p <= 199; ++p) {
            bool prime = p > 1;
            for (unsigned d = 2; d * d <= p; ++d)
                prime = prime && p % d != 0;
            if (! prime)
                continue;
            ++primes;
            auto c = cp_constant(p);
            worst = std::max(worst, std::abs(c.c_p - c.grid_c_p));
            if (std::abs(c.c_p - c.grid_c_p) > 1e-6)
                out.fail("p=" + to_string(p) + " golden vs grid " + fmt(c.c_p - c.grid_c_p));
            if (! (c.c_p > 0 && c.c_p < 1))
                out.fail("c_" + to_string(p) + " = " + fmt(c.c_p));
            // phi_p at the minimiser from the plain sum
            double sum = 0;
            for (unsigned j = 0; j < p; ++j)
                sum += std::pow(c.t_star, j);
            double direct = std::pow(c.t_star, -(static_cast<double>(p) - 1) / 3) * sum;
            if (std::abs(direct - c.min_value) > 1e-9 * direct)
                out.fail("minimum value differs from the direct sum at p=" + to_string(p));
        }
        auto a = cp_asymptote();
        double direct = std::exp(a.x_star / 3) * (1 - std::exp(-a.x_star)) / a.x_star;
        if (std::abs(direct - a.infimum) > 1e-12) out.fail("asymptote value mismatch");
        if (! (a.constant >= 0.171 && a.constant <= 0.174)) out.fail("-log inf = " + fmt(a.constant));
        if (out.ok)
            out.detail = to_string(primes) + " primes, max |golden - grid| " + fmt(worst) + "; -log inf = " + fmt(a.constant);
        return out;
    }

    // ---------------------------------------------------------------- AC13
    auto ac13() -> Outcome
    {
        Outcome out;
        vector<Graph> targets;
        for (size_t m = 1; m <= 4; ++m)
            for (auto & f : enumerate_graphs(m))
                targets.push_back(f);
        if (targets.size() != 18)
            out.fail("expected 18 targets, got " + to_string(targets.size()));
        size_t pairs = 0, sources = 0;
        for (size_t n = 1; n <= 8; ++n)
            for (auto & g : enumerate_graphs(n)) {
                ++sources;
                for (auto & f : targets) {
                    auto r = exact_min_violations(g, f);
                    auto expect = oracle::min_violations(g, f);
                    ++pairs;
                    if (r.report.violations != expect)
                        out.fail("n=" + to_string(n) + ": " + to_string(r.report.violations) + " vs " + to_string(expect));
                    if (violations(g, f, r.map).violations != r.report.violations)
                        out.fail("witness map does not achieve the reported count");
                }
            }
        if (sources != 13598)
            out.fail("expected 13598 graphs on 1..8 vertices, got " + to_string(sources));

        size_t removal_cases = 0;
        auto check_removal = [&] (const Graph & g) {
            size_t relevant = 0;
            for (auto & e : g.edges())
                relevant += oracle::edge_triangles(g, e) > 0;
            if (relevant > 12)
                return;
            ++removal_cases;
            auto exact = removal_distance(g, RemovalMode::exact);
            auto expect = oracle::removal_distance(g);
            if (exact.deletions != expect)
                out.fail("removal " + to_string(exact.deletions) + " vs " + to_string(expect));
            if (removal_distance(g, RemovalMode::greedy).deletions < exact.deletions)
                out.fail("greedy below exact");
            auto cleared = g;
            for (auto & e : exact.removed)
                cleared.remove_edge(e.u, e.v);
            if (oracle::triangles(cleared) != 0)
                out.fail("exact removal leaves a triangle");
        };
        for (size_t n = 3; n <= 7; ++n)
            for (auto & g : enumerate_graphs(n))
                check_removal(g);
        std::mt19937_64 rng(13);
        for (size_t k = 0; k < 400; ++k)
            check_removal(random_graph(8 + k % 5, 0.25 + 0.05 * static_cast<double>(k % 6), rng));
        if (out.ok)
            out.detail = to_string(pairs) + " (graph, target) pairs; " + to_string(removal_cases) + " removal instances";
        return out;
    }
}

int main()
{
    vector<Criterion> criteria{
        { 1, "construction fidelity", 1, ac1 },
        { 2, "Ruzsa-Szemeredi suite", 5, ac2 },
        { 3, "entropy suite", 30, ac3 },
        { 4, "entropy-chain audit", 30, ac4 },
        { 5, "claim (dagger) audit", 60, ac5 },
        { 6, "deletion schedule", 5, ac6 },
        { 7, "unique-triangle sampling", 10, ac7 },
        { 8, "transform core", 30, ac8 },
        { 9, "weak regularity and counting", 60, ac9 },
        { 10, "weighted removal round trip", 60, ac10 },
        { 11, "expansion and missed mass", 60, ac11 },
        { 12, "c_p numerics", 5, ac12 },
        { 13, "exact-oracle equivalence", 120, ac13 },
    };
    int failed = 0;
    for (auto & c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        }
        catch (const std::exception & e) {
            out.fail(string("exception: ") + e.what());
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (seconds > c.limit)
            out.fail("took " + fmt(seconds) + " s, limit " + fmt(c.limit) + " s");
        failed += ! out.ok;
        std::printf("AC%-2d %s  %s: %s [%.2f s / %g s]\n", c.id, out.ok ? "PASS" : "FAIL", c.name.c_str(),
                out.detail.c_str(), seconds, c.limit);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
