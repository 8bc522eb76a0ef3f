#include <trifree/approx_hom.hh>
#include <trifree/arith_constructions.hh>
#include <trifree/arith_removal.hh>
#include <trifree/constructions.hh>
#include <trifree/entropy.hh>
#include <trifree/error.hh>
#include <trifree/experiments.hh>
#include <trifree/fourier.hh>
#include <trifree/fpn_io.hh>
#include <trifree/graph_io.hh>
#include <trifree/removal.hh>
#include <trifree/text.hh>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

using std::size_t;
using std::string;
using std::to_string;
using std::uint64_t;
using std::vector;

namespace trifree
{
    namespace
    {
        using Json = Report::Json;

        class ParamReader
        {
            public:
                ParamReader(const PresetInfo & info, const Params & given) : _info(info), _given(given)
                {
                    for (auto & [key, _] : given) {
                        bool known = std::any_of(info.params.begin(), info.params.end(),
                                [&] (auto & p) { return p.first == key; });
                        if (! known)
                            throw Error(ErrorKind::invalid_argument, "preset " + info.id + " has no parameter '" + key + "'");
                    }
                }

                auto text(const string & key) const -> string
                {
                    if (auto it = _given.find(key); it != _given.end())
                        return it->second;
                    for (auto & [name, value] : _info.params)
                        if (name == key)
                            return value;
                    throw Error(ErrorKind::invalid_argument, "missing parameter '" + key + "'");
                }

                auto count(const string & key) const -> size_t
                {
                    try {
                        return parse_unsigned(text(key), 0);
                    }
                    catch (const ParseError &) {
                        throw Error(ErrorKind::invalid_argument, "parameter '" + key + "' must be a non-negative integer");
                    }
                }

                auto real(const string & key) const -> double
                {
                    try {
                        return parse_double(text(key), 0);
                    }
                    catch (const ParseError &) {
                        throw Error(ErrorKind::invalid_argument, "parameter '" + key + "' must be a number");
                    }
                }

                auto counts(const string & key) const -> vector<size_t>
                {
                    vector<size_t> out;
                    std::stringstream in(text(key));
                    string item;
                    while (std::getline(in, item, ','))
                        try {
                            out.push_back(parse_unsigned(item, 0));
                        }
                        catch (const ParseError &) {
                            throw Error(ErrorKind::invalid_argument, "parameter '" + key + "' must be a comma list of integers");
                        }
                    return out;
                }

            private:
                const PresetInfo & _info;
                const Params & _given;
        };

        auto load_graph(const string & spec, Report & report) -> Graph
        {
            report.input("graph", spec);
            if (spec == "bowtie")
                return named::bowtie();
            if (spec == "triangle")
                return named::complete(3);
            if (spec.size() > 1 && (spec[0] == 'K' || spec[0] == 'C')
                    && std::all_of(spec.begin() + 1, spec.end(), [] (char c) { return c >= '0' && c <= '9'; })) {
                auto k = static_cast<size_t>(std::stoul(spec.substr(1)));
                return spec[0] == 'K' ? named::complete(k) : named::cycle(k);
            }
            report.input("graph_digest", file_digest(spec));
            return read_edge_list_file(spec);
        }

        auto random_map(size_t n, size_t f_size, std::mt19937_64 & rng) -> VertexMap
        {
            std::uniform_int_distribution<size_t> pick(0, f_size - 1);
            VertexMap phi{ f_size, vector<Vertex>(n) };
            for (auto & v : phi.table)
                v = static_cast<Vertex>(pick(rng));
            return phi;
        }

        auto random_graph(size_t n, double density, std::mt19937_64 & rng) -> Graph
        {
            std::bernoulli_distribution coin(density);
            Graph g(n);
            for (size_t u = 0; u < n; ++u)
                for (size_t v = u + 1; v < n; ++v)
                    if (coin(rng))
                        g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
            return g;
        }

        auto as_double(size_t v) -> double
        {
            return static_cast<double>(v);
        }

        void tfl_ingredients(const ParamReader & params, Report & report, uint64_t seed)
        {
            Pattern k3(named::complete(3));
            auto g = load_graph(params.text("graph"), report);
            auto maps = params.count("maps");
            auto chain_target = params.count("chain-target");
            auto claim_target = params.count("claim-target");
            report.input("maps", maps);
            report.input("chain-target", chain_target);
            report.input("claim-target", claim_target);
            if (chain_target == 0 || claim_target == 0)
                throw Error(ErrorKind::invalid_argument, "target sizes must be positive");

            auto b = partial_binary_blowup(g, k3);
            size_t m = b.m;
            report.measure("base", Json{ { "vertices", g.size() }, { "edges", g.edge_count() }, { "copies", m } });
            report.measure("blowup", Json{ { "vertices", b.graph.size() }, { "edges", b.graph.edge_count() } });

            double lift = std::ldexp(1.0, 2 * static_cast<int>(m) - 2);
            report.check("blowup-vertex-count", "|V(G')|", as_double(b.graph.size()), Relation::eq,
                    as_double(g.size()) * std::ldexp(1.0, static_cast<int>(m)));
            report.check("blowup-edge-count", "|E(G')|", as_double(b.graph.edge_count()), Relation::eq,
                    as_double(g.edge_count()) * lift);

            std::map<Edge, size_t> per_edge;
            for (auto & e : b.graph.edges())
                ++per_edge[Edge(b.labels[e.u].base, b.labels[e.v].base)];
            size_t off = 0;
            for (auto & e : g.edges())
                off += as_double(per_edge[e]) != lift;
            report.check("lift-count-per-base-edge", "base edges with lift count != 2^(2m-2)", as_double(off),
                    Relation::eq, 0);
            report.check("blowup-hom-free", "homomorphisms K3 -> G'", as_double(hom_count(k3, b.graph)),
                    Relation::eq, 0);

            std::mt19937_64 rng(seed);
            size_t chain_failures = 0;
            double worst = INFINITY;
            for (size_t k = 0; k < maps; ++k)
                for (auto & row : chain_bound_audit(b, random_map(b.graph.size(), chain_target, rng), chain_target)) {
                    chain_failures += ! row.holds;
                    worst = std::min(worst, row.log_target - row.sum_info);
                }
            report.measure("chain-random-min-slack", maps ? Json(worst) : Json());
            report.check("chain-bound-random", "random maps breaking sum I <= H(Y) <= log|F|", as_double(chain_failures),
                    Relation::eq, 0);

            if (m > 2) {
                report.measure("cell-audits", "skipped: m > 2");
                return;
            }
            size_t cell_failures = 0, cell_maps = 0;
            for (size_t i = 0; i < m; ++i)
                for_each_claim_map(b, i, chain_target, ClaimMapScope::cells, [&] (const VertexMap & phi) {
                    ++cell_maps;
                    for (auto & row : chain_bound_audit(b, phi, chain_target))
                        cell_failures += ! row.holds;
                    return true;
                });
            report.measure("chain-cell-maps", cell_maps);
            report.check("chain-bound-cells", "cell-constant maps breaking the chain", as_double(cell_failures),
                    Relation::eq, 0);

            double eta = claim_eta(k3);
            size_t claim_maps = 0, hypothesis = 0, claim_failures = 0;
            for (size_t size = 1; size <= claim_target; ++size)
                for (auto & f : enumerate_hom_free_targets(k3, size))
                    for (size_t i = 0; i < m; ++i)
                        for_each_claim_map(b, i, f.size(), ClaimMapScope::cells, [&] (const VertexMap & phi) {
                            ++claim_maps;
                            auto audit = claim_dagger_audit(b, f, i, phi, eta);
                            if (audit.hypothesis) {
                                ++hypothesis;
                                claim_failures += ! audit.conclusion;
                            }
                            return true;
                        });
            report.measure("claim-maps", Json{ { "checked", claim_maps }, { "with_hypothesis", hypothesis },
                    { "eta", eta }, { "threshold", std::ldexp(1.0, 2 * static_cast<int>(m) - 3) } });
            report.check("claim-dagger", "maps with hypothesis but fewer than 2^(2m-3) violated edges",
                    as_double(claim_failures), Relation::eq, 0);
        }

        void rs_pipeline(const ParamReader & params, Report & report, uint64_t seed)
        {
            auto n = params.count("n");
            auto method_name = params.text("method");
            auto samples = params.count("samples");
            report.input("n", n);
            report.input("method", method_name);
            report.input("samples", samples);
            if (method_name != "behrend" && method_name != "greedy")
                throw Error(ErrorKind::invalid_argument, "method must be behrend or greedy");
            if (n == 0)
                throw Error(ErrorKind::invalid_argument, "n must be positive");

            auto set = build_ap_free_set(n, method_name == "greedy" ? ApFreeMethod::greedy : ApFreeMethod::behrend_spheres);
            report.measure("set", set.elements);
            report.check("ap-free", "3-term progressions in S", is_ap_free(set.elements) ? 0 : 1, Relation::eq, 0);

            auto g = rs_graph(n, set);
            Pattern k3(named::complete(3));
            double s = as_double(set.elements.size());
            auto triangles = count_triangles(g);
            report.measure("graph", Json{ { "vertices", g.size() }, { "edges", g.edge_count() }, { "triangles", triangles } });
            report.check("rs-edge-count", "|E|", as_double(g.edge_count()), Relation::eq, 3 * as_double(n) * s);
            report.check("rs-triangle-count", "triangles", as_double(triangles), Relation::eq, as_double(n) * s);
            report.check("rs-unique-triangle", "edges not in exactly one triangle",
                    unique_copy_property(g, k3) ? 0 : 1, Relation::eq, 0);

            // smallest x completing a progression with two members of S
            std::set<size_t> members(set.elements.begin(), set.elements.end());
            for (size_t x = 1; x <= n; ++x) {
                if (members.count(x))
                    continue;
                auto extended = set.elements;
                extended.push_back(x);
                if (is_ap_free(extended))
                    continue;
                report.measure("injected", x);
                report.check("ap-injection-breaks-uniqueness", "unique-triangle property after injecting a progression",
                        unique_copy_property(rs_graph_unchecked(n, extended), k3) ? 1 : 0, Relation::eq, 0);
                break;
            }

            size_t t = 0;
            for (auto & e : g.edges())
                t = std::max(t, codegree(g, e.u, e.v));
            size_t failures = 0;
            double good = 0;
            bool regime = false;
            for (size_t k = 0; k < samples; ++k) {
                auto sample = sample_diamond_subgraph(g, t, seed + k);
                regime = sample.in_asymptotic_regime;
                good += as_double(sample.good_triangles);
                failures += sample.graph.edge_count() > 0 && ! unique_copy_property(sample.graph, k3);
                failures += sample.graph.edge_count() != 3 * sample.good_triangles;
            }
            report.measure("sampling", Json{ { "t", t }, { "N", g.size() / (9 * t) }, { "asymptotic_regime", regime } });
            report.check("sample-unique-triangle", "samples without the unique-triangle property", as_double(failures),
                    Relation::eq, 0);
            if (samples > 0) {
                double mean = good / as_double(samples);
                double nn = as_double(g.size());
                double alpha = as_double(triangles) / (nn * nn * nn);
                double bound = 1.0 / (1000.0 * std::pow(as_double(t), 3)) * (2.0 / 3.0) * alpha * nn * nn * nn;
                report.check("sample-good-triangles-mean", "mean good triangles", mean, Relation::ge, bound);
            }
        }

        void deletion_schedule(const ParamReader & params, Report & report, uint64_t seed)
        {
            auto terms = params.count("terms");
            auto eps = params.real("eps");
            report.input("terms", terms);
            report.input("eps", eps);
            if (terms < 2)
                throw Error(ErrorKind::invalid_argument, "terms must be at least 2");

            double partial = g_schedule_partial_sum(terms);
            report.check("schedule-partial-sum", "sum_{i<=terms} 1/g(2^-i)", partial, Relation::lt, 0.5);
            double tail = g_schedule_tail_bound(terms);
            report.measure("schedule-tail-bound", tail);
            report.check("schedule-series", "partial sum + tail bound", partial + tail, Relation::lt, 0.5);

            size_t increasing = 0, product = 0;
            for (size_t i = 0; i < 60; ++i) {
                double x = std::ldexp(1.0, -static_cast<int>(i)), y = x / 2;
                increasing += ! (g_schedule(y) > g_schedule(x));
                product += ! (g_schedule(y) * y < g_schedule(x) * x);
            }
            report.check("g-increases-as-x-halves", "grid steps where g(x/2) <= g(x)", as_double(increasing),
                    Relation::eq, 0);
            report.check("g-times-x-decreases", "grid steps where g(x/2) x/2 >= g(x) x", as_double(product),
                    Relation::eq, 0);

            Graph g;
            auto spec = params.text("graph");
            if (spec == "random") {
                auto vertices = params.count("vertices");
                auto density = params.real("density");
                report.input("vertices", vertices);
                report.input("density", density);
                std::mt19937_64 rng(seed);
                g = random_graph(vertices, density, rng);
                report.input("graph", "random");
            }
            else
                g = load_graph(spec, report);

            auto result = greedy_bounded_codegree(g, eps);
            report.measure("greedy", Json{ { "initial_triangles", result.initial_triangles },
                    { "triangles", result.triangles }, { "deletions", result.deletions() }, { "delta", result.delta },
                    { "alpha", result.alpha }, { "threshold", result.threshold } });

            size_t recount = 0;
            for (auto & e : result.graph.edges())
                recount = std::max(recount, codegree(result.graph, e.u, e.v));
            report.check("final-codegree", "max codegree after deletion", as_double(recount), Relation::le,
                    result.threshold);

            // replay: the trace survives text round trip and each step took a max-codegree edge
            std::stringstream text;
            write_trace(text, result.trace);
            auto replayed = read_trace(text);
            size_t mismatches = replayed.size() != result.trace.size();
            Graph current = g;
            for (size_t k = 0; k < std::min(replayed.size(), result.trace.size()); ++k) {
                auto & step = replayed[k];
                size_t best = 0;
                Edge best_edge{ 0, 0 };
                for (auto & e : current.edges()) {
                    auto c = codegree(current, e.u, e.v);
                    if (c > best) {
                        best = c;
                        best_edge = e;
                    }
                }
                mismatches += ! (step.edge == result.trace[k].edge) || ! (step.edge == best_edge)
                    || result.trace[k].codegree != best || step.beta != result.trace[k].beta
                    || step.threshold != result.trace[k].threshold;
                current.remove_edge(step.edge.u, step.edge.v);
            }
            auto again = greedy_bounded_codegree(g, eps);
            mismatches += again.trace.size() != result.trace.size();
            report.check("trace-replay", "steps differing on replay", as_double(mismatches), Relation::eq, 0);
        }

        auto random_indicator(const FpnSpace & s, double density, std::mt19937_64 & rng) -> DensityFunction
        {
            std::bernoulli_distribution coin(density);
            DensityFunction f{ s, vector<double>(s.size()) };
            for (auto & v : f.values)
                v = coin(rng) ? 1.0 : 0.0;
            return f;
        }

        void arith_roundtrip(const ParamReader & params, Report & report, uint64_t seed)
        {
            auto p = static_cast<unsigned>(params.count("p"));
            auto n = params.count("n");
            auto eps = params.real("eps");
            auto density = params.real("density");
            auto m = params.count("m");
            auto runs = params.count("runs");
            report.input("p", p);
            report.input("n", n);
            report.input("eps", eps);
            report.input("density", density);
            report.input("m", m);
            report.input("runs", runs);
            if (! (eps > 0) || ! (density >= 0 && density <= 1))
                throw Error(ErrorKind::invalid_argument, "need eps > 0 and density in [0, 1]");

            FpnSpace space(p, n);
            std::mt19937_64 rng(seed);
            vector<DensityFunction> fs;
            for (auto name : { "f", "g", "h" }) {
                auto path = params.text(name);
                if (path.empty())
                    fs.push_back(random_indicator(space, density, rng));
                else {
                    report.input(string(name) + "_digest", file_digest(path));
                    fs.push_back(read_function_file(path));
                    if (! (fs.back().space == space))
                        throw Error(ErrorKind::space_mismatch, string(name) + " is not on F_" + to_string(p) + "^" + to_string(n));
                }
            }

            auto h = weak_regularity_subspace(fs, eps);
            report.measure("subspace", Json{ { "codimension", h.codimension() }, { "dimension", h.dimension() } });
            report.check("regularity-codimension", "codim H", as_double(h.codimension()), Relation::le,
                    std::ceil(3 / (eps * eps)));
            double defect = 0;
            for (auto & f : fs)
                defect = std::max(defect, regularity_defect(f, h));
            report.check("weak-regularity", "max_y |(f - f_H)^(y)|", defect, Relation::le, eps, 1e-12);
            double gap = counting_lemma_gap(fs[0], fs[1], fs[2], h);
            report.measure("lambda", lambda(fs[0], fs[1], fs[2]));
            report.check("counting-lemma", "|Lambda(f,g,h) - Lambda(f_H,g_H,h_H)|", gap, Relation::le, 3 * eps);

            size_t successes = 0, zero_failures = 0, accounting_failures = 0, over_budget = 0;
            Json rows = Json::array();
            for (size_t k = 0; k < runs; ++k) {
                auto r = weighted_removal_roundtrip(fs[0], fs[1], fs[2], eps, m, seed + k);
                successes += r.success;
                zero_failures += r.success && r.lambda_after != 0.0;
                accounting_failures += ! r.accounting_holds;
                over_budget += ! r.within_budget;
                rows.push_back(Json{ { "seed", seed + k }, { "deleted", { r.f.deleted, r.g.deleted, r.h.deleted } },
                        { "l1", { r.f.l1, r.g.l1, r.h.l1 } }, { "lambda_after", r.lambda_after }, { "success", r.success },
                        { "exact_removal", r.exact_removal } });
            }
            report.measure("roundtrip-runs", rows);
            report.measure("roundtrip", Json{ { "runs", runs }, { "successes", successes }, { "over_budget", over_budget },
                    { "failure_rate", runs ? 1.0 - as_double(successes) / as_double(runs) : 0.0 } });
            report.check("roundtrip-lambda-zero", "successful runs with Lambda(f',g',h') != 0", as_double(zero_failures),
                    Relation::eq, 0);
            report.check("roundtrip-l1-accounting", "runs with ||f - f'||_1 above 4 deleted / p^(n+m)",
                    as_double(accounting_failures), Relation::eq, 0);
        }

        void arith_expansion(const ParamReader & params, Report & report, uint64_t seed)
        {
            auto p = static_cast<unsigned>(params.count("p"));
            auto n = params.count("n");
            auto maps = params.count("maps");
            auto ms = params.counts("m");
            report.input("p", p);
            report.input("n", n);
            report.input("maps", maps);
            report.input("m", ms);

            FpnSpace space(p, n);
            TricolorTriple t;
            auto path = params.text("tricolor");
            if (! path.empty()) {
                report.input("tricolor_digest", file_digest(path));
                t = read_tricolor_file(path);
                if (! (t.space == space))
                    throw Error(ErrorKind::space_mismatch, "tricolor file is not on F_" + to_string(p) + "^" + to_string(n));
            }
            else {
                auto mode = space.size() <= max_exhaustive_tricolor_size ? TricolorMode::exhaustive : TricolorMode::greedy;
                auto search = tricolor_search(space, mode);
                report.measure("search", Json{ { "mode", mode == TricolorMode::exhaustive ? "exhaustive" : "greedy" },
                        { "optimal", search.optimal } });
                t = search.triple;
            }
            size_t l = t.length();
            report.measure("tricolor", Json{ { "l", l } });
            report.check("tricolor-iff", "tricolor condition broken", verify_tricolor(t) ? 0 : 1, Relation::eq, 0);

            auto es = expand_construction(t);
            size_t wrong = 0;
            for (size_t i = 0; i < l; ++i)
                for (auto * blocks : { &es.x_blocks, &es.y_blocks, &es.z_blocks })
                    wrong += (*blocks)[i].size() != expansion_block_size(p, l);
            report.measure("expanded", Json{ { "dimension", es.lifted.n() }, { "block_size", expansion_block_size(p, l) } });
            report.check("expansion-block-size", "blocks not of size (floor((p-2)/3)+1) p^(l-1)", as_double(wrong),
                    Relation::eq, 0);
            report.check("expansion-triangle-free", "triangles in X' x Y' x Z'",
                    expanded_is_triangle_free(es) ? 0 : 1, Relation::eq, 0);
            report.check("arith-good", "4 (floor((p-2)/3) + 1)", 4.0 * (expansion_top(p) + 1), Relation::ge, p);

            std::mt19937_64 rng(seed);
            std::uniform_int_distribution<unsigned> digit(0, p - 1);
            for (auto m : ms) {
                if (std::pow(p, m) > max_target_space)
                    throw Error(ErrorKind::invalid_argument, "p^m must be at most " + to_string(max_target_space));
                size_t failures = 0;
                double min_slack = INFINITY;
                for (size_t k = 0; k < maps; ++k) {
                    vector<unsigned> entries(m * es.lifted.n());
                    for (auto & e : entries)
                        e = digit(rng);
                    auto best = optimal_targets(es, make_linear_map(p, m, es.lifted.n(), entries));
                    failures += ! best.audit.holds;
                    min_slack = std::min(min_slack, static_cast<double>(best.audit.missed) - best.audit.bound);
                }
                double bound = (as_double(l) - as_double(m)) * std::pow(p, l) / 4;
                report.measure("missed-mass-m" + to_string(m), Json{ { "bound", bound }, { "min_slack", maps ? Json(min_slack) : Json() } });
                report.check("missed-mass", "random phi (m = " + to_string(m) + ") with missed < (l-m) p^l / 4",
                        as_double(failures), Relation::eq, 0);
            }
        }

        void cp_table(const ParamReader & params, Report & report, uint64_t)
        {
            auto primes = params.counts("primes");
            report.input("primes", primes);
            for (auto p : primes) {
                auto c = cp_constant(static_cast<unsigned>(p));
                report.measure("cp-" + to_string(p), Json{ { "p", p }, { "t_star", c.t_star }, { "min", c.min_value },
                        { "c_p", c.c_p }, { "grid_c_p", c.grid_c_p }, { "c_p_log_p", c.c_p * std::log(as_double(p)) } });
                report.check("c_p-positive", "c_" + to_string(p), c.c_p, Relation::gt, 0);
                report.check("c_p-below-one", "c_" + to_string(p), c.c_p, Relation::lt, 1);
                report.check("c_p-grid-agreement", "|golden - grid| for p = " + to_string(p), std::abs(c.c_p - c.grid_c_p),
                        Relation::le, 1e-6);
            }
            auto a = cp_asymptote();
            report.measure("asymptote", Json{ { "x_star", a.x_star }, { "infimum", a.infimum } });
            report.check("asymptote-lower", "-log inf e^(x/3)(1-e^-x)/x", a.constant, Relation::ge, 0.171);
            report.check("asymptote-upper", "-log inf e^(x/3)(1-e^-x)/x", a.constant, Relation::le, 0.174);
        }

        using Runner = void (*)(const ParamReader &, Report &, uint64_t);

        struct Preset
        {
            PresetInfo info;
            Runner run;
        };

        auto preset_table() -> const vector<Preset> &
        {
            static const vector<Preset> table{
                { { "tfl-ingredients", "partial binary blow-up, homomorphism-freeness, entropy chain and claim audits",
                      { { "graph", "bowtie" }, { "maps", "1000" }, { "chain-target", "4" }, { "claim-target", "3" } } },
                    tfl_ingredients },
                { { "rs-pipeline", "AP-free set, Ruzsa-Szemeredi graph and unique-triangle sampling",
                      { { "n", "20" }, { "method", "behrend" }, { "samples", "1000" } } },
                    rs_pipeline },
                { { "deletion-schedule", "g schedule sums and the bounded-codegree deletion trace",
                      { { "terms", "60" }, { "eps", "100" }, { "graph", "random" }, { "vertices", "12" },
                          { "density", "0.7" } } },
                    deletion_schedule },
                { { "arith-roundtrip", "weak regularity subspace, counting lemma and the weighted removal round trip",
                      { { "p", "3" }, { "n", "4" }, { "eps", "0.3" }, { "density", "0.5" }, { "m", "2" }, { "runs", "10" },
                          { "f", "" }, { "g", "" }, { "h", "" } } },
                    arith_roundtrip },
                { { "arith-expansion", "tricolor triple, coset expansion and missed-mass audit",
                      { { "p", "3" }, { "n", "2" }, { "maps", "1000" }, { "m", "0,1" }, { "tricolor", "" } } },
                    arith_expansion },
                { { "cp-table", "the variational constant c_p over a list of primes",
                      { { "primes", "2,3,5,7" } } },
                    cp_table },
            };
            return table;
        }
    }

    auto presets() -> const vector<PresetInfo> &
    {
        static const vector<PresetInfo> infos = [] {
            vector<PresetInfo> out;
            for (auto & p : preset_table())
                out.push_back(p.info);
            return out;
        }();
        return infos;
    }

    auto run_experiment(const string & id, const Params & params, uint64_t seed) -> Report
    {
        auto & table = preset_table();
        auto it = std::find_if(table.begin(), table.end(), [&] (auto & p) { return p.info.id == id; });
        if (it == table.end())
            throw Error(ErrorKind::unknown_preset, "unknown preset '" + id + "'");
        ParamReader reader(it->info, params);
        Report report(id, seed);
        auto start = std::chrono::steady_clock::now();
        it->run(reader, report, seed);
        report.set_wall_seconds(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
        return report;
    }
}
