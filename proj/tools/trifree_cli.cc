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
#include <trifree/report.hh>
#include <trifree/text.hh>

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace trifree;
using std::size_t;
using std::string;
using std::uint64_t;
using std::vector;
using Json = Report::Json;

namespace
{
    struct Globals
    {
        uint64_t seed = 1;
        string out;
        string format = "text";
    };

    // exit codes
    constexpr int pass = 0, assertion_failed = 1, usage_error = 2;

    void emit(const Globals & globals, const std::function<void(std::ostream &)> & write)
    {
        if (globals.out.empty() || globals.out == "-") {
            write(std::cout);
            return;
        }
        std::ofstream file(globals.out);
        if (! file)
            throw Error(ErrorKind::invalid_argument, "cannot write " + globals.out);
        write(file);
    }

    auto finish(const Globals & globals, Report & report, std::chrono::steady_clock::time_point start) -> int
    {
        if (report.wall_seconds() == 0)
            report.set_wall_seconds(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
        auto format = globals.format == "structured" ? ReportFormat::structured : ReportFormat::text;
        emit(globals, [&] (std::ostream & out) { report.write(out, format); });
        return report.passed() ? pass : assertion_failed;
    }

    auto pattern_graph(const string & spec) -> Graph
    {
        if (spec == "K3")
            return named::complete(3);
        if (spec.size() > 1 && (spec[0] == 'K' || spec[0] == 'C')
                && spec.find_first_not_of("0123456789", 1) == string::npos) {
            auto k = static_cast<size_t>(std::stoul(spec.substr(1)));
            return spec[0] == 'K' ? named::complete(k) : named::cycle(k);
        }
        return read_edge_list_file(spec);
    }

    auto map_json(const VertexMap & phi) -> Json
    {
        return Json{ { "target_size", phi.target_size }, { "table", phi.table } };
    }

    auto set_json(const DensityFunction & f) -> Json
    {
        Json points = Json::array();
        for (auto index : f.support())
            points.push_back(format_point(f.space, index));
        return points;
    }
}

int main(int argc, char ** argv)
{
    CLI::App app{ "trifree: triangle-free lemma toolkit" };
    app.require_subcommand(1);
    app.fallthrough();
    Globals globals;
    app.add_option("--seed", globals.seed, "random seed");
    app.add_option("--out", globals.out, "output path (stdout when absent)");
    app.add_option("--format", globals.format, "report format")->check(CLI::IsMember({ "text", "structured" }));

    std::function<int()> action;
    auto start = std::chrono::steady_clock::now();

    // build
    auto * build = app.add_subcommand("build", "generate an object and write it to --out");
    string build_kind, build_method = "behrend", build_name = "bowtie", build_mode = "auto", build_tricolor;
    size_t build_n = 20, build_dim = 2;
    unsigned build_p = 3;
    build->add_option("kind", build_kind, "ap-free | rs-graph | graph | tricolor | expansion")->required()
        ->check(CLI::IsMember({ "ap-free", "rs-graph", "graph", "tricolor", "expansion" }));
    build->add_option("--n", build_n, "range bound for ap-free and rs-graph");
    build->add_option("--method", build_method, "behrend | greedy")->check(CLI::IsMember({ "behrend", "greedy" }));
    build->add_option("--name", build_name, "named graph: bowtie, petersen, Kn, Cn, Pn");
    build->add_option("--p", build_p, "prime for tricolor");
    build->add_option("--dim", build_dim, "dimension n for tricolor");
    build->add_option("--mode", build_mode, "tricolor search: auto | exhaustive | greedy")
        ->check(CLI::IsMember({ "auto", "exhaustive", "greedy" }));
    build->add_option("--tricolor", build_tricolor, "tricolor file for expansion");
    build->callback([&] {
        action = [&] {
            auto method = build_method == "greedy" ? ApFreeMethod::greedy : ApFreeMethod::behrend_spheres;
            if (build_kind == "ap-free") {
                auto set = build_ap_free_set(build_n, method);
                emit(globals, [&] (std::ostream & out) {
                    out << "# AP-free subset of [1.." << build_n << "], " << set.elements.size() << " elements\n";
                    for (auto e : set.elements)
                        out << e << '\n';
                });
            }
            else if (build_kind == "rs-graph") {
                auto g = rs_graph(build_n, build_ap_free_set(build_n, method));
                emit(globals, [&] (std::ostream & out) { write_edge_list(out, g); });
            }
            else if (build_kind == "graph") {
                Graph g;
                if (build_name == "bowtie") g = named::bowtie();
                else if (build_name == "petersen") g = named::petersen();
                else if (build_name.size() > 1 && build_name[0] == 'P'
                        && build_name.find_first_not_of("0123456789", 1) == string::npos)
                    g = named::path(std::stoul(build_name.substr(1)));
                else
                    g = pattern_graph(build_name);
                emit(globals, [&] (std::ostream & out) { write_edge_list(out, g); });
            }
            else if (build_kind == "tricolor") {
                FpnSpace space(build_p, build_dim);
                auto mode = build_mode == "greedy" ? TricolorMode::greedy
                    : build_mode == "exhaustive" ? TricolorMode::exhaustive
                    : space.size() <= max_exhaustive_tricolor_size ? TricolorMode::exhaustive : TricolorMode::greedy;
                auto t = tricolor_search(space, mode).triple;
                emit(globals, [&] (std::ostream & out) { write_tricolor(out, t); });
            }
            else {
                if (build_tricolor.empty())
                    throw Error(ErrorKind::invalid_argument, "expansion needs --tricolor");
                auto es = expand_construction(read_tricolor_file(build_tricolor));
                emit(globals, [&] (std::ostream & out) {
                    for (auto * set : { "X", "Y", "Z" }) {
                        auto f = *set == 'X' ? es.x_set() : *set == 'Y' ? es.y_set() : es.z_set();
                        out << "# " << set << "'\n";
                        write_function(out, f, FunctionLayout::compact);
                    }
                });
            }
            return pass;
        };
    });

    // blowup
    auto * blowup = app.add_subcommand("blowup", "partial binary blow-up of a graph");
    string blowup_graph, blowup_pattern = "K3", blowup_labels;
    blowup->add_option("--graph", blowup_graph, "edge-list file")->required();
    blowup->add_option("--pattern", blowup_pattern, "K3, Kn, Cn or an edge-list file");
    blowup->add_option("--labels", blowup_labels, "write vertex labels 'base:bits' here");
    blowup->callback([&] {
        action = [&] {
            auto g = read_edge_list_file(blowup_graph);
            Pattern h(pattern_graph(blowup_pattern));
            auto b = partial_binary_blowup(g, h);
            if (! verify_blowup_hom_free(b.graph, h))
                throw Error(ErrorKind::precondition_violation, "blow-up is not homomorphism-free");
            emit(globals, [&] (std::ostream & out) { write_edge_list(out, b.graph); });
            if (! blowup_labels.empty()) {
                std::ofstream labels(blowup_labels);
                if (! labels)
                    throw Error(ErrorKind::invalid_argument, "cannot write " + blowup_labels);
                write_labels(labels, b);
            }
            return pass;
        };
    });

    // approx-hom
    auto * approx = app.add_subcommand("approx-hom", "fewest violations of a map into a target");
    string approx_graph, approx_target, approx_mode = "exact", approx_pattern = "K3";
    double approx_eps = 0;
    size_t approx_iterations = 100000;
    approx->add_option("--graph", approx_graph, "edge-list file")->required();
    approx->add_option("--target", approx_target, "edge-list file or enumerate:M")->required();
    approx->add_option("--eps", approx_eps, "allowed violations / n^2")->required();
    approx->add_option("--mode", approx_mode, "exact | heuristic")->check(CLI::IsMember({ "exact", "heuristic" }));
    approx->add_option("--pattern", approx_pattern, "forbidden pattern for enumerate:M");
    approx->add_option("--iterations", approx_iterations, "annealing steps for heuristic mode");
    approx->callback([&] {
        action = [&] {
            auto g = read_edge_list_file(approx_graph);
            Report report("approx-hom", globals.seed);
            report.input("graph_digest", file_digest(approx_graph));
            report.input("target", approx_target);
            report.input("eps", approx_eps);
            report.input("mode", approx_mode);
            double n = static_cast<double>(g.size());
            auto solve = [&] (const Graph & f) {
                return approx_mode == "exact" ? exact_min_violations(g, f)
                    : heuristic_min_violations(g, f, globals.seed, approx_iterations);
            };

            std::optional<ApproxHomResult> best;
            Graph best_target;
            if (approx_target.rfind("enumerate:", 0) == 0) {
                auto m = parse_unsigned(approx_target.substr(10), 0);
                Pattern h(pattern_graph(approx_pattern));
                report.input("pattern", approx_pattern);
                if (approx_mode == "exact") {
                    if (auto r = min_target_size(g, h, approx_eps, m)) {
                        report.measure("min_target_size", r->m);
                        best = r->witness;
                        best_target = r->target;
                    }
                }
                else
                    for (size_t size = 1; size <= m; ++size)
                        for (auto & f : enumerate_hom_free_targets(h, size)) {
                            auto r = solve(f);
                            if (! best || r.report.violations < best->report.violations) {
                                best = r;
                                best_target = f;
                            }
                        }
            }
            else {
                report.input("target_digest", file_digest(approx_target));
                best_target = read_edge_list_file(approx_target);
                best = solve(best_target);
            }
            if (best) {
                std::ostringstream target_text;
                write_edge_list(target_text, best_target);
                report.measure("target", target_text.str());
                report.measure("map", map_json(best->map));
                report.measure("epsilon_achieved", best->report.epsilon_achieved);
            }
            double violations = best ? static_cast<double>(best->report.violations) : INFINITY;
            report.check("approximate-homomorphism", "violated edges", violations, Relation::le,
                    std::floor(approx_eps * n * n + 1e-9));
            return finish(globals, report, start);
        };
    });

    // entropy-audit
    auto * entropy_audit = app.add_subcommand("entropy-audit", "Pinsker, bisection and blow-up entropy audits");
    size_t audit_points = 100000, audit_instances = 10000, audit_maps = 1000, audit_target = 4, audit_universe = 256;
    string audit_graph = "bowtie";
    entropy_audit->add_option("--points", audit_points, "Pinsker grid size");
    entropy_audit->add_option("--instances", audit_instances, "random bisection instances per eta");
    entropy_audit->add_option("--universe", audit_universe, "largest ground set for bisection instances");
    entropy_audit->add_option("--graph", audit_graph, "base graph for the chain audit: bowtie or an edge-list file");
    entropy_audit->add_option("--maps", audit_maps, "random maps for the chain audit");
    entropy_audit->add_option("--target", audit_target, "target size for the chain audit");
    entropy_audit->callback([&] {
        action = [&] {
            Report report("entropy-audit", globals.seed);
            report.input("points", audit_points);
            report.input("instances", audit_instances);
            report.input("maps", audit_maps);
            report.input("target", audit_target);

            size_t pinsker_failures = 0;
            for (size_t k = 0; k < audit_points; ++k) {
                double q = (static_cast<double>(k) + 0.5) / static_cast<double>(audit_points);
                auto gap = pinsker_gap(q);
                pinsker_failures += gap.lhs > gap.rhs;
            }
            report.check("pinsker", "grid points with |q - 1/2| > sqrt((log 2 - H(q)) / 2)",
                    static_cast<double>(pinsker_failures), Relation::eq, 0);

            std::mt19937_64 rng(globals.seed);
            for (double eta : { 0.05, 0.1, 0.19 }) {
                size_t reciprocal = 0, applicable = 0, size_fail = 0, tv_fail = 0;
                for (size_t k = 0; k < audit_instances; ++k) {
                    auto instance = random_bisection_instance(rng, audit_universe, eta);
                    vector<size_t> in_p0(instance.parts, 0), sizes(instance.parts, 0);
                    for (size_t u = 0; u < instance.side.size(); ++u) {
                        ++sizes[instance.part[u]];
                        in_p0[instance.part[u]] += instance.side[u] == 0;
                    }
                    for (size_t j = 0; j < instance.parts; ++j)
                        if (sizes[j] > 0 && nearly_bisected(in_p0[j], sizes[j], eta)) {
                            double frac = static_cast<double>(in_p0[j]) / static_cast<double>(sizes[j]);
                            reciprocal += std::abs(frac - 0.5) > eta / std::sqrt(2.0);
                        }
                    try {
                        auto audit = bisection_audit(instance);
                        if (audit.hypothesis) {
                            ++applicable;
                            size_fail += ! audit.size_conclusion;
                            tv_fail += ! audit.tv_conclusion;
                        }
                    }
                    catch (const Error & e) {
                        if (e.kind() != ErrorKind::no_nearly_bisected_part)
                            throw;
                    }
                }
                auto tag = " (eta = " + Json(eta).dump() + ")";
                report.measure("bisection-eta-" + Json(eta).dump(), Json{ { "instances", audit_instances },
                        { "with_hypothesis", applicable } });
                report.check("nearly-bisected-fraction", "parts with |frac - 1/2| > eta / sqrt 2" + tag,
                        static_cast<double>(reciprocal), Relation::eq, 0);
                report.check("bisection-size", "instances with |U_nb| < (1 - eta)|U|" + tag,
                        static_cast<double>(size_fail), Relation::eq, 0);
                report.check("bisection-tv", "instances with TV > 4 eta" + tag, static_cast<double>(tv_fail),
                        Relation::eq, 0);
            }

            auto g = audit_graph == "bowtie" ? named::bowtie() : read_edge_list_file(audit_graph);
            auto b = partial_binary_blowup(g, Pattern(named::complete(3)));
            std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(audit_target - 1));
            size_t chain_fail = 0;
            for (size_t k = 0; k < audit_maps; ++k) {
                VertexMap phi{ audit_target, vector<Vertex>(b.graph.size()) };
                for (auto & v : phi.table)
                    v = pick(rng);
                for (auto & row : chain_bound_audit(b, phi, audit_target))
                    chain_fail += ! row.holds;
            }
            report.check("chain-bound", "rows with sum I > H(Y) or H(Y) > log|F|", static_cast<double>(chain_fail),
                    Relation::eq, 0);
            return finish(globals, report, start);
        };
    });

    // remove
    auto * remove = app.add_subcommand("remove", "triangle removal: distance, bounded codegree, sampling");
    string remove_graph, remove_mode = "exact", remove_trace;
    double remove_eps = 1;
    size_t remove_t = 0;
    remove->add_option("--graph", remove_graph, "edge-list file")->required();
    remove->add_option("--mode", remove_mode, "exact | greedy | codegree | sample")
        ->check(CLI::IsMember({ "exact", "greedy", "codegree", "sample" }));
    remove->add_option("--eps", remove_eps, "eps for codegree mode");
    remove->add_option("--t", remove_t, "codegree bound for sample mode (default: the graph's maximum)");
    remove->add_option("--trace", remove_trace, "write the codegree deletion trace here");
    remove->callback([&] {
        action = [&] {
            auto g = read_edge_list_file(remove_graph);
            Report report("remove", globals.seed);
            report.input("graph_digest", file_digest(remove_graph));
            report.input("mode", remove_mode);
            if (remove_mode == "exact" || remove_mode == "greedy") {
                auto r = removal_distance(g, remove_mode == "exact" ? RemovalMode::exact : RemovalMode::greedy);
                Json removed = Json::array();
                for (auto & e : r.removed)
                    removed.push_back({ e.u, e.v });
                report.measure("deletions", r.deletions);
                report.measure("removed", removed);
                for (auto & e : r.removed)
                    g.remove_edge(e.u, e.v);
                report.check("triangle-free-after-removal", "triangles left", static_cast<double>(count_triangles(g)),
                        Relation::eq, 0);
            }
            else if (remove_mode == "codegree") {
                report.input("eps", remove_eps);
                auto r = greedy_bounded_codegree(g, remove_eps);
                report.measure("result", Json{ { "deletions", r.deletions() }, { "triangles", r.triangles },
                        { "alpha", r.alpha }, { "delta", r.delta }, { "threshold", r.threshold } });
                if (! remove_trace.empty()) {
                    std::ofstream trace(remove_trace);
                    if (! trace)
                        throw Error(ErrorKind::invalid_argument, "cannot write " + remove_trace);
                    write_trace(trace, r.trace);
                }
                size_t worst = 0;
                for (auto & e : r.graph.edges())
                    worst = std::max(worst, codegree(r.graph, e.u, e.v));
                report.check("final-codegree", "max codegree", static_cast<double>(worst), Relation::le, r.threshold);
            }
            else {
                size_t t = remove_t;
                if (t == 0)
                    for (auto & e : g.edges())
                        t = std::max(t, codegree(g, e.u, e.v));
                report.input("t", t);
                auto s = sample_diamond_subgraph(g, std::max<size_t>(t, 1), globals.seed);
                report.measure("sample", Json{ { "N", s.sample.size() }, { "good_triangles", s.good_triangles },
                        { "triangles_in_sample", s.triangles_in_sample }, { "asymptotic_regime", s.in_asymptotic_regime } });
                bool unique = s.graph.edge_count() == 0 || unique_copy_property(s.graph, Pattern(named::complete(3)));
                report.check("sample-unique-triangle", "edges not in exactly one triangle", unique ? 0 : 1,
                        Relation::eq, 0);
            }
            return finish(globals, report, start);
        };
    });

    // arith
    auto * arith = app.add_subcommand("arith", "F_p^n operations on function files");
    arith->set_help_flag("--help", "Print this help message and exit");
    string arith_op, arith_f, arith_g, arith_h, arith_mode = "exact", arith_tricolor;
    double arith_eps = 0.3;
    size_t arith_m = 2;
    vector<unsigned> arith_primes{ 2, 3, 5, 7 };
    arith->add_option("op", arith_op, "dft | lambda | regularity | removal | roundtrip | cp | tricolor")->required()
        ->check(CLI::IsMember({ "dft", "lambda", "regularity", "removal", "roundtrip", "cp", "tricolor" }));
    arith->add_option("--f", arith_f, "function file (X for removal)");
    arith->add_option("--g", arith_g, "function file (Y for removal)");
    arith->add_option("--h", arith_h, "function file (Z for removal)");
    arith->add_option("--eps", arith_eps, "regularity / round-trip eps");
    arith->add_option("--m", arith_m, "lift dimensions for roundtrip");
    arith->add_option("--mode", arith_mode, "exact | greedy removal")->check(CLI::IsMember({ "exact", "greedy" }));
    arith->add_option("--primes", arith_primes, "primes for cp")->delimiter(',');
    arith->add_option("--tricolor", arith_tricolor, "tricolor file to verify");
    arith->callback([&] {
        action = [&] {
            Report report("arith-" + arith_op, globals.seed);
            auto load = [&] (const string & path, const char * name) {
                if (path.empty())
                    throw Error(ErrorKind::invalid_argument, string("--") + name + " is required");
                report.input(string(name) + "_digest", file_digest(path));
                return read_function_file(path);
            };
            if (arith_op == "dft") {
                auto f = load(arith_f, "f");
                auto s = dft(f);
                Json rows = Json::array();
                double parseval = 0, energy = 0;
                for (size_t y = 0; y < s.c.size(); ++y) {
                    rows.push_back({ format_point(f.space, y), s.c[y].real(), s.c[y].imag() });
                    parseval += std::norm(s.c[y]);
                }
                for (auto v : f.values)
                    energy += v * v;
                report.measure("spectrum", rows);
                report.check("parseval", "sum |f^(y)|^2 - E f^2", parseval - energy / static_cast<double>(f.values.size()),
                        Relation::eq, 0, 1e-9);
            }
            else if (arith_op == "lambda") {
                auto f = load(arith_f, "f"), g = load(arith_g, "g"), h = load(arith_h, "h");
                double direct = lambda(f, g, h);
                report.measure("lambda", direct);
                report.check("lambda-spectral", "Lambda direct - spectral", direct - lambda_spectral(f, g, h),
                        Relation::eq, 0, 1e-9);
            }
            else if (arith_op == "regularity") {
                vector<DensityFunction> fs{ load(arith_f, "f") };
                if (! arith_g.empty()) fs.push_back(load(arith_g, "g"));
                if (! arith_h.empty()) fs.push_back(load(arith_h, "h"));
                report.input("eps", arith_eps);
                auto sub = weak_regularity_subspace(fs, arith_eps);
                Json basis = Json::array();
                for (auto & v : sub.annihilator().basis()) {
                    string digits;
                    for (auto d : v)
                        digits += static_cast<char>('0' + d);
                    basis.push_back(digits);
                }
                report.measure("codimension", sub.codimension());
                report.measure("annihilator_basis", basis);
                report.check("regularity-codimension", "codim H", static_cast<double>(sub.codimension()), Relation::le,
                        std::ceil(3 / (arith_eps * arith_eps)));
                for (size_t i = 0; i < fs.size(); ++i)
                    report.check("weak-regularity", "defect of input " + std::to_string(i), regularity_defect(fs[i], sub),
                            Relation::le, arith_eps, 1e-12);
                if (fs.size() == 3)
                    report.check("counting-lemma", "Lambda gap", counting_lemma_gap(fs[0], fs[1], fs[2], sub),
                            Relation::le, 3 * arith_eps);
            }
            else if (arith_op == "removal") {
                auto x = load(arith_f, "f"), y = load(arith_g, "g"), z = load(arith_h, "h");
                auto r = exact_arith_removal(x, y, z, arith_mode == "exact" ? ArithRemovalMode::exact : ArithRemovalMode::greedy);
                auto strip = [&] (DensityFunction d, const vector<size_t> & removed) {
                    for (auto i : removed)
                        d.values[i] = 0;
                    return d;
                };
                auto cx = strip(x, r.removed_x), cy = strip(y, r.removed_y), cz = strip(z, r.removed_z);
                report.measure("triangles", r.triangles);
                report.measure("deletions", r.deletions);
                report.measure("exact", r.exact);
                report.measure("remaining", Json{ { "X", set_json(cx) }, { "Y", set_json(cy) }, { "Z", set_json(cz) } });
                report.check("triangle-free-after-removal", "Lambda after deletion", lambda(cx, cy, cz), Relation::eq, 0);
            }
            else if (arith_op == "roundtrip") {
                auto f = load(arith_f, "f"), g = load(arith_g, "g"), h = load(arith_h, "h");
                report.input("eps", arith_eps);
                report.input("m", arith_m);
                auto r = weighted_removal_roundtrip(f, g, h, arith_eps, arith_m, globals.seed);
                report.measure("lambda_before", r.lambda_before);
                report.measure("lambda_after", r.lambda_after);
                report.measure("success", r.success);
                report.measure("deleted", { r.f.deleted, r.g.deleted, r.h.deleted });
                report.measure("l1", { r.f.l1, r.g.l1, r.h.l1 });
                if (r.success)
                    report.check("roundtrip-lambda-zero", "Lambda(f',g',h')", r.lambda_after, Relation::eq, 0);
                for (auto * side : { &r.f, &r.g, &r.h })
                    report.check("roundtrip-l1-accounting", "||f - f'||_1", side->l1, Relation::le, side->l1_bound, 1e-12);
            }
            else if (arith_op == "cp") {
                for (auto p : arith_primes) {
                    auto c = cp_constant(p);
                    report.measure("cp-" + std::to_string(p), Json{ { "c_p", c.c_p }, { "t_star", c.t_star },
                            { "grid_c_p", c.grid_c_p } });
                    report.check("c_p-positive", "c_" + std::to_string(p), c.c_p, Relation::gt, 0);
                    report.check("c_p-below-one", "c_" + std::to_string(p), c.c_p, Relation::lt, 1);
                }
            }
            else {
                if (arith_tricolor.empty())
                    throw Error(ErrorKind::invalid_argument, "--tricolor is required");
                report.input("tricolor_digest", file_digest(arith_tricolor));
                auto t = read_tricolor_file(arith_tricolor);
                report.measure("l", t.length());
                report.check("tricolor-iff", "tricolor condition broken", verify_tricolor(t) ? 0 : 1, Relation::eq, 0);
            }
            return finish(globals, report, start);
        };
    });

    // experiment
    auto * experiment = app.add_subcommand("experiment", "run a preset experiment");
    string preset;
    vector<string> raw_params;
    bool list = false;
    experiment->add_option("preset", preset, "preset id");
    experiment->add_option("--param", raw_params, "key=value, repeatable");
    experiment->add_flag("--list", list, "list presets and their parameters");
    experiment->callback([&] {
        action = [&] {
            if (list) {
                emit(globals, [&] (std::ostream & out) {
                    for (auto & p : presets()) {
                        out << p.id << ": " << p.summary << '\n';
                        for (auto & [key, value] : p.params)
                            out << "    " << key << " = " << (value.empty() ? "(none)" : value) << '\n';
                    }
                });
                return pass;
            }
            if (preset.empty())
                throw Error(ErrorKind::invalid_argument, "missing preset id (see --list)");
            Params params;
            for (auto & kv : raw_params) {
                auto eq = kv.find('=');
                if (eq == string::npos)
                    throw Error(ErrorKind::invalid_argument, "--param expects key=value, got '" + kv + "'");
                params[kv.substr(0, eq)] = kv.substr(eq + 1);
            }
            auto report = run_experiment(preset, params, globals.seed);
            return finish(globals, report, start);
        };
    });

    // convert
    auto * convert = app.add_subcommand("convert", "re-read a file and write it back");
    string convert_in, convert_kind = "edge-list", convert_layout = "table";
    convert->add_option("--in", convert_in, "input file")->required();
    convert->add_option("--kind", convert_kind, "edge-list | function | tricolor")
        ->check(CLI::IsMember({ "edge-list", "function", "tricolor" }));
    convert->add_option("--layout", convert_layout, "function layout: table | compact")
        ->check(CLI::IsMember({ "table", "compact" }));
    convert->callback([&] {
        action = [&] {
            if (convert_kind == "edge-list") {
                auto g = read_edge_list_file(convert_in);
                emit(globals, [&] (std::ostream & out) { write_edge_list(out, g); });
            }
            else if (convert_kind == "function") {
                auto f = read_function_file(convert_in);
                auto layout = convert_layout == "compact" ? FunctionLayout::compact : FunctionLayout::table;
                emit(globals, [&] (std::ostream & out) { write_function(out, f, layout); });
            }
            else {
                auto t = read_tricolor_file(convert_in);
                emit(globals, [&] (std::ostream & out) { write_tricolor(out, t); });
            }
            return pass;
        };
    });

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        return app.exit(e) == 0 ? pass : usage_error;
    }
    try {
        return action();
    }
    catch (const Error & e) {
        std::cerr << e.what() << '\n';
        return usage_error;
    }
}
