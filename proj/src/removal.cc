#include <trifree/error.hh>
#include <trifree/removal.hh>
#include <trifree/text.hh>

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <set>

using std::size_t;
using std::to_string;
using std::uint64_t;
using std::vector;

namespace trifree
{
    auto g_schedule(double x) -> double
    {
        if (! (x > 0 && x <= 1))
            throw Error(ErrorKind::domain, "g is defined on (0, 1]");
        double l = std::log(100.0 / x), ll = std::log(l);
        return 100.0 * l * ll * ll;
    }

    auto g_schedule_partial_sum(size_t terms) -> double
    {
        double sum = 0;
        for (size_t i = terms; i >= 1; --i)
            sum += 1.0 / g_schedule(std::ldexp(1.0, -static_cast<int>(i)));
        return sum;
    }

    auto g_schedule_tail_bound(size_t after) -> double
    {
        if (after < 2)
            throw Error(ErrorKind::domain, "tail bound needs at least two leading terms");
        // g(2^-i) >= 100 (i log 2) (log(i log 2))^2, decreasing in i
        double a = static_cast<double>(after) * std::log(2.0);
        return 1.0 / (100.0 * std::log(2.0) * std::log(a));
    }

    namespace
    {
        // Per-edge triangle counts kept in sync with deletions.
        class CodegreeTracker
        {
            public:
                explicit CodegreeTracker(const Graph & g) : _g(g)
                {
                    auto index = triangle_index(g);
                    _triangles = index.triangles.size();
                    for (auto & [e, c] : index.edge_counts) {
                        _count[e] = c;
                        _order.insert({ c, e });
                    }
                }

                auto triangles() const -> uint64_t { return _triangles; }
                auto graph() const -> const Graph & { return _g; }

                // largest count, smallest edge among ties
                auto top() const -> std::pair<size_t, Edge>
                {
                    auto it = _order.begin();
                    return { it->first, it->second };
                }

                auto empty() const -> bool { return _order.empty(); }

                void remove(const Edge & e)
                {
                    auto common = common_neighbours(e);
                    for (auto w : common) {
                        adjust(Edge(e.u, w));
                        adjust(Edge(e.v, w));
                    }
                    _triangles -= common.size();
                    _order.erase({ _count[e], e });
                    _count.erase(e);
                    _g.remove_edge(e.u, e.v);
                }

            private:
                struct ByCount
                {
                    auto operator() (const std::pair<size_t, Edge> & a, const std::pair<size_t, Edge> & b) const -> bool
                    {
                        if (a.first != b.first)
                            return a.first > b.first;
                        return a.second < b.second;
                    }
                };

                Graph _g;
                uint64_t _triangles = 0;
                std::map<Edge, size_t> _count;
                std::set<std::pair<size_t, Edge>, ByCount> _order;

                auto common_neighbours(const Edge & e) const -> vector<Vertex>
                {
                    vector<Vertex> common;
                    auto a = _g.row(e.u), b = _g.row(e.v);
                    for (size_t w = 0; w < a.size(); ++w) {
                        Word both = a[w] & b[w];
                        while (both) {
                            common.push_back(static_cast<Vertex>(w * 64 + static_cast<size_t>(__builtin_ctzll(both))));
                            both &= both - 1;
                        }
                    }
                    return common;
                }

                void adjust(const Edge & e)
                {
                    auto & c = _count[e];
                    _order.erase({ c, e });
                    --c;
                    _order.insert({ c, e });
                }
        };

        auto cube(size_t n) -> double
        {
            auto d = static_cast<double>(n);
            return d * d * d;
        }
    }

    auto greedy_bounded_codegree(const Graph & g, double eps, std::optional<double> delta) -> CodegreeResult
    {
        if (! (eps > 0))
            throw Error(ErrorKind::invalid_argument, "eps must be positive");
        CodegreeTracker tracker(g);
        CodegreeResult result;
        result.n = g.size();
        result.eps = eps;
        result.initial_triangles = tracker.triangles();
        double n3 = cube(result.n);
        double density = result.n == 0 ? 0.0 : static_cast<double>(result.initial_triangles) / n3;
        result.delta = delta.value_or(density);
        if (delta && *delta < density)
            throw Error(ErrorKind::precondition_violation, "delta is below the triangle density of the graph");

        auto threshold_for = [&] (uint64_t triangles) {
            double alpha = static_cast<double>(triangles) / n3;
            return g_schedule(alpha / result.delta) * alpha * static_cast<double>(result.n) / eps;
        };

        while (tracker.triangles() > 0) {
            auto [count, edge] = tracker.top();
            double threshold = threshold_for(tracker.triangles());
            if (static_cast<double>(count) <= threshold)
                break;
            result.trace.push_back({ result.trace.size(), edge, count,
                    static_cast<double>(tracker.triangles()) / n3, threshold });
            tracker.remove(edge);
        }

        result.graph = tracker.graph();
        result.triangles = tracker.triangles();
        result.alpha = result.n == 0 ? 0.0 : static_cast<double>(result.triangles) / n3;
        if (result.triangles > 0) {
            result.threshold = threshold_for(result.triangles);
            result.max_codegree = tracker.top().first;
        }
        return result;
    }

    void write_trace(std::ostream & out, const vector<DeletionStep> & trace)
    {
        auto precision = out.precision(17);
        for (auto & s : trace)
            out << s.step << ' ' << s.edge.u << '-' << s.edge.v << ' ' << s.beta << ' ' << s.threshold << '\n';
        out.precision(precision);
    }

    auto read_trace(std::istream & in) -> vector<DeletionStep>
    {
        LineReader reader(in);
        vector<DeletionStep> trace;
        while (auto tokens = reader.next_tokens()) {
            if (tokens->size() != 4)
                throw ParseError(reader.line(), "trace line must be 'step edge beta threshold'");
            DeletionStep s;
            s.step = parse_unsigned(tokens->at(0), reader.line());
            auto & edge = tokens->at(1);
            auto dash = edge.find('-');
            if (dash == std::string::npos)
                throw ParseError(reader.line(), "edge must be written 'u-v'");
            s.edge = Edge(static_cast<Vertex>(parse_unsigned(edge.substr(0, dash), reader.line())),
                    static_cast<Vertex>(parse_unsigned(edge.substr(dash + 1), reader.line())));
            s.beta = parse_double(tokens->at(2), reader.line());
            s.threshold = parse_double(tokens->at(3), reader.line());
            trace.push_back(s);
        }
        return trace;
    }

    auto sample_diamond_subgraph(const Graph & g, size_t t, uint64_t seed) -> DiamondSample
    {
        if (t == 0)
            throw Error(ErrorKind::invalid_argument, "t must be positive");
        size_t n = g.size();
        for (auto & [e, c] : triangle_index(g).edge_counts)
            if (c > t)
                throw Error(ErrorKind::precondition_violation, "edge " + to_string(e.u) + "-" + to_string(e.v)
                        + " lies in " + to_string(c) + " > t triangles");
        size_t big_n = n / (9 * t);
        if (big_n == 0)
            throw Error(ErrorKind::sample_size_zero, "n / (9t) rounds to zero");

        DiamondSample result;
        result.in_asymptotic_regime = 100 * t <= n;
        vector<Vertex> all(n);
        std::iota(all.begin(), all.end(), 0);
        std::mt19937_64 rng(seed);
        for (size_t k = 0; k < big_n; ++k) {
            std::uniform_int_distribution<size_t> pick(k, n - 1);
            std::swap(all[k], all[pick(rng)]);
        }
        result.sample.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(big_n));
        std::sort(result.sample.begin(), result.sample.end());

        auto inside = g.induced(result.sample);
        auto index = triangle_index(inside);
        result.triangles_in_sample = index.triangles.size();
        result.graph = Graph(big_n);
        for (auto & tri : index.triangles) {
            Edge ab(tri.a, tri.b), ac(tri.a, tri.c), bc(tri.b, tri.c);
            if (index.edge_counts.at(ab) == 1 && index.edge_counts.at(ac) == 1 && index.edge_counts.at(bc) == 1) {
                ++result.good_triangles;
                result.graph.add_edge(ab.u, ab.v);
                result.graph.add_edge(ac.u, ac.v);
                result.graph.add_edge(bc.u, bc.v);
            }
        }
        return result;
    }

    namespace
    {
        class HittingSet
        {
            public:
                HittingSet(vector<std::uint32_t> triangles, size_t edges) :
                    _triangles(std::move(triangles)), _best(edges + 1)
                {
                }

                auto solve() -> std::uint32_t
                {
                    search(0, 0, 0);
                    return _best_set;
                }

            private:
                vector<std::uint32_t> _triangles;
                size_t _best;
                std::uint32_t _best_set = 0;

                // edge-disjoint unhit triangles each need their own deletion
                auto packing(std::uint32_t chosen) const -> size_t
                {
                    std::uint32_t used = 0;
                    size_t count = 0;
                    for (auto t : _triangles)
                        if (! (t & chosen) && ! (t & used)) {
                            used |= t;
                            ++count;
                        }
                    return count;
                }

                void search(std::uint32_t chosen, std::uint32_t excluded, size_t size)
                {
                    if (size >= _best)
                        return;
                    const std::uint32_t * open = nullptr;
                    for (auto & t : _triangles)
                        if (! (t & chosen)) {
                            open = &t;
                            break;
                        }
                    if (! open) {
                        _best = size;
                        _best_set = chosen;
                        return;
                    }
                    if (size + packing(chosen) >= _best)
                        return;
                    std::uint32_t candidates = *open & ~excluded;
                    std::uint32_t tried = 0;
                    while (candidates) {
                        std::uint32_t bit = candidates & (~candidates + 1);
                        search(chosen | bit, excluded | tried, size + 1);
                        tried |= bit;
                        candidates &= candidates - 1;
                    }
                }
        };
    }

    auto removal_distance(const Graph & g, RemovalMode mode) -> RemovalResult
    {
        RemovalResult result;
        if (mode == RemovalMode::greedy) {
            CodegreeTracker tracker(g);
            while (tracker.triangles() > 0) {
                auto edge = tracker.top().second;
                result.removed.push_back(edge);
                tracker.remove(edge);
            }
            result.deletions = result.removed.size();
            return result;
        }

        auto index = triangle_index(g);
        vector<Edge> relevant;
        for (auto & [e, c] : index.edge_counts)
            if (c > 0)
                relevant.push_back(e);
        if (relevant.size() > max_exact_removal_edges)
            throw Error(ErrorKind::instance_too_large, to_string(relevant.size()) + " edges lie in triangles; exact mode allows "
                    + to_string(max_exact_removal_edges));
        std::map<Edge, size_t> position;
        for (size_t k = 0; k < relevant.size(); ++k)
            position[relevant[k]] = k;
        vector<std::uint32_t> triangles;
        for (auto & t : index.triangles)
            triangles.push_back((std::uint32_t{1} << position[Edge(t.a, t.b)])
                    | (std::uint32_t{1} << position[Edge(t.a, t.c)])
                    | (std::uint32_t{1} << position[Edge(t.b, t.c)]));
        auto chosen = HittingSet(triangles, relevant.size()).solve();
        for (size_t k = 0; k < relevant.size(); ++k)
            if ((chosen >> k) & 1)
                result.removed.push_back(relevant[k]);
        result.deletions = result.removed.size();
        result.exact = true;
        return result;
    }
}
