#include <trifree/approx_hom.hh>
#include <trifree/error.hh>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

using std::optional;
using std::size_t;
using std::to_string;
using std::vector;

namespace trifree
{
    namespace
    {
        auto make_report(size_t count, size_t n) -> ViolationReport
        {
            return { count, n == 0 ? 0.0 : static_cast<double>(count) / (static_cast<double>(n) * static_cast<double>(n)) };
        }

        // bad[a * M + b] = 1 unless ab is an edge of F
        auto cost_table(const Graph & f) -> vector<unsigned char>
        {
            size_t m = f.size();
            vector<unsigned char> bad(m * m, 1);
            for (size_t a = 0; a < m; ++a)
                for (size_t b = 0; b < m; ++b)
                    if (a != b && f.adjacent(static_cast<Vertex>(a), static_cast<Vertex>(b)))
                        bad[a * m + b] = 0;
            return bad;
        }

        class MapSearch
        {
            public:
                MapSearch(const Graph & g, const Graph & f) :
                    _n(g.size()),
                    _m(f.size()),
                    _bad(cost_table(f)),
                    _f_has_edge(f.edge_count() > 0)
                {
                    _order.resize(_n);
                    std::iota(_order.begin(), _order.end(), 0);
                    std::stable_sort(_order.begin(), _order.end(), [&] (Vertex a, Vertex b) {
                        return g.degree(a) > g.degree(b);
                    });
                    _position.resize(_n);
                    for (size_t i = 0; i < _n; ++i)
                        _position[static_cast<size_t>(_order[i])] = i;

                    // neighbours of order[d] split by whether they come earlier
                    _earlier.resize(_n);
                    _later.resize(_n);
                    for (size_t d = 0; d < _n; ++d)
                        for (auto w : g.neighbours(_order[d]))
                            (_position[static_cast<size_t>(w)] < d ? _earlier : _later)[d].push_back(_position[static_cast<size_t>(w)]);
                    _image.assign(_n, 0);
                    _best_image.assign(_n, 0);
                }

                // Finds the minimum, or stops once a map of cost <= stop_at is known.
                // Maps of cost >= initial_bound are never reported.
                auto run(size_t initial_bound, size_t stop_at) -> bool
                {
                    _best = initial_bound;
                    _stop_at = stop_at;
                    _found = false;
                    _done = false;
                    if (_m == 0)
                        return false;
                    search(0, 0);
                    return _found;
                }

                auto best() const -> size_t { return _best; }

                auto best_map() const -> VertexMap
                {
                    VertexMap phi{ _m, vector<Vertex>(_n) };
                    for (size_t d = 0; d < _n; ++d)
                        phi.table[static_cast<size_t>(_order[d])] = static_cast<Vertex>(_best_image[d]);
                    return phi;
                }

            private:
                size_t _n, _m;
                vector<unsigned char> _bad;
                bool _f_has_edge;
                vector<Vertex> _order;
                vector<size_t> _position;
                vector<vector<size_t>> _earlier, _later;
                vector<size_t> _image, _best_image;
                size_t _best = 0, _stop_at = 0;
                bool _found = false, _done = false;

                auto edge_cost(size_t a, size_t b) const -> size_t { return _bad[a * _m + b]; }

                // For each unassigned vertex, the cheapest choice against assigned
                // neighbours, plus the unavoidable cost of unassigned-unassigned edges.
                auto lower_bound(size_t depth) const -> size_t
                {
                    size_t bound = 0;
                    for (size_t d = depth; d < _n; ++d) {
                        size_t cheapest = SIZE_MAX;
                        for (size_t t = 0; t < _m && cheapest > 0; ++t) {
                            size_t c = 0;
                            for (auto e : _earlier[d])
                                if (e < depth)
                                    c += edge_cost(t, _image[e]);
                            cheapest = std::min(cheapest, c);
                        }
                        bound += cheapest;
                        if (! _f_has_edge)
                            for (auto e : _earlier[d])
                                bound += e >= depth;
                    }
                    return bound;
                }

                void search(size_t depth, size_t cost)
                {
                    if (_done)
                        return;
                    if (depth == _n) {
                        if (cost < _best) {
                            _best = cost;
                            _best_image = _image;
                            _found = true;
                            _done = cost <= _stop_at;
                        }
                        return;
                    }
                    if (cost + lower_bound(depth) >= _best)
                        return;

                    // try targets in order of increasing local cost
                    vector<std::pair<size_t, size_t>> choices;
                    for (size_t t = 0; t < _m; ++t) {
                        size_t c = 0;
                        for (auto e : _earlier[depth])
                            c += edge_cost(t, _image[e]);
                        choices.emplace_back(c, t);
                    }
                    std::stable_sort(choices.begin(), choices.end());
                    for (auto [c, t] : choices) {
                        if (cost + c >= _best)
                            break;
                        _image[depth] = t;
                        search(depth + 1, cost + c);
                        if (_done)
                            return;
                    }
                }
        };

        void check_exact_size(const Graph & g, const Graph & f)
        {
            if (g.size() > max_exact_source_vertices)
                throw Error(ErrorKind::instance_too_large, "exact search needs at most "
                        + to_string(max_exact_source_vertices) + " source vertices, got " + to_string(g.size()));
            if (f.size() == 0 && g.size() > 0)
                throw Error(ErrorKind::size_mismatch, "target graph has no vertices");
        }
    }

    auto violations(const Graph & g, const Graph & f, const VertexMap & phi) -> ViolationReport
    {
        if (phi.table.size() != g.size() || phi.target_size != f.size())
            throw Error(ErrorKind::size_mismatch, "map does not match graph sizes");
        for (auto t : phi.table)
            if (t < 0 || static_cast<size_t>(t) >= f.size())
                throw Error(ErrorKind::size_mismatch, "map image outside target");
        size_t count = 0;
        for (auto & e : g.edges()) {
            auto a = phi.table[static_cast<size_t>(e.u)], b = phi.table[static_cast<size_t>(e.v)];
            count += a == b || ! f.adjacent(a, b);
        }
        return make_report(count, g.size());
    }

    auto enumerate_graphs(size_t m) -> vector<Graph>
    {
        if (m > 8)
            throw Error(ErrorKind::target_bound_too_large, "graph enumeration limited to 8 vertices");
        vector<Graph> level{ Graph(m == 0 ? 0 : 1) };
        for (size_t k = 1; k < m; ++k) {
            std::set<CanonicalKey> seen;
            vector<Graph> next;
            for (auto & g : level)
                for (size_t mask = 0; mask < (size_t{1} << k); ++mask) {
                    Graph ext(k + 1);
                    for (auto & e : g.edges())
                        ext.add_edge(e.u, e.v);
                    for (size_t v = 0; v < k; ++v)
                        if ((mask >> v) & 1)
                            ext.add_edge(static_cast<Vertex>(v), static_cast<Vertex>(k));
                    if (seen.insert(canonical_key(ext)).second)
                        next.push_back(std::move(ext));
                }
            level = std::move(next);
        }
        return level;
    }

    auto enumerate_hom_free_targets(const Pattern & h, size_t m) -> vector<Graph>
    {
        if (m > max_target_vertices)
            throw Error(ErrorKind::target_bound_too_large, "target enumeration limited to "
                    + to_string(max_target_vertices) + " vertices, got " + to_string(m));
        if (m == 0)
            throw Error(ErrorKind::invalid_argument, "targets need at least one vertex");

        // H-hom-freeness passes to induced subgraphs, so every hom-free graph on
        // k+1 vertices extends a hom-free graph on k vertices.
        auto free = [&] (const Graph & g) { return is_hom_free(h.core(), g); };
        vector<Graph> level;
        if (free(Graph(1)))
            level.emplace_back(1);
        for (size_t k = 1; k < m; ++k) {
            std::set<CanonicalKey> seen;
            vector<Graph> next;
            for (auto & g : level)
                for (size_t mask = 0; mask < (size_t{1} << k); ++mask) {
                    Graph ext(k + 1);
                    for (auto & e : g.edges())
                        ext.add_edge(e.u, e.v);
                    for (size_t v = 0; v < k; ++v)
                        if ((mask >> v) & 1)
                            ext.add_edge(static_cast<Vertex>(v), static_cast<Vertex>(k));
                    if (seen.insert(canonical_key(ext)).second && free(ext))
                        next.push_back(std::move(ext));
                }
            level = std::move(next);
        }
        return level;
    }

    auto exact_min_violations(const Graph & g, const Graph & f) -> ApproxHomResult
    {
        check_exact_size(g, f);
        if (g.size() == 0)
            return { make_report(0, 0), { f.size(), {} } };
        MapSearch search(g, f);
        search.run(g.edge_count() + 1, 0);
        return { make_report(search.best(), g.size()), search.best_map() };
    }

    auto find_map_within(const Graph & g, const Graph & f, size_t budget) -> optional<ApproxHomResult>
    {
        check_exact_size(g, f);
        if (g.size() == 0)
            return ApproxHomResult{ make_report(0, 0), { f.size(), {} } };
        MapSearch search(g, f);
        if (! search.run(std::min(budget, g.edge_count()) + 1, budget))
            return std::nullopt;
        return ApproxHomResult{ make_report(search.best(), g.size()), search.best_map() };
    }

    auto heuristic_min_violations(const Graph & g, const Graph & f, std::uint64_t seed,
            size_t iterations) -> ApproxHomResult
    {
        size_t n = g.size(), m = f.size();
        if (m == 0 && n > 0)
            throw Error(ErrorKind::size_mismatch, "target graph has no vertices");
        auto bad = cost_table(f);
        vector<vector<Vertex>> adjacency(n);
        for (size_t v = 0; v < n; ++v)
            adjacency[v] = g.neighbours(static_cast<Vertex>(v));

        VertexMap phi{ m, vector<Vertex>(n, 0) };
        size_t cost = violations(g, f, phi).violations;
        VertexMap best = phi;
        size_t best_cost = cost;
        if (n == 0 || m < 2 || iterations == 0)
            return { make_report(best_cost, n), best };

        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<size_t> pick_vertex(0, n - 1);
        std::uniform_int_distribution<size_t> pick_target(0, m - 2);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const double t_start = 2.0, t_end = 0.02;
        const double cooling = std::pow(t_end / t_start, 1.0 / static_cast<double>(iterations));
        double temperature = t_start;

        auto local = [&] (size_t v, size_t t) {
            size_t c = 0;
            for (auto w : adjacency[v])
                c += bad[t * m + static_cast<size_t>(phi.table[static_cast<size_t>(w)])];
            return c;
        };

        for (size_t step = 0; step < iterations && best_cost > 0; ++step) {
            size_t v = pick_vertex(rng);
            size_t current = static_cast<size_t>(phi.table[v]);
            size_t t = pick_target(rng);
            if (t >= current)
                ++t;
            auto before = local(v, current), after = local(v, t);
            double delta = static_cast<double>(after) - static_cast<double>(before);
            if (delta <= 0 || unit(rng) < std::exp(-delta / temperature)) {
                phi.table[v] = static_cast<Vertex>(t);
                cost = cost + after - before;
                if (cost < best_cost) {
                    best_cost = cost;
                    best = phi;
                }
            }
            temperature *= cooling;
        }
        return { make_report(best_cost, n), best };
    }

    auto min_target_size(const Graph & g, const Pattern & h, double eps, size_t m_max)
        -> optional<TargetSearchResult>
    {
        if (m_max > max_target_vertices)
            throw Error(ErrorKind::target_bound_too_large, "target bound " + to_string(m_max) + " exceeds "
                    + to_string(max_target_vertices));
        if (g.size() > max_exact_source_vertices)
            throw Error(ErrorKind::instance_too_large, "exact search needs at most "
                    + to_string(max_exact_source_vertices) + " source vertices");
        if (eps < 0)
            throw Error(ErrorKind::invalid_argument, "eps must be non-negative");
        double n = static_cast<double>(g.size());
        auto budget = static_cast<size_t>(std::floor(eps * n * n + 1e-9));
        for (size_t m = 1; m <= m_max; ++m)
            for (auto & f : enumerate_hom_free_targets(h, m))
                if (auto found = find_map_within(g, f, budget))
                    return TargetSearchResult{ m, f, *found };
        return std::nullopt;
    }
}
