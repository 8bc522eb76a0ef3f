#include <trifree/error.hh>
#include <trifree/graph.hh>

#include <algorithm>
#include <bit>
#include <numeric>
#include <queue>
#include <string>

using std::size_t;
using std::span;
using std::string;
using std::to_string;
using std::uint64_t;
using std::vector;

namespace trifree
{
    Graph::Graph(size_t n) :
        _n(n),
        _words((n + 63) / 64)
    {
        if (n > max_vertices)
            throw Error(ErrorKind::size_guard, "graph on " + to_string(n) + " vertices exceeds the dense limit of "
                    + to_string(max_vertices));
        _rows.assign(_n * _words, 0);
    }

    auto Graph::from_edges(size_t n, span<const Edge> edges) -> Graph
    {
        Graph g(n);
        for (auto & e : edges)
            g.add_edge(e.u, e.v);
        return g;
    }

    auto Graph::add_edge(Vertex u, Vertex v) -> bool
    {
        if (u < 0 || v < 0 || static_cast<size_t>(u) >= _n || static_cast<size_t>(v) >= _n)
            throw Error(ErrorKind::invalid_argument, "edge " + to_string(u) + "-" + to_string(v) + " out of range");
        if (u == v)
            throw Error(ErrorKind::invalid_argument, "loop at vertex " + to_string(u));
        if (adjacent(u, v))
            return false;
        _rows[static_cast<size_t>(u) * _words + (static_cast<size_t>(v) >> 6)] |= Word{1} << (v & 63);
        _rows[static_cast<size_t>(v) * _words + (static_cast<size_t>(u) >> 6)] |= Word{1} << (u & 63);
        ++_edges;
        return true;
    }

    auto Graph::remove_edge(Vertex u, Vertex v) -> bool
    {
        if (u == v || ! adjacent(u, v))
            return false;
        _rows[static_cast<size_t>(u) * _words + (static_cast<size_t>(v) >> 6)] &= ~(Word{1} << (v & 63));
        _rows[static_cast<size_t>(v) * _words + (static_cast<size_t>(u) >> 6)] &= ~(Word{1} << (u & 63));
        --_edges;
        return true;
    }

    auto Graph::degree(Vertex u) const -> size_t
    {
        size_t d = 0;
        for (auto w : row(u))
            d += static_cast<size_t>(std::popcount(w));
        return d;
    }

    auto Graph::neighbours(Vertex u) const -> vector<Vertex>
    {
        vector<Vertex> result;
        for_each_bit(row(u), [&] (Vertex v) { result.push_back(v); });
        return result;
    }

    auto Graph::edges() const -> vector<Edge>
    {
        vector<Edge> result;
        result.reserve(_edges);
        for (size_t u = 0; u < _n; ++u)
            for_each_bit(row(static_cast<Vertex>(u)), [&] (Vertex v) {
                    if (static_cast<size_t>(v) > u)
                        result.emplace_back(static_cast<Vertex>(u), v);
                    });
        return result;
    }

    auto Graph::induced(span<const Vertex> vertices) const -> Graph
    {
        Graph result(vertices.size());
        for (size_t i = 0; i < vertices.size(); ++i)
            for (size_t j = i + 1; j < vertices.size(); ++j)
                if (adjacent(vertices[i], vertices[j]))
                    result.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
        return result;
    }

    namespace
    {
        // Popcount of (a & b) restricted to bit positions strictly above `above`.
        auto common_above(span<const Word> a, span<const Word> b, Vertex above) -> uint64_t
        {
            size_t start = static_cast<size_t>(above + 1);
            size_t word = start >> 6;
            uint64_t total = 0;
            if (word >= a.size())
                return 0;
            Word mask = ~Word{0} << (start & 63);
            total += static_cast<uint64_t>(std::popcount(a[word] & b[word] & mask));
            for (size_t i = word + 1; i < a.size(); ++i)
                total += static_cast<uint64_t>(std::popcount(a[i] & b[i]));
            return total;
        }
    }

    auto count_triangles(const Graph & g) -> uint64_t
    {
        uint64_t total = 0;
        for (auto & e : g.edges())
            total += common_above(g.row(e.u), g.row(e.v), e.v);
        return total;
    }

    auto triangle_index(const Graph & g) -> TriangleIndex
    {
        TriangleIndex result;
        vector<Word> common(g.words_per_row());
        auto edges = g.edges();
        for (auto & e : edges)
            result.edge_counts.emplace(e, 0);
        for (auto & e : edges) {
            auto ru = g.row(e.u), rv = g.row(e.v);
            for (size_t i = 0; i < common.size(); ++i)
                common[i] = ru[i] & rv[i];
            for_each_bit(common, [&] (Vertex w) {
                    if (w > e.v) {
                        result.triangles.push_back({ e.u, e.v, w });
                        ++result.edge_counts[e];
                        ++result.edge_counts[Edge(e.u, w)];
                        ++result.edge_counts[Edge(e.v, w)];
                    }
                    });
        }
        std::sort(result.triangles.begin(), result.triangles.end());
        return result;
    }

    auto codegree(const Graph & g, Vertex u, Vertex v) -> size_t
    {
        auto ru = g.row(u), rv = g.row(v);
        size_t total = 0;
        for (size_t i = 0; i < ru.size(); ++i)
            total += static_cast<size_t>(std::popcount(ru[i] & rv[i]));
        return total;
    }

    namespace
    {
        void check_pattern_size(const Graph & pattern)
        {
            if (pattern.size() > max_pattern_vertices)
                throw Error(ErrorKind::pattern_too_large, "pattern has " + to_string(pattern.size())
                        + " vertices, limit is " + to_string(max_pattern_vertices));
        }

        // Backtracking over pattern vertices in BFS order, so that most vertices
        // have an already-placed neighbour constraining their candidates.
        class HomSearch
        {
            public:
                HomSearch(const Graph & pattern, const Graph & host) :
                    _pattern(pattern),
                    _host(host),
                    _words(host.words_per_row()),
                    _image(pattern.size(), -1),
                    _candidates(pattern.size() * _words)
                {
                    check_pattern_size(pattern);
                    build_order();
                    _all.assign(_words, ~Word{0});
                    if (host.size() % 64 != 0 && _words > 0)
                        _all.back() = (Word{1} << (host.size() % 64)) - 1;
                }

                template <typename Leaf>
                auto run(Leaf && leaf) -> bool
                {
                    if (_pattern.size() == 0)
                        return leaf(0, span<const Word>{});
                    return descend(0, leaf);
                }

                auto image() const -> span<const Vertex> { return _image; }

                auto vertex_at(size_t depth) const -> Vertex { return _order[depth]; }

            private:
                const Graph & _pattern;
                const Graph & _host;
                size_t _words;
                vector<Vertex> _order;
                vector<vector<Vertex>> _earlier;
                vector<Vertex> _image;
                vector<Word> _candidates;
                vector<Word> _all;

                void build_order()
                {
                    size_t n = _pattern.size();
                    vector<bool> seen(n, false);
                    while (_order.size() < n) {
                        Vertex root = -1;
                        for (size_t v = 0; v < n; ++v)
                            if (! seen[v] && (root == -1 || _pattern.degree(static_cast<Vertex>(v)) > _pattern.degree(root)))
                                root = static_cast<Vertex>(v);
                        std::queue<Vertex> queue;
                        queue.push(root);
                        seen[static_cast<size_t>(root)] = true;
                        while (! queue.empty()) {
                            auto v = queue.front();
                            queue.pop();
                            _order.push_back(v);
                            for (auto w : _pattern.neighbours(v))
                                if (! seen[static_cast<size_t>(w)]) {
                                    seen[static_cast<size_t>(w)] = true;
                                    queue.push(w);
                                }
                        }
                    }
                    vector<size_t> position(n);
                    for (size_t i = 0; i < n; ++i)
                        position[static_cast<size_t>(_order[i])] = i;
                    _earlier.resize(n);
                    for (size_t i = 0; i < n; ++i)
                        for (auto w : _pattern.neighbours(_order[i]))
                            if (position[static_cast<size_t>(w)] < i)
                                _earlier[i].push_back(w);
                }

                // leaf(depth, candidates) is invoked at the last pattern vertex with
                // its candidate set; it returns false to abort the search.
                template <typename Leaf>
                auto descend(size_t depth, Leaf & leaf) -> bool
                {
                    span<Word> cand(_candidates.data() + depth * _words, _words);
                    std::copy(_all.begin(), _all.end(), cand.begin());
                    for (auto w : _earlier[depth]) {
                        auto r = _host.row(_image[static_cast<size_t>(w)]);
                        for (size_t i = 0; i < _words; ++i)
                            cand[i] &= r[i];
                    }

                    if (depth + 1 == _order.size())
                        return leaf(depth, span<const Word>(cand.data(), cand.size()));

                    auto v = static_cast<size_t>(_order[depth]);
                    for (size_t i = 0; i < _words; ++i) {
                        Word word = cand[i];
                        while (word) {
                            int b = __builtin_ctzll(word);
                            word &= word - 1;
                            _image[v] = static_cast<Vertex>(i * 64 + static_cast<size_t>(b));
                            if (! descend(depth + 1, leaf))
                                return false;
                        }
                    }
                    _image[v] = -1;
                    return true;
                }

            public:
                void set_image(size_t depth, Vertex w) { _image[static_cast<size_t>(_order[depth])] = w; }
        };
    }

    void for_each_hom(const Graph & pattern, const Graph & host,
            const std::function<bool (span<const Vertex>)> & callback)
    {
        HomSearch search(pattern, host);
        if (pattern.size() == 0) {
            callback({});
            return;
        }
        search.run([&] (size_t depth, span<const Word> cand) {
                bool keep_going = true;
                for (size_t i = 0; i < cand.size() && keep_going; ++i) {
                    Word word = cand[i];
                    while (word && keep_going) {
                        int b = __builtin_ctzll(word);
                        word &= word - 1;
                        search.set_image(depth, static_cast<Vertex>(i * 64 + static_cast<size_t>(b)));
                        keep_going = callback(search.image());
                    }
                }
                return keep_going;
                });
    }

    auto hom_count(const Graph & pattern, const Graph & host) -> uint64_t
    {
        HomSearch search(pattern, host);
        if (pattern.size() == 0)
            return 1;
        uint64_t total = 0;
        search.run([&] (size_t, span<const Word> cand) {
                for (auto w : cand)
                    total += static_cast<uint64_t>(std::popcount(w));
                return true;
                });
        return total;
    }

    auto hom_count(const Pattern & pattern, const Graph & host) -> uint64_t
    {
        return hom_count(pattern.graph(), host);
    }

    auto hom_copies(const Graph & pattern, const Graph & host) -> vector<HomCopy>
    {
        auto pattern_edges = pattern.edges();
        std::map<vector<Edge>, HomCopy> by_edges;
        for_each_hom(pattern, host, [&] (span<const Vertex> image) {
                HomCopy copy;
                copy.vertices.assign(image.begin(), image.end());
                std::sort(copy.vertices.begin(), copy.vertices.end());
                copy.vertices.erase(std::unique(copy.vertices.begin(), copy.vertices.end()), copy.vertices.end());
                for (auto & e : pattern_edges)
                    copy.edges.emplace_back(image[static_cast<size_t>(e.u)], image[static_cast<size_t>(e.v)]);
                std::sort(copy.edges.begin(), copy.edges.end());
                copy.edges.erase(std::unique(copy.edges.begin(), copy.edges.end()), copy.edges.end());
                by_edges.try_emplace(copy.edges, std::move(copy));
                return true;
                });
        vector<HomCopy> result;
        result.reserve(by_edges.size());
        for (auto & [_, copy] : by_edges)
            result.push_back(std::move(copy));
        return result;
    }

    auto hom_copies(const Pattern & pattern, const Graph & host) -> vector<HomCopy>
    {
        return hom_copies(pattern.graph(), host);
    }

    auto is_hom_free(const Graph & pattern, const Graph & host) -> bool
    {
        bool found = false;
        for_each_hom(pattern, host, [&] (span<const Vertex>) { found = true; return false; });
        return ! found;
    }

    auto is_hom_free(const Pattern & pattern, const Graph & host) -> bool
    {
        return is_hom_free(pattern.core(), host);
    }

    auto compute_core(const Graph & h) -> Core
    {
        check_pattern_size(h);
        size_t n = h.size();
        if (n == 0)
            return { Graph(0), {} };

        // The smallest vertex subset that h maps into is the core; it is induced
        // and every homomorphism into it is onto.
        vector<Vertex> subset;
        for (size_t k = 1; k <= n; ++k) {
            vector<bool> mask(n, false);
            std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(k), true);
            do {
                subset.clear();
                for (size_t v = 0; v < n; ++v)
                    if (mask[v])
                        subset.push_back(static_cast<Vertex>(v));
                auto target = h.induced(subset);
                if (target.edge_count() == 0 && h.edge_count() != 0)
                    continue;
                if (! is_hom_free(h, target))
                    return { std::move(target), subset };
            } while (std::prev_permutation(mask.begin(), mask.end()));
        }
        // unreachable: the identity maps h into itself
        return { h, [&] { vector<Vertex> all(n); std::iota(all.begin(), all.end(), 0); return all; }() };
    }

    Pattern::Pattern(Graph graph) :
        _graph(std::move(graph))
    {
        auto c = compute_core(_graph);
        _core = std::move(c.graph);
        _core_vertices = std::move(c.vertices);
    }

    auto core(const Pattern & h) -> Graph
    {
        return h.core();
    }

    auto unique_copy_property(const Graph & g, const Pattern & h) -> bool
    {
        if (isomorphic(h.core(), named::complete(3))) {
            auto index = triangle_index(g);
            return std::all_of(index.edge_counts.begin(), index.edge_counts.end(),
                    [] (auto & kv) { return kv.second == 1; });
        }

        std::map<Edge, size_t> counts;
        for (auto & e : g.edges())
            counts.emplace(e, 0);
        for (auto & copy : hom_copies(h.core(), g))
            for (auto & e : copy.edges)
                ++counts[e];
        return std::all_of(counts.begin(), counts.end(), [] (auto & kv) { return kv.second == 1; });
    }

    auto is_connected(const Graph & g) -> bool
    {
        if (g.size() == 0)
            return true;
        vector<bool> seen(g.size(), false);
        vector<Vertex> stack{ 0 };
        seen[0] = true;
        size_t reached = 1;
        while (! stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            for (auto w : g.neighbours(v))
                if (! seen[static_cast<size_t>(w)]) {
                    seen[static_cast<size_t>(w)] = true;
                    ++reached;
                    stack.push_back(w);
                }
        }
        return reached == g.size();
    }

    namespace
    {
        // Colour refinement: colours are ranks of (colour, sorted neighbour
        // colours) signatures, so the final ordered partition is invariant.
        auto refine(const Graph & g) -> vector<size_t>
        {
            size_t n = g.size();
            vector<size_t> colour(n);
            for (size_t v = 0; v < n; ++v)
                colour[v] = g.degree(static_cast<Vertex>(v));
            size_t classes = 0;
            while (true) {
                vector<std::pair<size_t, vector<size_t>>> signatures(n);
                for (size_t v = 0; v < n; ++v) {
                    signatures[v].first = colour[v];
                    for (auto w : g.neighbours(static_cast<Vertex>(v)))
                        signatures[v].second.push_back(colour[static_cast<size_t>(w)]);
                    std::sort(signatures[v].second.begin(), signatures[v].second.end());
                }
                auto sorted = signatures;
                std::sort(sorted.begin(), sorted.end());
                sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
                for (size_t v = 0; v < n; ++v)
                    colour[v] = static_cast<size_t>(std::lower_bound(sorted.begin(), sorted.end(), signatures[v]) - sorted.begin());
                if (sorted.size() == classes)
                    break;
                classes = sorted.size();
            }
            return colour;
        }

        struct CanonicalSearch
        {
            const Graph & g;
            size_t n;
            vector<size_t> cell_of_position;
            vector<size_t> colour;
            vector<Vertex> placed;
            vector<bool> used;
            uint64_t best = 0;
            bool have_best = false;

            // Bits are laid out column by column: placing position i appends the
            // i bits for pairs (0,i)..(i-1,i), so prefixes compare lexicographically.
            void search(size_t position, uint64_t bits, size_t length)
            {
                if (have_best) {
                    size_t total = n * (n - 1) / 2;
                    uint64_t best_prefix = length == 0 ? 0 : (best >> (total - length));
                    if (bits < best_prefix)
                        return;
                }
                if (position == n) {
                    if (! have_best || bits > best) {
                        best = bits;
                        have_best = true;
                    }
                    return;
                }
                for (size_t v = 0; v < n; ++v) {
                    if (used[v] || colour[v] != cell_of_position[position])
                        continue;
                    uint64_t next = bits;
                    for (size_t j = 0; j < position; ++j)
                        next = (next << 1) | (g.adjacent(placed[j], static_cast<Vertex>(v)) ? 1u : 0u);
                    used[v] = true;
                    placed.push_back(static_cast<Vertex>(v));
                    search(position + 1, next, length + position);
                    placed.pop_back();
                    used[v] = false;
                }
            }
        };
    }

    auto canonical_key(const Graph & g) -> CanonicalKey
    {
        size_t n = g.size();
        if (n > max_canonical_vertices)
            throw Error(ErrorKind::instance_too_large, "canonical form limited to "
                    + to_string(max_canonical_vertices) + " vertices");
        if (n <= 1)
            return { n, 0 };
        CanonicalSearch s{ g, n, {}, refine(g), {}, vector<bool>(n, false) };
        s.cell_of_position = s.colour;
        std::sort(s.cell_of_position.begin(), s.cell_of_position.end());
        s.search(0, 0, 0);
        return { n, s.best };
    }

    auto isomorphic(const Graph & a, const Graph & b) -> bool
    {
        if (a.size() != b.size() || a.edge_count() != b.edge_count())
            return false;
        return canonical_key(a) == canonical_key(b);
    }

    namespace named
    {
        auto empty(size_t n) -> Graph
        {
            return Graph(n);
        }

        auto complete(size_t n) -> Graph
        {
            Graph g(n);
            for (size_t u = 0; u < n; ++u)
                for (size_t v = u + 1; v < n; ++v)
                    g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
            return g;
        }

        auto cycle(size_t n) -> Graph
        {
            Graph g(n);
            for (size_t u = 0; u < n; ++u)
                g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>((u + 1) % n));
            return g;
        }

        auto path(size_t n) -> Graph
        {
            Graph g(n);
            for (size_t u = 0; u + 1 < n; ++u)
                g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(u + 1));
            return g;
        }

        auto single_edge() -> Graph
        {
            return path(2);
        }

        auto bowtie() -> Graph
        {
            vector<Edge> edges{ { 0, 1 }, { 0, 2 }, { 1, 2 }, { 0, 3 }, { 0, 4 }, { 3, 4 } };
            return Graph::from_edges(5, edges);
        }

        auto petersen() -> Graph
        {
            Graph g(10);
            for (int i = 0; i < 5; ++i) {
                g.add_edge(i, (i + 1) % 5);
                g.add_edge(i, i + 5);
                g.add_edge(5 + i, 5 + (i + 2) % 5);
            }
            return g;
        }

        auto complete_bipartite(size_t a, size_t b) -> Graph
        {
            Graph g(a + b);
            for (size_t u = 0; u < a; ++u)
                for (size_t v = 0; v < b; ++v)
                    g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(a + v));
            return g;
        }

        auto triangle_with_pendant() -> Graph
        {
            vector<Edge> edges{ { 0, 1 }, { 0, 2 }, { 1, 2 }, { 2, 3 } };
            return Graph::from_edges(4, edges);
        }
    }
}
