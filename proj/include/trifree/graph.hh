#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

namespace trifree
{
    using Vertex = int;
    using Word = std::uint64_t;

    /// Undirected edge, always stored with u < v.
    struct Edge
    {
        Vertex u = 0;
        Vertex v = 0;

        Edge() = default;
        Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

        auto operator<=>(const Edge &) const = default;
    };

    /// Simple undirected graph on vertices [0, n) with packed adjacency rows.
    class Graph
    {
        public:
            /// Dense rows cost n^2/8 bytes; 2^15 vertices is 128 MiB.
            static constexpr std::size_t max_vertices = std::size_t{1} << 15;

            Graph() = default;
            explicit Graph(std::size_t n);

            static auto from_edges(std::size_t n, std::span<const Edge> edges) -> Graph;

            auto size() const noexcept -> std::size_t { return _n; }
            auto edge_count() const noexcept -> std::size_t { return _edges; }
            auto words_per_row() const noexcept -> std::size_t { return _words; }

            auto adjacent(Vertex u, Vertex v) const -> bool
            {
                return (_rows[static_cast<std::size_t>(u) * _words + (static_cast<std::size_t>(v) >> 6)] >> (v & 63)) & 1u;
            }

            auto row(Vertex u) const -> std::span<const Word>
            {
                return { _rows.data() + static_cast<std::size_t>(u) * _words, _words };
            }

            /// Adds uv; returns false if it was already present. Loops are rejected.
            auto add_edge(Vertex u, Vertex v) -> bool;
            auto remove_edge(Vertex u, Vertex v) -> bool;

            auto degree(Vertex u) const -> std::size_t;
            auto neighbours(Vertex u) const -> std::vector<Vertex>;
            auto edges() const -> std::vector<Edge>;
            auto induced(std::span<const Vertex> vertices) const -> Graph;

            friend auto operator==(const Graph & a, const Graph & b) -> bool
            {
                return a._n == b._n && a._rows == b._rows;
            }

        private:
            std::size_t _n = 0;
            std::size_t _words = 0;
            std::size_t _edges = 0;
            std::vector<Word> _rows;
    };

    /// Calls f(w) for each set bit of a word span.
    template <typename F>
    void for_each_bit(std::span<const Word> words, F && f)
    {
        for (std::size_t i = 0; i < words.size(); ++i) {
            Word w = words[i];
            while (w) {
                int b = __builtin_ctzll(w);
                f(static_cast<Vertex>(i * 64 + static_cast<std::size_t>(b)));
                w &= w - 1;
            }
        }
    }

    struct Triangle
    {
        Vertex a, b, c;

        auto operator<=>(const Triangle &) const = default;
    };

    struct TriangleIndex
    {
        std::vector<Triangle> triangles;
        std::map<Edge, std::size_t> edge_counts;
    };

    auto count_triangles(const Graph & g) -> std::uint64_t;
    auto triangle_index(const Graph & g) -> TriangleIndex;

    /// Number of triangles through uv; uv need not be an edge.
    auto codegree(const Graph & g, Vertex u, Vertex v) -> std::size_t;

    /// Largest pattern accepted by the homomorphism machinery.
    inline constexpr std::size_t max_pattern_vertices = 8;

    /// A small graph together with its core.
    class Pattern
    {
        public:
            explicit Pattern(Graph graph);

            auto graph() const -> const Graph & { return _graph; }
            auto core() const -> const Graph & { return _core; }
            /// Vertices of graph() spanning the core, in core index order.
            auto core_vertices() const -> const std::vector<Vertex> & { return _core_vertices; }
            auto is_core() const -> bool { return _core.size() == _graph.size(); }

        private:
            Graph _graph;
            Graph _core;
            std::vector<Vertex> _core_vertices;
    };

    /// Image of a homomorphism, as a subgraph of the host.
    struct HomCopy
    {
        std::vector<Vertex> vertices;
        std::vector<Edge> edges;

        auto operator<=>(const HomCopy &) const = default;
    };

    /// Enumerates homomorphisms pattern -> host; the callback sees the image of
    /// each pattern vertex and returns false to stop.
    void for_each_hom(const Graph & pattern, const Graph & host,
            const std::function<bool (std::span<const Vertex>)> & callback);

    auto hom_count(const Graph & pattern, const Graph & host) -> std::uint64_t;
    auto hom_count(const Pattern & pattern, const Graph & host) -> std::uint64_t;

    auto hom_copies(const Graph & pattern, const Graph & host) -> std::vector<HomCopy>;
    auto hom_copies(const Pattern & pattern, const Graph & host) -> std::vector<HomCopy>;

    auto is_hom_free(const Graph & pattern, const Graph & host) -> bool;
    auto is_hom_free(const Pattern & pattern, const Graph & host) -> bool;

    struct Core
    {
        Graph graph;
        std::vector<Vertex> vertices;
    };

    auto compute_core(const Graph & h) -> Core;
    auto core(const Pattern & h) -> Graph;

    /// Every edge of g lies in exactly one homomorphic copy of core(h).
    auto unique_copy_property(const Graph & g, const Pattern & h) -> bool;

    auto is_connected(const Graph & g) -> bool;

    /// Isomorphism-invariant key for graphs on at most 11 vertices.
    struct CanonicalKey
    {
        std::size_t n = 0;
        std::uint64_t bits = 0;

        auto operator<=>(const CanonicalKey &) const = default;
    };

    inline constexpr std::size_t max_canonical_vertices = 11;

    auto canonical_key(const Graph & g) -> CanonicalKey;
    auto isomorphic(const Graph & a, const Graph & b) -> bool;

    namespace named
    {
        auto empty(std::size_t n) -> Graph;
        auto complete(std::size_t n) -> Graph;
        auto cycle(std::size_t n) -> Graph;
        auto path(std::size_t n) -> Graph;
        auto single_edge() -> Graph;
        /// Two triangles sharing vertex 0: {0,1,2} and {0,3,4}.
        auto bowtie() -> Graph;
        auto petersen() -> Graph;
        auto complete_bipartite(std::size_t a, std::size_t b) -> Graph;
        /// Triangle {0,1,2} with pendant edge 2-3.
        auto triangle_with_pendant() -> Graph;
    }
}
