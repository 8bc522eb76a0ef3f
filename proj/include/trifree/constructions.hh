#pragma once

#include <trifree/graph.hh>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace trifree
{
    /// A subset of {1..bound} with no three-term arithmetic progression.
    struct ApFreeSet
    {
        std::size_t bound = 0;
        std::vector<std::size_t> elements;
    };

    enum class ApFreeMethod
    {
        greedy,
        behrend_spheres
    };

    /// Greedy scans 1..bound keeping each element that creates no progression.
    /// Behrend takes the largest digit-sphere class {a : sum a_j^2 = r} over
    /// digits in [0,k] written in base 2k+1, shifted into {1..bound}; with
    /// `complete` it is then extended greedily to a maximal set.
    auto build_ap_free_set(std::size_t bound, ApFreeMethod method, bool complete = true) -> ApFreeSet;

    /// Brute-force scan; returns true iff no a, a+d, a+2d (d >= 1) all lie in the set.
    auto is_ap_free(const std::vector<std::size_t> & elements) -> bool;

    /// Tripartite graph on parts [n], [2n], [3n] (vertex offsets 0, n, 3n) with a
    /// triangle (a, a+d, a+2d) for each a in [1..n] and d in S.
    /// Throws invalid-set unless S is progression-free and inside [1..n].
    auto rs_graph(std::size_t n, const ApFreeSet & set) -> Graph;

    /// Same construction without validating S.
    auto rs_graph_unchecked(std::size_t n, const std::vector<std::size_t> & set) -> Graph;

    /// Split of each homomorphic copy's edges into two non-empty parts.
    struct EdgeBipartition
    {
        std::vector<std::vector<Edge>> part0;
        std::vector<std::vector<Edge>> part1;
    };

    /// part1 = the lexicographically smallest edge, part0 = the rest.
    auto default_bipartition(const std::vector<HomCopy> & copies) -> EdgeBipartition;

    void validate_bipartition(const std::vector<HomCopy> & copies, const EdgeBipartition & parts);

    /// A vertex (base, x_1..x_m) of the partial binary blow-up. Bit i of `bits`
    /// (least significant first) holds x_{i+1}.
    struct BlowupVertex
    {
        Vertex base = 0;
        std::uint32_t bits = 0;

        auto bit(std::size_t i) const -> unsigned { return (bits >> i) & 1u; }

        auto operator<=>(const BlowupVertex &) const = default;
    };

    struct Blowup
    {
        Graph base;
        std::vector<HomCopy> copies;
        EdgeBipartition parts;
        std::size_t m = 0;
        Graph graph;
        /// labels[v] for v in V(graph); vertex id is (base << m) | bits.
        std::vector<BlowupVertex> labels;

        auto vertex(Vertex base_vertex, std::uint32_t bits) const -> Vertex
        {
            return static_cast<Vertex>((static_cast<std::size_t>(base_vertex) << m) | bits);
        }
    };

    /// Largest number of blow-up vertices accepted, before the dense graph limit.
    inline constexpr std::size_t max_blowup_vertices = std::size_t{1} << 20;

    /// (u,x) ~ (v,y) iff uv is in part s of copy i and x_i = y_i = s.
    auto partial_binary_blowup(const Graph & g, const Pattern & h, const EdgeBipartition & parts) -> Blowup;
    auto partial_binary_blowup(const Graph & g, const Pattern & h) -> Blowup;

    auto verify_blowup_hom_free(const Graph & blowup, const Pattern & h) -> bool;

    /// Unrestricted k-blow-up: each vertex becomes k copies, adjacent copies of
    /// adjacent vertices.
    auto full_blowup(const Graph & g, std::size_t k) -> Graph;

    /// Projection of a blow-up vertex to its base vertex.
    auto blowup_projection(const Blowup & b) -> std::vector<Vertex>;

    /// "base:x_1...x_m"
    auto format_label(const BlowupVertex & label, std::size_t m) -> std::string;
    void write_labels(std::ostream & out, const Blowup & b);
    auto read_labels(std::istream & in, std::size_t m) -> std::vector<BlowupVertex>;
}
