#pragma once

#include <trifree/graph.hh>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace trifree
{
    /// g(x) = 100 log(100/x) (log log(100/x))^2 for 0 < x <= 1.
    auto g_schedule(double x) -> double;

    /// sum_{i=1}^{terms} 1 / g(2^-i)
    auto g_schedule_partial_sum(std::size_t terms) -> double;

    /// Upper bound on sum_{i > after} 1 / g(2^-i), from comparing with
    /// the integral of 1 / (100 x log 2 (log(x log 2))^2); needs after >= 2.
    auto g_schedule_tail_bound(std::size_t after) -> double;

    struct DeletionStep
    {
        std::size_t step = 0;
        Edge edge;
        std::size_t codegree = 0;
        /// triangles / n^3 before this deletion
        double beta = 0;
        double threshold = 0;
    };

    struct CodegreeResult
    {
        Graph graph;
        std::vector<DeletionStep> trace;
        std::uint64_t initial_triangles = 0;
        std::uint64_t triangles = 0;
        std::size_t n = 0;
        double delta = 0;
        double eps = 0;
        /// alpha = triangles / n^3
        double alpha = 0;
        double threshold = 0;
        std::size_t max_codegree = 0;

        auto deletions() const -> std::size_t { return trace.size(); }
    };

    /// Repeatedly deletes the edge in the most triangles (ties: smallest edge)
    /// until no edge lies in more than g(alpha/delta) alpha n / eps triangles.
    /// delta defaults to the triangle density of g.
    auto greedy_bounded_codegree(const Graph & g, double eps, std::optional<double> delta = std::nullopt) -> CodegreeResult;

    void write_trace(std::ostream & out, const std::vector<DeletionStep> & trace);
    auto read_trace(std::istream & in) -> std::vector<DeletionStep>;

    struct DiamondSample
    {
        /// on vertices [0, N), vertex k standing for sample[k]
        Graph graph;
        std::vector<Vertex> sample;
        std::size_t good_triangles = 0;
        std::size_t triangles_in_sample = 0;
        /// t <= n / 100
        bool in_asymptotic_regime = false;
    };

    /// Keeps the triangles inside a random N = floor(n / (9t)) subset whose
    /// edges lie in no other triangle inside the subset.
    auto sample_diamond_subgraph(const Graph & g, std::size_t t, std::uint64_t seed) -> DiamondSample;

    enum class RemovalMode
    {
        exact,
        greedy
    };

    struct RemovalResult
    {
        std::size_t deletions = 0;
        std::vector<Edge> removed;
        bool exact = false;
    };

    inline constexpr std::size_t max_exact_removal_edges = 30;

    /// Fewest edge deletions leaving g triangle-free (exact), or the size of the
    /// repeated max-codegree deletion (greedy).
    auto removal_distance(const Graph & g, RemovalMode mode) -> RemovalResult;
}
