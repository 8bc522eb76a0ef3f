#pragma once

#include <trifree/graph.hh>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace trifree
{
    /// Total map V(G) -> V(F); table[u] is the image of u.
    struct VertexMap
    {
        std::size_t target_size = 0;
        std::vector<Vertex> table;
    };

    struct ViolationReport
    {
        std::size_t violations = 0;
        /// violations / n^2
        double epsilon_achieved = 0.0;
    };

    struct ApproxHomResult
    {
        ViolationReport report;
        VertexMap map;
    };

    /// Edges uv of G with phi(u)phi(v) not an edge of F; phi(u) = phi(v) counts.
    auto violations(const Graph & g, const Graph & f, const VertexMap & phi) -> ViolationReport;

    inline constexpr std::size_t max_target_vertices = 7;
    inline constexpr std::size_t max_exact_source_vertices = 14;

    /// All H-homomorphism-free graphs on exactly m vertices, one per isomorphism class.
    auto enumerate_hom_free_targets(const Pattern & h, std::size_t m) -> std::vector<Graph>;

    /// Every graph on exactly m vertices up to isomorphism (m <= 8).
    auto enumerate_graphs(std::size_t m) -> std::vector<Graph>;

    /// Branch-and-bound over all |F|^n maps.
    auto exact_min_violations(const Graph & g, const Graph & f) -> ApproxHomResult;

    /// Some map with at most `budget` violations, if one exists.
    auto find_map_within(const Graph & g, const Graph & f, std::size_t budget) -> std::optional<ApproxHomResult>;

    /// Simulated annealing from the all-to-0 map; deterministic for a fixed seed.
    auto heuristic_min_violations(const Graph & g, const Graph & f, std::uint64_t seed,
            std::size_t iterations) -> ApproxHomResult;

    struct TargetSearchResult
    {
        std::size_t m = 0;
        Graph target;
        ApproxHomResult witness;
    };

    /// Smallest m <= m_max with an H-hom-free target on m vertices receiving a
    /// map with at most eps * n^2 violations.
    auto min_target_size(const Graph & g, const Pattern & h, double eps, std::size_t m_max)
        -> std::optional<TargetSearchResult>;
}
