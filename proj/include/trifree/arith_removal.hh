#pragma once

#include <trifree/fpn.hh>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace trifree
{
    enum class ArithRemovalMode
    {
        exact,
        greedy
    };

    struct ArithRemovalResult
    {
        std::size_t deletions = 0;
        std::vector<std::size_t> removed_x, removed_y, removed_z;
        std::size_t triangles = 0;
        bool exact = false;
        /// exact search ran out of nodes; deletions is then the best found
        bool budget_exhausted = false;
    };

    inline constexpr std::size_t max_exact_arith_size = 64;
    inline constexpr std::uint64_t default_node_budget = 20'000'000;

    /// Fewest elements to delete from X, Y, Z so that no x + y + z = 0 remains.
    /// Exact mode needs p^n <= 64; greedy deletes the element in most remaining triangles.
    auto exact_arith_removal(const DensityFunction & x, const DensityFunction & y, const DensityFunction & z,
            ArithRemovalMode mode = ArithRemovalMode::exact, std::uint64_t node_budget = default_node_budget) -> ArithRemovalResult;

    struct RoundTripSide
    {
        /// the rounded function f'
        DensityFunction rounded;
        /// the random lift as a set in F_p^(n+m)
        DensityFunction lift;
        /// lift elements deleted by the removal step
        std::vector<std::size_t> removed;
        std::size_t lifted = 0;
        std::size_t deleted = 0;
        /// E_x |f - f'|
        double l1 = 0;
        /// 4 * deleted / p^(n+m)
        double l1_bound = 0;
    };

    struct RoundTripResult
    {
        RoundTripSide f, g, h;
        std::size_t lift_dimension = 0;
        std::size_t lift_triangles = 0;
        bool exact_removal = false;
        double lambda_before = 0;
        double lambda_after = 0;
        /// lambda_after == 0
        bool success = false;
        /// every side deleted at most eps p^(n+m) / 4 elements
        bool within_budget = false;
        /// every l1 <= l1_bound
        bool accounting_holds = false;
    };

    /// Lifts f, g, h to random subsets of F_p^(n+m), removes all triangles
    /// there, and zeroes f(x) wherever at least f(x) p^m / 4 elements above x were deleted.
    auto weighted_removal_roundtrip(const DensityFunction & f, const DensityFunction & g, const DensityFunction & h,
            double eps, std::size_t m, std::uint64_t seed) -> RoundTripResult;
}
