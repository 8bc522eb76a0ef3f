#pragma once

#include <trifree/fpn.hh>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace trifree
{
    /// x_i + y_j + z_k = 0 exactly when i = j = k. Points are element indices.
    struct TricolorTriple
    {
        FpnSpace space;
        std::vector<std::size_t> x, y, z;

        auto length() const -> std::size_t { return x.size(); }
    };

    inline constexpr std::size_t max_tricolor_checks = 10'000'000;

    /// Exhaustive over all l^3 index triples. Throws instance-too-large above
    /// max_tricolor_checks, size-mismatch on ragged sequences.
    auto verify_tricolor(const TricolorTriple & t) -> bool;

    enum class TricolorMode
    {
        exhaustive,
        greedy
    };

    struct TricolorSearchResult
    {
        TricolorTriple triple;
        /// exhaustive search finished, so the length is the maximum for the space
        bool optimal = false;
        bool budget_exhausted = false;
    };

    inline constexpr std::size_t max_exhaustive_tricolor_size = 9;

    /// Exhaustive needs p^n <= 9 and fixes the first triple at (0, 0, 0).
    /// Greedy scans pairs (x, y) lexicographically and keeps each one that fits.
    auto tricolor_search(const FpnSpace & space, TricolorMode mode, std::uint64_t budget = 100'000'000)
        -> TricolorSearchResult;

    struct ExpandedSets
    {
        FpnSpace base;
        FpnSpace lifted;
        std::size_t l = 0;
        /// per-index blocks X'_i, Y'_i, Z'_i as sorted element indices of the lifted space
        std::vector<std::vector<std::size_t>> x_blocks, y_blocks, z_blocks;

        auto x_set() const -> DensityFunction;
        auto y_set() const -> DensityFunction;
        auto z_set() const -> DensityFunction;
    };

    /// floor((p-2)/3)
    auto expansion_top(unsigned p) -> unsigned;
    /// (floor((p-2)/3) + 1) p^(l-1)
    auto expansion_block_size(unsigned p, std::size_t l) -> std::size_t;

    /// Lifts to F_p^(n+l): X'_i is every point above x_i with coordinate n+i in
    /// {0..floor((p-2)/3)}, likewise Y'_i; Z'_i uses {1..floor((p-2)/3)+1}.
    auto expand_construction(const TricolorTriple & t) -> ExpandedSets;

    /// Brute force over X' x Y'.
    auto expanded_is_triangle_free(const ExpandedSets & es) -> bool;

    struct MissedMass
    {
        std::size_t missed_x = 0, missed_y = 0, missed_z = 0;
        std::size_t missed = 0;
        /// (l - m) p^l / 4, possibly negative
        double bound = 0;
        bool holds = false;
    };

    /// Counts elements of X', Y', Z' that phi does not send into X'', Y'', Z''.
    /// Throws non-linear-map on a phi of the wrong shape or field, and
    /// target-not-triangle-free when X'' x Y'' x Z'' has a triangle.
    auto missed_mass_audit(const ExpandedSets & es, const LinearMap & phi, const DensityFunction & xpp,
            const DensityFunction & ypp, const DensityFunction & zpp) -> MissedMass;

    struct OptimalTargets
    {
        DensityFunction x, y, z;
        MissedMass audit;
    };

    inline constexpr std::size_t max_target_space = 8;

    /// Triangle-free targets in F_p^m minimising the missed mass for this phi.
    /// Exhaustive over X'' and Y''; Z'' is then everything not closing a triangle.
    auto optimal_targets(const ExpandedSets & es, const LinearMap & phi) -> OptimalTargets;

    struct CpValue
    {
        unsigned p = 0;
        double t_star = 0;
        /// inf over (0, 1) of t^(-(p-1)/3) (1 + t + ... + t^(p-1))
        double min_value = 0;
        double c_p = 0;
        double grid_t = 0;
        double grid_min = 0;
        double grid_c_p = 0;
    };

    auto is_prime(unsigned p) -> bool;

    /// Golden-section on [1e-9, 1 - 1e-9] with a 10^6-point grid cross-check.
    /// Throws unsupported-prime unless p is a prime <= 199.
    auto cp_constant(unsigned p) -> CpValue;

    struct CpAsymptote
    {
        double x_star = 0;
        /// inf over x > 0 of e^(x/3) (1 - e^(-x)) / x
        double infimum = 0;
        /// -log(infimum)
        double constant = 0;
    };

    auto cp_asymptote() -> CpAsymptote;

    /// p^(l-1) (floor((p-2)/3) + 1) >= p^l / 4, i.e. 4 (floor((p-2)/3) + 1) >= p.
    auto arith_good_holds(unsigned p) -> bool;
}
