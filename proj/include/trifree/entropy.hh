#pragma once

#include <trifree/approx_hom.hh>
#include <trifree/constructions.hh>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace trifree
{
    // All entropies are in nats.

    struct FiniteDistribution
    {
        std::vector<double> weights;
    };

    /// Row-major joint table, rows index X and columns index Y.
    struct JointDistribution
    {
        std::size_t rows = 0, cols = 0;
        std::vector<double> p;

        auto at(std::size_t x, std::size_t y) const -> double { return p[x * cols + y]; }
    };

    /// Throws domain unless weights are non-negative and sum to 1 within 1e-12.
    auto make_distribution(std::vector<double> weights) -> FiniteDistribution;
    auto make_joint(std::size_t rows, std::size_t cols, std::vector<double> p) -> JointDistribution;
    auto distribution_from_counts(std::span<const std::uint64_t> counts) -> FiniteDistribution;

    auto entropy(const FiniteDistribution & d) -> double;
    auto entropy_from_counts(std::span<const std::uint64_t> counts) -> double;
    auto mutual_information(const JointDistribution & j) -> double;
    /// I(X;Y) for the empirical joint law of a rows x cols count table.
    auto mutual_information_from_counts(std::size_t rows, std::size_t cols, std::span<const std::uint64_t> counts) -> double;

    auto binary_entropy(double q) -> double;
    /// log 2 - H(Bernoulli(q)), accurate near q = 1/2.
    auto binary_entropy_gap(double q) -> double;

    struct PinskerGap
    {
        double lhs = 0, rhs = 0;
    };

    /// lhs = |q - 1/2|, rhs = sqrt((log 2 - H(q)) / 2).
    auto pinsker_gap(double q) -> PinskerGap;

    /// H(Bernoulli(in_p0 / size)) >= log 2 - eta^2.
    auto nearly_bisected(std::size_t in_p0, std::size_t size, double eta) -> bool;
    auto nearly_bisected(std::span<const std::size_t> q, std::span<const std::size_t> p0,
            std::span<const std::size_t> p1, double eta) -> bool;

    /// Ground set [0, size); side[u] says whether u is in P_0 or P_1, part[u]
    /// is the index of the Q-part containing u.
    struct BisectionInstance
    {
        std::vector<unsigned char> side;
        std::vector<std::size_t> part;
        std::size_t parts = 0;
        double eta = 0;
    };

    struct BisectionAudit
    {
        double mutual_information = 0;
        std::vector<std::size_t> nearly_bisected_parts;
        std::size_t u_nb = 0;
        double u_nb_fraction = 0;
        /// weights over the elements of P_0 in increasing order
        FiniteDistribution mu;
        double tv = 0;
        /// tv = tv_numerator / tv_denominator exactly
        std::uint64_t tv_numerator = 0, tv_denominator = 1;
        bool hypothesis = false;
        bool size_conclusion = false;
        bool tv_conclusion = false;
    };

    /// Throws precondition-violation unless |P_0| = |P_1|, parts cover U and
    /// eta < 1/5; throws no-nearly-bisected-part when J_nb is empty.
    auto bisection_audit(const BisectionInstance & instance) -> BisectionAudit;

    /// Random balanced instance on at most max_universe elements, built so that
    /// I(X;Y) spans several orders of magnitude.
    auto random_bisection_instance(std::mt19937_64 & rng, std::size_t max_universe, double eta) -> BisectionInstance;

    /// I(bit i ; phi) for a uniform vertex of U_v = {v} x {0,1}^m.
    auto blowup_mutual_info(const Blowup & b, const VertexMap & phi, Vertex v, std::size_t i) -> double;

    struct ChainRow
    {
        Vertex v = 0;
        double sum_info = 0;
        double image_entropy = 0;
        double log_target = 0;
        bool holds = false;
    };

    /// Per base vertex: sum_i I_{i,v} <= H(Y) <= log |V(F)| within 1e-9.
    auto chain_bound_audit(const Blowup & b, const VertexMap & phi, std::size_t f_size) -> std::vector<ChainRow>;

    struct ClaimAudit
    {
        bool hypothesis = false;
        std::size_t violated = 0;
        double threshold = 0;
        bool conclusion = false;
    };

    /// eta = 1 / (16 |E(H)|)
    auto claim_eta(const Pattern & h) -> double;

    /// Hypothesis: I_{i,v} <= eta for every vertex v of copy i. Conclusion: at
    /// least 2^(2m-3) blow-up edges over copy i fail to map to edges of F.
    auto claim_dagger_audit(const Blowup & b, const Graph & f, std::size_t i, const VertexMap & phi, double eta) -> ClaimAudit;

    enum class ClaimMapScope
    {
        /// arbitrary on U_a for each vertex a of copy i
        fibres,
        /// constant on each half U_{a, i->s}
        cells
    };

    /// Calls f for every map V(G') -> [f_size] that is zero outside copy i's
    /// fibres and ranges over the given scope inside them; f returns false to stop.
    void for_each_claim_map(const Blowup & b, std::size_t i, std::size_t f_size, ClaimMapScope scope,
            const std::function<bool (const VertexMap &)> & callback);
}
