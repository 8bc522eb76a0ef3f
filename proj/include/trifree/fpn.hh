#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace trifree
{
    using Digits = std::vector<unsigned>;

    /// F_p^n with elements indexed by their base-p digit strings, most
    /// significant digit first.
    class FpnSpace
    {
        public:
            static constexpr std::size_t max_size = std::size_t{1} << 20;

            FpnSpace() = default;
            /// Throws unsupported-p unless p is 2, 3, 5 or 7, and size-guard above max_size.
            FpnSpace(unsigned p, std::size_t n);

            auto p() const noexcept -> unsigned { return _p; }
            auto n() const noexcept -> std::size_t { return _n; }
            auto size() const noexcept -> std::size_t { return _size; }

            auto digits(std::size_t index) const -> Digits;
            auto index(const Digits & digits) const -> std::size_t;
            auto add(std::size_t a, std::size_t b) const -> std::size_t;
            auto negate(std::size_t a) const -> std::size_t;
            auto dot(const Digits & a, const Digits & b) const -> unsigned;

            friend auto operator==(const FpnSpace & a, const FpnSpace & b) -> bool
            {
                return a._p == b._p && a._n == b._n;
            }

        private:
            unsigned _p = 2;
            std::size_t _n = 0;
            std::size_t _size = 1;
    };

    auto is_supported_prime(unsigned p) -> bool;
    auto inverse_mod(unsigned a, unsigned p) -> unsigned;

    /// f : F_p^n -> [0, 1]; indicator sets are the 0/1 case.
    struct DensityFunction
    {
        FpnSpace space;
        std::vector<double> values;

        auto mean() const -> double;
        auto is_indicator() const -> bool;
        auto support() const -> std::vector<std::size_t>;
    };

    /// Throws domain on values outside [0, 1] and size-mismatch on a wrong table length.
    auto make_density(FpnSpace space, std::vector<double> values) -> DensityFunction;
    auto indicator(FpnSpace space, const std::vector<std::size_t> & elements) -> DensityFunction;
    auto constant_density(FpnSpace space, double value) -> DensityFunction;

    /// Row-reduces rows over F_p in place and returns the rank; zero rows are dropped.
    auto row_reduce(std::vector<Digits> & rows, unsigned p) -> std::size_t;

    /// Subspace of F_p^n held as a reduced row echelon basis.
    class Subspace
    {
        public:
            static auto whole(const FpnSpace & space) -> Subspace;
            static auto zero(const FpnSpace & space) -> Subspace;
            static auto span(const FpnSpace & space, std::vector<Digits> vectors) -> Subspace;
            /// {x : x . v = 0 for all v in vectors}
            static auto annihilator_of(const FpnSpace & space, const std::vector<Digits> & vectors) -> Subspace;

            auto space() const -> const FpnSpace & { return _space; }
            auto basis() const -> const std::vector<Digits> & { return _basis; }
            auto dimension() const -> std::size_t { return _basis.size(); }
            auto codimension() const -> std::size_t { return _space.n() - _basis.size(); }

            auto contains(const Digits & x) const -> bool;
            auto annihilator() const -> Subspace;
            /// All p^dimension elements as indices.
            auto elements() const -> std::vector<std::size_t>;

        private:
            FpnSpace _space;
            std::vector<Digits> _basis;
    };

    /// m x k matrix over F_p acting on column vectors of length k.
    struct LinearMap
    {
        unsigned p = 2;
        std::size_t rows = 0, cols = 0;
        std::vector<unsigned> entries;

        auto at(std::size_t r, std::size_t c) const -> unsigned { return entries[r * cols + c]; }
        auto apply(const Digits & x) const -> Digits;
        auto rank() const -> std::size_t;
    };

    /// Throws non-linear-map unless entries are reduced mod p and the shape matches.
    auto make_linear_map(unsigned p, std::size_t rows, std::size_t cols, std::vector<unsigned> entries) -> LinearMap;
}
