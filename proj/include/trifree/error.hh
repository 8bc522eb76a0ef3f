#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace trifree
{
    enum class ErrorKind
    {
        pattern_too_large,
        instance_too_large,
        target_bound_too_large,
        size_mismatch,
        size_guard,
        precondition_violation,
        invalid_set,
        copy_with_one_edge,
        no_nearly_bisected_part,
        empty_subset,
        domain,
        sample_size_zero,
        subspace_space_mismatch,
        space_mismatch,
        non_linear_map,
        target_not_triangle_free,
        unsupported_prime,
        invalid_argument,
        unknown_preset,
        parse_error
    };

    auto kind_name(ErrorKind kind) -> std::string_view;

    class Error : public std::runtime_error
    {
        public:
            Error(ErrorKind kind, const std::string & message);

            auto kind() const noexcept -> ErrorKind { return _kind; }

        private:
            ErrorKind _kind;
    };

    /// Raised by every file reader; carries the 1-based line that failed.
    class ParseError : public Error
    {
        public:
            ParseError(std::size_t line, const std::string & message);

            auto line() const noexcept -> std::size_t { return _line; }

        private:
            std::size_t _line;
    };
}
