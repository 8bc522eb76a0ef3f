#include <trifree/error.hh>

using std::string;
using std::string_view;

namespace trifree
{
    auto kind_name(ErrorKind kind) -> string_view
    {
        switch (kind) {
            case ErrorKind::pattern_too_large: return "pattern-too-large";
            case ErrorKind::instance_too_large: return "instance-too-large";
            case ErrorKind::target_bound_too_large: return "target-bound-too-large";
            case ErrorKind::size_mismatch: return "size-mismatch";
            case ErrorKind::size_guard: return "size-guard";
            case ErrorKind::precondition_violation: return "precondition-violation";
            case ErrorKind::invalid_set: return "invalid-set";
            case ErrorKind::copy_with_one_edge: return "copy-with-one-edge";
            case ErrorKind::no_nearly_bisected_part: return "no-nearly-bisected-part";
            case ErrorKind::empty_subset: return "empty-Q";
            case ErrorKind::domain: return "domain";
            case ErrorKind::sample_size_zero: return "sample-size-zero";
            case ErrorKind::subspace_space_mismatch: return "subspace-space-mismatch";
            case ErrorKind::space_mismatch: return "space-mismatch";
            case ErrorKind::non_linear_map: return "non-linear-map";
            case ErrorKind::target_not_triangle_free: return "target-not-triangle-free";
            case ErrorKind::unsupported_prime: return "unsupported-p";
            case ErrorKind::invalid_argument: return "invalid-params";
            case ErrorKind::unknown_preset: return "unknown-preset";
            case ErrorKind::parse_error: return "parse-error";
        }
        return "unknown";
    }

    Error::Error(ErrorKind kind, const string & message) :
        std::runtime_error(string(kind_name(kind)) + ": " + message),
        _kind(kind)
    {
    }

    ParseError::ParseError(std::size_t line, const string & message) :
        Error(ErrorKind::parse_error, "line " + std::to_string(line) + ": " + message),
        _line(line)
    {
    }
}
