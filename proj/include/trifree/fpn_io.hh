#pragma once

#include <trifree/arith_constructions.hh>
#include <trifree/fpn.hh>

#include <iosfwd>
#include <string>

namespace trifree
{
    /// Element as its n base-p digits, most significant first ("021").
    auto format_point(const FpnSpace & space, std::size_t index) -> std::string;
    auto parse_point(const FpnSpace & space, const std::string & token, std::size_t line) -> std::size_t;

    /// Function file: header "p n", then "digits value" lines; absent points are 0.
    /// Sets may instead list "elements: digits digits ..." on one or more lines.
    auto read_function(std::istream & in) -> DensityFunction;
    auto read_function_file(const std::string & path) -> DensityFunction;

    enum class FunctionLayout
    {
        table,
        compact
    };

    /// Table writes every point; compact needs an indicator and lists its support.
    void write_function(std::ostream & out, const DensityFunction & f, FunctionLayout layout = FunctionLayout::table);
    void write_function_file(const std::string & path, const DensityFunction & f,
            FunctionLayout layout = FunctionLayout::table);

    /// Tricolor file: header "p n l", then the l points of x, of y and of z.
    auto read_tricolor(std::istream & in) -> TricolorTriple;
    auto read_tricolor_file(const std::string & path) -> TricolorTriple;
    void write_tricolor(std::ostream & out, const TricolorTriple & t);
    void write_tricolor_file(const std::string & path, const TricolorTriple & t);

    /// Shortest decimal text that reads back to the same double.
    auto format_double(double value) -> std::string;
}
