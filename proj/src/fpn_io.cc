#include <trifree/error.hh>
#include <trifree/fpn_io.hh>
#include <trifree/text.hh>

#include <charconv>
#include <fstream>
#include <ostream>

using std::size_t;
using std::string;
using std::to_string;
using std::vector;

namespace trifree
{
    namespace
    {
        auto read_space(LineReader & reader, const vector<string> & header) -> FpnSpace
        {
            auto p = parse_unsigned(header.at(0), reader.line());
            auto n = parse_unsigned(header.at(1), reader.line());
            if (n == 0)
                throw ParseError(reader.line(), "dimension must be at least 1");
            if (! is_supported_prime(static_cast<unsigned>(p)))
                throw ParseError(reader.line(), "unsupported prime " + to_string(p));
            try {
                return FpnSpace(static_cast<unsigned>(p), n);
            }
            catch (const Error & e) {
                throw ParseError(reader.line(), e.what());
            }
        }

        template <typename Stream, typename Body>
        void with_file(const string & path, Body body)
        {
            Stream file(path);
            if (! file)
                throw Error(ErrorKind::invalid_argument, "cannot open " + path);
            body(file);
        }
    }

    auto format_point(const FpnSpace & space, size_t index) -> string
    {
        string out;
        for (auto d : space.digits(index))
            out += static_cast<char>('0' + d);
        return out;
    }

    auto parse_point(const FpnSpace & space, const string & token, size_t line) -> size_t
    {
        if (token.size() != space.n())
            throw ParseError(line, "point '" + token + "' needs " + to_string(space.n()) + " digits");
        Digits digits;
        for (char c : token) {
            if (c < '0' || static_cast<unsigned>(c - '0') >= space.p())
                throw ParseError(line, "bad digit '" + string(1, c) + "' for p = " + to_string(space.p()));
            digits.push_back(static_cast<unsigned>(c - '0'));
        }
        return space.index(digits);
    }

    auto format_double(double value) -> string
    {
        char buffer[64];
        auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
        return string(buffer, result.ptr);
    }

    auto read_function(std::istream & in) -> DensityFunction
    {
        LineReader reader(in);
        auto header = reader.next_tokens();
        if (! header || header->size() != 2)
            throw ParseError(reader.line(), "header must be 'p n'");
        auto space = read_space(reader, *header);
        DensityFunction f{ space, vector<double>(space.size(), 0.0) };
        vector<bool> seen(space.size(), false);
        bool compact = false, table = false;
        auto mark = [&] (size_t index) {
            if (seen[index])
                throw ParseError(reader.line(), "point " + format_point(space, index) + " given twice");
            seen[index] = true;
        };
        while (auto tokens = reader.next_tokens()) {
            if (tokens->front() == "elements:") {
                if (table)
                    throw ParseError(reader.line(), "cannot mix 'elements:' with value lines");
                compact = true;
                for (size_t i = 1; i < tokens->size(); ++i) {
                    auto index = parse_point(space, tokens->at(i), reader.line());
                    mark(index);
                    f.values[index] = 1.0;
                }
                continue;
            }
            if (compact)
                throw ParseError(reader.line(), "cannot mix value lines with 'elements:'");
            table = true;
            if (tokens->size() != 2)
                throw ParseError(reader.line(), "expected 'point value'");
            auto index = parse_point(space, tokens->at(0), reader.line());
            auto value = parse_double(tokens->at(1), reader.line());
            if (! (value >= 0.0 && value <= 1.0))
                throw ParseError(reader.line(), "value " + tokens->at(1) + " outside [0, 1]");
            mark(index);
            f.values[index] = value;
        }
        return f;
    }

    auto read_function_file(const string & path) -> DensityFunction
    {
        DensityFunction f;
        with_file<std::ifstream>(path, [&] (std::istream & in) { f = read_function(in); });
        return f;
    }

    void write_function(std::ostream & out, const DensityFunction & f, FunctionLayout layout)
    {
        auto & s = f.space;
        out << s.p() << ' ' << s.n() << '\n';
        if (layout == FunctionLayout::compact) {
            if (! f.is_indicator())
                throw Error(ErrorKind::invalid_argument, "compact layout needs a 0/1 function");
            out << "elements:";
            for (auto index : f.support())
                out << ' ' << format_point(s, index);
            out << '\n';
            return;
        }
        for (size_t index = 0; index < s.size(); ++index)
            out << format_point(s, index) << ' ' << format_double(f.values[index]) << '\n';
    }

    void write_function_file(const string & path, const DensityFunction & f, FunctionLayout layout)
    {
        with_file<std::ofstream>(path, [&] (std::ostream & out) { write_function(out, f, layout); });
    }

    auto read_tricolor(std::istream & in) -> TricolorTriple
    {
        LineReader reader(in);
        auto header = reader.next_tokens();
        if (! header || header->size() != 3)
            throw ParseError(reader.line(), "header must be 'p n l'");
        auto space = read_space(reader, *header);
        auto l = parse_unsigned(header->at(2), reader.line());
        if (l > space.size())
            throw ParseError(reader.line(), "l = " + to_string(l) + " exceeds p^n");
        TricolorTriple t{ space, {}, {}, {} };
        for (auto * block : { &t.x, &t.y, &t.z })
            for (size_t i = 0; i < l; ++i) {
                auto tokens = reader.next_tokens();
                if (! tokens)
                    throw ParseError(reader.line(), "expected " + to_string(3 * l) + " points");
                if (tokens->size() != 1)
                    throw ParseError(reader.line(), "one point per line");
                block->push_back(parse_point(space, tokens->front(), reader.line()));
            }
        if (reader.next_tokens())
            throw ParseError(reader.line(), "trailing content after " + to_string(3 * l) + " points");
        return t;
    }

    auto read_tricolor_file(const string & path) -> TricolorTriple
    {
        TricolorTriple t;
        with_file<std::ifstream>(path, [&] (std::istream & in) { t = read_tricolor(in); });
        return t;
    }

    void write_tricolor(std::ostream & out, const TricolorTriple & t)
    {
        out << t.space.p() << ' ' << t.space.n() << ' ' << t.length() << '\n';
        for (auto * block : { &t.x, &t.y, &t.z }) {
            out << (block == &t.x ? "# x\n" : block == &t.y ? "# y\n" : "# z\n");
            for (auto index : *block)
                out << format_point(t.space, index) << '\n';
        }
    }

    void write_tricolor_file(const string & path, const TricolorTriple & t)
    {
        with_file<std::ofstream>(path, [&] (std::ostream & out) { write_tricolor(out, t); });
    }
}
