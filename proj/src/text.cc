#include <trifree/error.hh>
#include <trifree/text.hh>

#include <charconv>
#include <fstream>
#include <iomanip>
#include <istream>
#include <sstream>

using std::optional;
using std::size_t;
using std::string;
using std::vector;

namespace trifree
{
    auto LineReader::next_tokens() -> optional<vector<string>>
    {
        string text;
        while (std::getline(_in, text)) {
            ++_line;
            if (auto hash = text.find('#'); hash != string::npos)
                text.erase(hash);
            std::istringstream words(text);
            vector<string> tokens;
            string token;
            while (words >> token)
                tokens.push_back(token);
            if (! tokens.empty())
                return tokens;
        }
        return std::nullopt;
    }

    auto parse_unsigned(const string & token, size_t line) -> size_t
    {
        size_t value = 0;
        auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc{} || end != token.data() + token.size())
            throw ParseError(line, "expected a non-negative integer, got '" + token + "'");
        return value;
    }

    auto parse_double(const string & token, size_t line) -> double
    {
        try {
            size_t used = 0;
            double value = std::stod(token, &used);
            if (used != token.size())
                throw ParseError(line, "expected a number, got '" + token + "'");
            return value;
        }
        catch (const std::logic_error &) {
            throw ParseError(line, "expected a number, got '" + token + "'");
        }
    }

    auto fnv1a(const string & bytes) -> std::uint64_t
    {
        std::uint64_t hash = 14695981039346656037ull;
        for (unsigned char c : bytes) {
            hash ^= c;
            hash *= 1099511628211ull;
        }
        return hash;
    }

    auto file_digest(const string & path) -> string
    {
        std::ifstream in(path, std::ios::binary);
        if (! in)
            throw Error(ErrorKind::invalid_argument, "cannot open " + path);
        std::ostringstream buffer;
        buffer << in.rdbuf();
        std::ostringstream hex;
        hex << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << fnv1a(buffer.str());
        return hex.str();
    }
}
