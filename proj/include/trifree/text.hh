#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace trifree
{
    /// Line-oriented tokenizer shared by the file readers: strips '#' comments
    /// and skips blank lines while tracking the 1-based line number.
    class LineReader
    {
        public:
            explicit LineReader(std::istream & in) : _in(in) {}

            auto next_tokens() -> std::optional<std::vector<std::string>>;
            auto line() const noexcept -> std::size_t { return _line; }

        private:
            std::istream & _in;
            std::size_t _line = 0;
    };

    auto parse_unsigned(const std::string & token, std::size_t line) -> std::size_t;
    auto parse_double(const std::string & token, std::size_t line) -> double;

    /// FNV-1a over a byte string; used for input digests in reports.
    auto fnv1a(const std::string & bytes) -> std::uint64_t;
    auto file_digest(const std::string & path) -> std::string;
}
