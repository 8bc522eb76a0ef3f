#pragma once

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace trifree
{
    inline constexpr const char * report_schema = "trifree-report/1";

    enum class Relation
    {
        le,
        lt,
        ge,
        gt,
        eq
    };

    auto relation_symbol(Relation r) -> const char *;

    struct Assertion
    {
        /// short name of the inequality being checked
        std::string claim;
        /// what lhs measures
        std::string quantity;
        double lhs = 0;
        Relation op = Relation::le;
        double rhs = 0;
        double tolerance = 0;
        bool pass = false;
        /// distance to the boundary; negative on failure
        double slack = 0;
    };

    enum class ReportFormat
    {
        text,
        structured
    };

    /// Inputs, measurements and checked inequalities of one experiment run.
    /// Wall time goes on its own trailing line so the rest is reproducible.
    class Report
    {
        public:
            using Json = nlohmann::ordered_json;

            explicit Report(std::string experiment, std::uint64_t seed);

            auto experiment() const -> const std::string & { return _experiment; }

            void input(const std::string & key, Json value);
            void measure(const std::string & name, Json value);
            auto check(const std::string & claim, const std::string & quantity, double lhs, Relation op, double rhs,
                    double tolerance = 0) -> bool;

            auto assertions() const -> const std::vector<Assertion> & { return _assertions; }
            auto failures() const -> std::size_t;
            auto passed() const -> bool { return failures() == 0; }

            void set_wall_seconds(double seconds) { _wall_seconds = seconds; }
            auto wall_seconds() const -> double { return _wall_seconds; }

            void write(std::ostream & out, ReportFormat format) const;

        private:
            std::string _experiment;
            std::uint64_t _seed;
            std::vector<std::pair<std::string, Json>> _inputs, _measures;
            std::vector<Assertion> _assertions;
            double _wall_seconds = 0;
    };
}
