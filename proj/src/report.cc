#include <trifree/report.hh>

#include <cmath>
#include <ostream>

using std::size_t;
using std::string;

namespace trifree
{
    auto relation_symbol(Relation r) -> const char *
    {
        switch (r) {
            case Relation::le: return "<=";
            case Relation::lt: return "<";
            case Relation::ge: return ">=";
            case Relation::gt: return ">";
            case Relation::eq: return "==";
        }
        return "?";
    }

    Report::Report(string experiment, std::uint64_t seed) :
        _experiment(std::move(experiment)), _seed(seed)
    {
    }

    void Report::input(const string & key, Json value)
    {
        _inputs.emplace_back(key, std::move(value));
    }

    void Report::measure(const string & name, Json value)
    {
        _measures.emplace_back(name, std::move(value));
    }

    auto Report::check(const string & claim, const string & quantity, double lhs, Relation op, double rhs,
            double tolerance) -> bool
    {
        Assertion a{ claim, quantity, lhs, op, rhs, tolerance, false, 0 };
        switch (op) {
            case Relation::le:
            case Relation::lt:
                a.slack = rhs - lhs;
                break;
            case Relation::ge:
            case Relation::gt:
                a.slack = lhs - rhs;
                break;
            case Relation::eq:
                a.slack = 0.0 - std::abs(lhs - rhs);
                break;
        }
        bool strict = op == Relation::lt || op == Relation::gt;
        a.pass = op == Relation::eq ? -a.slack <= tolerance : strict ? a.slack + tolerance > 0 : a.slack + tolerance >= 0;
        _assertions.push_back(a);
        return a.pass;
    }

    auto Report::failures() const -> size_t
    {
        size_t count = 0;
        for (auto & a : _assertions)
            count += ! a.pass;
        return count;
    }

    void Report::write(std::ostream & out, ReportFormat format) const
    {
        if (format == ReportFormat::structured) {
            out << Json{ { "schema", report_schema }, { "experiment", _experiment }, { "seed", _seed } }.dump() << '\n';
            for (auto & [key, value] : _inputs)
                out << Json{ { "type", "input" }, { "key", key }, { "value", value } }.dump() << '\n';
            for (auto & [name, value] : _measures)
                out << Json{ { "type", "measure" }, { "name", name }, { "value", value } }.dump() << '\n';
            for (auto & a : _assertions)
                out << Json{ { "type", "assert" }, { "claim", a.claim }, { "quantity", a.quantity }, { "lhs", a.lhs },
                    { "op", relation_symbol(a.op) }, { "rhs", a.rhs }, { "tolerance", a.tolerance },
                    { "pass", a.pass }, { "slack", a.slack } }.dump() << '\n';
            out << Json{ { "type", "summary" }, { "assertions", _assertions.size() }, { "failed", failures() },
                { "status", passed() ? "pass" : "fail" } }.dump() << '\n';
            out << Json{ { "type", "timing" }, { "wall_seconds", _wall_seconds } }.dump() << '\n';
            return;
        }

        out << "experiment " << _experiment << " (" << report_schema << ", seed " << _seed << ")\n";
        for (auto & [key, value] : _inputs)
            out << "  input    " << key << " = " << value.dump() << '\n';
        for (auto & [name, value] : _measures)
            out << "  measure  " << name << " = " << value.dump() << '\n';
        for (auto & a : _assertions)
            out << "  " << (a.pass ? "PASS" : "FAIL") << "     " << a.claim << ": " << a.quantity << " = "
                << Json(a.lhs).dump() << ' ' << relation_symbol(a.op) << ' ' << Json(a.rhs).dump()
                << " (slack " << Json(a.slack).dump() << ")\n";
        out << "  summary  " << _assertions.size() << " assertions, " << failures() << " failed\n";
        out << "  time     " << _wall_seconds << " s\n";
    }
}
