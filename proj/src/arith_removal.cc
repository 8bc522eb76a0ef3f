#include <trifree/arith_removal.hh>
#include <trifree/error.hh>
#include <trifree/fourier.hh>

#include <algorithm>
#include <array>
#include <random>

using std::size_t;
using std::to_string;
using std::uint64_t;
using std::vector;

namespace trifree
{
    namespace
    {
        // Items 0..N-1 are X, N..2N-1 are Y, 2N..3N-1 are Z.
        struct TriangleSystem
        {
            size_t items = 0;
            vector<std::array<size_t, 3>> triangles;
            vector<vector<size_t>> containing;
        };

        auto build_system(const DensityFunction & x, const DensityFunction & y, const DensityFunction & z) -> TriangleSystem
        {
            auto & space = x.space;
            size_t n = space.size();
            TriangleSystem system;
            system.items = 3 * n;
            system.containing.resize(3 * n);
            for (size_t a = 0; a < n; ++a) {
                if (x.values[a] == 0)
                    continue;
                for (size_t b = 0; b < n; ++b) {
                    if (y.values[b] == 0)
                        continue;
                    size_t c = space.negate(space.add(a, b));
                    if (z.values[c] == 0)
                        continue;
                    size_t id = system.triangles.size();
                    system.triangles.push_back({ a, n + b, 2 * n + c });
                    system.containing[a].push_back(id);
                    system.containing[n + b].push_back(id);
                    system.containing[2 * n + c].push_back(id);
                }
            }
            return system;
        }

        auto greedy_cover(const TriangleSystem & system) -> vector<size_t>
        {
            vector<bool> covered(system.triangles.size(), false);
            vector<size_t> degree(system.items, 0);
            for (size_t i = 0; i < system.items; ++i)
                degree[i] = system.containing[i].size();
            size_t remaining = system.triangles.size();
            vector<size_t> chosen;
            while (remaining > 0) {
                size_t best = static_cast<size_t>(std::max_element(degree.begin(), degree.end()) - degree.begin());
                chosen.push_back(best);
                for (auto t : system.containing[best])
                    if (! covered[t]) {
                        covered[t] = true;
                        --remaining;
                        for (auto item : system.triangles[t])
                            --degree[item];
                    }
            }
            return chosen;
        }

        class CoverSearch
        {
            public:
                CoverSearch(const TriangleSystem & system, uint64_t budget, vector<size_t> incumbent) :
                    _system(system), _budget(budget), _best(std::move(incumbent)),
                    _hits(system.triangles.size(), 0), _excluded(system.items, false)
                {
                }

                auto run() -> bool
                {
                    search();
                    return ! _exhausted;
                }

                auto best() const -> const vector<size_t> & { return _best; }

            private:
                const TriangleSystem & _system;
                uint64_t _budget, _nodes = 0;
                bool _exhausted = false;
                vector<size_t> _best, _chosen;
                vector<unsigned> _hits;
                vector<bool> _excluded;

                void choose(size_t item, int delta)
                {
                    for (auto t : _system.containing[item])
                        _hits[t] = static_cast<unsigned>(static_cast<int>(_hits[t]) + delta);
                }

                // max(ceil(open / largest open degree), greedy packing of disjoint open triangles)
                auto lower_bound() const -> size_t
                {
                    size_t open = 0;
                    vector<size_t> degree(_system.items, 0);
                    vector<bool> used(_system.items, false);
                    size_t packing = 0;
                    for (size_t t = 0; t < _system.triangles.size(); ++t) {
                        if (_hits[t])
                            continue;
                        ++open;
                        auto & tri = _system.triangles[t];
                        for (auto item : tri)
                            if (! _excluded[item])
                                ++degree[item];
                        if (! used[tri[0]] && ! used[tri[1]] && ! used[tri[2]]) {
                            ++packing;
                            for (auto item : tri)
                                used[item] = true;
                        }
                    }
                    if (open == 0)
                        return 0;
                    size_t top = *std::max_element(degree.begin(), degree.end());
                    if (top == 0)
                        return SIZE_MAX / 2;
                    return std::max((open + top - 1) / top, packing);
                }

                void search()
                {
                    if (_chosen.size() >= _best.size())
                        return;
                    if (++_nodes > _budget) {
                        _exhausted = true;
                        return;
                    }
                    // open triangle with fewest eligible items
                    size_t pick = SIZE_MAX, pick_choices = 4;
                    for (size_t t = 0; t < _system.triangles.size(); ++t) {
                        if (_hits[t])
                            continue;
                        size_t choices = 0;
                        for (auto item : _system.triangles[t])
                            choices += ! _excluded[item];
                        if (choices < pick_choices) {
                            pick = t;
                            pick_choices = choices;
                        }
                    }
                    if (pick == SIZE_MAX) {
                        _best = _chosen;
                        return;
                    }
                    if (pick_choices == 0)
                        return;
                    if (_chosen.size() + lower_bound() >= _best.size())
                        return;

                    auto tri = _system.triangles[pick];
                    vector<size_t> newly_excluded;
                    for (auto item : tri) {
                        if (_excluded[item])
                            continue;
                        _chosen.push_back(item);
                        choose(item, 1);
                        search();
                        choose(item, -1);
                        _chosen.pop_back();
                        if (_exhausted)
                            break;
                        _excluded[item] = true;
                        newly_excluded.push_back(item);
                    }
                    for (auto item : newly_excluded)
                        _excluded[item] = false;
                }
        };

        void check_indicator(const DensityFunction & f, const char * name)
        {
            if (! f.is_indicator())
                throw Error(ErrorKind::precondition_violation, std::string(name) + " is not an indicator");
        }
    }

    auto exact_arith_removal(const DensityFunction & x, const DensityFunction & y, const DensityFunction & z,
            ArithRemovalMode mode, uint64_t node_budget) -> ArithRemovalResult
    {
        if (! (x.space == y.space) || ! (x.space == z.space))
            throw Error(ErrorKind::space_mismatch, "sets live on different spaces");
        check_indicator(x, "X");
        check_indicator(y, "Y");
        check_indicator(z, "Z");
        size_t n = x.space.size();
        if (mode == ArithRemovalMode::exact && n > max_exact_arith_size)
            throw Error(ErrorKind::instance_too_large, "exact removal needs p^n <= " + to_string(max_exact_arith_size)
                    + ", got " + to_string(n));

        auto system = build_system(x, y, z);
        ArithRemovalResult result;
        result.triangles = system.triangles.size();
        auto chosen = greedy_cover(system);
        if (mode == ArithRemovalMode::exact) {
            CoverSearch search(system, node_budget, chosen);
            result.exact = search.run();
            result.budget_exhausted = ! result.exact;
            chosen = search.best();
        }
        std::sort(chosen.begin(), chosen.end());
        for (auto item : chosen)
            (item < n ? result.removed_x : item < 2 * n ? result.removed_y : result.removed_z).push_back(item % n);
        result.deletions = chosen.size();
        return result;
    }

    auto weighted_removal_roundtrip(const DensityFunction & f, const DensityFunction & g, const DensityFunction & h,
            double eps, size_t m, uint64_t seed) -> RoundTripResult
    {
        if (! (f.space == g.space) || ! (f.space == h.space))
            throw Error(ErrorKind::space_mismatch, "functions live on different spaces");
        auto & base = f.space;
        FpnSpace lift;
        try {
            lift = FpnSpace(base.p(), base.n() + m);
        }
        catch (const Error & e) {
            throw Error(ErrorKind::instance_too_large, "lifted space too large: " + std::string(e.what()));
        }
        size_t fibre = lift.size() / base.size();

        // element (x, r) of the lift has index x * p^m + r
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        auto sample = [&] (const DensityFunction & d) {
            vector<double> values(lift.size(), 0.0);
            for (size_t x = 0; x < base.size(); ++x)
                for (size_t r = 0; r < fibre; ++r)
                    values[x * fibre + r] = unit(rng) < d.values[x] ? 1.0 : 0.0;
            return DensityFunction{ lift, values };
        };
        auto lx = sample(f), ly = sample(g), lz = sample(h);

        RoundTripResult result;
        result.lift_dimension = lift.n();
        auto mode = lift.size() <= max_exact_arith_size ? ArithRemovalMode::exact : ArithRemovalMode::greedy;
        auto removal = exact_arith_removal(lx, ly, lz, mode);
        result.lift_triangles = removal.triangles;
        result.exact_removal = removal.exact;

        double total = static_cast<double>(lift.size());
        auto round = [&] (const DensityFunction & d, const DensityFunction & lifted, const vector<size_t> & removed) {
            RoundTripSide side;
            side.lift = lifted;
            side.removed = removed;
            side.lifted = lifted.support().size();
            side.deleted = removed.size();
            vector<size_t> above(base.size(), 0);
            for (auto element : removed)
                ++above[element / fibre];
            side.rounded = d;
            double l1 = 0;
            for (size_t x = 0; x < base.size(); ++x)
                if (static_cast<double>(above[x]) >= d.values[x] * static_cast<double>(fibre) / 4.0) {
                    l1 += d.values[x];
                    side.rounded.values[x] = 0.0;
                }
            side.l1 = l1 / static_cast<double>(base.size());
            side.l1_bound = 4.0 * static_cast<double>(side.deleted) / total;
            return side;
        };
        result.f = round(f, lx, removal.removed_x);
        result.g = round(g, ly, removal.removed_y);
        result.h = round(h, lz, removal.removed_z);

        result.lambda_before = lambda(f, g, h);
        result.lambda_after = lambda(result.f.rounded, result.g.rounded, result.h.rounded);
        result.success = result.lambda_after == 0.0;
        double budget = eps * total / 4.0;
        result.within_budget = true;
        result.accounting_holds = true;
        for (auto * side : { &result.f, &result.g, &result.h }) {
            result.within_budget = result.within_budget && static_cast<double>(side->deleted) <= budget;
            result.accounting_holds = result.accounting_holds && side->l1 <= side->l1_bound + 1e-12;
        }
        return result;
    }
}
