#include <trifree/arith_constructions.hh>
#include <trifree/error.hh>
#include <trifree/fourier.hh>

#include <algorithm>
#include <cmath>
#include <functional>

using std::size_t;
using std::to_string;
using std::uint64_t;
using std::vector;

namespace trifree
{
    namespace
    {
        struct Triple
        {
            size_t x, y, z;
        };

        // Appending c keeps the iff: every index triple that uses c at least once,
        // other than (c, c, c), must not sum to zero.
        auto extends_tricolor(const FpnSpace & s, const vector<Triple> & current, const Triple & c) -> bool
        {
            auto zero_sum = [&] (size_t a, size_t b, size_t d) { return s.add(s.add(a, b), d) == 0; };
            for (auto & j : current) {
                if (zero_sum(c.x, j.y, j.z) || zero_sum(j.x, c.y, j.z) || zero_sum(j.x, j.y, c.z))
                    return false;
                if (zero_sum(c.x, c.y, j.z) || zero_sum(c.x, j.y, c.z) || zero_sum(j.x, c.y, c.z))
                    return false;
                for (auto & k : current)
                    if (zero_sum(c.x, j.y, k.z) || zero_sum(j.x, c.y, k.z) || zero_sum(j.x, k.y, c.z))
                        return false;
            }
            return true;
        }

        auto to_triple(const FpnSpace & s, const vector<Triple> & list) -> TricolorTriple
        {
            TricolorTriple t{ s, {}, {}, {} };
            for (auto & e : list) {
                t.x.push_back(e.x);
                t.y.push_back(e.y);
                t.z.push_back(e.z);
            }
            return t;
        }

        auto candidates(const FpnSpace & s) -> vector<Triple>
        {
            vector<Triple> result;
            for (size_t x = 0; x < s.size(); ++x)
                for (size_t y = 0; y < s.size(); ++y)
                    result.push_back({ x, y, s.negate(s.add(x, y)) });
            return result;
        }

        auto power(size_t base, size_t exponent) -> size_t
        {
            size_t r = 1;
            while (exponent--)
                r *= base;
            return r;
        }

        auto golden_section(const std::function<double(double)> & f, double a, double b, double tol) -> double
        {
            const double inv_phi = (std::sqrt(5.0) - 1) / 2;
            double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
            double fc = f(c), fd = f(d);
            while (b - a > tol) {
                if (fc < fd) {
                    b = d;
                    d = c;
                    fd = fc;
                    c = b - inv_phi * (b - a);
                    fc = f(c);
                }
                else {
                    a = c;
                    c = d;
                    fc = fd;
                    d = a + inv_phi * (b - a);
                    fd = f(d);
                }
            }
            return (a + b) / 2;
        }

        auto target_index(const ExpandedSets & es, const LinearMap & phi, const FpnSpace & target, size_t element) -> size_t
        {
            return target.index(phi.apply(es.lifted.digits(element)));
        }

        auto blocks_to_set(const FpnSpace & lifted, const vector<vector<size_t>> & blocks) -> DensityFunction
        {
            DensityFunction f{ lifted, vector<double>(lifted.size(), 0.0) };
            for (auto & block : blocks)
                for (auto e : block)
                    f.values[e] = 1.0;
            return f;
        }
    }

    auto verify_tricolor(const TricolorTriple & t) -> bool
    {
        size_t l = t.x.size();
        if (t.y.size() != l || t.z.size() != l)
            throw Error(ErrorKind::size_mismatch, "x, y, z have different lengths");
        if (l > 0 && l * l * l > max_tricolor_checks)
            throw Error(ErrorKind::instance_too_large, "l^3 = " + to_string(l * l * l) + " exceeds the check limit");
        auto & s = t.space;
        for (auto * seq : { &t.x, &t.y, &t.z })
            for (auto e : *seq)
                if (e >= s.size())
                    throw Error(ErrorKind::invalid_argument, "point " + to_string(e) + " outside the space");
        for (size_t i = 0; i < l; ++i)
            for (size_t j = 0; j < l; ++j) {
                size_t need = s.negate(s.add(t.x[i], t.y[j]));
                for (size_t k = 0; k < l; ++k) {
                    bool diagonal = i == j && j == k;
                    if ((t.z[k] == need) != diagonal)
                        return false;
                }
            }
        return true;
    }

    auto tricolor_search(const FpnSpace & space, TricolorMode mode, uint64_t budget) -> TricolorSearchResult
    {
        TricolorSearchResult result;
        uint64_t work = 0;
        if (mode == TricolorMode::greedy) {
            vector<Triple> chosen;
            for (auto & c : candidates(space)) {
                if (++work > budget) {
                    result.budget_exhausted = true;
                    break;
                }
                if (extends_tricolor(space, chosen, c))
                    chosen.push_back(c);
            }
            result.triple = to_triple(space, chosen);
            return result;
        }

        if (space.size() > max_exhaustive_tricolor_size)
            throw Error(ErrorKind::instance_too_large, "exhaustive tricolor search needs p^n <= "
                    + to_string(max_exhaustive_tricolor_size));
        // translate so that the first triple is (0, 0, 0)
        auto pool = candidates(space);
        pool.erase(pool.begin());
        vector<Triple> current{ { 0, 0, 0 } }, best = current;
        size_t cap = space.size();
        std::function<void(size_t)> extend = [&] (size_t from) {
            if (result.budget_exhausted || best.size() == cap)
                return;
            for (size_t i = from; i < pool.size(); ++i) {
                if (current.size() + (pool.size() - i) <= best.size())
                    return;
                if (++work > budget) {
                    result.budget_exhausted = true;
                    return;
                }
                if (! extends_tricolor(space, current, pool[i]))
                    continue;
                current.push_back(pool[i]);
                if (current.size() > best.size())
                    best = current;
                extend(i + 1);
                current.pop_back();
            }
        };
        extend(0);
        result.triple = to_triple(space, best);
        result.optimal = ! result.budget_exhausted;
        return result;
    }

    auto ExpandedSets::x_set() const -> DensityFunction { return blocks_to_set(lifted, x_blocks); }
    auto ExpandedSets::y_set() const -> DensityFunction { return blocks_to_set(lifted, y_blocks); }
    auto ExpandedSets::z_set() const -> DensityFunction { return blocks_to_set(lifted, z_blocks); }

    auto expansion_top(unsigned p) -> unsigned
    {
        return p >= 2 ? (p - 2) / 3 : 0;
    }

    auto expansion_block_size(unsigned p, size_t l) -> size_t
    {
        return l == 0 ? 0 : (expansion_top(p) + 1) * power(p, l - 1);
    }

    auto expand_construction(const TricolorTriple & t) -> ExpandedSets
    {
        size_t l = t.length();
        if (t.y.size() != l || t.z.size() != l)
            throw Error(ErrorKind::size_mismatch, "x, y, z have different lengths");
        ExpandedSets es;
        es.base = t.space;
        es.l = l;
        unsigned p = t.space.p();
        try {
            es.lifted = FpnSpace(p, t.space.n() + l);
        }
        catch (const Error &) {
            throw Error(ErrorKind::instance_too_large, "p^(n+l) exceeds " + to_string(FpnSpace::max_size));
        }
        size_t tail = power(p, l);
        unsigned top = expansion_top(p);
        auto block = [&] (size_t point, size_t i, unsigned low, unsigned high) {
            vector<size_t> out;
            size_t stride = power(p, l - 1 - i);
            for (size_t r = 0; r < tail; ++r) {
                auto digit = static_cast<unsigned>((r / stride) % p);
                if (digit >= low && digit <= high)
                    out.push_back(point * tail + r);
            }
            return out;
        };
        for (size_t i = 0; i < l; ++i) {
            es.x_blocks.push_back(block(t.x[i], i, 0, top));
            es.y_blocks.push_back(block(t.y[i], i, 0, top));
            es.z_blocks.push_back(block(t.z[i], i, 1, top + 1));
        }
        return es;
    }

    auto expanded_is_triangle_free(const ExpandedSets & es) -> bool
    {
        auto z = es.z_set();
        auto & s = es.lifted;
        for (auto & xb : es.x_blocks)
            for (auto x : xb)
                for (auto & yb : es.y_blocks)
                    for (auto y : yb)
                        if (z.values[s.negate(s.add(x, y))] != 0)
                            return false;
        return true;
    }

    auto missed_mass_audit(const ExpandedSets & es, const LinearMap & phi, const DensityFunction & xpp,
            const DensityFunction & ypp, const DensityFunction & zpp) -> MissedMass
    {
        if (phi.p != es.lifted.p() || phi.cols != es.lifted.n() || phi.entries.size() != phi.rows * phi.cols)
            throw Error(ErrorKind::non_linear_map, "phi must be an m x " + to_string(es.lifted.n()) + " matrix over F_"
                    + to_string(es.lifted.p()));
        auto & target = xpp.space;
        if (! (ypp.space == target) || ! (zpp.space == target))
            throw Error(ErrorKind::space_mismatch, "targets live on different spaces");
        if (target.p() != phi.p || target.n() != phi.rows)
            throw Error(ErrorKind::non_linear_map, "phi does not map into the target space");
        for (auto * f : { &xpp, &ypp, &zpp })
            if (! f->is_indicator())
                throw Error(ErrorKind::precondition_violation, "targets must be sets");
        if (lambda(xpp, ypp, zpp) != 0.0)
            throw Error(ErrorKind::target_not_triangle_free, "X'' x Y'' x Z'' contains a triangle");

        MissedMass r;
        auto count = [&] (const vector<vector<size_t>> & blocks, const DensityFunction & set) {
            size_t missed = 0;
            for (auto & b : blocks)
                for (auto e : b)
                    missed += set.values[target_index(es, phi, target, e)] == 0;
            return missed;
        };
        r.missed_x = count(es.x_blocks, xpp);
        r.missed_y = count(es.y_blocks, ypp);
        r.missed_z = count(es.z_blocks, zpp);
        r.missed = r.missed_x + r.missed_y + r.missed_z;
        r.bound = (static_cast<double>(es.l) - static_cast<double>(phi.rows))
            * static_cast<double>(power(es.lifted.p(), es.l)) / 4.0;
        r.holds = static_cast<double>(r.missed) >= r.bound;
        return r;
    }

    auto optimal_targets(const ExpandedSets & es, const LinearMap & phi) -> OptimalTargets
    {
        if (phi.p != es.lifted.p() || phi.cols != es.lifted.n())
            throw Error(ErrorKind::non_linear_map, "phi must be an m x " + to_string(es.lifted.n()) + " matrix over F_"
                    + to_string(es.lifted.p()));
        FpnSpace target;
        try {
            target = FpnSpace(phi.p, phi.rows);
        }
        catch (const Error &) {
            throw Error(ErrorKind::instance_too_large, "target space too large");
        }
        size_t q = target.size();
        if (q > max_target_space)
            throw Error(ErrorKind::instance_too_large, "optimal targets need p^m <= " + to_string(max_target_space));

        auto counts = [&] (const vector<vector<size_t>> & blocks) {
            vector<size_t> c(q, 0);
            for (auto & b : blocks)
                for (auto e : b)
                    ++c[target_index(es, phi, target, e)];
            return c;
        };
        auto cx = counts(es.x_blocks), cy = counts(es.y_blocks), cz = counts(es.z_blocks);
        size_t masks = size_t{1} << q;
        auto outside = [&] (const vector<size_t> & c) {
            vector<size_t> sums(masks, 0);
            for (size_t mask = 0; mask < masks; ++mask)
                for (size_t a = 0; a < q; ++a)
                    if (! ((mask >> a) & 1))
                        sums[mask] += c[a];
            return sums;
        };
        auto missx = outside(cx), missy = outside(cy);

        size_t best = SIZE_MAX, best_x = 0, best_y = 0, best_z = 0;
        for (size_t mx = 0; mx < masks; ++mx)
            for (size_t my = 0; my < masks; ++my) {
                if (missx[mx] + missy[my] >= best)
                    continue;
                size_t forbidden = 0;
                for (size_t a = 0; a < q; ++a)
                    if ((mx >> a) & 1)
                        for (size_t b = 0; b < q; ++b)
                            if ((my >> b) & 1)
                                forbidden |= size_t{1} << target.negate(target.add(a, b));
                size_t cost = missx[mx] + missy[my];
                for (size_t c = 0; c < q; ++c)
                    if ((forbidden >> c) & 1)
                        cost += cz[c];
                if (cost < best) {
                    best = cost;
                    best_x = mx;
                    best_y = my;
                    best_z = (masks - 1) & ~forbidden;
                }
            }
        auto to_set = [&] (size_t mask) {
            DensityFunction f{ target, vector<double>(q, 0.0) };
            for (size_t a = 0; a < q; ++a)
                f.values[a] = (mask >> a) & 1 ? 1.0 : 0.0;
            return f;
        };
        OptimalTargets r{ to_set(best_x), to_set(best_y), to_set(best_z), {} };
        r.audit = missed_mass_audit(es, phi, r.x, r.y, r.z);
        return r;
    }

    auto is_prime(unsigned p) -> bool
    {
        if (p < 2)
            return false;
        for (unsigned d = 2; d * d <= p; ++d)
            if (p % d == 0)
                return false;
        return true;
    }

    auto cp_constant(unsigned p) -> CpValue
    {
        if (! is_prime(p) || p > 199)
            throw Error(ErrorKind::unsupported_prime, "c_p needs a prime p <= 199, got " + to_string(p));
        double exponent = (static_cast<double>(p) - 1) / 3;
        // log of t^(-(p-1)/3) (1 + ... + t^(p-1)), with the sum as (1 - t^p) / (1 - t)
        auto log_phi = [&] (double t) {
            return -exponent * std::log(t) + std::log1p(-std::pow(t, p)) - std::log1p(-t);
        };
        const double lo = 1e-9, hi = 1 - 1e-9;
        CpValue r;
        r.p = p;
        r.t_star = golden_section(log_phi, lo, hi, 1e-10);
        double log_p = std::log(static_cast<double>(p));
        r.min_value = std::exp(log_phi(r.t_star));
        r.c_p = 1 - log_phi(r.t_star) / log_p;

        const size_t points = 1'000'000;
        double best = INFINITY;
        for (size_t k = 0; k < points; ++k) {
            double t = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1);
            double v = log_phi(t);
            if (v < best) {
                best = v;
                r.grid_t = t;
            }
        }
        r.grid_min = std::exp(best);
        r.grid_c_p = 1 - best / log_p;
        return r;
    }

    auto cp_asymptote() -> CpAsymptote
    {
        auto log_f = [] (double x) { return x / 3 + std::log(-std::expm1(-x)) - std::log(x); };
        CpAsymptote r;
        r.x_star = golden_section(log_f, 1e-6, 50.0, 1e-10);
        r.infimum = std::exp(log_f(r.x_star));
        r.constant = -log_f(r.x_star);
        return r;
    }

    auto arith_good_holds(unsigned p) -> bool
    {
        return 4 * (expansion_top(p) + 1) >= p;
    }
}
