#include <trifree/entropy.hh>
#include <trifree/error.hh>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

using std::size_t;
using std::span;
using std::to_string;
using std::uint64_t;
using std::vector;

namespace trifree
{
    namespace
    {
        auto xlogx(double x) -> double
        {
            return x > 0 ? x * std::log(x) : 0.0;
        }
    }

    auto make_distribution(vector<double> weights) -> FiniteDistribution
    {
        double total = 0;
        for (auto w : weights) {
            if (! (w >= 0))
                throw Error(ErrorKind::domain, "negative or NaN weight");
            total += w;
        }
        if (std::abs(total - 1.0) > 1e-12)
            throw Error(ErrorKind::domain, "weights sum to " + to_string(total));
        return { std::move(weights) };
    }

    auto make_joint(size_t rows, size_t cols, vector<double> p) -> JointDistribution
    {
        if (p.size() != rows * cols)
            throw Error(ErrorKind::size_mismatch, "joint table has the wrong number of entries");
        make_distribution(p);
        return { rows, cols, std::move(p) };
    }

    auto distribution_from_counts(span<const uint64_t> counts) -> FiniteDistribution
    {
        auto total = std::accumulate(counts.begin(), counts.end(), uint64_t{0});
        if (total == 0)
            throw Error(ErrorKind::domain, "all counts are zero");
        FiniteDistribution d;
        for (auto c : counts)
            d.weights.push_back(static_cast<double>(c) / static_cast<double>(total));
        return d;
    }

    auto entropy(const FiniteDistribution & d) -> double
    {
        double h = 0;
        for (auto w : d.weights)
            h -= xlogx(w);
        return h;
    }

    auto entropy_from_counts(span<const uint64_t> counts) -> double
    {
        auto total = static_cast<double>(std::accumulate(counts.begin(), counts.end(), uint64_t{0}));
        if (total == 0)
            throw Error(ErrorKind::domain, "all counts are zero");
        double h = 0;
        for (auto c : counts)
            if (c > 0)
                h -= static_cast<double>(c) / total * std::log(static_cast<double>(c) / total);
        return h;
    }

    auto mutual_information(const JointDistribution & j) -> double
    {
        vector<double> px(j.rows, 0.0), py(j.cols, 0.0);
        for (size_t x = 0; x < j.rows; ++x)
            for (size_t y = 0; y < j.cols; ++y) {
                px[x] += j.at(x, y);
                py[y] += j.at(x, y);
            }
        double h_xy = 0;
        for (auto v : j.p)
            h_xy -= xlogx(v);
        return entropy({ px }) + entropy({ py }) - h_xy;
    }

    auto mutual_information_from_counts(size_t rows, size_t cols, span<const uint64_t> counts) -> double
    {
        if (counts.size() != rows * cols)
            throw Error(ErrorKind::size_mismatch, "count table has the wrong number of entries");
        vector<uint64_t> nx(rows, 0), ny(cols, 0);
        uint64_t total = 0;
        for (size_t x = 0; x < rows; ++x)
            for (size_t y = 0; y < cols; ++y) {
                nx[x] += counts[x * cols + y];
                ny[y] += counts[x * cols + y];
                total += counts[x * cols + y];
            }
        if (total == 0)
            throw Error(ErrorKind::domain, "all counts are zero");
        double info = 0, n = static_cast<double>(total);
        for (size_t x = 0; x < rows; ++x)
            for (size_t y = 0; y < cols; ++y)
                if (auto c = static_cast<double>(counts[x * cols + y]); c > 0)
                    info += c / n * std::log(c * n / (static_cast<double>(nx[x]) * static_cast<double>(ny[y])));
        return info;
    }

    auto binary_entropy(double q) -> double
    {
        return -xlogx(q) - xlogx(1.0 - q);
    }

    auto binary_entropy_gap(double q) -> double
    {
        if (q < 0 || q > 1)
            throw Error(ErrorKind::domain, "probability outside [0,1]");
        double d = q - 0.5;
        if (std::abs(d) > 0.25)
            return std::log(2.0) + xlogx(q) + xlogx(1.0 - q);
        // log 2 - H(1/2 + d) = sum_k (2d)^(2k) / (2k (2k - 1))
        double r = 4 * d * d, sum = 0;
        vector<double> terms;
        double power = r;
        for (int k = 1; k <= 60 && power > 0; ++k, power *= r)
            terms.push_back(power / (2.0 * k * (2.0 * k - 1.0)));
        for (auto t = terms.rbegin(); t != terms.rend(); ++t)
            sum += *t;
        return sum;
    }

    auto pinsker_gap(double q) -> PinskerGap
    {
        return { std::abs(q - 0.5), std::sqrt(binary_entropy_gap(q) / 2.0) };
    }

    auto nearly_bisected(size_t in_p0, size_t size, double eta) -> bool
    {
        if (size == 0)
            throw Error(ErrorKind::empty_subset, "Q is empty");
        if (in_p0 > size)
            throw Error(ErrorKind::invalid_argument, "intersection larger than Q");
        return binary_entropy_gap(static_cast<double>(in_p0) / static_cast<double>(size)) <= eta * eta;
    }

    auto nearly_bisected(span<const size_t> q, span<const size_t> p0, span<const size_t> p1, double eta) -> bool
    {
        if (q.empty())
            throw Error(ErrorKind::empty_subset, "Q is empty");
        std::set<size_t> zero(p0.begin(), p0.end()), one(p1.begin(), p1.end());
        size_t in_p0 = 0;
        for (auto u : q) {
            if (zero.count(u))
                ++in_p0;
            else if (! one.count(u))
                throw Error(ErrorKind::precondition_violation, "Q is not inside P0 and P1");
        }
        return nearly_bisected(in_p0, q.size(), eta);
    }

    auto bisection_audit(const BisectionInstance & instance) -> BisectionAudit
    {
        size_t n = instance.side.size();
        if (instance.part.size() != n)
            throw Error(ErrorKind::size_mismatch, "side and part tables differ in length");
        if (! (instance.eta > 0 && instance.eta < 0.2))
            throw Error(ErrorKind::precondition_violation, "eta must lie in (0, 1/5)");

        size_t k = instance.parts;
        vector<uint64_t> counts(2 * k, 0);
        for (size_t u = 0; u < n; ++u) {
            if (instance.part[u] >= k || instance.side[u] > 1)
                throw Error(ErrorKind::precondition_violation, "element " + to_string(u) + " has an invalid label");
            ++counts[instance.side[u] * k + instance.part[u]];
        }
        uint64_t p0 = 0, p1 = 0;
        for (size_t j = 0; j < k; ++j) {
            p0 += counts[j];
            p1 += counts[k + j];
        }
        if (p0 != p1 || p0 == 0)
            throw Error(ErrorKind::precondition_violation, "P0 and P1 must be non-empty and equal in size");

        BisectionAudit audit;
        audit.mutual_information = mutual_information_from_counts(2, k, counts);
        vector<bool> in_nb(k, false);
        uint64_t u_nb = 0;
        for (size_t j = 0; j < k; ++j) {
            uint64_t size = counts[j] + counts[k + j];
            if (size > 0 && nearly_bisected(counts[j], size, instance.eta)) {
                in_nb[j] = true;
                audit.nearly_bisected_parts.push_back(j);
                u_nb += size;
            }
        }
        if (audit.nearly_bisected_parts.empty())
            throw Error(ErrorKind::no_nearly_bisected_part, "no part is nearly bisected");
        audit.u_nb = u_nb;
        audit.u_nb_fraction = static_cast<double>(u_nb) / static_cast<double>(n);

        // mu(x) = |Q_j| / (|U_nb| |P0 ∩ Q_j|) for x in P0 ∩ Q_j with j nearly bisected
        for (size_t u = 0; u < n; ++u)
            if (instance.side[u] == 0) {
                auto j = instance.part[u];
                audit.mu.weights.push_back(in_nb[j]
                        ? static_cast<double>(counts[j] + counts[k + j]) / (static_cast<double>(u_nb) * static_cast<double>(counts[j]))
                        : 0.0);
            }

        // 2 |U_nb| |P0| tv = sum_j | |Q_j||P0| - |U_nb||P0 ∩ Q_j| | + (P0 outside U_nb) |U_nb|
        uint64_t numerator = 0, covered = 0;
        for (size_t j = 0; j < k; ++j)
            if (in_nb[j]) {
                uint64_t a = (counts[j] + counts[k + j]) * p0, b = u_nb * counts[j];
                numerator += a > b ? a - b : b - a;
                covered += counts[j];
            }
        numerator += (p0 - covered) * u_nb;
        audit.tv_numerator = numerator;
        audit.tv_denominator = 2 * u_nb * p0;
        audit.tv = static_cast<double>(numerator) / static_cast<double>(audit.tv_denominator);

        double eta = instance.eta;
        audit.hypothesis = audit.mutual_information <= eta * eta * eta;
        audit.size_conclusion = static_cast<double>(u_nb) >= (1 - eta) * static_cast<double>(n);
        audit.tv_conclusion = audit.tv <= 4 * eta;
        return audit;
    }

    auto random_bisection_instance(std::mt19937_64 & rng, size_t max_universe, double eta) -> BisectionInstance
    {
        if (max_universe < 4)
            throw Error(ErrorKind::invalid_argument, "universe bound must be at least 4");
        auto uniform = [&] (size_t lo, size_t hi) { return std::uniform_int_distribution<size_t>(lo, hi)(rng); };

        size_t k = uniform(1, 6);
        size_t base_hi = uniform(0, 1) ? 40 : 8;
        size_t noise_hi = uniform(0, 3);
        vector<size_t> base(k), c0(k), c1(k);
        for (auto & b : base)
            b = uniform(1, base_hi);
        for (size_t j = 0; j < k; ++j)
            c0[j] = c1[j] = base[j];
        // paired perturbations keep |P0| = |P1|
        for (size_t j = 0; j + 1 < k; j += 2) {
            size_t e = std::min({ uniform(0, noise_hi), base[j], base[j + 1] });
            c0[j] += e;
            c1[j] -= e;
            c0[j + 1] -= e;
            c1[j + 1] += e;
        }
        size_t one_sided = uniform(0, 3) == 0 ? uniform(1, 3) : 0;

        auto total = [&] {
            size_t t = 2 * one_sided;
            for (size_t j = 0; j < k; ++j)
                t += c0[j] + c1[j];
            return t;
        };
        while (total() > max_universe)
            for (size_t j = 0; j < k; ++j) {
                size_t shrink = std::min(c0[j], c1[j]) / 2;
                c0[j] -= shrink;
                c1[j] -= shrink;
            }

        BisectionInstance instance;
        instance.eta = eta;
        instance.parts = k + (one_sided > 0 ? 2 : 0);
        auto add = [&] (unsigned char side, size_t part, size_t count) {
            for (size_t c = 0; c < count; ++c) {
                instance.side.push_back(side);
                instance.part.push_back(part);
            }
        };
        for (size_t j = 0; j < k; ++j) {
            add(0, j, c0[j]);
            add(1, j, c1[j]);
        }
        if (one_sided > 0) {
            add(0, k, one_sided);
            add(1, k + 1, one_sided);
        }
        // shuffle element identities so mu is not laid out part by part
        vector<size_t> order(instance.side.size());
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        BisectionInstance shuffled = instance;
        for (size_t u = 0; u < order.size(); ++u) {
            shuffled.side[order[u]] = instance.side[u];
            shuffled.part[order[u]] = instance.part[u];
        }
        return shuffled;
    }

    namespace
    {
        void check_map(const Blowup & b, const VertexMap & phi)
        {
            if (phi.table.size() != b.graph.size())
                throw Error(ErrorKind::size_mismatch, "map does not cover the blow-up");
            for (auto t : phi.table)
                if (t < 0 || static_cast<size_t>(t) >= phi.target_size)
                    throw Error(ErrorKind::size_mismatch, "map image outside target");
        }

        auto fibre_info(const Blowup & b, const VertexMap & phi, Vertex v, size_t i) -> double
        {
            size_t f = phi.target_size;
            vector<uint64_t> counts(2 * f, 0);
            for (uint32_t x = 0; x < (uint32_t{1} << b.m); ++x)
                ++counts[((x >> i) & 1u) * f + static_cast<size_t>(phi.table[static_cast<size_t>(b.vertex(v, x))])];
            return mutual_information_from_counts(2, f, counts);
        }
    }

    auto blowup_mutual_info(const Blowup & b, const VertexMap & phi, Vertex v, size_t i) -> double
    {
        check_map(b, phi);
        if (v < 0 || static_cast<size_t>(v) >= b.base.size() || i >= b.m)
            throw Error(ErrorKind::size_mismatch, "vertex or copy index out of range");
        return fibre_info(b, phi, v, i);
    }

    auto chain_bound_audit(const Blowup & b, const VertexMap & phi, size_t f_size) -> vector<ChainRow>
    {
        check_map(b, phi);
        if (phi.target_size != f_size)
            throw Error(ErrorKind::size_mismatch, "map target size differs from F");
        vector<ChainRow> rows;
        for (size_t v = 0; v < b.base.size(); ++v) {
            ChainRow row;
            row.v = static_cast<Vertex>(v);
            for (size_t i = 0; i < b.m; ++i)
                row.sum_info += fibre_info(b, phi, row.v, i);
            vector<uint64_t> images(f_size, 0);
            for (uint32_t x = 0; x < (uint32_t{1} << b.m); ++x)
                ++images[static_cast<size_t>(phi.table[static_cast<size_t>(b.vertex(row.v, x))])];
            row.image_entropy = entropy_from_counts(images);
            row.log_target = std::log(static_cast<double>(f_size));
            row.holds = row.sum_info <= row.image_entropy + 1e-9 && row.image_entropy <= row.log_target + 1e-9;
            rows.push_back(row);
        }
        return rows;
    }

    auto claim_eta(const Pattern & h) -> double
    {
        return 1.0 / (16.0 * static_cast<double>(h.graph().edge_count()));
    }

    auto claim_dagger_audit(const Blowup & b, const Graph & f, size_t i, const VertexMap & phi, double eta) -> ClaimAudit
    {
        check_map(b, phi);
        if (phi.target_size != f.size())
            throw Error(ErrorKind::size_mismatch, "map target size differs from F");
        if (i >= b.m)
            throw Error(ErrorKind::size_mismatch, "copy index out of range");

        ClaimAudit audit;
        audit.hypothesis = true;
        for (auto v : b.copies[i].vertices)
            if (fibre_info(b, phi, v, i) > eta)
                audit.hypothesis = false;

        uint32_t cells = uint32_t{1} << b.m;
        for (auto & e : b.copies[i].edges)
            for (uint32_t x = 0; x < cells; ++x)
                for (uint32_t y = 0; y < cells; ++y) {
                    auto p = b.vertex(e.u, x), q = b.vertex(e.v, y);
                    if (! b.graph.adjacent(p, q))
                        continue;
                    auto a = phi.table[static_cast<size_t>(p)], c = phi.table[static_cast<size_t>(q)];
                    audit.violated += a == c || ! f.adjacent(a, c);
                }
        audit.threshold = std::ldexp(1.0, 2 * static_cast<int>(b.m) - 3);
        audit.conclusion = static_cast<double>(audit.violated) >= audit.threshold;
        return audit;
    }

    void for_each_claim_map(const Blowup & b, size_t i, size_t f_size, ClaimMapScope scope,
            const std::function<bool (const VertexMap &)> & callback)
    {
        if (i >= b.m)
            throw Error(ErrorKind::size_mismatch, "copy index out of range");
        if (f_size == 0)
            throw Error(ErrorKind::size_mismatch, "target has no vertices");
        auto & vertices = b.copies[i].vertices;
        uint32_t cells = uint32_t{1} << b.m;
        size_t slots = vertices.size() * (scope == ClaimMapScope::fibres ? cells : 2);
        double total = std::pow(static_cast<double>(f_size), static_cast<double>(slots));
        if (total > 1e9)
            throw Error(ErrorKind::size_guard, "too many maps to enumerate");

        VertexMap phi{ f_size, vector<Vertex>(b.graph.size(), 0) };
        vector<size_t> digits(slots, 0);
        while (true) {
            for (size_t a = 0; a < vertices.size(); ++a)
                for (uint32_t x = 0; x < cells; ++x) {
                    size_t slot = scope == ClaimMapScope::fibres ? a * cells + x : a * 2 + ((x >> i) & 1u);
                    phi.table[static_cast<size_t>(b.vertex(vertices[a], x))] = static_cast<Vertex>(digits[slot]);
                }
            if (! callback(phi))
                return;
            size_t s = 0;
            while (s < slots && ++digits[s] == f_size)
                digits[s++] = 0;
            if (s == slots)
                return;
        }
    }
}
