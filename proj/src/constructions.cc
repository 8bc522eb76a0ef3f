#include <trifree/constructions.hh>
#include <trifree/error.hh>
#include <trifree/text.hh>

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>

using std::size_t;
using std::string;
using std::to_string;
using std::uint32_t;
using std::vector;

namespace trifree
{
    namespace
    {
        // x may be added to `member` (a 1-based indicator over {1..bound}) without
        // creating a progression in any of the three positions.
        auto extends_ap_free(const vector<bool> & member, const vector<size_t> & elements, size_t x) -> bool
        {
            auto in = [&] (long long v) {
                return v >= 1 && static_cast<size_t>(v) < member.size() && member[static_cast<size_t>(v)];
            };
            for (auto y : elements) {
                auto xs = static_cast<long long>(x), ys = static_cast<long long>(y);
                if (in(2 * ys - xs) || in(2 * xs - ys))
                    return false;
                if ((xs + ys) % 2 == 0 && in((xs + ys) / 2))
                    return false;
            }
            return true;
        }

        void complete_greedily(size_t bound, vector<size_t> & elements)
        {
            vector<bool> member(bound + 1, false);
            for (auto e : elements)
                member[e] = true;
            for (size_t x = 1; x <= bound; ++x)
                if (! member[x] && extends_ap_free(member, elements, x)) {
                    member[x] = true;
                    elements.push_back(x);
                }
            std::sort(elements.begin(), elements.end());
        }

        auto largest_sphere_class(size_t bound) -> vector<size_t>
        {
            vector<size_t> best;
            for (size_t k = 1; 2 * k + 1 <= std::max<size_t>(bound, 3); ++k) {
                size_t base = 2 * k + 1;
                std::map<size_t, vector<size_t>> spheres;
                for (size_t value = 0; value < bound; ++value) {
                    size_t rest = value, norm = 0;
                    bool small_digits = true;
                    while (rest > 0 && small_digits) {
                        size_t digit = rest % base;
                        small_digits = digit <= k;
                        norm += digit * digit;
                        rest /= base;
                    }
                    if (small_digits)
                        spheres[norm].push_back(value + 1);
                }
                for (auto & [_, members] : spheres)
                    if (members.size() > best.size())
                        best = members;
            }
            return best;
        }
    }

    auto is_ap_free(const vector<size_t> & elements) -> bool
    {
        vector<size_t> sorted = elements;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            return false;
        for (size_t i = 0; i < sorted.size(); ++i)
            for (size_t j = i + 1; j < sorted.size(); ++j)
                if ((sorted[i] + sorted[j]) % 2 == 0
                        && std::binary_search(sorted.begin(), sorted.end(), (sorted[i] + sorted[j]) / 2))
                    return false;
        return true;
    }

    auto build_ap_free_set(size_t bound, ApFreeMethod method, bool complete) -> ApFreeSet
    {
        if (bound < 1)
            throw Error(ErrorKind::invalid_argument, "bound must be at least 1");
        ApFreeSet result{ bound, {} };
        switch (method) {
            case ApFreeMethod::greedy:
                complete_greedily(bound, result.elements);
                break;
            case ApFreeMethod::behrend_spheres:
                result.elements = largest_sphere_class(bound);
                if (complete)
                    complete_greedily(bound, result.elements);
                break;
        }
        return result;
    }

    auto rs_graph_unchecked(size_t n, const vector<size_t> & set) -> Graph
    {
        Graph g(6 * n);
        for (auto d : set)
            for (size_t a = 1; a <= n; ++a) {
                auto x = static_cast<Vertex>(a - 1);
                auto y = static_cast<Vertex>(n + a + d - 1);
                auto z = static_cast<Vertex>(3 * n + a + 2 * d - 1);
                g.add_edge(x, y);
                g.add_edge(y, z);
                g.add_edge(x, z);
            }
        return g;
    }

    auto rs_graph(size_t n, const ApFreeSet & set) -> Graph
    {
        for (auto d : set.elements)
            if (d < 1 || d > n)
                throw Error(ErrorKind::invalid_set, "element " + to_string(d) + " outside [1.." + to_string(n) + "]");
        if (! is_ap_free(set.elements))
            throw Error(ErrorKind::invalid_set, "set contains a 3-term progression");
        return rs_graph_unchecked(n, set.elements);
    }

    auto default_bipartition(const vector<HomCopy> & copies) -> EdgeBipartition
    {
        EdgeBipartition result;
        for (size_t i = 0; i < copies.size(); ++i) {
            auto edges = copies[i].edges;
            if (edges.size() < 2)
                throw Error(ErrorKind::copy_with_one_edge, "copy " + to_string(i) + " has "
                        + to_string(edges.size()) + " edges");
            std::sort(edges.begin(), edges.end());
            result.part1.push_back({ edges.front() });
            result.part0.emplace_back(edges.begin() + 1, edges.end());
        }
        return result;
    }

    void validate_bipartition(const vector<HomCopy> & copies, const EdgeBipartition & parts)
    {
        if (parts.part0.size() != copies.size() || parts.part1.size() != copies.size())
            throw Error(ErrorKind::precondition_violation, "bipartition does not match the number of copies");
        for (size_t i = 0; i < copies.size(); ++i) {
            if (parts.part0[i].empty() || parts.part1[i].empty())
                throw Error(ErrorKind::precondition_violation, "copy " + to_string(i) + " has an empty part");
            vector<Edge> joined = parts.part0[i];
            joined.insert(joined.end(), parts.part1[i].begin(), parts.part1[i].end());
            std::sort(joined.begin(), joined.end());
            if (std::adjacent_find(joined.begin(), joined.end()) != joined.end())
                throw Error(ErrorKind::precondition_violation, "copy " + to_string(i) + " parts overlap");
            if (joined != copies[i].edges)
                throw Error(ErrorKind::precondition_violation, "copy " + to_string(i) + " parts do not cover its edges");
        }
    }

    auto partial_binary_blowup(const Graph & g, const Pattern & h, const EdgeBipartition & parts) -> Blowup
    {
        if (! h.is_core())
            throw Error(ErrorKind::precondition_violation, "pattern must be its own core");
        if (! is_connected(h.core()) || h.core().edge_count() < 2)
            throw Error(ErrorKind::precondition_violation, "pattern must be connected with more than one edge");
        if (! unique_copy_property(g, h))
            throw Error(ErrorKind::precondition_violation, "some edge does not lie in exactly one copy of the pattern");

        Blowup result;
        result.base = g;
        result.copies = hom_copies(h.core(), g);
        result.m = result.copies.size();
        validate_bipartition(result.copies, parts);
        result.parts = parts;

        size_t n = g.size(), m = result.m;
        if (m >= 31 || (n << m) > max_blowup_vertices || (n << m) > Graph::max_vertices)
            throw Error(ErrorKind::size_guard, to_string(n) + " * 2^" + to_string(m) + " vertices exceeds the blow-up limit");

        size_t cells = size_t{1} << m;
        result.graph = Graph(n * cells);
        result.labels.resize(n * cells);
        for (size_t v = 0; v < n; ++v)
            for (size_t x = 0; x < cells; ++x)
                result.labels[v * cells + x] = { static_cast<Vertex>(v), static_cast<uint32_t>(x) };

        size_t half = cells / 2;
        auto with_bit = [] (size_t r, size_t i, size_t s) {
            return ((r >> i) << (i + 1)) | (s << i) | (r & ((size_t{1} << i) - 1));
        };
        for (size_t i = 0; i < m; ++i)
            for (size_t s = 0; s < 2; ++s)
                for (auto & e : (s == 0 ? parts.part0[i] : parts.part1[i]))
                    for (size_t rx = 0; rx < half; ++rx)
                        for (size_t ry = 0; ry < half; ++ry)
                            result.graph.add_edge(
                                    result.vertex(e.u, static_cast<uint32_t>(with_bit(rx, i, s))),
                                    result.vertex(e.v, static_cast<uint32_t>(with_bit(ry, i, s))));
        return result;
    }

    auto partial_binary_blowup(const Graph & g, const Pattern & h) -> Blowup
    {
        return partial_binary_blowup(g, h, default_bipartition(hom_copies(h.core(), g)));
    }

    auto verify_blowup_hom_free(const Graph & blowup, const Pattern & h) -> bool
    {
        return is_hom_free(h, blowup);
    }

    auto full_blowup(const Graph & g, size_t k) -> Graph
    {
        Graph result(g.size() * k);
        for (auto & e : g.edges())
            for (size_t a = 0; a < k; ++a)
                for (size_t b = 0; b < k; ++b)
                    result.add_edge(static_cast<Vertex>(static_cast<size_t>(e.u) * k + a),
                            static_cast<Vertex>(static_cast<size_t>(e.v) * k + b));
        return result;
    }

    auto blowup_projection(const Blowup & b) -> vector<Vertex>
    {
        vector<Vertex> result(b.labels.size());
        for (size_t v = 0; v < b.labels.size(); ++v)
            result[v] = b.labels[v].base;
        return result;
    }

    auto format_label(const BlowupVertex & label, size_t m) -> string
    {
        string result = to_string(label.base) + ":";
        for (size_t i = 0; i < m; ++i)
            result += label.bit(i) ? '1' : '0';
        return result;
    }

    void write_labels(std::ostream & out, const Blowup & b)
    {
        for (auto & label : b.labels)
            out << format_label(label, b.m) << '\n';
    }

    auto read_labels(std::istream & in, size_t m) -> vector<BlowupVertex>
    {
        LineReader reader(in);
        vector<BlowupVertex> result;
        while (auto tokens = reader.next_tokens()) {
            if (tokens->size() != 1)
                throw ParseError(reader.line(), "expected a single 'base:bits' label");
            auto & token = tokens->front();
            auto colon = token.find(':');
            if (colon == string::npos)
                throw ParseError(reader.line(), "label missing ':'");
            BlowupVertex label;
            label.base = static_cast<Vertex>(parse_unsigned(token.substr(0, colon), reader.line()));
            auto bits = token.substr(colon + 1);
            if (bits.size() != m)
                throw ParseError(reader.line(), "expected " + to_string(m) + " bits");
            for (size_t i = 0; i < m; ++i) {
                if (bits[i] != '0' && bits[i] != '1')
                    throw ParseError(reader.line(), "bits must be 0 or 1");
                if (bits[i] == '1')
                    label.bits |= uint32_t{1} << i;
            }
            result.push_back(label);
        }
        return result;
    }
}
