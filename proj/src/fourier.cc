#include <trifree/error.hh>
#include <trifree/fourier.hh>

#include <algorithm>
#include <cmath>
#include <numbers>

using std::complex;
using std::size_t;
using std::vector;

namespace trifree
{
    namespace
    {
        // one radix-p pass per coordinate; sign -1 forward, +1 inverse
        void transform(const FpnSpace & space, vector<complex<double>> & data, int sign)
        {
            unsigned p = space.p();
            vector<complex<double>> roots(p);
            for (unsigned k = 0; k < p; ++k)
                roots[k] = std::polar(1.0, sign * 2.0 * std::numbers::pi * k / p);
            vector<complex<double>> in(p), out(p);
            size_t stride = 1;
            for (size_t axis = 0; axis < space.n(); ++axis, stride *= p) {
                size_t block = stride * p;
                for (size_t start = 0; start < data.size(); start += block)
                    for (size_t offset = 0; offset < stride; ++offset) {
                        for (unsigned x = 0; x < p; ++x)
                            in[x] = data[start + offset + x * stride];
                        for (unsigned y = 0; y < p; ++y) {
                            complex<double> s = 0;
                            for (unsigned x = 0; x < p; ++x)
                                s += in[x] * roots[(x * y) % p];
                            out[y] = s;
                        }
                        for (unsigned y = 0; y < p; ++y)
                            data[start + offset + y * stride] = out[y];
                    }
            }
        }

        void check_same(const FpnSpace & a, const FpnSpace & b)
        {
            if (! (a == b))
                throw Error(ErrorKind::space_mismatch, "functions live on different spaces");
        }

        // coset of x + H, identified by x . w for a basis w of the annihilator
        auto coset_keys(const FpnSpace & space, const Subspace & h) -> vector<size_t>
        {
            auto dual = h.annihilator().basis();
            vector<size_t> keys(space.size());
            for (size_t x = 0; x < space.size(); ++x) {
                auto d = space.digits(x);
                size_t key = 0;
                for (auto & w : dual)
                    key = key * space.p() + space.dot(d, w);
                keys[x] = key;
            }
            return keys;
        }
    }

    auto dft(const FpnSpace & space, std::span<const double> values) -> Spectrum
    {
        if (values.size() != space.size())
            throw Error(ErrorKind::size_mismatch, "table length differs from the space size");
        Spectrum s{ space, vector<complex<double>>(values.begin(), values.end()) };
        transform(space, s.c, -1);
        double scale = 1.0 / static_cast<double>(space.size());
        for (auto & v : s.c)
            v *= scale;
        return s;
    }

    auto dft(const DensityFunction & f) -> Spectrum
    {
        return dft(f.space, f.values);
    }

    auto inverse_dft(const Spectrum & s) -> vector<complex<double>>
    {
        auto data = s.c;
        transform(s.space, data, 1);
        return data;
    }

    auto coset_average(const DensityFunction & f, const Subspace & h) -> DensityFunction
    {
        if (! (f.space == h.space()))
            throw Error(ErrorKind::subspace_space_mismatch, "subspace lives in a different space");
        auto keys = coset_keys(f.space, h);
        size_t cosets = 1;
        for (size_t k = 0; k < h.codimension(); ++k)
            cosets *= f.space.p();
        vector<double> sums(cosets, 0.0);
        vector<size_t> sizes(cosets, 0);
        for (size_t x = 0; x < keys.size(); ++x) {
            sums[keys[x]] += f.values[x];
            ++sizes[keys[x]];
        }
        DensityFunction result{ f.space, vector<double>(f.values.size()) };
        for (size_t x = 0; x < keys.size(); ++x)
            result.values[x] = std::clamp(sums[keys[x]] / static_cast<double>(sizes[keys[x]]), 0.0, 1.0);
        return result;
    }

    auto regularity_defect(const DensityFunction & f, const Subspace & h) -> double
    {
        auto fh = coset_average(f, h);
        vector<double> difference(f.values.size());
        for (size_t x = 0; x < difference.size(); ++x)
            difference[x] = f.values[x] - fh.values[x];
        double worst = 0;
        for (auto & c : dft(f.space, difference).c)
            worst = std::max(worst, std::abs(c));
        return worst;
    }

    auto is_weakly_regular(const DensityFunction & f, const Subspace & h, double eps) -> bool
    {
        return regularity_defect(f, h) <= eps + 1e-12;
    }

    auto weak_regularity_subspace(std::span<const DensityFunction> fs, double eps) -> Subspace
    {
        if (fs.empty())
            throw Error(ErrorKind::invalid_argument, "need at least one function");
        if (! (eps > 0))
            throw Error(ErrorKind::invalid_argument, "eps must be positive");
        auto & space = fs.front().space;
        auto cap = static_cast<size_t>(std::floor(1.0 / (eps * eps)));
        vector<Digits> large;
        for (auto & f : fs) {
            check_same(space, f.space);
            auto s = dft(f);
            vector<std::pair<double, size_t>> found;
            for (size_t y = 1; y < s.c.size(); ++y)
                if (auto magnitude = std::abs(s.c[y]); magnitude >= eps)
                    found.emplace_back(magnitude, y);
            std::stable_sort(found.begin(), found.end(), [] (auto & a, auto & b) { return a.first > b.first; });
            if (found.size() > cap)
                found.resize(cap);
            for (auto & [magnitude, y] : found)
                large.push_back(space.digits(y));
        }
        auto h = Subspace::annihilator_of(space, large);
        for (auto & f : fs)
            if (! is_weakly_regular(f, h, eps))
                throw Error(ErrorKind::precondition_violation, "harvested subspace failed verification");
        return h;
    }

    auto lambda(const DensityFunction & f, const DensityFunction & g, const DensityFunction & h) -> double
    {
        check_same(f.space, g.space);
        check_same(f.space, h.space);
        auto & space = f.space;
        size_t size = space.size();
        vector<size_t> negated(size);
        for (size_t x = 0; x < size; ++x)
            negated[x] = space.negate(x);
        double total = 0;
        for (size_t x = 0; x < size; ++x) {
            if (f.values[x] == 0)
                continue;
            double row = 0;
            for (size_t y = 0; y < size; ++y)
                if (g.values[y] != 0)
                    row += g.values[y] * h.values[negated[space.add(x, y)]];
            total += f.values[x] * row;
        }
        return total / (static_cast<double>(size) * static_cast<double>(size));
    }

    auto lambda_spectral(const DensityFunction & f, const DensityFunction & g, const DensityFunction & h) -> double
    {
        check_same(f.space, g.space);
        check_same(f.space, h.space);
        auto a = dft(f), b = dft(g), c = dft(h);
        complex<double> total = 0;
        for (size_t y = 0; y < a.c.size(); ++y)
            total += a.c[y] * b.c[y] * c.c[y];
        return total.real();
    }

    auto counting_lemma_gap(const DensityFunction & f, const DensityFunction & g, const DensityFunction & h,
            const Subspace & subspace) -> double
    {
        return std::abs(lambda(f, g, h) - lambda(coset_average(f, subspace), coset_average(g, subspace),
                    coset_average(h, subspace)));
    }
}
