#include <trifree/error.hh>
#include <trifree/fpn.hh>

#include <algorithm>

using std::size_t;
using std::to_string;
using std::vector;

namespace trifree
{
    auto is_supported_prime(unsigned p) -> bool
    {
        return p == 2 || p == 3 || p == 5 || p == 7;
    }

    auto inverse_mod(unsigned a, unsigned p) -> unsigned
    {
        if (a % p == 0)
            throw Error(ErrorKind::domain, "zero has no inverse");
        unsigned result = 1, base = a % p;
        for (unsigned e = p - 2; e > 0; e >>= 1) {
            if (e & 1)
                result = result * base % p;
            base = base * base % p;
        }
        return result;
    }

    FpnSpace::FpnSpace(unsigned p, size_t n) : _p(p), _n(n), _size(1)
    {
        if (! is_supported_prime(p))
            throw Error(ErrorKind::unsupported_prime, "p = " + to_string(p) + " is not one of 2, 3, 5, 7");
        for (size_t k = 0; k < n; ++k) {
            _size *= p;
            if (_size > max_size)
                throw Error(ErrorKind::size_guard, to_string(p) + "^" + to_string(n) + " exceeds 2^20");
        }
    }

    auto FpnSpace::digits(size_t index) const -> Digits
    {
        Digits d(_n);
        for (size_t k = _n; k-- > 0;) {
            d[k] = static_cast<unsigned>(index % _p);
            index /= _p;
        }
        return d;
    }

    auto FpnSpace::index(const Digits & digits) const -> size_t
    {
        if (digits.size() != _n)
            throw Error(ErrorKind::space_mismatch, "point has " + to_string(digits.size()) + " coordinates, space has " + to_string(_n));
        size_t index = 0;
        for (auto d : digits) {
            if (d >= _p)
                throw Error(ErrorKind::domain, "digit " + to_string(d) + " not below p");
            index = index * _p + d;
        }
        return index;
    }

    auto FpnSpace::add(size_t a, size_t b) const -> size_t
    {
        size_t result = 0, weight = 1;
        for (size_t k = 0; k < _n; ++k) {
            result += (a % _p + b % _p) % _p * weight;
            a /= _p;
            b /= _p;
            weight *= _p;
        }
        return result;
    }

    auto FpnSpace::negate(size_t a) const -> size_t
    {
        size_t result = 0, weight = 1;
        for (size_t k = 0; k < _n; ++k) {
            result += (_p - a % _p) % _p * weight;
            a /= _p;
            weight *= _p;
        }
        return result;
    }

    auto FpnSpace::dot(const Digits & a, const Digits & b) const -> unsigned
    {
        unsigned s = 0;
        for (size_t k = 0; k < _n; ++k)
            s = (s + a[k] * b[k]) % _p;
        return s;
    }

    auto DensityFunction::mean() const -> double
    {
        double total = 0;
        for (auto v : values)
            total += v;
        return values.empty() ? 0.0 : total / static_cast<double>(values.size());
    }

    auto DensityFunction::is_indicator() const -> bool
    {
        return std::all_of(values.begin(), values.end(), [] (double v) { return v == 0.0 || v == 1.0; });
    }

    auto DensityFunction::support() const -> vector<size_t>
    {
        vector<size_t> s;
        for (size_t x = 0; x < values.size(); ++x)
            if (values[x] > 0)
                s.push_back(x);
        return s;
    }

    auto make_density(FpnSpace space, vector<double> values) -> DensityFunction
    {
        if (values.size() != space.size())
            throw Error(ErrorKind::size_mismatch, "table has " + to_string(values.size()) + " entries, space has " + to_string(space.size()));
        for (auto v : values)
            if (! (v >= 0 && v <= 1))
                throw Error(ErrorKind::domain, "value outside [0,1]");
        return { space, std::move(values) };
    }

    auto indicator(FpnSpace space, const vector<size_t> & elements) -> DensityFunction
    {
        vector<double> values(space.size(), 0.0);
        for (auto e : elements) {
            if (e >= space.size())
                throw Error(ErrorKind::domain, "element " + to_string(e) + " outside the space");
            values[e] = 1.0;
        }
        return { space, std::move(values) };
    }

    auto constant_density(FpnSpace space, double value) -> DensityFunction
    {
        return make_density(space, vector<double>(space.size(), value));
    }

    auto row_reduce(vector<Digits> & rows, unsigned p) -> size_t
    {
        size_t rank = 0;
        size_t width = rows.empty() ? 0 : rows[0].size();
        for (size_t col = 0; col < width && rank < rows.size(); ++col) {
            size_t pivot = rank;
            while (pivot < rows.size() && rows[pivot][col] % p == 0)
                ++pivot;
            if (pivot == rows.size())
                continue;
            std::swap(rows[rank], rows[pivot]);
            unsigned scale = inverse_mod(rows[rank][col], p);
            for (auto & d : rows[rank])
                d = d * scale % p;
            for (size_t r = 0; r < rows.size(); ++r)
                if (r != rank && rows[r][col] % p != 0) {
                    unsigned factor = rows[r][col] % p;
                    for (size_t c = 0; c < width; ++c)
                        rows[r][c] = (rows[r][c] + (p - factor) * rows[rank][c]) % p;
                }
            ++rank;
        }
        rows.resize(rank);
        return rank;
    }

    auto Subspace::whole(const FpnSpace & space) -> Subspace
    {
        vector<Digits> basis;
        for (size_t k = 0; k < space.n(); ++k) {
            Digits e(space.n(), 0);
            e[k] = 1;
            basis.push_back(e);
        }
        return span(space, basis);
    }

    auto Subspace::zero(const FpnSpace & space) -> Subspace
    {
        return span(space, {});
    }

    auto Subspace::span(const FpnSpace & space, vector<Digits> vectors) -> Subspace
    {
        for (auto & v : vectors) {
            if (v.size() != space.n())
                throw Error(ErrorKind::space_mismatch, "vector length differs from the space dimension");
            for (auto & d : v)
                d %= space.p();
        }
        row_reduce(vectors, space.p());
        Subspace s;
        s._space = space;
        s._basis = std::move(vectors);
        return s;
    }

    auto Subspace::annihilator_of(const FpnSpace & space, const vector<Digits> & vectors) -> Subspace
    {
        auto rows = span(space, vectors)._basis;
        unsigned p = space.p();
        size_t n = space.n();
        // free columns of the echelon form give the null space basis
        vector<size_t> pivots;
        for (auto & r : rows)
            pivots.push_back(static_cast<size_t>(std::find_if(r.begin(), r.end(), [] (unsigned d) { return d != 0; }) - r.begin()));
        vector<Digits> kernel;
        for (size_t free = 0; free < n; ++free) {
            if (std::find(pivots.begin(), pivots.end(), free) != pivots.end())
                continue;
            Digits v(n, 0);
            v[free] = 1;
            for (size_t r = 0; r < rows.size(); ++r)
                v[pivots[r]] = (p - rows[r][free]) % p;
            kernel.push_back(v);
        }
        return span(space, kernel);
    }

    auto Subspace::contains(const Digits & x) const -> bool
    {
        auto rows = _basis;
        rows.push_back(x);
        return row_reduce(rows, _space.p()) == _basis.size();
    }

    auto Subspace::annihilator() const -> Subspace
    {
        return annihilator_of(_space, _basis);
    }

    auto Subspace::elements() const -> vector<size_t>
    {
        unsigned p = _space.p();
        size_t d = _basis.size();
        vector<size_t> result;
        Digits coefficients(d, 0);
        while (true) {
            Digits x(_space.n(), 0);
            for (size_t j = 0; j < d; ++j)
                for (size_t k = 0; k < x.size(); ++k)
                    x[k] = (x[k] + coefficients[j] * _basis[j][k]) % p;
            result.push_back(_space.index(x));
            size_t j = 0;
            while (j < d && ++coefficients[j] == p)
                coefficients[j++] = 0;
            if (j == d)
                break;
        }
        std::sort(result.begin(), result.end());
        return result;
    }

    auto LinearMap::apply(const Digits & x) const -> Digits
    {
        if (x.size() != cols)
            throw Error(ErrorKind::space_mismatch, "vector length differs from the map's domain");
        Digits y(rows, 0);
        for (size_t r = 0; r < rows; ++r)
            for (size_t c = 0; c < cols; ++c)
                y[r] = (y[r] + at(r, c) * x[c]) % p;
        return y;
    }

    auto LinearMap::rank() const -> size_t
    {
        vector<Digits> m(rows, Digits(cols));
        for (size_t r = 0; r < rows; ++r)
            for (size_t c = 0; c < cols; ++c)
                m[r][c] = at(r, c);
        return row_reduce(m, p);
    }

    auto make_linear_map(unsigned p, size_t rows, size_t cols, vector<unsigned> entries) -> LinearMap
    {
        if (! is_supported_prime(p))
            throw Error(ErrorKind::unsupported_prime, "p = " + to_string(p) + " is not supported");
        if (entries.size() != rows * cols)
            throw Error(ErrorKind::non_linear_map, "matrix has " + to_string(entries.size()) + " entries, expected "
                    + to_string(rows * cols));
        for (auto e : entries)
            if (e >= p)
                throw Error(ErrorKind::non_linear_map, "matrix entry " + to_string(e) + " is not reduced mod p");
        return { p, rows, cols, std::move(entries) };
    }
}
