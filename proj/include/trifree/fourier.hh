#pragma once

#include <trifree/fpn.hh>

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace trifree
{
    /// c[y] = E_x f(x) exp(-2 pi i x.y / p)
    struct Spectrum
    {
        FpnSpace space;
        std::vector<std::complex<double>> c;
    };

    auto dft(const DensityFunction & f) -> Spectrum;
    auto dft(const FpnSpace & space, std::span<const double> values) -> Spectrum;
    /// f(x) = sum_y c[y] exp(2 pi i x.y / p)
    auto inverse_dft(const Spectrum & s) -> std::vector<std::complex<double>>;

    /// f_H(x) = average of f over x + H.
    auto coset_average(const DensityFunction & f, const Subspace & h) -> DensityFunction;

    /// max_y |(f - f_H)^(y)| <= eps, up to 1e-12 rounding.
    auto is_weakly_regular(const DensityFunction & f, const Subspace & h, double eps) -> bool;
    auto regularity_defect(const DensityFunction & f, const Subspace & h) -> double;

    /// H orthogonal to every non-trivial y with |f^(y)| >= eps for some input f,
    /// taking at most eps^-2 characters per function. Verified before returning.
    auto weak_regularity_subspace(std::span<const DensityFunction> fs, double eps) -> Subspace;

    /// E over x + y + z = 0 of f(x) g(y) h(z), by direct summation.
    auto lambda(const DensityFunction & f, const DensityFunction & g, const DensityFunction & h) -> double;
    /// sum_y f^(y) g^(y) h^(y)
    auto lambda_spectral(const DensityFunction & f, const DensityFunction & g, const DensityFunction & h) -> double;

    /// |Lambda(f,g,h) - Lambda(f_H,g_H,h_H)|
    auto counting_lemma_gap(const DensityFunction & f, const DensityFunction & g, const DensityFunction & h,
            const Subspace & subspace) -> double;
}
