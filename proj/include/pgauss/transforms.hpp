#ifndef PGAUSS_TRANSFORMS_HPP
#define PGAUSS_TRANSFORMS_HPP

#include "pgauss/core.hpp"

namespace pgauss
{

// Centered unitary DFT. Forward kernel exp(-2 pi i k n / d), normalization
// 1/sqrt(d) per axis; input and output are both indexed -j..j. The inverse
// uses the conjugate kernel with the same normalization.

GridFunction dft1D(const GridFunction& f);
GridFunction idft1D(const GridFunction& f);

/// Applied axis by axis, so the overall factor is 1/d.
GridFunction dft2D(const GridFunction& f);
GridFunction idft2D(const GridFunction& f);

/// Continuous Fourier image of g_kappa: kappa^{-1/2} exp(-p^2 / (2 kappa)).
double continuousFourierGaussian1D(Kappa kappa, double p);

/// Continuous Fourier image of g_sigma: det(sigma)^{-1/2} g_{sigma^{-1}}(p).
double continuousFourierGaussian2D(const SigmaMatrix& sigma, double p1, double p2);

} // namespace pgauss

#endif
