#ifndef PGAUSS_GAUSSIANS_HPP
#define PGAUSS_GAUSSIANS_HPP

#include "pgauss/core.hpp"

#include <cstdint>

namespace pgauss
{

// Continuous Gaussians (non-normalized).

/// exp(-kappa q^2 / 2)
double continuousGaussian1D(Kappa kappa, double q);

/// exp(-(a q1^2 + 2 b q1 q2 + c q2^2) / 2)
double continuousGaussian2D(const SigmaMatrix& sigma, double q1, double q2);

// Periodic Gaussians of discrete variables, evaluated as lattice sums at the
// grid scale sqrt(2 pi / d). None of them is normalized.

/// sum_alpha exp(-kappa pi (n + alpha d)^2 / d)
double discreteGaussian1D(Kappa kappa, const Dimension& dim, std::int64_t n, const TruncationPolicy& policy = {});

/// Half-period translate: sum_alpha exp(-nu pi (n + (alpha + 1/2) d)^2 / d)
double discreteGaussianShifted1D(Kappa nu, const Dimension& dim, std::int64_t n, const TruncationPolicy& policy = {});

/// The four two-variable families selected by `shift`: g, g+0, g0+ and g++.
double discreteGaussian2D(const SigmaMatrix& sigma, const Dimension& dim, HalfShift shift, std::int64_t n1,
                          std::int64_t n2, const TruncationPolicy& policy = {});

/// Arguments of theta_3(z, tau) restricted to real z and tau = i t, t > 0.
class Theta3Args
{
public:
    Theta3Args(double z, double t);

    double z() const noexcept { return z_; }
    double t() const noexcept { return t_; }

private:
    double z_;
    double t_;
};

/// theta_3(z, i t) = 1 + 2 sum_{alpha >= 1} exp(-pi t alpha^2) cos(2 pi alpha z).
/// Truncation is relative to the alpha = 0 term since the cosines alternate.
double theta3(Theta3Args args, const TruncationPolicy& policy = {});

/// The theta-function route to discreteGaussian1D:
/// theta_3(n / d, i / (kappa d)) / sqrt(kappa d).
double discreteGaussianViaTheta(Kappa kappa, const Dimension& dim, std::int64_t n,
                                const TruncationPolicy& policy = {});

// Tabulation on the centered grid.

GridFunction tabulateDiscreteGaussian1D(Kappa kappa, const Dimension& dim, bool halfShift = false,
                                        const TruncationPolicy& policy = {});

GridFunction tabulateDiscreteGaussian2D(const SigmaMatrix& sigma, const Dimension& dim, HalfShift shift = {},
                                        const TruncationPolicy& policy = {});

/// Copy scaled to unit l2 norm. Plotting aid only; identities use raw values.
GridFunction l2Normalized(const GridFunction& f);

} // namespace pgauss

#endif
