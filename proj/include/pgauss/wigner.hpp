#ifndef PGAUSS_WIGNER_HPP
#define PGAUSS_WIGNER_HPP

#include "pgauss/core.hpp"

#include <cstdint>
#include <vector>

namespace pgauss
{

/// Imaginary residue above which a discrete Wigner sum is rejected.
inline constexpr double kWignerImaginaryLimit = 1e-10;

/// Real discrete Wigner function: d^2 values W(n, k) (rank 1) or d^4 values
/// W(n1, n2, k1, k2) (rank 2), indices centered and reduced modulo d.
class WignerGrid
{
public:
    WignerGrid(Dimension dim, int rank);

    const Dimension& dim() const noexcept { return dim_; }
    int rank() const noexcept { return rank_; }

    double& at(std::int64_t n, std::int64_t k);
    double at(std::int64_t n, std::int64_t k) const;
    double& at(std::int64_t n1, std::int64_t n2, std::int64_t k1, std::int64_t k2);
    double at(std::int64_t n1, std::int64_t n2, std::int64_t k1, std::int64_t k2) const;

    const std::vector<double>& values() const noexcept { return values_; }

    /// Largest |Im W| seen while building the grid (discarded afterwards).
    double maxImaginaryResidue() const noexcept { return maxImaginaryResidue_; }
    void noteImaginaryResidue(double residue);

private:
    std::size_t offset(std::initializer_list<std::int64_t> indices) const;

    Dimension dim_;
    int rank_;
    std::vector<double> values_;
    double maxImaginaryResidue_ = 0.0;
};

/// W(n, k) = (1/d) sum_m exp(-4 pi i k m / d) conj(psi(n - m)) psi(n + m), unreduced complex value.
Complex wignerSum1D(const GridFunction& psi, std::int64_t n, std::int64_t k);

/// Two-variable counterpart with prefactor 1/d^2, unreduced complex value.
Complex wignerSum2D(const GridFunction& psi, std::int64_t n1, std::int64_t n2, std::int64_t k1, std::int64_t k2);

/// Full d x d table. Throws NonNegligibleImaginaryPart if any |Im| exceeds kWignerImaginaryLimit.
WignerGrid wignerDiscrete1D(const GridFunction& psi);

/// Full d^4 table; see wignerDiscrete2DAt for single points.
WignerGrid wignerDiscrete2D(const GridFunction& psi);

double wignerDiscrete2DAt(const GridFunction& psi, std::int64_t n1, std::int64_t n2, std::int64_t k1,
                          std::int64_t k2);

/// (kappa pi)^{-1/2} g_{2 kappa}(q) g_{2 / kappa}(p)
double wignerContinuousGaussian1D(Kappa kappa, double q, double p);

/// (pi sqrt(det sigma))^{-1} g_{2 sigma}(q) g_{2 sigma^{-1}}(p)
double wignerContinuousGaussian2D(const SigmaMatrix& sigma, double q1, double q2, double p1, double p2);

/// Discrete Wigner function of g_kappa as four products of periodic Gaussians:
/// [g_{2k}(n) (g_{2/k}(k) + g+_{2/k}(k)) + g+_{2k}(n) (g_{2/k}(k) - g+_{2/k}(k))] / sqrt(2 kappa d).
double wignerGaussianClosedForm1D(Kappa kappa, const Dimension& dim, std::int64_t n, std::int64_t k,
                                  const TruncationPolicy& policy = {});

/// Discrete Wigner function of g_sigma as 16 products of the shifted families
/// of g_{2 sigma} (in n) and g_{2 sigma^{-1}} (in k), prefactor 1/(2 d sqrt(det sigma)).
double wignerGaussianClosedForm2D(const SigmaMatrix& sigma, const Dimension& dim, std::int64_t n1, std::int64_t n2,
                                  std::int64_t k1, std::int64_t k2, const TruncationPolicy& policy = {});

/// Sign (-1)^(alpha beta) in the correspondence sums. Omitted only for negative controls.
enum class ParitySign
{
    Applied,
    Omitted,
};

/// sqrt(pi / (2 d)); does not depend on kappa.
double correspondenceConstant1D(const Dimension& dim);

/// pi / (2 d); does not depend on sigma.
double correspondenceConstant2D(const Dimension& dim);

/// C sum_{alpha, beta} (-1)^{alpha beta} W_c((n + alpha d/2) s, (k + beta d/2) s), s = sqrt(2 pi / d),
/// where W_c is the continuous Wigner function of g_kappa.
double correspondenceSum1D(Kappa kappa, const Dimension& dim, std::int64_t n, std::int64_t k,
                           const TruncationPolicy& policy = {}, ParitySign sign = ParitySign::Applied);

/// Four-index counterpart with sign (-1)^(alpha1 beta1 + alpha2 beta2).
double correspondenceSum2D(const SigmaMatrix& sigma, const Dimension& dim, std::int64_t n1, std::int64_t n2,
                           std::int64_t k1, std::int64_t k2, const TruncationPolicy& policy = {},
                           ParitySign sign = ParitySign::Applied);

} // namespace pgauss

#endif
