#include "pgauss/wigner.hpp"

#include "pgauss/gaussians.hpp"
#include "pgauss/lattice_sum.hpp"

#include <cmath>
#include <sstream>

namespace pgauss
{

WignerGrid::WignerGrid(Dimension dim, int rank) : dim_(dim), rank_(rank)
{
    if (rank != 1 && rank != 2)
        throw ValidationError("Wigner grid rank must be 1 or 2");
    const auto d = static_cast<std::size_t>(dim.size());
    values_.assign(rank == 1 ? d * d : d * d * d * d, 0.0);
}

std::size_t WignerGrid::offset(std::initializer_list<std::int64_t> indices) const
{
    if (indices.size() != static_cast<std::size_t>(2 * rank_))
        throw ValidationError("Wigner grid lookup with the wrong number of indices");
    const auto d = static_cast<std::size_t>(dim_.size());
    std::size_t pos = 0;
    for (auto idx : indices)
        pos = pos * d + static_cast<std::size_t>(dim_.canonical(idx) + dim_.half());
    return pos;
}

double& WignerGrid::at(std::int64_t n, std::int64_t k) { return values_[offset({n, k})]; }
double WignerGrid::at(std::int64_t n, std::int64_t k) const { return values_[offset({n, k})]; }

double& WignerGrid::at(std::int64_t n1, std::int64_t n2, std::int64_t k1, std::int64_t k2)
{
    return values_[offset({n1, n2, k1, k2})];
}

double WignerGrid::at(std::int64_t n1, std::int64_t n2, std::int64_t k1, std::int64_t k2) const
{
    return values_[offset({n1, n2, k1, k2})];
}

void WignerGrid::noteImaginaryResidue(double residue)
{
    maxImaginaryResidue_ = std::max(maxImaginaryResidue_, residue);
}

namespace
{

double realPart(Complex w, WignerGrid* grid)
{
    const double residue = std::abs(w.imag());
    if (residue > kWignerImaginaryLimit) {
        std::ostringstream msg;
        msg << "discrete Wigner sum has imaginary part " << residue << " (limit " << kWignerImaginaryLimit << ")";
        throw NonNegligibleImaginaryPart(msg.str());
    }
    if (grid)
        grid->noteImaginaryResidue(residue);
    return w.real();
}

Complex wignerSum1DWith(const GridFunction& psi, const std::vector<Complex>& roots, std::int64_t n, std::int64_t k)
{
    const Dimension& dim = psi.dim();
    const int j = dim.half();
    Complex acc{};
    for (int m = -j; m <= j; ++m)
        acc += roots[rootIndex(2 * k * m, dim)] * std::conj(psi.at(n - m)) * psi.at(n + m);
    return acc / static_cast<double>(dim.size());
}

Complex wignerSum2DWith(const GridFunction& psi, const std::vector<Complex>& roots, std::int64_t n1,
                        std::int64_t n2, std::int64_t k1, std::int64_t k2)
{
    const Dimension& dim = psi.dim();
    const int j = dim.half();
    Complex acc{};
    for (int m1 = -j; m1 <= j; ++m1)
        for (int m2 = -j; m2 <= j; ++m2)
            acc += roots[rootIndex(2 * (k1 * m1 + k2 * m2), dim)] * std::conj(psi.at(n1 - m1, n2 - m2)) *
                   psi.at(n1 + m1, n2 + m2);
    const double d = dim.size();
    return acc / (d * d);
}

void requireRank(const GridFunction& psi, int rank)
{
    if (psi.rank() != rank)
        throw ValidationError("Wigner transform expects a rank-" + std::to_string(rank) + " grid");
}

} // namespace

Complex wignerSum1D(const GridFunction& psi, std::int64_t n, std::int64_t k)
{
    requireRank(psi, 1);
    return wignerSum1DWith(psi, unitRoots(psi.dim()), n, k);
}

Complex wignerSum2D(const GridFunction& psi, std::int64_t n1, std::int64_t n2, std::int64_t k1, std::int64_t k2)
{
    requireRank(psi, 2);
    return wignerSum2DWith(psi, unitRoots(psi.dim()), n1, n2, k1, k2);
}

WignerGrid wignerDiscrete1D(const GridFunction& psi)
{
    requireRank(psi, 1);
    const Dimension& dim = psi.dim();
    const int j = dim.half();
    const auto roots = unitRoots(dim);
    WignerGrid grid(dim, 1);
    for (int n = -j; n <= j; ++n)
        for (int k = -j; k <= j; ++k)
            grid.at(n, k) = realPart(wignerSum1DWith(psi, roots, n, k), &grid);
    return grid;
}

WignerGrid wignerDiscrete2D(const GridFunction& psi)
{
    requireRank(psi, 2);
    const Dimension& dim = psi.dim();
    const int j = dim.half();
    const auto roots = unitRoots(dim);
    WignerGrid grid(dim, 2);
    for (int n1 = -j; n1 <= j; ++n1)
        for (int n2 = -j; n2 <= j; ++n2)
            for (int k1 = -j; k1 <= j; ++k1)
                for (int k2 = -j; k2 <= j; ++k2)
                    grid.at(n1, n2, k1, k2) = realPart(wignerSum2DWith(psi, roots, n1, n2, k1, k2), &grid);
    return grid;
}

double wignerDiscrete2DAt(const GridFunction& psi, std::int64_t n1, std::int64_t n2, std::int64_t k1,
                          std::int64_t k2)
{
    return realPart(wignerSum2D(psi, n1, n2, k1, k2), nullptr);
}

double wignerContinuousGaussian1D(Kappa kappa, double q, double p)
{
    return continuousGaussian1D(kappa.scaled(2.0), q) * continuousGaussian1D(kappa.inverse().scaled(2.0), p) /
           std::sqrt(kappa.value() * kPi);
}

double wignerContinuousGaussian2D(const SigmaMatrix& sigma, double q1, double q2, double p1, double p2)
{
    return continuousGaussian2D(sigma.scaled(2.0), q1, q2) * continuousGaussian2D(sigma.inverse().scaled(2.0), p1, p2) /
           (kPi * std::sqrt(sigma.determinant()));
}

double wignerGaussianClosedForm1D(Kappa kappa, const Dimension& dim, std::int64_t n, std::int64_t k,
                                  const TruncationPolicy& policy)
{
    const Kappa position = kappa.scaled(2.0);
    const Kappa momentum = kappa.inverse().scaled(2.0);
    const double g = discreteGaussian1D(position, dim, n, policy);
    const double gPlus = discreteGaussianShifted1D(position, dim, n, policy);
    const double h = discreteGaussian1D(momentum, dim, k, policy);
    const double hPlus = discreteGaussianShifted1D(momentum, dim, k, policy);
    return (g * (h + hPlus) + gPlus * (h - hPlus)) / std::sqrt(2.0 * kappa.value() * dim.size());
}

double wignerGaussianClosedForm2D(const SigmaMatrix& sigma, const Dimension& dim, std::int64_t n1, std::int64_t n2,
                                  std::int64_t k1, std::int64_t k2, const TruncationPolicy& policy)
{
    const SigmaMatrix position = sigma.scaled(2.0);
    const SigmaMatrix momentum = sigma.inverse().scaled(2.0);
    std::array<double, 4> h{};
    for (std::size_t t = 0; t < 4; ++t)
        h[t] = discreteGaussian2D(momentum, dim, kAllShifts[t], k1, k2, policy);

    double total = 0.0;
    for (std::size_t s = 0; s < 4; ++s) {
        // Bracket sign of family t in row s is (-1)^(s . t) over the half-shift bits.
        double bracket = 0.0;
        for (std::size_t t = 0; t < 4; ++t) {
            const bool odd = ((kAllShifts[s].first && kAllShifts[t].first) + (kAllShifts[s].second && kAllShifts[t].second)) & 1;
            bracket += odd ? -h[t] : h[t];
        }
        total += discreteGaussian2D(position, dim, kAllShifts[s], n1, n2, policy) * bracket;
    }
    return total / (2.0 * dim.size() * std::sqrt(sigma.determinant()));
}

double correspondenceConstant1D(const Dimension& dim)
{
    return std::sqrt(kPi / (2.0 * dim.size()));
}

double correspondenceConstant2D(const Dimension& dim)
{
    return kPi / (2.0 * dim.size());
}

// The continuous Wigner function of a Gaussian factorizes into a position
// Gaussian and a momentum Gaussian, so each sample W_c(q_alpha, p_beta)
// is W_c(0, 0) * A(alpha) * B(beta). A and B are collected once per point
// and the signed double sum runs over every (alpha, beta) pair.

double correspondenceSum1D(Kappa kappa, const Dimension& dim, std::int64_t n, std::int64_t k,
                           const TruncationPolicy& policy, ParitySign sign)
{
    const double d = dim.size();
    const double prefactor = 2.0 * kPi / d;
    const double halfPeriod = 0.5 * d;
    const auto position = collectLatticeTerms1D(prefactor, kappa, static_cast<double>(n), halfPeriod, policy);
    const auto momentum = collectLatticeTerms1D(prefactor, kappa.inverse(), static_cast<double>(k), halfPeriod, policy);

    KahanSum sum;
    for (const auto& a : position.terms) {
        for (const auto& b : momentum.terms) {
            const bool negative = sign == ParitySign::Applied && ((a.a1 * b.a1) & 1);
            const double term = a.value * b.value;
            sum.add(negative ? -term : term);
        }
    }
    return correspondenceConstant1D(dim) * wignerContinuousGaussian1D(kappa, 0.0, 0.0) * sum.value();
}

double correspondenceSum2D(const SigmaMatrix& sigma, const Dimension& dim, std::int64_t n1, std::int64_t n2,
                           std::int64_t k1, std::int64_t k2, const TruncationPolicy& policy, ParitySign sign)
{
    const double d = dim.size();
    const double prefactor = 2.0 * kPi / d;
    const double halfPeriod = 0.5 * d;
    const auto position = collectLatticeTerms2D(prefactor, sigma, static_cast<double>(n1), static_cast<double>(n2),
                                                halfPeriod, policy);
    const auto momentum = collectLatticeTerms2D(prefactor, sigma.inverse(), static_cast<double>(k1),
                                                static_cast<double>(k2), halfPeriod, policy);

    KahanSum sum;
    for (const auto& a : position.terms) {
        for (const auto& b : momentum.terms) {
            const bool negative = sign == ParitySign::Applied && ((a.a1 * b.a1 + a.a2 * b.a2) & 1);
            const double term = a.value * b.value;
            sum.add(negative ? -term : term);
        }
    }
    return correspondenceConstant2D(dim) * wignerContinuousGaussian2D(sigma, 0.0, 0.0, 0.0, 0.0) * sum.value();
}

} // namespace pgauss
