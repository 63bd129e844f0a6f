#include "pgauss/lattice_sum.hpp"

#include <cmath>
#include <limits>

namespace pgauss
{

namespace
{

double shellCount(int rank, int r)
{
    return rank == 1 ? 2.0 : 8.0 * r;
}

// Nearest lattice index to the peak of exp(-form(x + (alpha + s) * period)).
std::int64_t peakIndex(double x, double shift, double period)
{
    return std::llround(-x / period - shift);
}

void requirePositive(double value, const char* what)
{
    if (!(value > 0.0) || !std::isfinite(value))
        throw ValidationError(std::string(what) + " must be positive and finite");
}

} // namespace

double shellTailMajorant(int rank, int lastShell, double decay)
{
    // Successive majorant terms have ratio count(r+1)/count(r) * exp(-2 decay r),
    // which decreases in r, so once it drops below 1/2 the remainder is
    // bounded by a geometric series.
    constexpr int kMaxSteps = 1'000'000;
    double tail = 0.0;
    for (int r = lastShell + 1; r < lastShell + 1 + kMaxSteps; ++r) {
        const double half = r - 0.5;
        const double term = shellCount(rank, r) * std::exp(-decay * half * half);
        tail += term;
        if (term == 0.0)
            return tail;
        const double ratio = shellCount(rank, r + 1) / shellCount(rank, r) * std::exp(-2.0 * decay * r);
        if (ratio < 0.5) {
            const double remainder = term * ratio / (1.0 - ratio);
            if (remainder <= 1e-3 * tail)
                return tail + remainder;
        }
    }
    return std::numeric_limits<double>::infinity();
}

LatticeSumResult latticeSum1D(double prefactor, Kappa kappa, bool halfShift, double x, double period,
                              const TruncationPolicy& policy)
{
    requirePositive(prefactor, "prefactor");
    requirePositive(period, "period");
    const double s = halfShift ? 0.5 : 0.0;
    const double rate = prefactor * kappa.value();
    ShellPlan plan;
    plan.rank = 1;
    plan.center = {peakIndex(x, s, period), 0};
    plan.decay = rate * period * period;
    return sumShells(plan, policy, [&](std::int64_t alpha, std::int64_t) {
        const double u = x + (static_cast<double>(alpha) + s) * period;
        return std::exp(-rate * u * u);
    });
}

LatticeSumResult latticeSum2D(double prefactor, const SigmaMatrix& sigma, HalfShift shift, double x1, double x2,
                              double period, const TruncationPolicy& policy)
{
    requirePositive(prefactor, "prefactor");
    requirePositive(period, "period");
    const double s1 = shift.offset1();
    const double s2 = shift.offset2();
    ShellPlan plan;
    plan.rank = 2;
    plan.center = {peakIndex(x1, s1, period), peakIndex(x2, s2, period)};
    plan.decay = prefactor * sigma.minEigenvalue() * period * period;
    return sumShells(plan, policy, [&](std::int64_t a1, std::int64_t a2) {
        const double u1 = x1 + (static_cast<double>(a1) + s1) * period;
        const double u2 = x2 + (static_cast<double>(a2) + s2) * period;
        return std::exp(-prefactor * sigma.quadraticForm(u1, u2));
    });
}

LatticeSumResult alternatingLatticeSum1D(double prefactor, Kappa kappa, bool alternate, double x, double period,
                                         const TruncationPolicy& policy)
{
    requirePositive(prefactor, "prefactor");
    requirePositive(period, "period");
    const double rate = prefactor * kappa.value();
    ShellPlan plan;
    plan.rank = 1;
    plan.center = {peakIndex(x, 0.0, period), 0};
    plan.decay = rate * period * period;
    plan.reference = TailReference::MaxTerm;
    return sumShells(plan, policy, [&](std::int64_t alpha, std::int64_t) {
        const double u = x + static_cast<double>(alpha) * period;
        const double term = std::exp(-rate * u * u);
        return alternate && (alpha & 1) ? -term : term;
    });
}

LatticeSumResult alternatingLatticeSum2D(double prefactor, const SigmaMatrix& sigma, Alternation alternation,
                                         double x1, double x2, double period, const TruncationPolicy& policy)
{
    requirePositive(prefactor, "prefactor");
    requirePositive(period, "period");
    ShellPlan plan;
    plan.rank = 2;
    plan.center = {peakIndex(x1, 0.0, period), peakIndex(x2, 0.0, period)};
    plan.decay = prefactor * sigma.minEigenvalue() * period * period;
    plan.reference = TailReference::MaxTerm;
    return sumShells(plan, policy, [&](std::int64_t a1, std::int64_t a2) {
        const double u1 = x1 + static_cast<double>(a1) * period;
        const double u2 = x2 + static_cast<double>(a2) * period;
        const double term = std::exp(-prefactor * sigma.quadraticForm(u1, u2));
        const bool odd = ((alternation.first ? a1 : 0) + (alternation.second ? a2 : 0)) & 1;
        return odd ? -term : term;
    });
}

LatticeTerms collectLatticeTerms1D(double prefactor, Kappa kappa, double x, double period,
                                   const TruncationPolicy& policy)
{
    requirePositive(prefactor, "prefactor");
    requirePositive(period, "period");
    const double rate = prefactor * kappa.value();
    ShellPlan plan;
    plan.rank = 1;
    plan.center = {peakIndex(x, 0.0, period), 0};
    plan.decay = rate * period * period;
    LatticeTerms out;
    out.sum = sumShells(plan, policy, [&](std::int64_t alpha, std::int64_t) {
        const double u = x + static_cast<double>(alpha) * period;
        const double term = std::exp(-rate * u * u);
        out.terms.push_back({alpha, 0, term});
        return term;
    });
    return out;
}

LatticeTerms collectLatticeTerms2D(double prefactor, const SigmaMatrix& sigma, double x1, double x2, double period,
                                   const TruncationPolicy& policy)
{
    requirePositive(prefactor, "prefactor");
    requirePositive(period, "period");
    ShellPlan plan;
    plan.rank = 2;
    plan.center = {peakIndex(x1, 0.0, period), peakIndex(x2, 0.0, period)};
    plan.decay = prefactor * sigma.minEigenvalue() * period * period;
    LatticeTerms out;
    out.sum = sumShells(plan, policy, [&](std::int64_t a1, std::int64_t a2) {
        const double u1 = x1 + static_cast<double>(a1) * period;
        const double u2 = x2 + static_cast<double>(a2) * period;
        const double term = std::exp(-prefactor * sigma.quadraticForm(u1, u2));
        out.terms.push_back({a1, a2, term});
        return term;
    });
    return out;
}

} // namespace pgauss
