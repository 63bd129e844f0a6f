#ifndef PGAUSS_LATTICE_SUM_HPP
#define PGAUSS_LATTICE_SUM_HPP

#include "pgauss/core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace pgauss
{

struct LatticeSumResult
{
    double value = 0.0;
    /// Upper bound on the absolute contribution of all omitted lattice points.
    double tailBound = 0.0;
    int shellsUsed = 0;
};

/// What the tail is compared against when deciding to stop.
enum class TailReference
{
    RunningSum, // all terms positive
    MaxTerm,    // signed terms: the running sum may pass near zero
};

/// Square-shell enumeration plan.
///
/// Shell 0 is the single point `center`; shell r >= 1 holds the points at
/// Chebyshev distance r from it (2 points in rank 1, 8r in rank 2). Every
/// term visited at shell r must satisfy |term| <= exp(-decay * (r - 1/2)^2);
/// the tail bound is the sum of that majorant over the unvisited shells.
struct ShellPlan
{
    int rank = 1;
    std::array<std::int64_t, 2> center{0, 0};
    double decay = 1.0;
    TailReference reference = TailReference::RunningSum;
};

/// Majorant of the terms lying beyond `lastShell`. Returns +inf when the
/// majorant does not settle (decay too small to bound in reasonable time).
double shellTailMajorant(int rank, int lastShell, double decay);

/// Sums term(a1, a2) over the integer lattice shell by shell. In rank 1 the
/// second coordinate is always 0. Stops after at least policy.minShell shells
/// once both the last shell and the remaining tail are below
/// policy.relativeTail times the reference; throws ConvergenceFailure if
/// policy.maxShell shells are not enough.
template <class Term>
LatticeSumResult sumShells(const ShellPlan& plan, const TruncationPolicy& policy, Term&& term)
{
    policy.validate();
    KahanSum sum;
    double maxAbs = 0.0;
    double shellAbs = 0.0;
    auto visit = [&](std::int64_t a1, std::int64_t a2) {
        const double t = term(a1, a2);
        sum.add(t);
        shellAbs += std::abs(t);
        maxAbs = std::max(maxAbs, std::abs(t));
    };

    const auto [c1, c2] = plan.center;
    for (int r = 0; r < policy.maxShell; ++r) {
        shellAbs = 0.0;
        if (r == 0) {
            visit(c1, c2);
        } else if (plan.rank == 1) {
            visit(c1 - r, 0);
            visit(c1 + r, 0);
        } else {
            for (std::int64_t a2 = c2 - r; a2 <= c2 + r; ++a2) {
                visit(c1 - r, a2);
                visit(c1 + r, a2);
            }
            for (std::int64_t a1 = c1 - r + 1; a1 <= c1 + r - 1; ++a1) {
                visit(a1, c2 - r);
                visit(a1, c2 + r);
            }
        }

        if (r + 1 < policy.minShell)
            continue;
        const double reference =
            plan.reference == TailReference::RunningSum ? std::abs(sum.value()) : maxAbs;
        const double budget = policy.relativeTail * reference;
        const double tail = shellTailMajorant(plan.rank, r, plan.decay);
        if (shellAbs <= budget && (tail <= budget || tail == 0.0))
            return {sum.value(), tail, r + 1};
    }
    throw ConvergenceFailure("lattice sum did not converge within " + std::to_string(policy.maxShell) +
                             " shells (decay rate " + std::to_string(plan.decay) + ")");
}

/// sum_alpha exp(-prefactor * kappa * (x + (alpha + s) * period)^2), s = 1/2 if halfShift.
LatticeSumResult latticeSum1D(double prefactor, Kappa kappa, bool halfShift, double x, double period,
                              const TruncationPolicy& policy = {});

/// sum_{alpha1, alpha2} exp(-prefactor * Q_sigma(x + (alpha + s) * period)).
LatticeSumResult latticeSum2D(double prefactor, const SigmaMatrix& sigma, HalfShift shift, double x1, double x2,
                              double period, const TruncationPolicy& policy = {});

/// Which lattice coordinates carry an alternating sign (-1)^alpha_i.
struct Alternation
{
    bool first = false;
    bool second = false;
};

/// sum_alpha (-1)^alpha exp(-prefactor * kappa * (x + alpha * period)^2) when
/// alternate is set, otherwise the plain unshifted sum. Truncation is relative
/// to the largest term.
LatticeSumResult alternatingLatticeSum1D(double prefactor, Kappa kappa, bool alternate, double x, double period,
                                         const TruncationPolicy& policy = {});

/// Two-variable counterpart with sign (-1)^(alpha1 [first] + alpha2 [second]).
LatticeSumResult alternatingLatticeSum2D(double prefactor, const SigmaMatrix& sigma, Alternation alternation,
                                         double x1, double x2, double period, const TruncationPolicy& policy = {});

struct LatticeTerm
{
    std::int64_t a1 = 0;
    std::int64_t a2 = 0;
    double value = 0.0;
};

/// Terms of a positive Gaussian lattice sum, kept individually so callers can
/// form signed double sums over two independent lattices.
struct LatticeTerms
{
    std::vector<LatticeTerm> terms;
    LatticeSumResult sum;
};

/// Terms exp(-prefactor * kappa * (x + alpha * period)^2) (rank 1, a2 == 0).
LatticeTerms collectLatticeTerms1D(double prefactor, Kappa kappa, double x, double period,
                                   const TruncationPolicy& policy = {});

/// Terms exp(-prefactor * Q_sigma(x + alpha * period)).
LatticeTerms collectLatticeTerms2D(double prefactor, const SigmaMatrix& sigma, double x1, double x2, double period,
                                   const TruncationPolicy& policy = {});

} // namespace pgauss

#endif
