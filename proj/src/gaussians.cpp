#include "pgauss/gaussians.hpp"

#include "pgauss/lattice_sum.hpp"

#include <cmath>

namespace pgauss
{

double continuousGaussian1D(Kappa kappa, double q)
{
    return std::exp(-0.5 * kappa.value() * q * q);
}

double continuousGaussian2D(const SigmaMatrix& sigma, double q1, double q2)
{
    return std::exp(-0.5 * sigma.quadraticForm(q1, q2));
}

double discreteGaussian1D(Kappa kappa, const Dimension& dim, std::int64_t n, const TruncationPolicy& policy)
{
    const double d = dim.size();
    return latticeSum1D(kPi / d, kappa, false, static_cast<double>(n), d, policy).value;
}

double discreteGaussianShifted1D(Kappa nu, const Dimension& dim, std::int64_t n, const TruncationPolicy& policy)
{
    const double d = dim.size();
    return latticeSum1D(kPi / d, nu, true, static_cast<double>(n), d, policy).value;
}

double discreteGaussian2D(const SigmaMatrix& sigma, const Dimension& dim, HalfShift shift, std::int64_t n1,
                          std::int64_t n2, const TruncationPolicy& policy)
{
    const double d = dim.size();
    return latticeSum2D(kPi / d, sigma, shift, static_cast<double>(n1), static_cast<double>(n2), d, policy).value;
}

Theta3Args::Theta3Args(double z, double t) : z_(z), t_(t)
{
    if (!std::isfinite(z))
        throw ValidationError("theta3 argument z must be finite");
    if (!(t > 0.0) || !std::isfinite(t))
        throw ValidationError("theta3 requires Im tau = t > 0");
}

namespace
{

// Fractional part of alpha * z in [-1/2, 1/2], with the product rounding
// error recovered by fma so that cos(2 pi alpha z) stays accurate for large alpha.
double reducedPhase(std::int64_t alpha, double z)
{
    const double a = static_cast<double>(alpha);
    const double p = a * z;
    const double err = std::fma(a, z, -p);
    return (p - std::nearbyint(p)) + err;
}

} // namespace

double theta3(Theta3Args args, const TruncationPolicy& policy)
{
    const double t = args.t();
    const double z = args.z() - std::nearbyint(args.z());
    ShellPlan plan;
    plan.rank = 1;
    plan.center = {0, 0};
    plan.decay = kPi * t;
    plan.reference = TailReference::MaxTerm;
    return sumShells(plan, policy, [&](std::int64_t alpha, std::int64_t) {
        const double a = static_cast<double>(alpha);
        return std::exp(-kPi * t * a * a) * std::cos(2.0 * kPi * reducedPhase(alpha, z));
    }).value;
}

double discreteGaussianViaTheta(Kappa kappa, const Dimension& dim, std::int64_t n, const TruncationPolicy& policy)
{
    const double kd = kappa.value() * dim.size();
    const double z = static_cast<double>(n) / dim.size();
    return theta3(Theta3Args(z, 1.0 / kd), policy) / std::sqrt(kd);
}

GridFunction tabulateDiscreteGaussian1D(Kappa kappa, const Dimension& dim, bool halfShift,
                                        const TruncationPolicy& policy)
{
    GridFunction f(dim, 1);
    const int j = dim.half();
    for (int n = -j; n <= j; ++n)
        f.at(n) = halfShift ? discreteGaussianShifted1D(kappa, dim, n, policy)
                            : discreteGaussian1D(kappa, dim, n, policy);
    return f;
}

GridFunction tabulateDiscreteGaussian2D(const SigmaMatrix& sigma, const Dimension& dim, HalfShift shift,
                                        const TruncationPolicy& policy)
{
    GridFunction f(dim, 2);
    const int j = dim.half();
    for (int n1 = -j; n1 <= j; ++n1)
        for (int n2 = -j; n2 <= j; ++n2)
            f.at(n1, n2) = discreteGaussian2D(sigma, dim, shift, n1, n2, policy);
    return f;
}

GridFunction l2Normalized(const GridFunction& f)
{
    double norm2 = 0.0;
    for (const auto& v : f.values())
        norm2 += std::norm(v);
    if (!(norm2 > 0.0))
        throw ValidationError("cannot normalize the zero function");
    GridFunction out = f;
    const double scale = 1.0 / std::sqrt(norm2);
    for (auto& v : out.values())
        v *= scale;
    return out;
}

} // namespace pgauss
