#include "pgauss/core.hpp"

#include <cmath>
#include <sstream>

namespace pgauss
{

Dimension::Dimension(int d) : d_(d), j_((d - 1) / 2)
{
    if (d < 3)
        throw ValidationError("d must be an odd integer >= 3 (got " + std::to_string(d) + ")");
    if (d % 2 == 0)
        throw ValidationError("d must be odd (got " + std::to_string(d) + ")");
}

int Dimension::canonical(std::int64_t n) const noexcept
{
    std::int64_t m = n % d_;
    if (m > j_)
        m -= d_;
    else if (m < -j_)
        m += d_;
    return static_cast<int>(m);
}

int canonicalIndex(std::int64_t n, const Dimension& dim) noexcept
{
    return dim.canonical(n);
}

Kappa::Kappa(double value) : value_(value)
{
    if (!(value > 0.0) || !std::isfinite(value)) {
        std::ostringstream msg;
        msg << "kappa must be positive and finite (got " << value << ")";
        throw ValidationError(msg.str());
    }
}

SigmaMatrix::SigmaMatrix(double a, double b, double c) : a_(a), b_(b), c_(c)
{
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c))
        throw ValidationError("sigma entries must be finite");
    if (!(a > 0.0) || !(determinant() > 0.0)) {
        std::ostringstream msg;
        msg << "sigma = [[" << a << ", " << b << "], [" << b << ", " << c
            << "]] is not positive definite (need a > 0 and ac - b^2 > 0)";
        throw ValidationError(msg.str());
    }
}

double SigmaMatrix::determinant() const noexcept
{
    // fma recovers the rounding error of b*b, so det keeps full relative
    // accuracy even when ac and b^2 nearly cancel.
    const double bb = b_ * b_;
    const double bbError = std::fma(b_, b_, -bb);
    return std::fma(a_, c_, -bb) - bbError;
}

SigmaMatrix SigmaMatrix::inverse() const
{
    const double det = determinant();
    return SigmaMatrix(c_ / det, -b_ / det, a_ / det);
}

SigmaMatrix SigmaMatrix::scaled(double factor) const
{
    return SigmaMatrix(factor * a_, factor * b_, factor * c_);
}

double SigmaMatrix::minEigenvalue() const noexcept
{
    const double mean = 0.5 * (a_ + c_);
    const double radius = 0.5 * std::hypot(a_ - c_, 2.0 * b_);
    // Product form avoids cancellation when the matrix is nearly singular.
    return determinant() / (mean + radius);
}

double SigmaMatrix::maxEigenvalue() const noexcept
{
    return 0.5 * (a_ + c_) + 0.5 * std::hypot(a_ - c_, 2.0 * b_);
}

SigmaMatrix validateSigma(double a, double b, double c)
{
    return SigmaMatrix(a, b, c);
}

std::string HalfShift::label() const
{
    if (!first && !second)
        return "g";
    return std::string("g") + (first ? "+" : "0") + (second ? "+" : "0");
}

void TruncationPolicy::validate() const
{
    if (!(relativeTail > 0.0 && relativeTail < 1.0))
        throw ValidationError("relativeTail must lie in (0, 1)");
    if (minShell < 1 || maxShell < 1)
        throw ValidationError("shell counts must be positive");
    if (minShell > maxShell)
        throw ValidationError("minShell must not exceed maxShell");
}

void KahanSum::add(double x) noexcept
{
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
        compensation_ += (sum_ - t) + x;
    else
        compensation_ += (x - t) + sum_;
    sum_ = t;
}

GridFunction::GridFunction(Dimension dim, int rank) : dim_(dim), rank_(rank)
{
    if (rank != 1 && rank != 2)
        throw ValidationError("grid rank must be 1 or 2");
    const auto d = static_cast<std::size_t>(dim.size());
    values_.assign(rank == 1 ? d : d * d, Complex{});
}

std::size_t GridFunction::offset(std::int64_t n) const
{
    if (rank_ != 1)
        throw ValidationError("rank-1 lookup on a rank-2 grid");
    return static_cast<std::size_t>(dim_.canonical(n) + dim_.half());
}

std::size_t GridFunction::offset(std::int64_t n1, std::int64_t n2) const
{
    if (rank_ != 2)
        throw ValidationError("rank-2 lookup on a rank-1 grid");
    const auto d = static_cast<std::size_t>(dim_.size());
    const auto row = static_cast<std::size_t>(dim_.canonical(n1) + dim_.half());
    const auto col = static_cast<std::size_t>(dim_.canonical(n2) + dim_.half());
    return row * d + col;
}

Complex& GridFunction::at(std::int64_t n) { return values_[offset(n)]; }
const Complex& GridFunction::at(std::int64_t n) const { return values_[offset(n)]; }
Complex& GridFunction::at(std::int64_t n1, std::int64_t n2) { return values_[offset(n1, n2)]; }
const Complex& GridFunction::at(std::int64_t n1, std::int64_t n2) const { return values_[offset(n1, n2)]; }

double parseRealOrRatio(const std::string& text)
{
    auto fail = [&]() -> double { throw ValidationError("cannot parse '" + text + "' as a number or ratio p/q"); };
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(text, &used);
        } catch (const std::exception&) {
            return fail();
        }
        if (used != text.size() || !std::isfinite(value))
            return fail();
        return value;
    }
    // Integer numerator and denominator, divided once so "4/3" is the nearest double to 4/3.
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    long long p = 0;
    long long q = 0;
    std::size_t usedNum = 0;
    std::size_t usedDen = 0;
    try {
        p = std::stoll(num, &usedNum);
        q = std::stoll(den, &usedDen);
    } catch (const std::exception&) {
        return fail();
    }
    if (usedNum != num.size() || usedDen != den.size() || q == 0)
        return fail();
    return static_cast<double>(p) / static_cast<double>(q);
}

double maxAbsDifference(const GridFunction& lhs, const GridFunction& rhs)
{
    if (lhs.rank() != rhs.rank() || !(lhs.dim() == rhs.dim()))
        throw ValidationError("grid shapes differ");
    double worst = 0.0;
    const auto a = lhs.values();
    const auto b = rhs.values();
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

std::vector<Complex> unitRoots(const Dimension& dim)
{
    const int d = dim.size();
    std::vector<Complex> roots(static_cast<std::size_t>(d));
    for (int r = 0; r < d; ++r) {
        // Centered exponent keeps the angle within [-pi, pi].
        const double angle = -2.0 * kPi * dim.canonical(r) / d;
        roots[static_cast<std::size_t>(r)] = Complex(std::cos(angle), std::sin(angle));
    }
    return roots;
}

} // namespace pgauss
