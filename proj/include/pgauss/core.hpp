#ifndef PGAUSS_CORE_HPP
#define PGAUSS_CORE_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pgauss
{

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// Error hierarchy. ValidationError covers every rejected parameter
// (even d, kappa <= 0, indefinite sigma, rank mismatch).
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class ValidationError : public Error
{
public:
    using Error::Error;
};

class ConvergenceFailure : public Error
{
public:
    using Error::Error;
};

class NonNegligibleImaginaryPart : public Error
{
public:
    using Error::Error;
};

/// Odd grid size d = 2j+1 (d >= 3). Indices live in the centered range -j..j.
class Dimension
{
public:
    explicit Dimension(int d);

    int size() const noexcept { return d_; }
    int half() const noexcept { return j_; }

    /// Representative of n modulo d in -j..j.
    int canonical(std::int64_t n) const noexcept;

    friend bool operator==(const Dimension&, const Dimension&) = default;

private:
    int d_;
    int j_;
};

int canonicalIndex(std::int64_t n, const Dimension& dim) noexcept;

/// Width parameter of the one-variable Gaussian, strictly positive.
class Kappa
{
public:
    explicit Kappa(double value);

    double value() const noexcept { return value_; }
    Kappa inverse() const { return Kappa(1.0 / value_); }
    Kappa scaled(double factor) const { return Kappa(factor * value_); }

private:
    double value_;
};

/// Symmetric positive definite matrix [[a, b], [b, c]].
class SigmaMatrix
{
public:
    SigmaMatrix(double a, double b, double c);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    double c() const noexcept { return c_; }

    double determinant() const noexcept;
    SigmaMatrix inverse() const;
    SigmaMatrix scaled(double factor) const;
    double minEigenvalue() const noexcept;
    double maxEigenvalue() const noexcept;

    // a x1^2 + 2 b x1 x2 + c x2^2
    double quadraticForm(double x1, double x2) const noexcept
    {
        return a_ * x1 * x1 + 2.0 * b_ * x1 * x2 + c_ * x2 * x2;
    }

    friend bool operator==(const SigmaMatrix&, const SigmaMatrix&) = default;

private:
    double a_;
    double b_;
    double c_;
};

SigmaMatrix validateSigma(double a, double b, double c);

/// Per-axis lattice offset in {0, 1/2}. In one-variable use only `first` matters.
struct HalfShift
{
    bool first = false;
    bool second = false;

    double offset1() const noexcept { return first ? 0.5 : 0.0; }
    double offset2() const noexcept { return second ? 0.5 : 0.0; }

    /// "g", "g+0", "g0+" or "g++".
    std::string label() const;

    friend bool operator==(const HalfShift&, const HalfShift&) = default;
};

inline constexpr HalfShift kUnshifted{false, false};
inline constexpr HalfShift kShiftFirst{true, false};
inline constexpr HalfShift kShiftSecond{false, true};
inline constexpr HalfShift kShiftBoth{true, true};
inline constexpr std::array<HalfShift, 4> kAllShifts{kUnshifted, kShiftFirst, kShiftSecond, kShiftBoth};

struct TruncationPolicy
{
    double relativeTail = 1e-15;
    int maxShell = 64;
    int minShell = 3;

    void validate() const;
};

/// Neumaier variant of compensated summation.
class KahanSum
{
public:
    void add(double x) noexcept;
    double value() const noexcept { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

/// Complex function on the centered grid, length d (rank 1) or d x d (rank 2).
/// Every lookup reduces its indices modulo d, so the function is periodic.
class GridFunction
{
public:
    GridFunction(Dimension dim, int rank);

    const Dimension& dim() const noexcept { return dim_; }
    int rank() const noexcept { return rank_; }

    Complex& at(std::int64_t n);
    const Complex& at(std::int64_t n) const;
    Complex& at(std::int64_t n1, std::int64_t n2);
    const Complex& at(std::int64_t n1, std::int64_t n2) const;

    std::span<Complex> values() noexcept { return values_; }
    std::span<const Complex> values() const noexcept { return values_; }

private:
    std::size_t offset(std::int64_t n) const;
    std::size_t offset(std::int64_t n1, std::int64_t n2) const;

    Dimension dim_;
    int rank_;
    std::vector<Complex> values_;
};

/// Parses a decimal ("1.5", "2e-3") or an exact ratio of integers ("4/3").
/// Throws ValidationError on anything else.
double parseRealOrRatio(const std::string& text);

/// Max-abs entrywise difference of two grids with identical shape.
double maxAbsDifference(const GridFunction& lhs, const GridFunction& rhs);

/// Table of exp(-2 pi i r / d) for r = 0..d-1.
std::vector<Complex> unitRoots(const Dimension& dim);

/// Reduces an integer to 0..d-1, for indexing unitRoots.
inline std::size_t rootIndex(std::int64_t r, const Dimension& dim) noexcept
{
    const std::int64_t d = dim.size();
    std::int64_t m = r % d;
    if (m < 0)
        m += d;
    return static_cast<std::size_t>(m);
}

} // namespace pgauss

#endif
