#include "pgauss/transforms.hpp"

#include "pgauss/gaussians.hpp"

#include <cmath>

namespace pgauss
{

namespace
{

enum class Direction
{
    Forward,
    Inverse
};

void requireRank(const GridFunction& f, int rank)
{
    if (f.rank() != rank)
        throw ValidationError("transform expects a rank-" + std::to_string(rank) + " grid, got rank " +
                              std::to_string(f.rank()));
}

// Transforms along one axis of a rank-1 or rank-2 grid.
GridFunction transformAxis(const GridFunction& f, int axis, Direction direction)
{
    const Dimension& dim = f.dim();
    const int j = dim.half();
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim.size()));
    auto roots = unitRoots(dim);
    if (direction == Direction::Inverse)
        for (auto& w : roots)
            w = std::conj(w);

    GridFunction out(dim, f.rank());
    if (f.rank() == 1) {
        for (int k = -j; k <= j; ++k) {
            Complex acc{};
            for (int n = -j; n <= j; ++n)
                acc += roots[rootIndex(std::int64_t{k} * n, dim)] * f.at(n);
            out.at(k) = scale * acc;
        }
        return out;
    }

    for (int other = -j; other <= j; ++other) {
        for (int k = -j; k <= j; ++k) {
            Complex acc{};
            for (int n = -j; n <= j; ++n) {
                const Complex& v = axis == 0 ? f.at(n, other) : f.at(other, n);
                acc += roots[rootIndex(std::int64_t{k} * n, dim)] * v;
            }
            (axis == 0 ? out.at(k, other) : out.at(other, k)) = scale * acc;
        }
    }
    return out;
}

} // namespace

GridFunction dft1D(const GridFunction& f)
{
    requireRank(f, 1);
    return transformAxis(f, 0, Direction::Forward);
}

GridFunction idft1D(const GridFunction& f)
{
    requireRank(f, 1);
    return transformAxis(f, 0, Direction::Inverse);
}

GridFunction dft2D(const GridFunction& f)
{
    requireRank(f, 2);
    return transformAxis(transformAxis(f, 1, Direction::Forward), 0, Direction::Forward);
}

GridFunction idft2D(const GridFunction& f)
{
    requireRank(f, 2);
    return transformAxis(transformAxis(f, 1, Direction::Inverse), 0, Direction::Inverse);
}

double continuousFourierGaussian1D(Kappa kappa, double p)
{
    return continuousGaussian1D(kappa.inverse(), p) / std::sqrt(kappa.value());
}

double continuousFourierGaussian2D(const SigmaMatrix& sigma, double p1, double p2)
{
    return continuousGaussian2D(sigma.inverse(), p1, p2) / std::sqrt(sigma.determinant());
}

} // namespace pgauss
