#ifndef PGAUSS_IDENTITIES_HPP
#define PGAUSS_IDENTITIES_HPP

#include "pgauss/core.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pgauss
{

/// Outcome of one identity check: two independently computed sides and the
/// largest absolute discrepancy between them.
struct IdentityCheck
{
    std::string name;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    /// Set when the check could not run (invalid parameters, non-convergence).
    std::optional<std::string> error;

    /// {"name", "params", "residual", "tolerance", "passed"[, "error"]}
    nlohmann::ordered_json toJson() const;
};

// Tolerance ladder.
inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr double kNearDegenerateTolerance = 1e-9;
inline constexpr double kNearDegenerateDeterminant = 0.25;
inline constexpr double kFourierTolerance1D = 1e-11;
inline constexpr double kThetaRelativeTolerance = 1e-12;
inline constexpr double kLemma3Tolerance = 1e-12;

/// 1e-9 when det(sigma) < 0.25, otherwise 1e-10.
double toleranceFor(const SigmaMatrix& sigma);

/// Largest d for which two-variable Wigner checks visit all d^4 points.
inline constexpr int kExhaustiveWignerLimit = 7;
/// Number of seeded points used above that limit.
inline constexpr int kSampledWignerPoints = 200;

/// Agreement of the direct lattice sum with the theta-function route, over
/// -j..j, relative to the largest grid value.
IdentityCheck checkThetaDual(Kappa kappa, const Dimension& dim, const TruncationPolicy& policy = {});

/// DFT of g_kappa against kappa^{-1/2} g_{1/kappa}.
IdentityCheck checkEq9(Kappa kappa, const Dimension& dim, const TruncationPolicy& policy = {});

/// Two-variable DFT of g_sigma against det(sigma)^{-1/2} g_{sigma^{-1}}.
IdentityCheck checkTheorem1(const SigmaMatrix& sigma, const Dimension& dim, const TruncationPolicy& policy = {});

/// DFT of the `family` Gaussian against the signed lattice sum of continuous
/// g_{sigma^{-1}} samples, with sign (-1)^(k . s + beta . s).
IdentityCheck checkLemma1(const SigmaMatrix& sigma, const Dimension& dim, HalfShift family,
                          const TruncationPolicy& policy = {});

/// Row signs of the four g_{2 sigma^{-1}} families, in the order g, g+0, g0+, g++.
using Lemma2Signs = std::array<int, 4>;
Lemma2Signs lemma2Signs(int row);

/// DFT of the row-th g_{2 sigma} family at (2 k1, 2 k2) against the signed
/// combination of the g_{2 sigma^{-1}} families. `signs` overrides the row
/// pattern (negative controls only).
IdentityCheck checkLemma2(const SigmaMatrix& sigma, const Dimension& dim, int row, const TruncationPolicy& policy = {},
                          std::optional<Lemma2Signs> signs = std::nullopt);

/// Finitely supported non-negative function on Z^2, zero outside [-radius, radius]^2.
struct LatticeFunction
{
    std::function<double(std::int64_t, std::int64_t)> f;
    int radius = 0;
    std::string label;
};

/// Seeded random non-negative values on [-radius, radius]^2.
LatticeFunction randomLatticeFunction(std::uint64_t seed, int radius);

/// Parity-class regrouping: sum f(a, b) = sum f(mu+eta, mu-eta) + sum f(mu+eta+1, mu-eta).
IdentityCheck checkLemma3(const LatticeFunction& f);

/// Discrete Wigner function of g_sigma (transform path) against the 16-product closed form.
IdentityCheck checkTheorem2(const SigmaMatrix& sigma, const Dimension& dim, const TruncationPolicy& policy = {},
                            std::uint64_t seed = 1);

/// One-variable discrete Wigner function of g_kappa against the four-product closed form, all d^2 points.
IdentityCheck checkEq13(Kappa kappa, const Dimension& dim, const TruncationPolicy& policy = {});

/// Transform-path Wigner function against the correspondence sum of continuous Wigner samples.
IdentityCheck checkCorrespondence(Kappa kappa, const Dimension& dim, const TruncationPolicy& policy = {});
IdentityCheck checkCorrespondence(const SigmaMatrix& sigma, const Dimension& dim, const TruncationPolicy& policy = {},
                                  std::uint64_t seed = 1);

/// Parameter sweep for runSuite. Parameters are kept raw so that invalid
/// entries surface as failed checks instead of aborting the run.
struct Sweep
{
    std::vector<double> kappas;
    std::vector<std::array<double, 3>> sigmas;
    std::vector<int> dims1D;
    std::vector<int> dims2D;
    int lemma3Functions = 0;
    int lemma3Radius = 5;
    std::uint64_t seed = 1;
    TruncationPolicy policy;

    /// kappa in {1/2, 1, 4/3, 3} x d in {5, 7, 31}; sigma in {I, (2,1,1), (3,-1,2)} x d in {3, 5, 7};
    /// 100 random regrouping test functions of radius 5.
    static Sweep defaults();
    /// Keys (all optional): "kappas" (numbers or "p/q" strings), "sigmas" ([a, b, c] triples),
    /// "d1", "d2", "lemma3_functions", "lemma3_radius", "seed", "tail". Throws ValidationError
    /// on malformed input.
    static Sweep fromJson(const nlohmann::json& j);
};

std::vector<IdentityCheck> runSuite(const Sweep& sweep);

bool allPassed(const std::vector<IdentityCheck>& checks);

/// One line per check: "PASS name {params} residual=... tolerance=..."
void writeTextReport(std::ostream& out, const std::vector<IdentityCheck>& checks);

/// JSON lines, one object per check.
void writeJsonReport(std::ostream& out, const std::vector<IdentityCheck>& checks);

} // namespace pgauss

#endif
