#include "pgauss/identities.hpp"

#include "pgauss/gaussians.hpp"
#include "pgauss/lattice_sum.hpp"
#include "pgauss/transforms.hpp"
#include "pgauss/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <sstream>

namespace pgauss
{

nlohmann::ordered_json IdentityCheck::toJson() const
{
    nlohmann::ordered_json j;
    j["name"] = name;
    j["params"] = params;
    j["residual"] = residual;
    j["tolerance"] = tolerance;
    j["passed"] = passed;
    if (error)
        j["error"] = *error;
    return j;
}

double toleranceFor(const SigmaMatrix& sigma)
{
    return sigma.determinant() < kNearDegenerateDeterminant ? kNearDegenerateTolerance : kDefaultTolerance;
}

namespace
{

nlohmann::ordered_json sigmaJson(const SigmaMatrix& sigma)
{
    return nlohmann::ordered_json::array({sigma.a(), sigma.b(), sigma.c()});
}

nlohmann::ordered_json params1D(Kappa kappa, const Dimension& dim)
{
    return {{"kappa", kappa.value()}, {"d", dim.size()}};
}

nlohmann::ordered_json params2D(const SigmaMatrix& sigma, const Dimension& dim)
{
    return {{"sigma", sigmaJson(sigma)}, {"d", dim.size()}};
}

IdentityCheck finish(std::string name, nlohmann::ordered_json params, double residual, double tolerance)
{
    IdentityCheck check;
    check.name = std::move(name);
    check.params = std::move(params);
    check.residual = residual;
    check.tolerance = tolerance;
    // NaN residuals fail.
    check.passed = residual <= tolerance;
    return check;
}

struct GridPoint
{
    int n1, n2, k1, k2;
};

// All d^4 points up to kExhaustiveWignerLimit, seeded samples beyond.
std::vector<GridPoint> wignerPoints(const Dimension& dim, std::uint64_t seed)
{
    const int j = dim.half();
    std::vector<GridPoint> points;
    if (dim.size() <= kExhaustiveWignerLimit) {
        for (int n1 = -j; n1 <= j; ++n1)
            for (int n2 = -j; n2 <= j; ++n2)
                for (int k1 = -j; k1 <= j; ++k1)
                    for (int k2 = -j; k2 <= j; ++k2)
                        points.push_back({n1, n2, k1, k2});
        return points;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(-j, j);
    for (int i = 0; i < kSampledWignerPoints; ++i)
        points.push_back({pick(rng), pick(rng), pick(rng), pick(rng)});
    return points;
}

} // namespace

IdentityCheck checkThetaDual(Kappa kappa, const Dimension& dim, const TruncationPolicy& policy)
{
    const int j = dim.half();
    double worst = 0.0;
    double scale = 0.0;
    for (int n = -j; n <= j; ++n) {
        const double direct = discreteGaussian1D(kappa, dim, n, policy);
        const double viaTheta = discreteGaussianViaTheta(kappa, dim, n, policy);
        worst = std::max(worst, std::abs(direct - viaTheta));
        scale = std::max(scale, direct);
    }
    return finish("eq3", params1D(kappa, dim), worst / scale, kThetaRelativeTolerance);
}

IdentityCheck checkEq9(Kappa kappa, const Dimension& dim, const TruncationPolicy& policy)
{
    const GridFunction lhs = dft1D(tabulateDiscreteGaussian1D(kappa, dim, false, policy));
    GridFunction rhs = tabulateDiscreteGaussian1D(kappa.inverse(), dim, false, policy);
    for (auto& v : rhs.values())
        v /= std::sqrt(kappa.value());
    return finish("eq9", params1D(kappa, dim), maxAbsDifference(lhs, rhs), kFourierTolerance1D);
}

IdentityCheck checkTheorem1(const SigmaMatrix& sigma, const Dimension& dim, const TruncationPolicy& policy)
{
    const GridFunction lhs = dft2D(tabulateDiscreteGaussian2D(sigma, dim, kUnshifted, policy));
    GridFunction rhs = tabulateDiscreteGaussian2D(sigma.inverse(), dim, kUnshifted, policy);
    for (auto& v : rhs.values())
        v /= std::sqrt(sigma.determinant());
    return finish("theorem1", params2D(sigma, dim), maxAbsDifference(lhs, rhs), toleranceFor(sigma));
}

IdentityCheck checkLemma1(const SigmaMatrix& sigma, const Dimension& dim, HalfShift family,
                          const TruncationPolicy& policy)
{
    const GridFunction lhs = dft2D(tabulateDiscreteGaussian2D(sigma, dim, family, policy));
    const SigmaMatrix inverse = sigma.inverse();
    const double d = dim.size();
    const double scale = 1.0 / std::sqrt(sigma.determinant());
    const int j = dim.half();

    GridFunction rhs(dim, 2);
    for (int k1 = -j; k1 <= j; ++k1) {
        for (int k2 = -j; k2 <= j; ++k2) {
            const bool odd = ((family.first ? k1 : 0) + (family.second ? k2 : 0)) & 1;
            const double lattice =
                alternatingLatticeSum2D(kPi / d, inverse, {family.first, family.second}, k1, k2, d, policy).value;
            rhs.at(k1, k2) = (odd ? -scale : scale) * lattice;
        }
    }
    auto params = params2D(sigma, dim);
    params["family"] = family.label();
    return finish("lemma1." + family.label(), std::move(params), maxAbsDifference(lhs, rhs), toleranceFor(sigma));
}

Lemma2Signs lemma2Signs(int row)
{
    if (row < 1 || row > 4)
        throw ValidationError("row must be 1..4");
    const HalfShift s = kAllShifts[static_cast<std::size_t>(row - 1)];
    Lemma2Signs signs{};
    for (std::size_t t = 0; t < 4; ++t) {
        const bool odd = ((s.first && kAllShifts[t].first) + (s.second && kAllShifts[t].second)) & 1;
        signs[t] = odd ? -1 : 1;
    }
    return signs;
}

IdentityCheck checkLemma2(const SigmaMatrix& sigma, const Dimension& dim, int row, const TruncationPolicy& policy,
                          std::optional<Lemma2Signs> signs)
{
    const Lemma2Signs pattern = signs.value_or(lemma2Signs(row));
    const HalfShift family = kAllShifts[static_cast<std::size_t>(row - 1)];
    const GridFunction transformed = dft2D(tabulateDiscreteGaussian2D(sigma.scaled(2.0), dim, family, policy));

    const SigmaMatrix momentum = sigma.inverse().scaled(2.0);
    std::array<GridFunction, 4> tables{
        tabulateDiscreteGaussian2D(momentum, dim, kAllShifts[0], policy),
        tabulateDiscreteGaussian2D(momentum, dim, kAllShifts[1], policy),
        tabulateDiscreteGaussian2D(momentum, dim, kAllShifts[2], policy),
        tabulateDiscreteGaussian2D(momentum, dim, kAllShifts[3], policy),
    };
    const double scale = 1.0 / (2.0 * std::sqrt(sigma.determinant()));
    const int j = dim.half();

    double worst = 0.0;
    for (int k1 = -j; k1 <= j; ++k1) {
        for (int k2 = -j; k2 <= j; ++k2) {
            Complex combination{};
            for (std::size_t t = 0; t < 4; ++t)
                combination += static_cast<double>(pattern[t]) * tables[t].at(k1, k2);
            worst = std::max(worst, std::abs(transformed.at(2 * k1, 2 * k2) - scale * combination));
        }
    }
    auto params = params2D(sigma, dim);
    params["row"] = row;
    if (signs)
        params["signs"] = *signs;
    return finish("lemma2.row" + std::to_string(row), std::move(params), worst, toleranceFor(sigma));
}

LatticeFunction randomLatticeFunction(std::uint64_t seed, int radius)
{
    const auto side = static_cast<std::size_t>(2 * radius + 1);
    std::vector<double> values(side * side);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (auto& v : values)
        v = unit(rng);
    LatticeFunction out;
    out.radius = radius;
    out.label = "random(seed=" + std::to_string(seed) + ")";
    out.f = [values = std::move(values), radius, side](std::int64_t a, std::int64_t b) {
        if (std::abs(a) > radius || std::abs(b) > radius)
            return 0.0;
        return values[static_cast<std::size_t>(a + radius) * side + static_cast<std::size_t>(b + radius)];
    };
    return out;
}

IdentityCheck checkLemma3(const LatticeFunction& lf)
{
    const int r = lf.radius;
    auto f = [&](std::int64_t a, std::int64_t b) {
        if (std::abs(a) > r || std::abs(b) > r)
            return 0.0;
        const double v = lf.f(a, b);
        if (!(v >= 0.0))
            throw ValidationError("regrouping test function must be non-negative");
        return v;
    };

    KahanSum direct;
    for (int a = -r; a <= r; ++a)
        for (int b = -r; b <= r; ++b)
            direct.add(f(a, b));

    // Same-parity pairs (mu + eta, mu - eta) and mixed pairs (mu + eta + 1, mu - eta)
    // both have |mu|, |eta| <= r + 1 whenever they land in the support.
    KahanSum regrouped;
    for (int mu = -r - 1; mu <= r + 1; ++mu) {
        for (int eta = -r - 1; eta <= r + 1; ++eta) {
            regrouped.add(f(mu + eta, mu - eta));
            regrouped.add(f(mu + eta + 1, mu - eta));
        }
    }
    nlohmann::ordered_json params{{"function", lf.label}, {"radius", r}};
    return finish("lemma3", std::move(params), std::abs(direct.value() - regrouped.value()), kLemma3Tolerance);
}

IdentityCheck checkTheorem2(const SigmaMatrix& sigma, const Dimension& dim, const TruncationPolicy& policy,
                            std::uint64_t seed)
{
    const GridFunction psi = tabulateDiscreteGaussian2D(sigma, dim, kUnshifted, policy);
    double worst = 0.0;
    for (const auto& p : wignerPoints(dim, seed)) {
        const double transformPath = wignerDiscrete2DAt(psi, p.n1, p.n2, p.k1, p.k2);
        const double closedForm = wignerGaussianClosedForm2D(sigma, dim, p.n1, p.n2, p.k1, p.k2, policy);
        worst = std::max(worst, std::abs(transformPath - closedForm));
    }
    auto params = params2D(sigma, dim);
    if (dim.size() > kExhaustiveWignerLimit)
        params["seed"] = seed;
    return finish("theorem2", std::move(params), worst, toleranceFor(sigma));
}

IdentityCheck checkEq13(Kappa kappa, const Dimension& dim, const TruncationPolicy& policy)
{
    const WignerGrid transformPath = wignerDiscrete1D(tabulateDiscreteGaussian1D(kappa, dim, false, policy));
    const int j = dim.half();
    double worst = 0.0;
    for (int n = -j; n <= j; ++n)
        for (int k = -j; k <= j; ++k)
            worst = std::max(worst,
                             std::abs(transformPath.at(n, k) - wignerGaussianClosedForm1D(kappa, dim, n, k, policy)));
    return finish("eq13", params1D(kappa, dim), worst, kDefaultTolerance);
}

IdentityCheck checkCorrespondence(Kappa kappa, const Dimension& dim, const TruncationPolicy& policy)
{
    const WignerGrid transformPath = wignerDiscrete1D(tabulateDiscreteGaussian1D(kappa, dim, false, policy));
    const int j = dim.half();
    double worst = 0.0;
    for (int n = -j; n <= j; ++n)
        for (int k = -j; k <= j; ++k)
            worst = std::max(worst, std::abs(transformPath.at(n, k) - correspondenceSum1D(kappa, dim, n, k, policy)));
    auto params = params1D(kappa, dim);
    params["constant"] = correspondenceConstant1D(dim);
    return finish("eq15", std::move(params), worst, kDefaultTolerance);
}

IdentityCheck checkCorrespondence(const SigmaMatrix& sigma, const Dimension& dim, const TruncationPolicy& policy,
                                  std::uint64_t seed)
{
    const GridFunction psi = tabulateDiscreteGaussian2D(sigma, dim, kUnshifted, policy);
    double worst = 0.0;
    for (const auto& p : wignerPoints(dim, seed)) {
        const double transformPath = wignerDiscrete2DAt(psi, p.n1, p.n2, p.k1, p.k2);
        const double sampled = correspondenceSum2D(sigma, dim, p.n1, p.n2, p.k1, p.k2, policy);
        worst = std::max(worst, std::abs(transformPath - sampled));
    }
    auto params = params2D(sigma, dim);
    params["constant"] = correspondenceConstant2D(dim);
    if (dim.size() > kExhaustiveWignerLimit)
        params["seed"] = seed;
    return finish("correspondence2d", std::move(params), worst, toleranceFor(sigma));
}

Sweep Sweep::defaults()
{
    Sweep s;
    s.kappas = {0.5, 1.0, 4.0 / 3.0, 3.0};
    s.dims1D = {5, 7, 31};
    s.sigmas = {{1.0, 0.0, 1.0}, {2.0, 1.0, 1.0}, {3.0, -1.0, 2.0}};
    s.dims2D = {3, 5, 7};
    s.lemma3Functions = 100;
    s.lemma3Radius = 5;
    return s;
}

Sweep Sweep::fromJson(const nlohmann::json& j)
{
    if (!j.is_object())
        throw ValidationError("sweep must be a JSON object");
    Sweep s;
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "kappas") {
                for (const auto& k : value)
                    s.kappas.push_back(k.is_string() ? parseRealOrRatio(k.get<std::string>()) : k.get<double>());
            } else if (key == "sigmas") {
                for (const auto& t : value) {
                    if (!t.is_array() || t.size() != 3)
                        throw ValidationError("each sigma must be an array [a, b, c]");
                    s.sigmas.push_back({t[0].get<double>(), t[1].get<double>(), t[2].get<double>()});
                }
            } else if (key == "d1") {
                s.dims1D = value.get<std::vector<int>>();
            } else if (key == "d2") {
                s.dims2D = value.get<std::vector<int>>();
            } else if (key == "lemma3_functions") {
                s.lemma3Functions = value.get<int>();
            } else if (key == "lemma3_radius") {
                s.lemma3Radius = value.get<int>();
            } else if (key == "seed") {
                s.seed = value.get<std::uint64_t>();
            } else if (key == "tail") {
                s.policy.relativeTail = value.get<double>();
            } else {
                throw ValidationError("unknown sweep key '" + key + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed sweep: ") + e.what());
    }
    if (s.lemma3Functions < 0 || s.lemma3Radius < 0)
        throw ValidationError("lemma3 counts must be non-negative");
    s.policy.validate();
    return s;
}

namespace
{

template <class Run>
IdentityCheck guarded(const std::string& name, nlohmann::ordered_json params, Run&& run)
{
    try {
        return run();
    } catch (const Error& e) {
        IdentityCheck failed;
        failed.name = name;
        failed.params = std::move(params);
        failed.residual = std::numeric_limits<double>::quiet_NaN();
        failed.passed = false;
        failed.error = e.what();
        return failed;
    }
}

} // namespace

std::vector<IdentityCheck> runSuite(const Sweep& sweep)
{
    std::vector<IdentityCheck> out;
    const TruncationPolicy& policy = sweep.policy;

    for (double kappaValue : sweep.kappas) {
        for (int d : sweep.dims1D) {
            const nlohmann::ordered_json raw{{"kappa", kappaValue}, {"d", d}};
            auto add = [&](const std::string& name, auto&& check) {
                out.push_back(guarded(name, raw, [&] { return check(Kappa(kappaValue), Dimension(d)); }));
            };
            add("eq3", [&](Kappa k, Dimension dim) { return checkThetaDual(k, dim, policy); });
            add("eq9", [&](Kappa k, Dimension dim) { return checkEq9(k, dim, policy); });
            add("eq13", [&](Kappa k, Dimension dim) { return checkEq13(k, dim, policy); });
            add("eq15", [&](Kappa k, Dimension dim) { return checkCorrespondence(k, dim, policy); });
        }
    }

    for (const auto& [a, b, c] : sweep.sigmas) {
        for (int d : sweep.dims2D) {
            const nlohmann::ordered_json raw{{"sigma", {a, b, c}}, {"d", d}};
            auto add = [&](const std::string& name, auto&& check) {
                out.push_back(guarded(name, raw, [&] { return check(validateSigma(a, b, c), Dimension(d)); }));
            };
            add("theorem1", [&](const SigmaMatrix& s, Dimension dim) { return checkTheorem1(s, dim, policy); });
            for (const HalfShift family : kAllShifts)
                add("lemma1." + family.label(),
                    [&](const SigmaMatrix& s, Dimension dim) { return checkLemma1(s, dim, family, policy); });
            for (int row = 1; row <= 4; ++row)
                add("lemma2.row" + std::to_string(row),
                    [&](const SigmaMatrix& s, Dimension dim) { return checkLemma2(s, dim, row, policy); });
            add("theorem2",
                [&](const SigmaMatrix& s, Dimension dim) { return checkTheorem2(s, dim, policy, sweep.seed); });
            add("correspondence2d",
                [&](const SigmaMatrix& s, Dimension dim) { return checkCorrespondence(s, dim, policy, sweep.seed); });
        }
    }

    for (int i = 0; i < sweep.lemma3Functions; ++i) {
        const std::uint64_t seed = sweep.seed + static_cast<std::uint64_t>(i);
        out.push_back(guarded("lemma3", {{"seed", seed}, {"radius", sweep.lemma3Radius}},
                              [&] { return checkLemma3(randomLatticeFunction(seed, sweep.lemma3Radius)); }));
    }
    return out;
}

bool allPassed(const std::vector<IdentityCheck>& checks)
{
    return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.passed; });
}

void writeTextReport(std::ostream& out, const std::vector<IdentityCheck>& checks)
{
    for (const auto& c : checks) {
        out << (c.passed ? "PASS " : "FAIL ") << c.name << ' ' << c.params.dump();
        if (c.error) {
            out << " error: " << *c.error << '\n';
            continue;
        }
        std::ostringstream line;
        line.precision(3);
        line << std::scientific << " residual=" << c.residual << " tolerance=" << c.tolerance;
        out << line.str() << '\n';
    }
}

void writeJsonReport(std::ostream& out, const std::vector<IdentityCheck>& checks)
{
    for (const auto& c : checks)
        out << c.toJson().dump() << '\n';
}

} // namespace pgauss
