// Acceptance suite: one line per criterion, exit status 1 if any criterion fails.
#include "cli.hpp"
#include "grid_io.hpp"
#include "pgauss/gaussians.hpp"
#include "pgauss/identities.hpp"
#include "pgauss/transforms.hpp"
#include "pgauss/wigner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace pgauss;

namespace
{

struct Outcome
{
    bool passed = true;
    std::string detail;
};

struct Criterion
{
    int id;
    std::string title;
    double seconds; // runtime budget, 0 for none
    std::function<Outcome()> body;
};

const std::vector<double> kKappaSweep{0.5, 1.0, 4.0 / 3.0, 3.0};
const std::vector<int> kDimSweep1D{5, 7, 31};
const std::vector<SigmaMatrix> kSigmaSweep{{1, 0, 1}, {2, 1, 1}, {3, -1, 2}};

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

// Worst residual over a set of checks, each compared with `tolerance`
// rather than the check's own tolerance.
struct Worst
{
    explicit Worst(double tol) : tolerance(tol) {}

    double tolerance;
    double residual = 0.0;
    std::string where;
    bool ok = true;

    void add(const IdentityCheck& c)
    {
        const double r = c.error ? INFINITY : c.residual;
        if (where.empty() || r > residual) {
            residual = r;
            where = c.name + " " + c.params.dump() + (c.error ? " error: " + *c.error : "");
        }
        ok = ok && r <= tolerance;
    }

    Outcome outcome() const
    {
        return {ok, "max residual " + fmt(residual) + " <= " + fmt(tolerance) + " (worst: " + where + ")"};
    }
};

Outcome thetaDual()
{
    Worst w{1e-12};
    for (double k : {0.1, 0.5, 1.0, 4.0 / 3.0, 3.0, 10.0})
        for (int d : {3, 5, 7, 31})
            w.add(checkThetaDual(Kappa(k), Dimension(d)));
    return w.outcome();
}

Outcome eq9()
{
    Worst w{1e-11};
    for (double k : kKappaSweep)
        for (int d : kDimSweep1D)
            w.add(checkEq9(Kappa(k), Dimension(d)));
    const auto fixed = checkEq9(Kappa(1.0), Dimension(31));
    Outcome o = w.outcome();
    o.detail += "; kappa=1 fixed-point residual " + fmt(fixed.residual);
    return o;
}

Outcome theorem1()
{
    Worst w{1e-10};
    for (const auto& s : kSigmaSweep)
        for (int d : {3, 5, 7, 15})
            w.add(checkTheorem1(s, Dimension(d)));
    return w.outcome();
}

Outcome lemma1()
{
    Worst w{1e-10};
    for (const auto& s : kSigmaSweep)
        for (int d : {3, 5, 7, 15})
            for (const HalfShift f : kAllShifts)
                w.add(checkLemma1(s, Dimension(d), f));
    return w.outcome();
}

Outcome lemma2()
{
    Worst w{1e-10};
    double control = 0.0;
    for (const auto& s : kSigmaSweep) {
        for (int d : {3, 5, 7, 15}) {
            for (int row = 1; row <= 4; ++row)
                w.add(checkLemma2(s, Dimension(d), row));
            control = std::max(control, checkLemma2(s, Dimension(d), 2, {}, lemma2Signs(3)).residual);
            control = std::max(control, checkLemma2(s, Dimension(d), 3, {}, lemma2Signs(2)).residual);
        }
    }
    Outcome o = w.outcome();
    o.passed = o.passed && control > 1e-3;
    o.detail += "; swapped-sign control residual " + fmt(control) + " > 1e-03";
    return o;
}

Outcome lemma3()
{
    Worst w{1e-12};
    for (std::uint64_t seed = 1; seed <= 100; ++seed)
        w.add(checkLemma3(randomLatticeFunction(seed, 5)));
    return w.outcome();
}

Outcome theorem2()
{
    Worst w{1e-10};
    for (const auto& s : kSigmaSweep)
        for (int d : {3, 5, 7})
            w.add(checkTheorem2(s, Dimension(d)));
    Worst nd{1e-9};
    for (int d : {3, 5, 7})
        nd.add(checkTheorem2(SigmaMatrix(1, 0.9, 1), Dimension(d)));
    Outcome o = w.outcome();
    const Outcome o2 = nd.outcome();
    return {o.passed && o2.passed, o.detail + "; near-degenerate " + o2.detail};
}

Outcome eq13()
{
    Worst w{1e-10};
    for (double k : kKappaSweep)
        for (int d : kDimSweep1D)
            w.add(checkEq13(Kappa(k), Dimension(d)));
    return w.outcome();
}

Outcome correspondence()
{
    Worst w{1e-10};
    for (double k : kKappaSweep)
        for (int d : kDimSweep1D)
            w.add(checkCorrespondence(Kappa(k), Dimension(d)));
    std::vector<SigmaMatrix> sigmas = kSigmaSweep;
    sigmas.emplace_back(1, 0.9, 1);
    for (const auto& s : sigmas)
        for (int d : {3, 5, 7})
            w.add(checkCorrespondence(s, Dimension(d)));
    Outcome o = w.outcome();
    o.detail += "; C_kappa = sqrt(pi/(2d)), C_sigma = pi/(2d)";
    return o;
}

Outcome structural()
{
    double reality = 0.0;
    double marginal = 0.0;
    double normalization = 0.0;
    for (int d : {3, 5, 7}) {
        const Dimension dim(d);
        const int j = dim.half();
        std::mt19937_64 rng(static_cast<std::uint64_t>(d));
        std::normal_distribution<double> normal;
        for (int state = 0; state < 20; ++state) {
            GridFunction psi(dim, 1);
            for (auto& v : psi.values())
                v = Complex(normal(rng), normal(rng));
            const GridFunction phi = dft1D(psi);
            const WignerGrid w = wignerDiscrete1D(psi);
            reality = std::max(reality, w.maxImaginaryResidue());
            double total = 0.0;
            double norm = 0.0;
            for (int a = -j; a <= j; ++a) {
                double overK = 0.0;
                double overN = 0.0;
                for (int b = -j; b <= j; ++b) {
                    overK += w.at(a, b);
                    overN += w.at(b, a);
                }
                marginal = std::max(marginal, std::abs(overK - std::norm(psi.at(a))));
                marginal = std::max(marginal, std::abs(overN - std::norm(phi.at(a))));
                total += overK;
                norm += std::norm(psi.at(a));
            }
            normalization = std::max(normalization, std::abs(total - norm));
        }
    }
    const bool ok = reality <= 1e-13 && marginal <= 1e-12 && normalization <= 1e-12;
    return {ok, "imaginary residue " + fmt(reality) + " <= 1e-13, marginals " + fmt(marginal) +
                    " <= 1e-12, normalization " + fmt(normalization) + " <= 1e-12"};
}

// Parses `axes...,value` CSV into index tuples and values.
std::map<std::vector<int>, double> parseCsv(const std::string& text)
{
    std::map<std::vector<int>, double> out;
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ','))
            fields.push_back(f);
        std::vector<int> idx;
        for (std::size_t i = 0; i + 1 < fields.size(); ++i)
            idx.push_back(std::stoi(fields[i]));
        out[idx] = std::stod(fields.back());
    }
    return out;
}

std::string runCli(const std::vector<std::string>& args, int& status)
{
    std::ostringstream out;
    std::ostringstream err;
    status = cli::run(args, out, err);
    return out.str();
}

Outcome gridShapes()
{
    std::vector<std::string> problems;
    int status = 0;
    const int j = 15;

    const auto g = parseCsv(runCli({"eval", "--family", "g1d", "--kappa", "4/3", "--d", "31", "--from", "-46",
                                    "--to", "46"},
                                   status));
    if (status != 0 || g.size() != 93)
        problems.push_back("eval g1d failed");
    const auto gp = parseCsv(runCli({"eval", "--family", "g1d-plus", "--kappa", "4/3", "--d", "31"}, status));
    if (status != 0 || gp.size() != 31)
        problems.push_back("eval g1d-plus failed");
    const auto w = parseCsv(runCli({"wigner", "--rank", "1", "--kappa", "4/3", "--d", "31"}, status));
    if (status != 0 || w.size() != 961)
        problems.push_back("wigner failed");
    if (!problems.empty())
        return {false, problems.front()};

    auto at = [](const std::map<std::vector<int>, double>& m, std::vector<int> i) { return m.at(i); };
    for (int n = -46; n <= 46; ++n) {
        const double v = at(g, {n});
        if (!(v > 0.0))
            problems.push_back("g not positive at " + std::to_string(n));
        if (std::abs(v - at(g, {-n})) > 1e-14 * v)
            problems.push_back("g not even at " + std::to_string(n));
        if (n + 31 <= 46 && std::abs(v - at(g, {n + 31})) > 1e-14 * v)
            problems.push_back("g not periodic at " + std::to_string(n));
    }
    for (int n = -j; n < 0; ++n)
        if (!(at(g, {n}) < at(g, {n + 1})) || !(at(g, {-n}) < at(g, {-n - 1})))
            problems.push_back("g not single-peaked at " + std::to_string(n));

    int argmax = 0;
    for (int n = -j; n <= j; ++n)
        if (at(gp, {n}) > at(gp, {argmax}))
            argmax = n;
    if (std::abs(argmax) != j)
        problems.push_back("g+ peak at " + std::to_string(argmax));
    if (std::abs(at(gp, {j}) - at(gp, {-j})) > 1e-14 * at(gp, {j}))
        problems.push_back("g+ not even");

    std::vector<int> wmax{0, 0};
    for (const auto& [idx, v] : w) {
        if (!std::isfinite(v))
            problems.push_back("non-finite Wigner value");
        if (v > w.at(wmax))
            wmax = idx;
    }
    if (wmax != std::vector<int>{0, 0})
        problems.push_back("Wigner maximum at (" + std::to_string(wmax[0]) + "," + std::to_string(wmax[1]) + ")");

    if (!problems.empty())
        return {false, problems.front() + " (" + std::to_string(problems.size()) + " problems)"};
    return {true, "g even, 31-periodic, single peak at 0; g+ peak at |n|=15; Wigner max " + fmt(w.at({0, 0})) +
                      " at (0,0)"};
}

} // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {1, "theta dual path", 1.0, thetaDual},
        {2, "eq9 transform of the 1D Gaussian", 1.0, eq9},
        {3, "theorem1", 2.0, theorem1},
        {4, "lemma1 families", 5.0, lemma1},
        {5, "lemma2 rows", 5.0, lemma2},
        {6, "lemma3 regrouping", 1.0, lemma3},
        {7, "theorem2 exhaustive", 30.0, theorem2},
        {8, "eq13 closed form", 10.0, eq13},
        {9, "correspondence sums", 0.0, correspondence},
        {10, "Wigner structure", 2.0, structural},
        {11, "CLI grid shapes at kappa 4/3, d 31", 0.0, gridShapes},
    };

    bool all = true;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool inTime = c.seconds == 0.0 || elapsed < c.seconds;
        const bool ok = o.passed && inTime;
        all = all && ok;
        char timing[64];
        if (c.seconds > 0.0)
            std::snprintf(timing, sizeof timing, "%.3fs < %.0fs", elapsed, c.seconds);
        else
            std::snprintf(timing, sizeof timing, "%.3fs", elapsed);
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.title << "): " << o.detail << " ["
                  << timing << "]" << std::endl;
    }
    return all ? 0 : 1;
}
