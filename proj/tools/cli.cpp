#include "cli.hpp"

#include "grid_io.hpp"
#include "pgauss/gaussians.hpp"
#include "pgauss/identities.hpp"
#include "pgauss/transforms.hpp"
#include "pgauss/wigner.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

namespace pgauss::cli
{

namespace
{

class IoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct GlobalOptions
{
    std::string format = "csv";
    std::string out;
    std::optional<double> tail;
    std::optional<std::uint64_t> seed;

    TruncationPolicy policy() const
    {
        TruncationPolicy p;
        if (tail)
            p.relativeTail = *tail;
        p.validate();
        return p;
    }
};

struct EvalOptions
{
    std::string family;
    std::string kappa;
    std::string sigma;
    std::string shift = "00";
    int d = 0;
    std::optional<std::int64_t> from;
    std::optional<std::int64_t> to;
};

struct WignerOptions
{
    int rank = 1;
    std::string kappa;
    std::string sigma;
    std::string method = "transform";
    int d = 0;
};

struct DftOptions
{
    std::string input;
    int rank = 1;
    bool inverse = false;
};

struct VerifyOptions
{
    std::string sweep;
    bool json = false;
};

Kappa parseKappa(const std::string& text)
{
    if (text.empty())
        throw ValidationError("--kappa is required for this family");
    return Kappa(parseRealOrRatio(text));
}

SigmaMatrix parseSigma(const std::string& text)
{
    if (text.empty())
        throw ValidationError("--sigma is required for this family");
    std::vector<double> entries;
    std::istringstream in(text);
    std::string part;
    while (std::getline(in, part, ','))
        entries.push_back(parseRealOrRatio(part));
    if (entries.size() != 3)
        throw ValidationError("--sigma expects three comma-separated entries a,b,c");
    return validateSigma(entries[0], entries[1], entries[2]);
}

HalfShift parseShift(const std::string& text)
{
    if (text == "00" || text == "0,0")
        return kUnshifted;
    if (text == "+0" || text == "1/2,0")
        return kShiftFirst;
    if (text == "0+" || text == "0,1/2")
        return kShiftSecond;
    if (text == "++" || text == "1/2,1/2")
        return kShiftBoth;
    throw ValidationError("--shift must be one of 00, +0, 0+, ++");
}

nlohmann::ordered_json sigmaJson(const SigmaMatrix& s)
{
    return nlohmann::ordered_json::array({s.a(), s.b(), s.c()});
}

void emit(std::ostream& out, const GlobalOptions& global, const GridTable& table,
          const nlohmann::ordered_json& meta)
{
    if (global.format == "json")
        writeJson(out, table, meta);
    else
        writeCsv(out, table);
}

void runEval(const EvalOptions& opt, const GlobalOptions& global, std::ostream& out)
{
    const Dimension dim(opt.d);
    const TruncationPolicy policy = global.policy();
    GridTable table;
    table.lo = opt.from.value_or(-dim.half());
    table.hi = opt.to.value_or(dim.half());
    if (table.lo > table.hi)
        throw ValidationError("--from must not exceed --to");

    nlohmann::ordered_json params;
    if (opt.family == "g2d") {
        const SigmaMatrix sigma = parseSigma(opt.sigma);
        const HalfShift shift = parseShift(opt.shift);
        params = {{"sigma", sigmaJson(sigma)}, {"shift", shift.label()}};
        table.axes = {"n1", "n2"};
        for (auto n1 = table.lo; n1 <= table.hi; ++n1)
            for (auto n2 = table.lo; n2 <= table.hi; ++n2)
                table.values.emplace_back(discreteGaussian2D(sigma, dim, shift, n1, n2, policy));
    } else {
        const Kappa kappa = parseKappa(opt.kappa);
        std::function<double(std::int64_t)> f;
        if (opt.family == "g1d")
            f = [&](std::int64_t n) { return discreteGaussian1D(kappa, dim, n, policy); };
        else if (opt.family == "g1d-plus")
            f = [&](std::int64_t n) { return discreteGaussianShifted1D(kappa, dim, n, policy); };
        else if (opt.family == "g1d-theta")
            f = [&](std::int64_t n) { return discreteGaussianViaTheta(kappa, dim, n, policy); };
        else
            throw ValidationError("unknown --family '" + opt.family + "'");
        params = {{"kappa", kappa.value()}};
        table.axes = {"n"};
        for (auto n = table.lo; n <= table.hi; ++n)
            table.values.emplace_back(f(n));
    }
    const nlohmann::ordered_json meta{
        {"d", dim.size()}, {"params", params}, {"operation", "eval:" + opt.family}, {"range", {table.lo, table.hi}}};
    emit(out, global, table, meta);
}

void runWigner(const WignerOptions& opt, const GlobalOptions& global, std::ostream& out)
{
    const Dimension dim(opt.d);
    const TruncationPolicy policy = global.policy();
    const int j = dim.half();
    if (opt.method != "transform" && opt.method != "closed" && opt.method != "correspondence")
        throw ValidationError("--method must be transform, closed or correspondence");

    nlohmann::ordered_json params;
    WignerGrid grid(dim, opt.rank);
    if (opt.rank == 1) {
        const Kappa kappa = parseKappa(opt.kappa);
        params = {{"kappa", kappa.value()}};
        if (opt.method == "transform") {
            grid = wignerDiscrete1D(tabulateDiscreteGaussian1D(kappa, dim, false, policy));
        } else {
            for (int n = -j; n <= j; ++n)
                for (int k = -j; k <= j; ++k)
                    grid.at(n, k) = opt.method == "closed" ? wignerGaussianClosedForm1D(kappa, dim, n, k, policy)
                                                           : correspondenceSum1D(kappa, dim, n, k, policy);
        }
    } else if (opt.rank == 2) {
        const SigmaMatrix sigma = parseSigma(opt.sigma);
        params = {{"sigma", sigmaJson(sigma)}};
        if (opt.method == "transform") {
            grid = wignerDiscrete2D(tabulateDiscreteGaussian2D(sigma, dim, kUnshifted, policy));
        } else {
            for (int n1 = -j; n1 <= j; ++n1)
                for (int n2 = -j; n2 <= j; ++n2)
                    for (int k1 = -j; k1 <= j; ++k1)
                        for (int k2 = -j; k2 <= j; ++k2)
                            grid.at(n1, n2, k1, k2) =
                                opt.method == "closed"
                                    ? wignerGaussianClosedForm2D(sigma, dim, n1, n2, k1, k2, policy)
                                    : correspondenceSum2D(sigma, dim, n1, n2, k1, k2, policy);
        }
    } else {
        throw ValidationError("--rank must be 1 or 2");
    }
    params["method"] = opt.method;
    const nlohmann::ordered_json meta{{"d", dim.size()}, {"params", params}, {"operation", "wigner"}};
    emit(out, global, tableFrom(grid), meta);
}

void runDft(const DftOptions& opt, const GlobalOptions& global, std::ostream& out)
{
    GridFunction input(Dimension(3), 1);
    if (opt.input == "-") {
        input = readGridCsv(std::cin, opt.rank);
    } else {
        std::ifstream file(opt.input);
        if (!file)
            throw IoError("cannot open input '" + opt.input + "'");
        input = readGridCsv(file, opt.rank);
    }
    if (opt.rank != 1 && opt.rank != 2)
        throw ValidationError("--rank must be 1 or 2");
    const GridFunction result = opt.rank == 1 ? (opt.inverse ? idft1D(input) : dft1D(input))
                                              : (opt.inverse ? idft2D(input) : dft2D(input));
    const nlohmann::ordered_json meta{
        {"d", result.dim().size()}, {"params", {{"rank", opt.rank}}}, {"operation", opt.inverse ? "idft" : "dft"}};
    emit(out, global, tableFrom(result, true), meta);
}

int runVerify(const VerifyOptions& opt, const GlobalOptions& global, std::ostream& out)
{
    Sweep sweep = Sweep::defaults();
    if (!opt.sweep.empty()) {
        std::ifstream file(opt.sweep);
        if (!file)
            throw IoError("cannot open sweep file '" + opt.sweep + "'");
        nlohmann::json j;
        try {
            file >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ValidationError(std::string("malformed sweep file: ") + e.what());
        }
        sweep = Sweep::fromJson(j);
    }
    if (global.seed)
        sweep.seed = *global.seed;
    if (global.tail)
        sweep.policy = global.policy();

    const auto checks = runSuite(sweep);
    if (opt.json)
        writeJsonReport(out, checks);
    else
        writeTextReport(out, checks);
    return allPassed(checks) ? kExitSuccess : kExitVerification;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Periodic Gaussian functions of discrete variables: tabulation, DFT, Wigner functions, identity checks",
                 "pgauss"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions global;
    app.add_option("--format", global.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", global.out, "Write output to PATH instead of stdout");
    app.add_option("--tail", global.tail, "Relative tail bound for lattice sums (default 1e-15)");
    app.add_option("--seed", global.seed, "Seed for sampled checks (default 1)");

    EvalOptions evalOpt;
    auto* eval = app.add_subcommand("eval", "Tabulate a periodic Gaussian on the centered grid");
    eval->add_option("--family", evalOpt.family, "g1d, g1d-plus, g1d-theta or g2d")->required();
    eval->add_option("--kappa", evalOpt.kappa, "Width parameter, decimal or ratio such as 4/3");
    eval->add_option("--sigma", evalOpt.sigma, "Matrix entries a,b,c");
    eval->add_option("--shift", evalOpt.shift, "Two-variable family: 00, +0, 0+ or ++");
    eval->add_option("--d", evalOpt.d, "Odd grid size")->required();
    eval->add_option("--from", evalOpt.from, "First index (default -j)");
    eval->add_option("--to", evalOpt.to, "Last index (default j)");

    WignerOptions wignerOpt;
    auto* wigner = app.add_subcommand("wigner", "Discrete Wigner function of a periodic Gaussian");
    wigner->add_option("--rank", wignerOpt.rank, "1 (kappa) or 2 (sigma)");
    wigner->add_option("--kappa", wignerOpt.kappa, "Width parameter for rank 1");
    wigner->add_option("--sigma", wignerOpt.sigma, "Matrix entries a,b,c for rank 2");
    wigner->add_option("--d", wignerOpt.d, "Odd grid size")->required();
    wigner->add_option("--method", wignerOpt.method, "transform, closed or correspondence");

    DftOptions dftOpt;
    auto* dft = app.add_subcommand("dft", "Centered unitary DFT of a CSV grid");
    dft->add_option("--in", dftOpt.input, "Input CSV ('-' for stdin)")->required();
    dft->add_option("--rank", dftOpt.rank, "Grid rank, 1 or 2");
    dft->add_flag("--inverse", dftOpt.inverse, "Apply the inverse transform");

    VerifyOptions verifyOpt;
    auto* verify = app.add_subcommand("verify", "Run the identity suite");
    verify->add_option("--sweep", verifyOpt.sweep, "JSON sweep file (default sweep otherwise)");
    verify->add_flag("--json", verifyOpt.json, "Emit JSON lines");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }

    std::ostringstream buffer;
    int status = kExitSuccess;
    try {
        if (*eval)
            runEval(evalOpt, global, buffer);
        else if (*wigner)
            runWigner(wignerOpt, global, buffer);
        else if (*dft)
            runDft(dftOpt, global, buffer);
        else if (*verify)
            status = runVerify(verifyOpt, global, buffer);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const Error& e) {
        // Non-convergence or an imaginary residue: the request cannot be satisfied as given.
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }

    if (global.out.empty()) {
        out << buffer.str();
    } else {
        std::ofstream file(global.out);
        if (!(file << buffer.str()) || !file.flush()) {
            err << "error: cannot write '" << global.out << "'\n";
            return kExitIo;
        }
    }
    return status;
}

} // namespace pgauss::cli
