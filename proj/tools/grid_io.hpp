#ifndef PGAUSS_TOOLS_GRID_IO_HPP
#define PGAUSS_TOOLS_GRID_IO_HPP

#include "pgauss/core.hpp"
#include "pgauss/wigner.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace pgauss::cli
{

/// Values on the hypercube [lo, hi]^axes.size(), stored row-major with the
/// last axis fastest. Real tables print one `value` column, complex tables
/// print `re,im`.
struct GridTable
{
    std::vector<std::string> axes;
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    bool complex = false;
    std::vector<Complex> values;

    std::size_t side() const { return static_cast<std::size_t>(hi - lo + 1); }
};

GridTable tableFrom(const GridFunction& f, bool complex);
GridTable tableFrom(const WignerGrid& w);

/// "%.17g": reading the text back with strtod reproduces the double exactly.
std::string formatReal(double x);

void writeCsv(std::ostream& out, const GridTable& table);

/// {"meta": meta, "data": nested arrays in index order}; complex entries are [re, im].
void writeJson(std::ostream& out, const GridTable& table, const nlohmann::ordered_json& meta);

/// Reads `n,value`, `n,re,im`, `n1,n2,value` or `n1,n2,re,im` CSV. Every
/// centered index must appear exactly once; d is inferred from the row count.
/// Throws ValidationError naming the offending line.
GridFunction readGridCsv(std::istream& in, int rank);

} // namespace pgauss::cli

#endif
