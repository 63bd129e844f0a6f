#include "grid_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace pgauss::cli
{

GridTable tableFrom(const GridFunction& f, bool complex)
{
    GridTable t;
    t.axes = f.rank() == 1 ? std::vector<std::string>{"n"} : std::vector<std::string>{"n1", "n2"};
    t.lo = -f.dim().half();
    t.hi = f.dim().half();
    t.complex = complex;
    t.values.assign(f.values().begin(), f.values().end());
    return t;
}

GridTable tableFrom(const WignerGrid& w)
{
    GridTable t;
    t.axes = w.rank() == 1 ? std::vector<std::string>{"n", "k"} : std::vector<std::string>{"n1", "n2", "k1", "k2"};
    t.lo = -w.dim().half();
    t.hi = w.dim().half();
    t.values.assign(w.values().begin(), w.values().end());
    return t;
}

std::string formatReal(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void writeCsv(std::ostream& out, const GridTable& table)
{
    for (const auto& axis : table.axes)
        out << axis << ',';
    out << (table.complex ? "re,im" : "value") << '\n';

    std::vector<std::int64_t> index(table.axes.size(), table.lo);
    for (const Complex& v : table.values) {
        for (auto i : index)
            out << i << ',';
        out << formatReal(v.real());
        if (table.complex)
            out << ',' << formatReal(v.imag());
        out << '\n';
        // odometer increment, last axis fastest
        for (std::size_t a = index.size(); a-- > 0;) {
            if (++index[a] <= table.hi)
                break;
            index[a] = table.lo;
        }
    }
}

namespace
{

nlohmann::ordered_json nested(const GridTable& table, std::size_t axis, std::size_t& cursor)
{
    auto data = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < table.side(); ++i) {
        if (axis + 1 < table.axes.size()) {
            data.push_back(nested(table, axis + 1, cursor));
        } else {
            const Complex v = table.values[cursor++];
            if (table.complex)
                data.push_back({v.real(), v.imag()});
            else
                data.push_back(v.real());
        }
    }
    return data;
}

[[noreturn]] void failAt(std::size_t line, const std::string& what)
{
    throw ValidationError("line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> splitCsv(const std::string& line)
{
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ','))
        fields.push_back(field);
    if (!line.empty() && line.back() == ',')
        fields.emplace_back();
    return fields;
}

std::string trimmed(std::string s)
{
    while (!s.empty() && (s.back() == '\r' || s.back() == ' '))
        s.pop_back();
    std::size_t start = 0;
    while (start < s.size() && s[start] == ' ')
        ++start;
    return s.substr(start);
}

bool parseInteger(const std::string& s, std::int64_t& out)
{
    if (s.empty())
        return false;
    char* end = nullptr;
    const long long v = std::strtoll(s.c_str(), &end, 10);
    if (*end != '\0')
        return false;
    out = v;
    return true;
}

bool parseDouble(const std::string& s, double& out)
{
    if (s.empty())
        return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return *end == '\0' && std::isfinite(out);
}

} // namespace

void writeJson(std::ostream& out, const GridTable& table, const nlohmann::ordered_json& meta)
{
    std::size_t cursor = 0;
    nlohmann::ordered_json doc;
    doc["meta"] = meta;
    doc["data"] = nested(table, 0, cursor);
    out << doc.dump() << '\n';
}

GridFunction readGridCsv(std::istream& in, int rank)
{
    if (rank != 1 && rank != 2)
        throw ValidationError("rank must be 1 or 2");
    std::string line;
    std::size_t lineNo = 0;
    if (!std::getline(in, line))
        throw ValidationError("line 1: empty input");
    ++lineNo;

    const auto header = splitCsv(trimmed(line));
    const std::vector<std::string> axes =
        rank == 1 ? std::vector<std::string>{"n"} : std::vector<std::string>{"n1", "n2"};
    std::vector<std::string> real = axes;
    real.push_back("value");
    std::vector<std::string> cplx = axes;
    cplx.push_back("re");
    cplx.push_back("im");
    bool complex = false;
    if (header == cplx)
        complex = true;
    else if (header != real)
        failAt(lineNo, "header must be '" + (rank == 1 ? std::string("n") : std::string("n1,n2")) +
                           ",value' or '...,re,im' for a rank-" + std::to_string(rank) + " grid");

    const std::size_t width = header.size();
    std::map<std::vector<std::int64_t>, std::pair<Complex, std::size_t>> rows;
    while (std::getline(in, line)) {
        ++lineNo;
        line = trimmed(line);
        if (line.empty())
            continue;
        const auto fields = splitCsv(line);
        if (fields.size() != width)
            failAt(lineNo, "expected " + std::to_string(width) + " fields, got " + std::to_string(fields.size()));
        std::vector<std::int64_t> idx(axes.size());
        for (std::size_t a = 0; a < axes.size(); ++a)
            if (!parseInteger(trimmed(fields[a]), idx[a]))
                failAt(lineNo, "index '" + fields[a] + "' is not an integer");
        double re = 0.0;
        double im = 0.0;
        if (!parseDouble(trimmed(fields[axes.size()]), re) ||
            (complex && !parseDouble(trimmed(fields[axes.size() + 1]), im)))
            failAt(lineNo, "value is not a finite number");
        if (!rows.emplace(idx, std::make_pair(Complex(re, im), lineNo)).second)
            failAt(lineNo, "duplicate index");
    }

    const std::size_t count = rows.size();
    std::size_t d = 0;
    if (rank == 1) {
        d = count;
    } else {
        d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(count))));
        if (d * d != count)
            throw ValidationError("rank-2 grid needs d^2 rows, got " + std::to_string(count));
    }
    const Dimension dim(static_cast<int>(d));
    GridFunction f(dim, rank);
    const std::int64_t j = dim.half();
    for (const auto& [idx, entry] : rows) {
        for (auto i : idx)
            if (i < -j || i > j)
                failAt(entry.second, "index " + std::to_string(i) + " outside -" + std::to_string(j) + ".." +
                                         std::to_string(j));
        if (rank == 1)
            f.at(idx[0]) = entry.first;
        else
            f.at(idx[0], idx[1]) = entry.first;
    }
    return f;
}

} // namespace pgauss::cli
