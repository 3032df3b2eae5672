#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "zetafrac/errors.hpp"
#include "zetafrac/format.hpp"

namespace zetafrac {

struct ZeroSource {
    enum class Kind { ingested, computed } kind = Kind::ingested;
    std::string detail;
};

// Ascending ordinates of critical-line zeros, counted with multiplicity.
// accuracy is the uniform absolute error bound of the table; two entries
// within 2*accuracy of each other are treated as one zero repeated and
// recorded in duplicate_flags, not rejected.
struct ZeroList {
    std::vector<double> ordinates;
    ZeroSource source;
    double accuracy = 5e-10;
    std::vector<std::size_t> duplicate_flags;

    std::size_t count() const { return ordinates.size(); }
    double last() const { return ordinates.back(); }
};

enum class ZeroFormat { plain, odlyzko };

struct CountResult {
    long long count = 0;
    bool truncated = false;   // T beyond the table; count is a lower bound
};

struct ZeroCountReport {
    double T = 0.0;
    long long exact = 0;
    double main_term = 0.0;
    double residual = 0.0;
    bool flagged = false;
};

namespace detail {

struct StoreHeader {
    std::optional<double> accuracy;
    std::optional<long long> count;
    std::optional<std::string> source;
};

inline void scan_header_tokens(std::string_view line, StoreHeader& h) {
    std::size_t pos = 0;
    while (pos < line.size()) {
        std::size_t end = line.find_first_of(" \t,", pos);
        if (end == std::string_view::npos) end = line.size();
        std::string_view tok = line.substr(pos, end - pos);
        if (auto eq = tok.find('='); eq != std::string_view::npos) {
            std::string_view key = tok.substr(0, eq);
            std::string_view val = tok.substr(eq + 1);
            if (key == "accuracy") h.accuracy = parse_double(val);
            else if (key == "count") h.count = parse_int(val);
            else if (key == "source") h.source = std::string(val);
        }
        pos = end + 1;
    }
}

}

// Line-oriented ingest.  plain: one ordinate per line, '#' comments.
// odlyzko: additionally tolerates blank lines and a leading integer index
// column.  Ordering is verified, not assumed; violations beyond
// 2*accuracy are hard errors, anything smaller is sorted into place.
inline ZeroList ingest_zeros(std::istream& in, ZeroFormat format,
                             std::optional<double> accuracy = std::nullopt,
                             std::string source_detail = "stream") {
    ZeroList zl;
    zl.source = {ZeroSource::Kind::ingested, std::move(source_detail)};
    detail::StoreHeader header;
    std::string line;
    long long lineno = 0;
    std::vector<long long> line_of;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view s = trim(line);
        if (!s.empty() && s.front() == '#') {
            detail::scan_header_tokens(s.substr(1), header);
            continue;
        }
        if (s.empty()) {
            if (format == ZeroFormat::odlyzko) continue;
            fail_data("line " + std::to_string(lineno) + ": blank line in plain format");
        }
        std::string_view value_tok = s;
        if (format == ZeroFormat::odlyzko) {
            std::size_t sp = s.find_first_of(" \t");
            if (sp != std::string_view::npos) {
                std::string_view first = s.substr(0, sp);
                std::string_view rest = trim(s.substr(sp));
                if (rest.find_first_of(" \t") != std::string_view::npos)
                    fail_data("line " + std::to_string(lineno) + ": too many columns");
                if (!parse_int(first))
                    fail_data("line " + std::to_string(lineno)
                              + ": leading column is not an integer index");
                value_tok = rest;
            }
        }
        auto v = parse_double(value_tok);
        if (!v)
            fail_data("line " + std::to_string(lineno) + ": cannot parse \""
                      + std::string(value_tok) + "\" as a number");
        if (!(*v > 14.0))
            fail_data("line " + std::to_string(lineno)
                      + ": ordinate must exceed 14, got " + format_double(*v));
        zl.ordinates.push_back(*v);
        line_of.push_back(lineno);
    }
    if (zl.ordinates.empty()) fail_data("empty input");

    zl.accuracy = accuracy ? *accuracy
                : header.accuracy ? *header.accuracy : 5e-10;
    if (!(zl.accuracy > 0)) fail_usage("accuracy must be positive");
    if (header.count && *header.count != static_cast<long long>(zl.count()))
        fail_data("header count=" + std::to_string(*header.count)
                  + " does not match " + std::to_string(zl.count()) + " entries");

    double tol = 2.0 * zl.accuracy;
    for (std::size_t i = 1; i < zl.ordinates.size(); ++i) {
        if (zl.ordinates[i] < zl.ordinates[i - 1] - tol)
            fail_data("line " + std::to_string(line_of[i]) + ": ordering violation ("
                      + format_double(zl.ordinates[i]) + " after "
                      + format_double(zl.ordinates[i - 1]) + ")");
    }
    std::stable_sort(zl.ordinates.begin(), zl.ordinates.end());
    for (std::size_t i = 1; i < zl.ordinates.size(); ++i) {
        if (zl.ordinates[i] - zl.ordinates[i - 1] <= tol)
            zl.duplicate_flags.push_back(i);
    }
    return zl;
}

inline void serialize_zeros(const ZeroList& zl, std::ostream& out) {
    std::string src = (zl.source.kind == ZeroSource::Kind::ingested
                       ? "ingested:" : "computed:") + zl.source.detail;
    for (char& c : src) if (c == ' ' || c == '\t') c = '_';
    out << "# accuracy=" << format_double(zl.accuracy)
        << " count=" << zl.count()
        << " source=" << src << "\n";
    for (double g : zl.ordinates) out << format_double(g) << "\n";
}

inline CountResult count_upto(const ZeroList& zl, double T) {
    if (!(T > 0)) fail_usage("count_upto requires T > 0");
    auto it = std::upper_bound(zl.ordinates.begin(), zl.ordinates.end(), T);
    CountResult r;
    r.count = it - zl.ordinates.begin();
    r.truncated = T > zl.last() + zl.accuracy;
    return r;
}

// (T/2pi) log(T/2pi) - T/2pi: the smooth part of the zero count.
inline double rvm_main_term(double T) {
    if (!(T >= 1.0)) fail_usage("rvm_main_term requires T >= 1");
    double u = T / (2.0 * 3.14159265358979323846);
    return u * std::log(u) - u;
}

inline std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    std::vector<double> g;
    if (n == 0 || !(lo > 0) || !(hi >= lo)) return g;
    if (n == 1) { g.push_back(hi); return g; }
    double ratio = std::log(hi / lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i)
        g.push_back(lo * std::exp(ratio * static_cast<double>(i)));
    g.back() = hi;
    return g;
}

// Residual check against the smooth count on a grid of heights; C scales
// the allowed log T departure.  Diagnostic: flags, does not throw.
inline std::vector<ZeroCountReport> validate(const ZeroList& zl,
                                             const std::vector<double>& grid,
                                             double C = 2.0) {
    std::vector<ZeroCountReport> out;
    out.reserve(grid.size());
    for (double T : grid) {
        ZeroCountReport r;
        r.T = T;
        r.exact = count_upto(zl, T).count;
        r.main_term = rvm_main_term(T);
        r.residual = static_cast<double>(r.exact) - r.main_term;
        r.flagged = std::fabs(r.residual) > C * std::log(T);
        out.push_back(r);
    }
    return out;
}

}
