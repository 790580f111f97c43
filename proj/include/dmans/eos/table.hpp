#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "dmans/errors.hpp"
#include "dmans/keyvalue.hpp"

namespace dmans::eos {

enum class Segment { crust, core };

inline const char* to_string(Segment s) { return s == Segment::crust ? "crust" : "core"; }

inline Segment segment_from(const std::string& s)
{
    if (s == "crust") return Segment::crust;
    if (s == "core") return Segment::core;
    throw ValidationError("unknown segment tag '" + s + "'");
}

struct EosRow {
    double rho_b = 0;     // fm^-3
    double epsilon = 0;   // MeV fm^-3
    double pressure = 0;  // MeV fm^-3
    double cs2 = 0;
    Segment segment = Segment::core;
};

struct EOSTable {
    std::vector<EosRow> rows;
    double dm_kf = 0.0;  // GeV
    std::string model_name;

    std::size_t size() const { return rows.size(); }
    bool empty() const { return rows.empty(); }
    const EosRow& operator[](std::size_t i) const { return rows[i]; }
    const EosRow& front() const { return rows.front(); }
    const EosRow& back() const { return rows.back(); }
    bool dm_admixed() const { return dm_kf > 0; }
};

// Index of the first row that breaks strict monotonicity in (rho, eps, P), or size().
inline std::size_t first_non_monotone(const EOSTable& t)
{
    for (std::size_t i = 1; i < t.size(); ++i) {
        const auto& a = t.rows[i - 1];
        const auto& b = t.rows[i];
        if (!(b.rho_b > a.rho_b) || !(b.epsilon > a.epsilon) || !(b.pressure > a.pressure)) return i;
    }
    return t.size();
}

inline void validate_monotone(const EOSTable& t)
{
    if (t.empty()) throw ValidationError(t.model_name + ": empty EOS table");
    if (auto i = first_non_monotone(t); i != t.size())
        throw ValidationError(t.model_name + ": EOS table not strictly increasing at row " + std::to_string(i));
}

inline const char* csv_header = "rho_b_fm3,energy_density_MeV_fm3,pressure_MeV_fm3,cs2,segment";

inline std::string format_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

inline void write_csv(const EOSTable& t, std::ostream& out, const std::string& stamp = {})
{
    if (!stamp.empty()) out << "# " << stamp << '\n';
    out << csv_header << '\n';
    for (const auto& r : t.rows)
        out << format_number(r.rho_b) << ',' << format_number(r.epsilon) << ',' << format_number(r.pressure) << ','
            << format_number(r.cs2) << ',' << to_string(r.segment) << '\n';
}

inline EOSTable read_csv(std::istream& in, const std::string& origin = "<stream>")
{
    EOSTable t;
    std::string line;
    bool header = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto text = trim(line);
        if (text.empty() || text[0] == '#') continue;
        if (!header) {
            if (text != csv_header) throw ValidationError(origin + ": unexpected EOS header '" + text + "'");
            header = true;
            continue;
        }
        auto cols = split_list(text);
        if (cols.size() != 5) throw ValidationError(origin + ":" + std::to_string(lineno) + ": expected 5 columns");
        const std::string where = origin + ":" + std::to_string(lineno);
        t.rows.push_back({parse_double(cols[0], where), parse_double(cols[1], where), parse_double(cols[2], where),
                          parse_double(cols[3], where), segment_from(cols[4])});
    }
    if (!header) throw ValidationError(origin + ": missing EOS header");
    return t;
}

inline EOSTable load_table(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path.string());
    auto t = read_csv(in, path.string());
    t.model_name = path.stem().string();
    return t;
}

}  // namespace dmans::eos
