#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dmans/errors.hpp"

namespace dmans {

inline std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

inline std::vector<std::string> split_list(std::string_view s, char sep = ',')
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto end = s.find(sep, start);
        if (end == std::string_view::npos) end = s.size();
        auto item = trim(s.substr(start, end - start));
        if (!item.empty()) out.push_back(item);
        start = end + 1;
    }
    return out;
}

inline double parse_double(const std::string& text, const std::string& what)
{
    double value = 0.0;
    const char* begin = text.data();
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw ValidationError("cannot parse '" + text + "' as a number for " + what);
    return value;
}

// Flat "key = value" text with '#' comments. Repeated keys accumulate.
class KeyValueFile {
public:
    KeyValueFile() = default;

    static KeyValueFile parse(std::istream& in, const std::string& origin = "<stream>")
    {
        KeyValueFile kv;
        kv.origin_ = origin;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            auto text = trim(line);
            if (text.empty()) continue;
            auto eq = text.find('=');
            if (eq == std::string::npos)
                throw ValidationError(origin + ":" + std::to_string(lineno) + ": expected key = value");
            auto key = trim(std::string_view(text).substr(0, eq));
            auto value = trim(std::string_view(text).substr(eq + 1));
            if (key.empty())
                throw ValidationError(origin + ":" + std::to_string(lineno) + ": empty key");
            kv.entries_[key].push_back(value);
            kv.order_.push_back(key);
        }
        return kv;
    }

    static KeyValueFile parse_string(const std::string& text)
    {
        std::istringstream in(text);
        return parse(in);
    }

    static KeyValueFile load(const std::filesystem::path& path)
    {
        std::ifstream in(path);
        if (!in) throw ValidationError("cannot open " + path.string());
        return parse(in, path.string());
    }

    bool has(const std::string& key) const { return entries_.count(key) > 0; }

    const std::string& origin() const { return origin_; }

    std::vector<std::string> keys() const
    {
        std::vector<std::string> out;
        for (const auto& [k, v] : entries_) out.push_back(k);
        return out;
    }

    std::string get_string(const std::string& key) const
    {
        auto it = entries_.find(key);
        if (it == entries_.end()) throw ValidationError(origin_ + ": missing key '" + key + "'");
        if (it->second.size() != 1)
            throw ValidationError(origin_ + ": key '" + key + "' given more than once");
        return it->second.front();
    }

    std::string get_string(const std::string& key, const std::string& fallback) const
    {
        return has(key) ? get_string(key) : fallback;
    }

    double get_double(const std::string& key) const
    {
        return parse_double(get_string(key), origin_ + ": " + key);
    }

    double get_double(const std::string& key, double fallback) const
    {
        return has(key) ? get_double(key) : fallback;
    }

    // all values of a key, each split on commas
    std::vector<std::string> get_list(const std::string& key) const
    {
        std::vector<std::string> out;
        auto it = entries_.find(key);
        if (it == entries_.end()) return out;
        for (const auto& v : it->second)
            for (auto& item : split_list(v)) out.push_back(item);
        return out;
    }

    std::vector<double> get_double_list(const std::string& key) const
    {
        std::vector<double> out;
        for (const auto& s : get_list(key)) out.push_back(parse_double(s, origin_ + ": " + key));
        return out;
    }

private:
    std::string origin_;
    std::map<std::string, std::vector<std::string>> entries_;
    std::vector<std::string> order_;
};

}  // namespace dmans
