#include "carlab/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace carlab {

namespace {
std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}
}  // namespace

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, "cannot open config file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str());
}

Config Config::parse_string(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno), "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw ConfigError("line " + std::to_string(lineno), "empty section name");
            cfg.data_[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno), "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("line " + std::to_string(lineno), "empty key");
        cfg.data_[section][key] = val;
    }
    return cfg;
}

bool Config::has(const std::string& section, const std::string& key) const {
    auto it = data_.find(section);
    return it != data_.end() && it->second.count(key) > 0;
}

std::string Config::get_str(const std::string& section, const std::string& key) const {
    auto it = data_.find(section);
    if (it == data_.end() || !it->second.count(key))
        throw ConfigError(section + "." + key, "missing required field");
    return it->second.at(key);
}

std::string Config::get_str(const std::string& section, const std::string& key,
                            const std::string& fallback) const {
    return has(section, key) ? get_str(section, key) : fallback;
}

long long Config::get_int(const std::string& section, const std::string& key) const {
    const std::string v = get_str(section, key);
    char* end = nullptr;
    const long long out = std::strtoll(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError(section + "." + key, "expected an integer, got '" + v + "'");
    return out;
}

long long Config::get_int(const std::string& section, const std::string& key,
                          long long fallback) const {
    return has(section, key) ? get_int(section, key) : fallback;
}

double Config::get_double(const std::string& section, const std::string& key) const {
    const std::string v = get_str(section, key);
    char* end = nullptr;
    const double out = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError(section + "." + key, "expected a number, got '" + v + "'");
    return out;
}

double Config::get_double(const std::string& section, const std::string& key,
                          double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
}

ExtRat parse_extrat(const std::string& text) {
    const std::string v = trim(text);
    if (v == "inf" || v == "infinity") return ExtRat::infinity();
    const auto slash = v.find('/');
    auto parse_ll = [](const std::string& s) {
        char* end = nullptr;
        const long long out = std::strtoll(s.c_str(), &end, 10);
        if (end == s.c_str() || *end != '\0')
            throw std::invalid_argument("expected an integer or a/b fraction, got '" + s + "'");
        return out;
    };
    if (slash == std::string::npos) return ExtRat(Rat(parse_ll(v)));
    return ExtRat(Rat(parse_ll(v.substr(0, slash)), parse_ll(v.substr(slash + 1))));
}

ExtRat Config::get_extrat(const std::string& section, const std::string& key) const {
    try {
        return parse_extrat(get_str(section, key));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(section + "." + key, e.what());
    }
}

std::vector<double> Config::get_list(const std::string& section, const std::string& key) const {
    const std::string v = get_str(section, key);
    std::vector<double> out;
    std::istringstream in(v);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        char* end = nullptr;
        const double x = std::strtod(item.c_str(), &end);
        if (end == item.c_str() || *end != '\0')
            throw ConfigError(section + "." + key, "expected numbers, got '" + item + "'");
        out.push_back(x);
    }
    if (out.empty()) throw ConfigError(section + "." + key, "empty list");
    return out;
}

std::vector<long long> Config::get_int_list(const std::string& section,
                                            const std::string& key) const {
    std::vector<long long> out;
    for (double v : get_list(section, key)) {
        const auto i = static_cast<long long>(v);
        if (static_cast<double>(i) != v)
            throw ConfigError(section + "." + key, "expected integers");
        out.push_back(i);
    }
    return out;
}

}  // namespace carlab
