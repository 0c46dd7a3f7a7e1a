#ifndef CARLAB_CONFIG_HPP
#define CARLAB_CONFIG_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "carlab/rational.hpp"

namespace carlab {

/// invalid configuration; carries the offending field for the exit-2 path
class ConfigError : public std::runtime_error {
  public:
    ConfigError(std::string field, const std::string& why)
        : std::runtime_error(field + ": " + why), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

  private:
    std::string field_;
};

/// Flat sectioned key = value text. '#' starts a comment; values may be
/// comma-separated lists; rationals accept "a/b" and "inf".
class Config {
  public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text);

    bool has(const std::string& section, const std::string& key) const;
    std::string get_str(const std::string& section, const std::string& key) const;
    std::string get_str(const std::string& section, const std::string& key,
                        const std::string& fallback) const;
    long long get_int(const std::string& section, const std::string& key) const;
    long long get_int(const std::string& section, const std::string& key, long long fallback) const;
    double get_double(const std::string& section, const std::string& key) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    ExtRat get_extrat(const std::string& section, const std::string& key) const;
    std::vector<double> get_list(const std::string& section, const std::string& key) const;
    std::vector<long long> get_int_list(const std::string& section, const std::string& key) const;

    const std::map<std::string, std::map<std::string, std::string>>& sections() const {
        return data_;
    }

  private:
    std::map<std::string, std::map<std::string, std::string>> data_;
};

/// parses "a/b", integers, and "inf"
ExtRat parse_extrat(const std::string& text);

}  // namespace carlab

#endif
