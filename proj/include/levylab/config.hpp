#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "levylab/gsd.hpp"
#include "levylab/levy.hpp"
#include "levylab/mc.hpp"
#include "levylab/potential.hpp"

namespace levylab {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Config {
  public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text);

    bool has(const std::string& section, const std::string& key) const;
    std::string get(const std::string& section, const std::string& key,
                    const std::string& fallback) const;
    std::string require(const std::string& section, const std::string& key) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    std::int64_t get_int(const std::string& section, const std::string& key,
                         std::int64_t fallback) const;
    std::vector<double> get_list(const std::string& section, const std::string& key,
                                 const std::vector<double>& fallback) const;

    std::uint64_t hash() const;
    const std::map<std::string, std::map<std::string, std::string>>& sections() const {
        return data_;
    }

  private:
    std::map<std::string, std::map<std::string, std::string>> data_;
};

double parse_double_token(const std::string& token);

LevyModel model_from_config(const Config& cfg);
Potential potential_from_config(const Config& cfg);
Grid grid_from_config(const Config& cfg);
ScanConfig scan_from_config(const Config& cfg);
McConfig mc_from_config(const Config& cfg);

}  // namespace levylab
