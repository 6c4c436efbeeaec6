#pragma once

#include <span>
#include <string>

#include <json.hpp>

#include "levylab/gsd.hpp"
#include "levylab/mc.hpp"

namespace levylab {

using ordered_json = nlohmann::ordered_json;

std::string format_p(double p);

ordered_json mc_record(const std::string& model_id, const std::string& potential_desc,
                       std::span<const double> x0, double t, const McEstimate& est);

ordered_json gsd_record(const GsdReport& report);

std::string gsd_csv(const GsdReport& report);

ordered_json manifest_record(std::uint64_t config_hash, std::uint64_t seed,
                             const std::string& command,
                             const std::vector<std::string>& artifacts);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace levylab
