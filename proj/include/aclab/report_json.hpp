#pragma once

#include <json.hpp>

#include <ostream>
#include <string>

#include "aclab/checkers.hpp"
#include "aclab/hierarchy.hpp"
#include "aclab/witness.hpp"

namespace aclab {

using Json = nlohmann::ordered_json;

std::string rat_str(const Rat& q);
std::string format_double(double x);  // %.17g, the one float format everywhere

Json to_json(const Interval& box);
Json to_json(const IntervalFamily& family);
Json to_json(const ACClassSpec& cls);
Json to_json(const WitnessReport& report);
Json to_json(const Verdict& verdict);

/// One square per line: {"level":m,"index":k,"center":[..],"half_side":..}.
void write_squares_jsonl(const Hierarchy& h, std::ostream& os);
/// Header + one row per level: m, r_m, omega_m, total_measure,
/// max_child_side, r_omega_sq.
void write_level_stats_tsv(const Hierarchy& h, std::ostream& os);

std::string dump_json(const Json& j);

}  // namespace aclab
