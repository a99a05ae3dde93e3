#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "secrecylab/probability.hpp"

namespace secrecylab {

// File schemas (decimal reals, "inf" for infinity):
//   pmf     {"alphabet": [...], "probs": [...]}
//   channel {"input_alphabet": [...], "output_alphabet": [...], "rows": [[...], ...]}
//   joint   {"row_alphabet": [...], "col_alphabet": [...], "table": [[...], ...]}
// Row order follows the input alphabet order.

using Json = nlohmann::ordered_json;

Json load_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& value);

Pmf pmf_from_json(const Json& j);
Channel channel_from_json(const Json& j);
JointPmf joint_from_json(const Json& j);

Json pmf_to_json(const Pmf& p);
Json channel_to_json(const Channel& ch);
Json joint_to_json(const JointPmf& joint);

// Real number encoding shared by every emitter: finite values stay numeric,
// infinities become the strings "inf"/"-inf".
Json real_to_json(double value);
double real_from_json(const Json& j);

}  // namespace secrecylab
