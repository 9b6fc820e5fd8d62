#pragma once

#include <string>

#include <json.hpp>

#include "vablocks/blocks.hpp"
#include "vablocks/intertwiner.hpp"
#include "vablocks/voa.hpp"

namespace vablocks {

using nlohmann::json;

// VOA file: {"l_max", "weights": [[names]], "vacuum", "omega",
// "central_charge", "products": [{"a", "n", "b", "result": [{"basis",
// "coeff"}]}]}.  Scalars are "p/q" strings throughout.
TruncatedVOA load_voa(const json& j);
json save_voa(const TruncatedVOA& v);

// Module file: {"h", "depth", "l_mod", "levels": [[names]],
// "l0": [per-level matrices], "actions": [{"a", "n", "u", "result": ...}]}
LogModule load_module(const json& j, const TruncatedVOA& voa, const std::string& name);
json save_module(const LogModule& m);

// Intertwiner table: {"d", "budget", "layers": [{"n", "alpha_offset",
// "blocks": [{"level1", "level2", "matrix"}]}]} with level3 = level1 +
// level2 - 1 - alpha_offset and matrix indexed by (i1*dim2+i2, i3).
json save_intw(const IntwTable& t);
IntwTable load_intw(const json& j, std::shared_ptr<const TriWindow> win);

json blocks_report_json(const BlocksReport& rep);
json check_report_json(const std::string& name, const CheckReport& rep);

json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

} // namespace vablocks
