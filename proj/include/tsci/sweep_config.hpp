#pragma once

#include "tsci/sweep.hpp"

#include "json.hpp"

namespace tsci {

/// Field names mirror SweepSpec; absent fields keep their defaults.
SweepSpec sweep_spec_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const SweepSpec& spec);

}  // namespace tsci
