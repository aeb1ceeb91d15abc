#pragma once

#include <json.hpp>

#include "gpe/config.hpp"

namespace gpe::detail {

nlohmann::json config_to_json(const CampaignConfig& config, bool include_execution);

}  // namespace gpe::detail
