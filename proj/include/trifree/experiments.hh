#pragma once

#include <trifree/report.hh>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace trifree
{
    using Params = std::map<std::string, std::string>;

    struct PresetInfo
    {
        std::string id;
        std::string summary;
        /// parameter name -> default value
        std::vector<std::pair<std::string, std::string>> params;
    };

    auto presets() -> const std::vector<PresetInfo> &;

    /// Throws unknown-preset before doing any work, and invalid-argument on
    /// unknown or malformed parameters.
    auto run_experiment(const std::string & id, const Params & params, std::uint64_t seed) -> Report;
}
