#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pkepler/config.hpp"

namespace pkepler {

struct RunResult {
  std::vector<std::string> files_written;
  std::optional<double> max_deviation;  // compare mode
  std::optional<double> max_drift;      // conserve-report mode
};

// Executes the configured run and writes its CSV outputs.  Module rejections
// propagate as exceptions carrying the originating operation name.
RunResult run(const RunConfig& cfg);

}  // namespace pkepler
