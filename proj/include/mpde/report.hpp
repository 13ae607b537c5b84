#pragma once

#include "mpde/problem.hpp"

#include <json.hpp>

namespace mpde {

/// Structural analysis of a problem: branches at infinity, Newton polygon,
/// Gevrey orders, levels, sectors and the applicable summability case.
nlohmann::json analyze_report(const ProblemFile& pf);

}  // namespace mpde
