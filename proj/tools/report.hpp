#pragma once

#include <string>
#include <vector>

namespace spinorlz::cli {

struct ReportLine
{
  std::string name;
  double computed = 0.0;
  double expected = 0.0;
  std::string tolerance; // human-readable rule, e.g. "rel 1%" or "<= 0.01"
  bool pass = false;
};

/// Recomputes every published reference number the library is expected to
/// reproduce, with its acceptance rule.
std::vector<ReportLine> reproduction_report(const std::string& species_dir);

} // namespace spinorlz::cli
