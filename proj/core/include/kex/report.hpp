#ifndef KEX_REPORT_HPP
#define KEX_REPORT_HPP

#include <string>
#include <vector>

#include "kex/analysis.hpp"

namespace kex {

// Compact numeric formatting for CSV cells: integers print without a
// decimal point, everything else with up to 12 significant digits.
std::string format_number(double x);

// Schema: agent,mean,variance,se_mean,se_var,trials
// Exact mode leaves the se columns empty and reports the enumeration's
// outcome count in the trials column.
std::string stats_csv(const UtilityDistribution& dist);
std::string stats_csv(const MomentsReport& report);

// Schema: agent,hidden_set,truthful_eu,deviating_eu,gain
// hidden_set is semicolon-joined original vertex ids, empty for the empty set.
std::string deviate_csv(const DeviationReport& report);

// Write via a temporary file in the same directory, then rename.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace kex

#endif
