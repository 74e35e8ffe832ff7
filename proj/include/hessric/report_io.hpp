#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "hessric/flow.hpp"
#include "hessric/verify.hpp"

namespace hessric {

using ordered_json = nlohmann::ordered_json;

// Deterministic report body; timestamp and duration live under "meta" so
// golden-file comparisons can drop them wholesale.
ordered_json report_to_json(const VerificationReport& report);
ordered_json config_to_json(const ToleranceConfig& config);

std::string render_report_text(const VerificationReport& report);
std::string render_report_csv_rows(const VerificationReport& report);
std::string report_csv_header();

ordered_json flow_summary_json(const FlowTrace& trace, const ProfileFit& fit, bool range_ok, bool pass);
std::string render_flow_summary_text(const FlowTrace& trace, const ProfileFit& fit, bool range_ok, bool pass);

// Columns: t, coord_1..coord_n, y, grad_norm.
void write_trace_csv(std::ostream& os, const FlowTrace& trace);

}  // namespace hessric
