#include "hessric/report_io.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

namespace hessric {

ordered_json config_to_json(const ToleranceConfig& config) {
    return ordered_json{{"samples", config.samples},
                        {"seed", config.seed},
                        {"jet_order", config.jet_order},
                        {"tol_identity", config.tol_identity},
                        {"tol_ode_limited", config.tol_ode_limited},
                        {"tol_negative_control", config.tol_negative_control}};
}

ordered_json report_to_json(const VerificationReport& report) {
    ordered_json checks = ordered_json::array();
    for (const auto& c : report.checks) {
        ordered_json jc{{"id", c.check_id},
                        {"points", c.num_points},
                        {"max_residual", c.max_residual},
                        {"mean_residual", c.mean_residual},
                        {"pass", c.pass}};
        if (!c.note.empty()) jc["note"] = c.note;
        checks.push_back(std::move(jc));
    }
    return ordered_json{{"case", report.case_name},
                        {"checks", std::move(checks)},
                        {"pass", report.pass},
                        {"config", config_to_json(report.config)},
                        {"meta", ordered_json{{"timestamp", report.timestamp}, {"duration_ms", report.duration_ms}}}};
}

std::string render_report_text(const VerificationReport& report) {
    std::ostringstream os;
    os << "case " << report.case_name << ": " << (report.pass ? "PASS" : "FAIL") << "\n";
    for (const auto& c : report.checks) {
        os << "  " << (c.pass ? "[pass]" : "[FAIL]") << " " << std::left << std::setw(24) << c.check_id
           << " points=" << std::setw(4) << c.num_points << " max=" << std::scientific << std::setprecision(3)
           << c.max_residual << " mean=" << c.mean_residual << std::defaultfloat;
        if (!c.note.empty()) os << "  (" << c.note << ")";
        os << "\n";
    }
    return os.str();
}

std::string report_csv_header() { return "case,check,points,max_residual,mean_residual,pass\n"; }

std::string render_report_csv_rows(const VerificationReport& report) {
    std::ostringstream os;
    os << std::setprecision(17);
    for (const auto& c : report.checks) {
        os << report.case_name << ',' << c.check_id << ',' << c.num_points << ',' << c.max_residual << ','
           << c.mean_residual << ',' << (c.pass ? "true" : "false") << "\n";
    }
    return os.str();
}

ordered_json flow_summary_json(const FlowTrace& trace, const ProfileFit& fit, bool range_ok, bool pass) {
    const char* termination = trace.termination == FlowTermination::RangeExhausted ? "range-exhausted"
                              : trace.termination == FlowTermination::NearCritical ? "near-critical"
                                                                                   : "left-domain";
    ordered_json j{{"case", trace.case_name},
                   {"family", family_name(fit.family)},
                   {"phase", fit.phase},
                   {"rms", fit.rms_error},
                   {"range_ok", range_ok},
                   {"pass", pass},
                   {"samples", trace.samples.size()},
                   {"termination", termination}};
    if (fit.family == ProfileFamily::Exp) j["coefficient"] = std::exp(fit.phase);
    if (fit.family == ProfileFamily::Cosh) j["profile_min"] = 1.0;
    if (fit.family == ProfileFamily::Cosine) {
        j["profile_min"] = -1.0;
        j["profile_max"] = 1.0;
    }
    return j;
}

std::string render_flow_summary_text(const FlowTrace& trace, const ProfileFit& fit, bool range_ok, bool pass) {
    std::ostringstream os;
    os << "flow " << trace.case_name << ": " << (pass ? "PASS" : "FAIL") << "\n"
       << "  family    " << family_name(fit.family) << "\n"
       << "  phase     " << std::setprecision(12) << fit.phase << "\n"
       << "  rms       " << std::scientific << std::setprecision(3) << fit.rms_error << std::defaultfloat << "\n"
       << "  range_ok  " << (range_ok ? "true" : "false") << "\n"
       << "  samples   " << trace.samples.size() << "\n";
    return os.str();
}

void write_trace_csv(std::ostream& os, const FlowTrace& trace) {
    os << "t";
    for (std::size_t i = 0; i < trace.start.size(); ++i) os << ",coord_" << (i + 1);
    os << ",y,grad_norm\n";
    os << std::setprecision(17);
    for (const auto& s : trace.samples) {
        os << s.t;
        for (double c : s.x) os << ',' << c;
        os << ',' << s.y << ',' << s.grad_norm << "\n";
    }
}

}  // namespace hessric
