#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "pour/harness/evaluate.hpp"

namespace pour::harness {

enum class PlotStyle { TargetVsActual, Trajectory, ErrorBars };

PlotStyle plot_style_from_string(const std::string& s); // throws validation_error

/// Per-trial report rows target_ml,actual_ml,signed_error_ml,duration_s,settled.
void write_report_csv(const EvalReport& report, const std::filesystem::path& path);

/// Reads back what write_report_csv produced (metrics recomputation path).
std::vector<PourOutcome> read_report_csv(const std::filesystem::path& path);

/// target_ml,actual_ml,zero_error_ref_ml — the last column carries the
/// zero-error diagonal reference line.
void export_target_vs_actual(const EvalReport& report, const std::filesystem::path& path);

/// t_s,theta_deg,omega_dps,v_source_ml,v_recv_ml,f_meas_lbf for one recorded pour.
void export_trajectory(const control::PourResult& pour, const std::filesystem::path& path);

/// container,model,mu_e_ml,sigma_e_ml — one row per report.
void export_error_bars(const std::vector<EvalReport>& reports, const std::filesystem::path& path);

} // namespace pour::harness
