#include "pour/harness/export.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "pour/errors.hpp"
#include "pour/numeric.hpp"

namespace pour::harness {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream f(path);
    if (!f) throw io_error("export: cannot open " + path.string());
    return f;
}

double field_to_double(const std::string& s) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) {
        throw io_error("report csv: bad number '" + s + "'");
    }
    return v;
}

} // namespace

PlotStyle plot_style_from_string(const std::string& s) {
    if (s == "target_vs_actual") return PlotStyle::TargetVsActual;
    if (s == "trajectory") return PlotStyle::Trajectory;
    if (s == "error_bars") return PlotStyle::ErrorBars;
    throw validation_error("unknown plot style '" + s + "'");
}

void write_report_csv(const EvalReport& report, const std::filesystem::path& path) {
    auto f = open_out(path);
    f << "target_ml,actual_ml,signed_error_ml,duration_s,settled\n";
    for (std::size_t i = 0; i < report.stats.per_trial.size(); ++i) {
        const auto& p = report.stats.per_trial[i];
        f << fmt_double(p.target_ml) << ',' << fmt_double(p.actual_ml) << ','
          << fmt_double(p.signed_error_ml) << ',' << fmt_double(report.durations_s[i]) << ','
          << (report.settled[i] ? "1" : "0") << "\n";
    }
}

std::vector<PourOutcome> read_report_csv(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw io_error("read_report_csv: cannot open " + path.string());
    std::vector<PourOutcome> out;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty() || line.rfind("target_ml", 0) == 0) continue;
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() < 3) throw io_error("read_report_csv: malformed row");
        out.push_back({field_to_double(fields[0]), field_to_double(fields[1]),
                       field_to_double(fields[2])});
    }
    return out;
}

void export_target_vs_actual(const EvalReport& report, const std::filesystem::path& path) {
    auto f = open_out(path);
    f << "target_ml,actual_ml,zero_error_ref_ml\n";
    for (const auto& p : report.stats.per_trial) {
        f << fmt_double(p.target_ml) << ',' << fmt_double(p.actual_ml) << ','
          << fmt_double(p.target_ml) << "\n";
    }
}

void export_trajectory(const control::PourResult& pour, const std::filesystem::path& path) {
    if (pour.trajectory.empty()) {
        throw validation_error("export_trajectory: pour carries no trajectory dump");
    }
    auto f = open_out(path);
    f << "t_s,theta_deg,omega_dps,v_source_ml,v_recv_ml,f_meas_lbf\n";
    for (const auto& row : pour.trajectory) {
        f << fmt_double(row[0]) << ',' << fmt_double(row[1]) << ',' << fmt_double(row[2]) << ','
          << fmt_double(row[3]) << ',' << fmt_double(row[4]) << ',' << fmt_double(row[5]) << "\n";
    }
}

void export_error_bars(const std::vector<EvalReport>& reports,
                       const std::filesystem::path& path) {
    auto f = open_out(path);
    f << "container,model,mu_e_ml,sigma_e_ml\n";
    for (const auto& r : reports) {
        f << r.container << ',' << r.model_label << ',' << fmt_double(r.stats.mu_e_ml) << ','
          << fmt_double(r.stats.sigma_e_ml) << "\n";
    }
}

} // namespace pour::harness
