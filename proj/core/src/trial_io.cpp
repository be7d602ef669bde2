#include "pour/signal/trial_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "pour/errors.hpp"
#include "pour/numeric.hpp"

namespace pour::signal {

namespace {

double parse_double(const std::string& s, const char* what) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) {
        throw io_error(std::string("trial io: bad number for ") + what + ": '" + s + "'");
    }
    return v;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(trim(field));
    return out;
}

} // namespace

void save_trial(const TrialRecord& trial, const std::filesystem::path& path) {
    trial.validate();
    std::ofstream f(path);
    if (!f) throw io_error("save_trial: cannot open " + path.string());
    f << "# name: " << trial.container.name << "\n";
    f << "# H_mm: " << fmt_double(trial.container.height_mm) << "\n";
    f << "# D_mm: " << fmt_double(trial.container.diameter_mm) << "\n";
    f << "# f_total_lbf: " << fmt_double(trial.f_total_lbf) << "\n";
    f << "# f_2pour_lbf: " << fmt_double(trial.f_2pour_lbf) << "\n";
    f << "# source_tag: " << to_string(trial.source_tag) << "\n";
    f << "time_s,theta_deg,f_lbf\n";
    const PhysicalConstants c;
    for (std::size_t t = 0; t < trial.length(); ++t) {
        f << fmt_double(static_cast<double>(t) * c.dt_s) << ','
          << fmt_double(trial.theta_deg[t]) << ',' << fmt_double(trial.f_lbf[t]) << "\n";
    }
    if (!f) throw io_error("save_trial: write failed for " + path.string());
}

TrialRecord load_trial(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw io_error("load_trial: cannot open " + path.string());
    ContainerSpec container;
    double f_total = 0.0, f_2pour = 0.0;
    SourceTag tag = SourceTag::SyntheticDemo;
    std::vector<double> theta, force;
    std::string line;
    while (std::getline(f, line)) {
        line = trim(line);
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto colon = line.find(':');
            if (colon == std::string::npos) continue;
            const std::string key = trim(line.substr(1, colon - 1));
            const std::string value = trim(line.substr(colon + 1));
            if (key == "name") container.name = value;
            else if (key == "H_mm") container.height_mm = parse_double(value, "H_mm");
            else if (key == "D_mm") container.diameter_mm = parse_double(value, "D_mm");
            else if (key == "f_total_lbf") f_total = parse_double(value, "f_total_lbf");
            else if (key == "f_2pour_lbf") f_2pour = parse_double(value, "f_2pour_lbf");
            else if (key == "source_tag") tag = source_tag_from_string(value);
            continue;
        }
        if (line.rfind("time_s", 0) == 0) continue; // column header
        const auto fields = split_csv(line);
        if (fields.size() != 3) throw io_error("load_trial: malformed row in " + path.string());
        theta.push_back(parse_double(fields[1], "theta_deg"));
        force.push_back(parse_double(fields[2], "f_lbf"));
    }
    try {
        return make_trial(std::move(container), f_total, f_2pour,
                          std::move(theta), std::move(force), tag);
    } catch (const error& e) {
        throw io_error("load_trial: " + path.string() + ": " + e.what());
    }
}

const std::string* Manifest::find_meta(const std::string& key) const {
    for (const auto& [k, v] : metadata) {
        if (k == key) return &v;
    }
    return nullptr;
}

void save_manifest(const Manifest& manifest, const std::filesystem::path& path) {
    std::ofstream f(path);
    if (!f) throw io_error("save_manifest: cannot open " + path.string());
    for (const auto& [k, v] : manifest.metadata) f << "# " << k << ": " << v << "\n";
    f << "path,split\n";
    for (const auto& e : manifest.entries) {
        f << e.path << ',' << (e.split == Split::Train ? "train" : "validation") << "\n";
    }
    if (!f) throw io_error("save_manifest: write failed for " + path.string());
}

Manifest load_manifest(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw io_error("load_manifest: cannot open " + path.string());
    Manifest m;
    std::string line;
    while (std::getline(f, line)) {
        line = trim(line);
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto colon = line.find(':');
            if (colon == std::string::npos) continue;
            m.metadata.emplace_back(trim(line.substr(1, colon - 1)), trim(line.substr(colon + 1)));
            continue;
        }
        if (line.rfind("path,", 0) == 0) continue;
        const auto fields = split_csv(line);
        if (fields.size() != 2) throw io_error("load_manifest: malformed row in " + path.string());
        ManifestEntry e;
        e.path = fields[0];
        if (fields[1] == "train") e.split = Split::Train;
        else if (fields[1] == "validation") e.split = Split::Validation;
        else throw io_error("load_manifest: unknown split '" + fields[1] + "'");
        m.entries.push_back(std::move(e));
    }
    return m;
}

std::vector<TrialRecord> load_split(const std::filesystem::path& manifest_path, Split split) {
    const Manifest m = load_manifest(manifest_path);
    const auto base = manifest_path.parent_path();
    std::vector<TrialRecord> out;
    for (const auto& e : m.entries) {
        if (e.split == split) out.push_back(load_trial(base / e.path));
    }
    return out;
}

} // namespace pour::signal
