#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "pour/trial.hpp"

namespace pour::signal {

/// Writes one trial per file: '#'-prefixed header lines carrying name, H_mm,
/// D_mm, f_total_lbf, f_2pour_lbf, source_tag, then 60 Hz CSV rows
/// time_s,theta_deg,f_lbf. The same format ingests exported recordings from
/// external trial datasets.
void save_trial(const TrialRecord& trial, const std::filesystem::path& path);
TrialRecord load_trial(const std::filesystem::path& path);

enum class Split { Train, Validation };

struct ManifestEntry {
    std::string path; // relative to the manifest
    Split split = Split::Train;
};

/// Dataset manifest: optional '#' metadata lines (key: value), then rows
/// `path,split`. Metadata carries e.g. the demonstrator error statistics.
struct Manifest {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<ManifestEntry> entries;

    const std::string* find_meta(const std::string& key) const;
};

void save_manifest(const Manifest& manifest, const std::filesystem::path& path);
Manifest load_manifest(const std::filesystem::path& path);

/// Loads every trial of one split listed in a manifest.
std::vector<TrialRecord> load_split(const std::filesystem::path& manifest_path, Split split);

} // namespace pour::signal
