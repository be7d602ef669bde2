#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "pour/errors.hpp"
#include "pour/signal/trial_io.hpp"

using namespace pour;
using namespace pour::signal;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / "pour_trial_io_test") {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

TrialRecord sample_trial() {
    std::vector<double> theta = {1.25, 2.0, 3.5, 5.0, 6.75, 7.0};
    std::vector<double> f = {0.0, 0.001, 0.02, 0.08, 0.11, 0.112};
    return make_trial({"cup-d", 110.0, 74.0}, 0.9, 0.11, theta, f, SourceTag::RobotPractice);
}

} // namespace

TEST_CASE("trial round trip preserves everything") {
    TempDir tmp;
    const auto trial = sample_trial();
    save_trial(trial, tmp.path / "t.csv");
    const auto back = load_trial(tmp.path / "t.csv");
    CHECK(back.container.name == trial.container.name);
    CHECK(back.container.height_mm == trial.container.height_mm);
    CHECK(back.container.diameter_mm == trial.container.diameter_mm);
    CHECK(back.f_total_lbf == trial.f_total_lbf);
    CHECK(back.f_2pour_lbf == trial.f_2pour_lbf);
    CHECK(back.source_tag == trial.source_tag);
    REQUIRE(back.theta_deg.size() == trial.theta_deg.size());
    for (std::size_t i = 0; i < trial.theta_deg.size(); ++i) {
        CHECK(back.theta_deg[i] == trial.theta_deg[i]); // shortest round-trip format
        CHECK(back.f_lbf[i] == trial.f_lbf[i]);
    }
    CHECK(back.omega_dps == trial.omega_dps);
}

TEST_CASE("malformed trial file") {
    TempDir tmp;
    std::ofstream f(tmp.path / "bad.csv");
    f << "# name: x\n# H_mm: 100\n# D_mm: 60\n";
    f << "time_s,theta_deg,f_lbf\n0.0,1.0\n";
    f.close();
    CHECK_THROWS_AS(load_trial(tmp.path / "bad.csv"), io_error);
    CHECK_THROWS_AS(load_trial(tmp.path / "missing.csv"), io_error);
}

TEST_CASE("manifest round trip and split loading") {
    TempDir tmp;
    save_trial(sample_trial(), tmp.path / "a.csv");
    save_trial(sample_trial(), tmp.path / "b.csv");
    save_trial(sample_trial(), tmp.path / "c.csv");
    Manifest m;
    m.metadata = {{"demonstrator_mu_e_ml", "11.5"}, {"n_trials", "3"}};
    m.entries = {{"a.csv", Split::Train}, {"b.csv", Split::Validation}, {"c.csv", Split::Train}};
    save_manifest(m, tmp.path / "manifest.csv");

    const auto back = load_manifest(tmp.path / "manifest.csv");
    REQUIRE(back.entries.size() == 3);
    CHECK(back.entries[1].split == Split::Validation);
    REQUIRE(back.find_meta("demonstrator_mu_e_ml") != nullptr);
    CHECK(*back.find_meta("demonstrator_mu_e_ml") == "11.5");
    CHECK(back.find_meta("absent") == nullptr);

    CHECK(load_split(tmp.path / "manifest.csv", Split::Train).size() == 2);
    CHECK(load_split(tmp.path / "manifest.csv", Split::Validation).size() == 1);
}
