#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pour/errors.hpp"
#include "pour/net/checkpoint.hpp"

using namespace pour;
using namespace pour::net;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / "pour_ckpt_test") {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

ModelCheckpoint sample_checkpoint() {
    ModelCheckpoint ckpt;
    ckpt.params = NetParams::init(16, 6, 4242);
    ckpt.normalizer.input_mean = Eigen::VectorXd::LinSpaced(6, 0.1, 0.6);
    ckpt.normalizer.input_std = Eigen::VectorXd::Constant(6, 1.25);
    ckpt.normalizer.output_mean = 3.5;
    ckpt.normalizer.output_std = 11.0;
    ckpt.hyper = {0.5, 0.001, 2000, 777};
    return ckpt;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("save -> load -> save is byte-identical and lossless") {
    TempDir tmp;
    const auto ckpt = sample_checkpoint();
    save_checkpoint(ckpt, tmp.path / "a.json");
    const auto loaded = load_checkpoint(tmp.path / "a.json");
    save_checkpoint(loaded, tmp.path / "b.json");
    CHECK(slurp(tmp.path / "a.json") == slurp(tmp.path / "b.json"));

    // full double precision round trip
    bool equal = true;
    std::vector<std::pair<const double*, std::size_t>> av, bv;
    ckpt.params.for_each_tensor([&](const std::string&, const double* d, std::size_t s) {
        av.emplace_back(d, s);
    });
    loaded.params.for_each_tensor([&](const std::string&, const double* d, std::size_t s) {
        bv.emplace_back(d, s);
    });
    for (std::size_t k = 0; k < av.size(); ++k) {
        for (std::size_t i = 0; i < av[k].second; ++i) {
            if (av[k].first[i] != bv[k].first[i]) equal = false;
        }
    }
    CHECK(equal);
    CHECK(loaded.normalizer.output_std == ckpt.normalizer.output_std);
    CHECK(loaded.hyper.seed == ckpt.hyper.seed);
    CHECK(loaded.lineage == ckpt.lineage);
}

TEST_CASE("truncated file is a corrupt-checkpoint error") {
    TempDir tmp;
    save_checkpoint(sample_checkpoint(), tmp.path / "a.json");
    const std::string text = slurp(tmp.path / "a.json");
    std::ofstream f(tmp.path / "cut.json");
    f << text.substr(0, text.size() / 2);
    f.close();
    CHECK_THROWS_AS(load_checkpoint(tmp.path / "cut.json"), io_error);
}

TEST_CASE("unknown format version is refused") {
    TempDir tmp;
    save_checkpoint(sample_checkpoint(), tmp.path / "a.json");
    std::string text = slurp(tmp.path / "a.json");
    const auto pos = text.find("\"format_version\": 1");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, std::string("\"format_version\": 1").size(), "\"format_version\": 99");
    std::ofstream f(tmp.path / "v99.json");
    f << text;
    f.close();
    CHECK_THROWS_AS(load_checkpoint(tmp.path / "v99.json"), io_error);
}

TEST_CASE("lineage is preserved and extended") {
    auto ckpt = sample_checkpoint();
    CHECK(ckpt.lineage == std::vector<std::string>{"M0"});
    CHECK(ckpt.next_label() == "M1");
    ckpt.lineage.push_back(ckpt.next_label());
    CHECK(ckpt.next_label() == "M2");
    TempDir tmp;
    save_checkpoint(ckpt, tmp.path / "m1.json");
    CHECK(load_checkpoint(tmp.path / "m1.json").lineage ==
          std::vector<std::string>{"M0", "M1"});
}

TEST_CASE("validation rejects broken checkpoints") {
    auto bad_keep = sample_checkpoint();
    bad_keep.hyper.keep_prob = 0.0;
    CHECK_THROWS_AS(bad_keep.validate(), config_error);

    auto bad_lineage = sample_checkpoint();
    bad_lineage.lineage.clear();
    CHECK_THROWS_AS(bad_lineage.validate(), config_error);

    auto bad_norm = sample_checkpoint();
    bad_norm.normalizer.input_mean = Eigen::VectorXd::Zero(4);
    CHECK_THROWS_AS(bad_norm.validate(), config_error);
}
