#include "pour/net/checkpoint.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "pour/errors.hpp"

namespace pour::net {

namespace {

using json = nlohmann::json;

json matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw io_error("checkpoint: expected 2-d array");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j.at(0).size());
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto& row = j.at(static_cast<std::size_t>(r));
        if (static_cast<Eigen::Index>(row.size()) != cols) {
            throw io_error("checkpoint: ragged matrix");
        }
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = row.at(static_cast<std::size_t>(c));
    }
    return m;
}

json vector_to_json(const Eigen::VectorXd& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

Eigen::VectorXd vector_from_json(const json& j) {
    if (!j.is_array()) throw io_error("checkpoint: expected 1-d array");
    Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = j.at(static_cast<std::size_t>(i));
    return v;
}

} // namespace

void ModelCheckpoint::validate() const {
    params.check_shapes();
    if (!(hyper.keep_prob > 0.0) || hyper.keep_prob > 1.0) {
        throw config_error("checkpoint: keep_prob must lie in (0, 1]");
    }
    if (lineage.empty()) throw config_error("checkpoint: lineage must be non-empty");
    if (normalizer.input_mean.size() != params.input_dim() ||
        normalizer.input_std.size() != params.input_dim()) {
        throw config_error("checkpoint: normalizer dimension mismatch");
    }
    if (!params.all_finite()) throw config_error("checkpoint: non-finite parameters");
}

std::string ModelCheckpoint::next_label() const {
    return "M" + std::to_string(lineage.size());
}

std::string checkpoint_to_json(const ModelCheckpoint& ckpt) {
    ckpt.validate();
    json j;
    j["format_version"] = ModelCheckpoint::kFormatVersion;
    j["hyper"] = {{"keep_prob", ckpt.hyper.keep_prob},
                  {"lr", ckpt.hyper.lr},
                  {"epochs", ckpt.hyper.epochs},
                  {"seed", ckpt.hyper.seed}};
    j["lineage"] = ckpt.lineage;
    j["output_normalization"] = ckpt.output_normalization;
    json layers = json::array();
    for (const auto& L : ckpt.params.layers) {
        json layer;
        layer["n"] = L.n;
        layer["d"] = L.d;
        layer["W_i"] = matrix_to_json(L.W_i);
        layer["W_f"] = matrix_to_json(L.W_f);
        layer["W_g"] = matrix_to_json(L.W_g);
        layer["W_o"] = matrix_to_json(L.W_o);
        layer["b_i"] = vector_to_json(L.b_i);
        layer["b_f"] = vector_to_json(L.b_f);
        layer["b_g"] = vector_to_json(L.b_g);
        layer["b_o"] = vector_to_json(L.b_o);
        layer["p_i"] = vector_to_json(L.p_i);
        layer["p_f"] = vector_to_json(L.p_f);
        layer["p_o"] = vector_to_json(L.p_o);
        layers.push_back(std::move(layer));
    }
    j["lstm_layers"] = std::move(layers);
    j["head"] = {{"W_y", vector_to_json(ckpt.params.head.W_y.transpose())},
                 {"b_y", ckpt.params.head.b_y}};
    j["normalizer"] = {{"input_mean", vector_to_json(ckpt.normalizer.input_mean)},
                       {"input_std", vector_to_json(ckpt.normalizer.input_std)},
                       {"output_mean", ckpt.normalizer.output_mean},
                       {"output_std", ckpt.normalizer.output_std}};
    return j.dump(2) + "\n";
}

ModelCheckpoint checkpoint_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw io_error(std::string("checkpoint: corrupt file: ") + e.what());
    }
    try {
        const int version = j.at("format_version");
        if (version != ModelCheckpoint::kFormatVersion) {
            throw io_error("checkpoint: unsupported format version " + std::to_string(version));
        }
        ModelCheckpoint ckpt;
        ckpt.hyper.keep_prob = j.at("hyper").at("keep_prob");
        ckpt.hyper.lr = j.at("hyper").at("lr");
        ckpt.hyper.epochs = j.at("hyper").at("epochs");
        ckpt.hyper.seed = j.at("hyper").at("seed");
        ckpt.lineage = j.at("lineage").get<std::vector<std::string>>();
        ckpt.output_normalization = j.at("output_normalization");
        ckpt.params.layers.clear();
        for (const auto& layer : j.at("lstm_layers")) {
            LstmParams L;
            L.n = layer.at("n");
            L.d = layer.at("d");
            L.W_i = matrix_from_json(layer.at("W_i"));
            L.W_f = matrix_from_json(layer.at("W_f"));
            L.W_g = matrix_from_json(layer.at("W_g"));
            L.W_o = matrix_from_json(layer.at("W_o"));
            L.b_i = vector_from_json(layer.at("b_i"));
            L.b_f = vector_from_json(layer.at("b_f"));
            L.b_g = vector_from_json(layer.at("b_g"));
            L.b_o = vector_from_json(layer.at("b_o"));
            L.p_i = vector_from_json(layer.at("p_i"));
            L.p_f = vector_from_json(layer.at("p_f"));
            L.p_o = vector_from_json(layer.at("p_o"));
            ckpt.params.layers.push_back(std::move(L));
        }
        ckpt.params.head.W_y = vector_from_json(j.at("head").at("W_y")).transpose();
        ckpt.params.head.b_y = j.at("head").at("b_y");
        ckpt.normalizer.input_mean = vector_from_json(j.at("normalizer").at("input_mean"));
        ckpt.normalizer.input_std = vector_from_json(j.at("normalizer").at("input_std"));
        ckpt.normalizer.output_mean = j.at("normalizer").at("output_mean");
        ckpt.normalizer.output_std = j.at("normalizer").at("output_std");
        ckpt.validate();
        return ckpt;
    } catch (const json::exception& e) {
        throw io_error(std::string("checkpoint: corrupt file: ") + e.what());
    }
}

void save_checkpoint(const ModelCheckpoint& ckpt, const std::filesystem::path& path) {
    std::ofstream f(path);
    if (!f) throw io_error("save_checkpoint: cannot open " + path.string());
    f << checkpoint_to_json(ckpt);
    if (!f) throw io_error("save_checkpoint: write failed for " + path.string());
}

ModelCheckpoint load_checkpoint(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw io_error("load_checkpoint: cannot open " + path.string());
    std::stringstream ss;
    ss << f.rdbuf();
    return checkpoint_from_json(ss.str());
}

} // namespace pour::net
