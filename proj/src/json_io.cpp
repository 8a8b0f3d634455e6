#include "gausspetz/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace gausspetz {

using nlohmann::json;

json to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(m(r, c));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json to_json(const Vector& v) {
    json out = json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        out.push_back(v(k));
    }
    return out;
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty() || !j.front().is_array()) {
        throw std::invalid_argument("matrix_from_json: expected array of rows");
    }
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = static_cast<Eigen::Index>(j.front().size());
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const json& row = j.at(r);
        if (static_cast<Eigen::Index>(row.size()) != cols) {
            throw std::invalid_argument("matrix_from_json: ragged rows");
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            m(r, c) = row.at(c).get<double>();
        }
    }
    return m;
}

Vector vector_from_json(const json& j) {
    if (!j.is_array()) {
        throw std::invalid_argument("vector_from_json: expected array");
    }
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        v(k) = j.at(k).get<double>();
    }
    return v;
}

json to_json(const GaussianState& state) {
    return json{{"modes", state.n_modes},
                {"mean", to_json(state.mean)},
                {"cov", to_json(state.cov)}};
}

GaussianState state_from_json(const json& j) {
    GaussianState state(vector_from_json(j.at("mean")),
                        matrix_from_json(j.at("cov")));
    if (j.contains("modes") && j.at("modes").get<int>() != state.n_modes) {
        throw std::invalid_argument(
            "state_from_json: 'modes' disagrees with the matrix dimensions");
    }
    return state;
}

json to_json(const GaussianChannel& channel) {
    return json{{"X", to_json(channel.X)},
                {"Y", to_json(channel.Y)},
                {"delta", to_json(channel.delta)}};
}

GaussianChannel channel_from_json(const json& j) {
    return GaussianChannel(matrix_from_json(j.at("X")),
                           matrix_from_json(j.at("Y")),
                           vector_from_json(j.at("delta")));
}

json to_json(const DeficitReport& report) {
    return json{{"d_in", report.d_in},
                {"d_out", report.d_out},
                {"d_recovery", report.d_recovery},
                {"deficit", report.deficit},
                {"near_singular", report.near_singular}};
}

namespace {

json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open " + path);
    }
    json j;
    in >> j;
    return j;
}

}  // namespace

GaussianState load_state(const std::string& path) {
    return state_from_json(load_file(path));
}

GaussianChannel load_channel(const std::string& path) {
    return channel_from_json(load_file(path));
}

void write_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) {
        throw std::invalid_argument("cannot open " + path + " for writing");
    }
    out << j.dump(2) << "\n";
}

}  // namespace gausspetz
