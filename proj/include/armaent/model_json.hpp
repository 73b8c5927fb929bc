#pragma once

// JSON model description, schema_version 1.
//
// {
//   "schema_version": 1,
//   "d": 3, "p": 1, "r": 1, "q": 1,
//   "family": "gaussian" | "cauchy" | "laplace",
//   "A": [ [[..],[..],[..]], ... ],   // p matrices, row-major rows
//   "B": [ ... ],                     // r matrices (B_0 = I implied)
//   "D": [ ... ],                     // q matrices (D_0 = I implied)
//   "S_u": [[..],[..],[..]],
//   "S_w": [[..],[..],[..]]
// }

#include <fstream>
#include <string>

#include <json.hpp>

#include "armaent/model.hpp"

namespace armaent {

inline constexpr int model_schema_version = 1;

inline nlohmann::ordered_json to_json(const Mat& m) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Mat mat_from_json(const nlohmann::json& j, const std::string& field) {
    if (!j.is_array() || j.empty() || !j[0].is_array())
        throw std::invalid_argument(field + ": expected an array of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].size();
    Mat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            throw std::invalid_argument(field + ": ragged rows");
        for (std::size_t c = 0; c < cols; ++c) m(i, c) = j[i][c].get<double>();
    }
    return m;
}

inline nlohmann::ordered_json to_json(const ArmaControlModel& m) {
    nlohmann::ordered_json j;
    j["schema_version"] = model_schema_version;
    j["d"] = m.d;
    j["p"] = m.p;
    j["r"] = m.r;
    j["q"] = m.q;
    j["family"] = family_name(m.control.kind);
    j["A"] = nlohmann::ordered_json::array();
    for (const Mat& a : m.A) j["A"].push_back(to_json(a));
    j["B"] = nlohmann::ordered_json::array();
    for (const Mat& b : m.B) j["B"].push_back(to_json(b));
    j["D"] = nlohmann::ordered_json::array();
    for (const Mat& d : m.D) j["D"].push_back(to_json(d));
    j["S_u"] = to_json(m.control.scale);
    j["S_w"] = to_json(m.noise.scale);
    return j;
}

inline ArmaControlModel model_from_json(const nlohmann::json& j) {
    if (!j.contains("schema_version") || j["schema_version"].get<int>() != model_schema_version)
        throw std::invalid_argument("schema_version: expected " +
                                    std::to_string(model_schema_version));
    ArmaControlModel m;
    m.d = j.at("d").get<std::size_t>();
    m.p = j.at("p").get<std::size_t>();
    m.r = j.at("r").get<std::size_t>();
    m.q = j.at("q").get<std::size_t>();
    const auto fam = family_from_name(j.at("family").get<std::string>());
    if (!fam)
        throw std::invalid_argument("family: expected gaussian, cauchy or laplace");
    auto read_list = [&](const char* key, std::size_t count) {
        std::vector<Mat> out;
        if (!j.contains(key)) {
            if (count == 0) return out;
            throw std::invalid_argument(std::string(key) + ": missing");
        }
        std::size_t i = 0;
        for (const auto& mat : j.at(key))
            out.push_back(mat_from_json(mat, std::string(key) + "[" + std::to_string(i++) + "]"));
        return out;
    };
    m.A = read_list("A", m.p);
    m.B = read_list("B", m.r);
    m.D = read_list("D", m.q);
    m.control = {*fam, mat_from_json(j.at("S_u"), "S_u")};
    m.noise = {*fam, mat_from_json(j.at("S_w"), "S_w")};
    return m;
}

inline ArmaControlModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open model file: " + path);
    nlohmann::json j;
    in >> j;
    return model_from_json(j);
}

inline void save_model(const std::string& path, const ArmaControlModel& m) {
    std::ofstream out(path);
    if (!out) throw std::ios_base::failure("cannot open output file: " + path);
    out << to_json(m).dump(2) << '\n';
}

} // namespace armaent
