// Copyright 2026 The cvforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "cvforge/io.h"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cvforge {

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void write_covariance_csv(std::ostream &out, const RowMatrix &cov) {
    for (Eigen::Index r = 0; r < cov.rows(); r++) {
        for (Eigen::Index c = 0; c < cov.cols(); c++) {
            if (c) {
                out << ',';
            }
            out << format_double(cov(r, c));
        }
        out << '\n';
    }
}

namespace {

template <typename T>
void put_le(std::ostream &out, T value) {
    static_assert(std::is_integral_v<T>);
    unsigned char bytes[sizeof(T)];
    for (size_t i = 0; i < sizeof(T); i++) {
        bytes[i] = static_cast<unsigned char>((static_cast<uint64_t>(value) >> (8 * i)) & 0xFF);
    }
    out.write(reinterpret_cast<const char *>(bytes), sizeof(T));
}

template <typename T>
T get_le(std::istream &in) {
    unsigned char bytes[sizeof(T)];
    if (!in.read(reinterpret_cast<char *>(bytes), sizeof(T))) {
        throw std::runtime_error("covariance dump: truncated header or data");
    }
    uint64_t v = 0;
    for (size_t i = 0; i < sizeof(T); i++) {
        v |= static_cast<uint64_t>(bytes[i]) << (8 * i);
    }
    return static_cast<T>(v);
}

}  // namespace

void write_covariance_binary(std::ostream &out, const RowMatrix &cov) {
    if (cov.rows() != cov.cols() || cov.rows() % 2 != 0) {
        throw std::invalid_argument("covariance dump: matrix must be 2M x 2M");
    }
    out.write("CVCM", 4);
    put_le<uint32_t>(out, kCovarianceDumpVersion);
    put_le<uint64_t>(out, static_cast<uint64_t>(cov.rows() / 2));
    const double *data = cov.data();
    for (Eigen::Index i = 0; i < cov.size(); i++) {
        put_le<uint64_t>(out, std::bit_cast<uint64_t>(data[i]));
    }
}

RowMatrix read_covariance_binary(std::istream &in) {
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, "CVCM", 4) != 0) {
        throw std::runtime_error("covariance dump: bad magic");
    }
    uint32_t version = get_le<uint32_t>(in);
    if (version != kCovarianceDumpVersion) {
        throw std::runtime_error("covariance dump: unsupported version " + std::to_string(version));
    }
    uint64_t m = get_le<uint64_t>(in);
    const auto n = static_cast<Eigen::Index>(2 * m);
    RowMatrix cov(n, n);
    double *data = cov.data();
    for (Eigen::Index i = 0; i < cov.size(); i++) {
        data[i] = std::bit_cast<double>(get_le<uint64_t>(in));
    }
    return cov;
}

nlohmann::json mode_to_json(const ModeId &id) {
    return {{"nopa", to_string(id.nopa)}, {"field", to_string(id.field)}, {"freq", id.freq}, {"bin", id.bin}};
}

ModeId mode_from_json(const nlohmann::json &j) {
    ModeId id;
    std::string nopa = j.at("nopa").get<std::string>();
    if (nopa == "N1") {
        id.nopa = Nopa::kN1;
    } else if (nopa == "N2") {
        id.nopa = Nopa::kN2;
    } else {
        throw std::invalid_argument("unknown nopa '" + nopa + "'");
    }
    std::string field = j.at("field").get<std::string>();
    bool found = false;
    for (Field f : {Field::kSignal, Field::kIdler, Field::kInput, Field::kPlus, Field::kMinus}) {
        if (to_string(f) == field) {
            id.field = f;
            found = true;
        }
    }
    if (!found) {
        throw std::invalid_argument("unknown field '" + field + "'");
    }
    id.freq = j.at("freq").get<int32_t>();
    id.bin = j.at("bin").get<int32_t>();
    return id;
}

nlohmann::json registry_to_json(const ModeRegistry &registry) {
    nlohmann::json modes = nlohmann::json::array();
    for (size_t i = 0; i < registry.size(); i++) {
        nlohmann::json m = mode_to_json(registry.mode(i));
        m["index"] = i;
        m["edge"] = registry.is_edge(i);
        modes.push_back(std::move(m));
    }
    return {{"num_modes", registry.size()}, {"quadrature_order", "x_1..x_M,p_1..p_M"}, {"modes", std::move(modes)}};
}

ModeRegistry registry_from_json(const nlohmann::json &j) {
    std::vector<ModeId> modes;
    std::vector<bool> edge;
    for (const auto &m : j.at("modes")) {
        modes.push_back(mode_from_json(m));
        edge.push_back(m.value("edge", false));
    }
    return ModeRegistry(std::move(modes), std::move(edge));
}

void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    out << text;
    if (!out) {
        throw std::runtime_error("write to '" + path + "' failed");
    }
}

std::string read_text_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "' for reading");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace cvforge
