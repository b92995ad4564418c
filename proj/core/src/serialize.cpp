#include "relucost/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "relucost/errors.hpp"

namespace relucost {

std::string format_double(double v) {
    // Negative zero must keep a decimal point: a bare "-0" reads back as the
    // integer zero and the sign bit is lost.
    if (v == 0.0) return std::signbit(v) ? "-0.0" : "0";
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g", v);  // non-finite values land here
    return buf;
}

namespace {

void append_vector(std::string& out, const Eigen::VectorXd& v) {
    out += '[';
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += format_double(v[i]);
    }
    out += ']';
}

void append_matrix(std::string& out, const Eigen::MatrixXd& m) {
    out += '[';
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        if (r) out += ", ";
        out += '[';
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) out += ", ";
            out += format_double(m(r, c));
        }
        out += ']';
    }
    out += ']';
}

Eigen::VectorXd read_vector(const nlohmann::json& j, const char* field) {
    if (!j.is_array()) throw ParseError(std::string(field) + " must be an array", 0);
    Eigen::VectorXd v(j.size());
    Eigen::Index i = 0;
    for (const auto& e : j) {
        if (!e.is_number()) throw ParseError(std::string(field) + " must hold numbers", 0);
        v[i++] = e.get<double>();
    }
    return v;
}

Eigen::MatrixXd read_matrix(const nlohmann::json& j, const char* field) {
    if (!j.is_array() || j.empty()) throw ParseError(std::string(field) + " must be a non-empty 2-D array", 0);
    const std::size_t cols = j.front().is_array() ? j.front().size() : 0;
    if (cols == 0) throw ParseError(std::string(field) + " rows must be non-empty arrays", 0);
    Eigen::MatrixXd m(j.size(), cols);
    Eigen::Index r = 0;
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != cols)
            throw ParseError(std::string(field) + " rows must all have equal length", 0);
        Eigen::Index c = 0;
        for (const auto& e : row) {
            if (!e.is_number()) throw ParseError(std::string(field) + " must hold numbers", 0);
            m(r, c++) = e.get<double>();
        }
        ++r;
    }
    return m;
}

}  // namespace

std::string serialize(const ReluNet& net) {
    validate(net);
    std::size_t n_params = static_cast<std::size_t>(net.out_w.size()) + 1;
    for (const Layer& layer : net.hidden)
        n_params += static_cast<std::size_t>(layer.W.size() + layer.b.size());
    std::string out;
    out.reserve(128 + 26 * n_params);
    out += "{\"version\": 1, \"depth\": ";
    out += std::to_string(net.depth());
    out += ", \"input_dim\": ";
    out += std::to_string(net.input_dim());
    out += ", \"layers\": [";
    for (std::size_t l = 0; l < net.hidden.size(); ++l) {
        if (l) out += ", ";
        out += "{\"weights\": ";
        append_matrix(out, net.hidden[l].W);
        out += ", \"bias\": ";
        append_vector(out, net.hidden[l].b);
        out += '}';
    }
    out += "], \"output_weights\": ";
    append_vector(out, net.out_w);
    out += ", \"output_bias\": ";
    out += format_double(net.out_b);
    out += "}\n";
    return out;
}

ReluNet deserialize(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what(), e.byte);
    }
    if (!j.is_object()) throw ParseError("top level must be an object", 0);
    for (const char* field : {"version", "depth", "input_dim", "layers", "output_weights", "output_bias"})
        if (!j.contains(field)) throw ParseError(std::string("missing field ") + field, 0);
    if (j["version"] != 1) throw ParseError("unsupported version", 0);
    const int depth = j["depth"].get<int>();
    const int input_dim = j["input_dim"].get<int>();
    if (depth < 2 || depth > 3) throw ParseError("depth must be 2 or 3", 0);
    if (!j["layers"].is_array() || static_cast<int>(j["layers"].size()) != depth - 1)
        throw ParseError("layers must hold depth-1 entries", 0);

    ReluNet net;
    for (const auto& lj : j["layers"]) {
        if (!lj.is_object() || !lj.contains("weights") || !lj.contains("bias"))
            throw ParseError("layer entries need weights and bias", 0);
        Layer layer;
        layer.W = read_matrix(lj["weights"], "weights");
        layer.b = read_vector(lj["bias"], "bias");
        net.hidden.push_back(std::move(layer));
    }
    net.out_w = read_vector(j["output_weights"], "output_weights");
    if (!j["output_bias"].is_number()) throw ParseError("output_bias must be a number", 0);
    net.out_b = j["output_bias"].get<double>();
    if (net.input_dim() != input_dim) throw ParseError("input_dim does not match first layer", 0);
    try {
        validate(net);
    } catch (const ShapeError& e) {
        throw ParseError(e.what(), 0);
    }
    return net;
}

void save_net(const ReluNet& net, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + path);
    f << serialize(net);
    if (!f) throw IoError("write failed: " + path);
}

ReluNet load_net(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return deserialize(ss.str());
}

}  // namespace relucost
