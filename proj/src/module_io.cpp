#include "a1kit/module_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace a1kit {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string hex_encode_row(const GF2Vector& v) {
    static const char* digits = "0123456789abcdef";
    std::size_t nbytes = (v.size() + 7) / 8;
    std::string out;
    out.reserve(nbytes * 2);
    for (std::size_t b = 0; b < nbytes; ++b) {
        unsigned byte = 0;
        for (unsigned k = 0; k < 8; ++k) {
            std::size_t j = b * 8 + k;
            if (j < v.size() && v.get(j)) byte |= (1u << k);
        }
        out.push_back(digits[byte >> 4]);
        out.push_back(digits[byte & 0xf]);
    }
    return out;
}

GF2Vector hex_decode_row(const std::string& hex, std::size_t bits) {
    auto val = [](char c) -> unsigned {
        if (c >= '0' && c <= '9') return unsigned(c - '0');
        if (c >= 'a' && c <= 'f') return unsigned(c - 'a' + 10);
        if (c >= 'A' && c <= 'F') return unsigned(c - 'A' + 10);
        throw std::invalid_argument("hex_decode_row: bad digit");
    };
    if (hex.size() % 2) throw std::invalid_argument("hex_decode_row: odd length");
    GF2Vector v(bits);
    for (std::size_t b = 0; b * 2 + 1 < hex.size() + 1 && b * 2 < hex.size(); ++b) {
        unsigned byte = (val(hex[b * 2]) << 4) | val(hex[b * 2 + 1]);
        for (unsigned k = 0; k < 8; ++k) {
            std::size_t j = b * 8 + k;
            if (j >= bits) {
                if ((byte >> k) & 1) throw std::invalid_argument("hex_decode_row: stray bits");
                continue;
            }
            if ((byte >> k) & 1) v.set(j, true);
        }
    }
    return v;
}

std::string module_to_json(const A1Module& m, int indent) {
    ordered_json j;
    j["window"] = {m.lo, m.hi};
    j["reliable_hi"] = m.reliable_hi;
    j["complete"] = m.complete;
    ordered_json dims = ordered_json::object();
    for (int d = m.lo; d <= m.hi; ++d)
        if (m.dim(d)) dims[std::to_string(d)] = m.dim(d);
    j["dims"] = dims;
    auto mats = [&](bool first) {
        ordered_json out = ordered_json::object();
        int top = m.hi - (first ? 1 : 2);
        for (int d = m.lo; d <= top; ++d) {
            GF2Matrix mat = first ? m.sq1_of(d) : m.sq2_of(d);
            if (mat.rows() == 0 || mat.cols() == 0) continue;
            ordered_json rows = ordered_json::array();
            for (std::size_t i = 0; i < mat.rows(); ++i)
                rows.push_back(hex_encode_row(mat.row(i)));
            out[std::to_string(d)] = rows;
        }
        return out;
    };
    j["sq1"] = mats(true);
    j["sq2"] = mats(false);
    return j.dump(indent);
}

A1Module module_from_json(const std::string& text) {
    json j = json::parse(text);
    A1Module m;
    m.lo = j.at("window").at(0).get<int>();
    m.hi = j.at("window").at(1).get<int>();
    m.reliable_hi = j.at("reliable_hi").get<int>();
    m.complete = j.value("complete", false);
    if (m.hi < m.lo) return zero_module();
    m.dims.assign(m.hi - m.lo + 1, 0);
    for (const auto& [key, val] : j.at("dims").items())
        m.dims.at(std::stoi(key) - m.lo) = val.get<int>();
    auto load = [&](const char* name, int shift, std::vector<GF2Matrix>& out) {
        const json& block = j.at(name);
        for (int d = m.lo; d <= m.hi - shift; ++d) {
            GF2Matrix mat{std::size_t(m.dim(d + shift)), std::size_t(m.dim(d))};
            auto it = block.find(std::to_string(d));
            if (it != block.end()) {
                const auto& rows = *it;
                if (rows.size() != mat.rows())
                    throw std::invalid_argument("module_from_json: row count mismatch");
                for (std::size_t i = 0; i < mat.rows(); ++i)
                    mat.set_row(i, hex_decode_row(rows[i].get<std::string>(), mat.cols()));
            }
            out.push_back(std::move(mat));
        }
    };
    load("sq1", 1, m.sq1);
    load("sq2", 2, m.sq2);
    m.validate();
    return m;
}

A1Module load_module(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return module_from_json(ss.str());
}

void save_module(const A1Module& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << module_to_json(m) << "\n";
}

} // namespace a1kit
