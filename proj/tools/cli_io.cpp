#include "cli_io.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace corrlab_cli {

using corrlab::MultiplicativeFunction;
using corrlab::SubsetMask;
using nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

std::int64_t to_i64(const std::string& s) {
    std::size_t used = 0;
    std::int64_t v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument("bad integer: " + s);
    return v;
}

std::uint64_t to_u64(const std::string& s) {
    std::int64_t v = to_i64(s);
    if (v < 0) throw std::invalid_argument("expected nonnegative integer: " + s);
    return static_cast<std::uint64_t>(v);
}

double to_double(const std::string& s) {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("bad number: " + s);
    return v;
}

// phase given as a rational number of turns: "0.25", "1/3", "-1/2"
double turns_value(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return to_double(s);
    double num = to_double(s.substr(0, slash));
    double den = to_double(s.substr(slash + 1));
    if (den == 0.0) throw std::invalid_argument("zero denominator in phase: " + s);
    return num / den;
}

SubsetMask mask_from_member_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open set file: " + path);
    std::vector<std::int64_t> members;
    std::int64_t v = 0, n_max = 0;
    while (in >> v) {
        if (v < 1) throw std::invalid_argument("set members must be >= 1");
        members.push_back(v);
        n_max = std::max(n_max, v);
    }
    if (members.empty()) throw std::invalid_argument("empty set file: " + path);
    return SubsetMask::from_members(members, n_max);
}

SubsetMask mask_from_hex_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open set file: " + path);
    std::int64_t n_max = 0;
    std::string hex;
    if (!(in >> n_max) || !(in >> hex) || n_max < 1)
        throw std::invalid_argument("hex set file needs an n_max header line and a hex line");
    auto nibble = [&](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw std::invalid_argument("bad hex digit in set file");
    };
    // byte j holds values 8j+1..8j+8, bit (v-1) % 8; two hex chars per byte
    SubsetMask m(n_max);
    for (std::int64_t v = 1; v <= n_max; ++v) {
        std::size_t byte = static_cast<std::size_t>(v - 1) / 8;
        if (2 * byte + 1 >= hex.size()) break;
        int b = nibble(hex[2 * byte]) * 16 + nibble(hex[2 * byte + 1]);
        if (b & (1 << ((v - 1) % 8))) m.set(v);
    }
    return m;
}

}  // namespace

SubsetMask parse_set_spec(const std::string& spec) {
    auto parts = split(spec, ':');
    const std::string& kind = parts[0];
    auto need = [&](std::size_t n) {
        if (parts.size() != n) throw std::invalid_argument("malformed set spec: " + spec);
    };
    if (kind == "full") {
        need(2);
        return SubsetMask::full(to_i64(parts[1]));
    }
    if (kind == "empty") {
        need(2);
        return SubsetMask::empty_set(to_i64(parts[1]));
    }
    if (kind == "multiples") {
        need(3);
        return SubsetMask::multiples(to_i64(parts[1]), to_i64(parts[2]));
    }
    if (kind == "random") {
        need(4);
        return SubsetMask::random(to_double(parts[1]), to_u64(parts[2]), to_i64(parts[3]));
    }
    if (kind == "file") {
        need(2);
        return mask_from_member_file(parts[1]);
    }
    if (kind == "hex") {
        need(2);
        return mask_from_hex_file(parts[1]);
    }
    throw std::invalid_argument("unknown set spec kind: " + kind);
}

MultiplicativeFunction parse_chi_spec(const std::string& spec) {
    if (spec == "one") return MultiplicativeFunction::one();
    if (spec == "liouville") return MultiplicativeFunction::liouville();
    auto parts = split(spec, ':');
    if (parts[0] == "random" && parts.size() == 2)
        return MultiplicativeFunction::random_phases(to_u64(parts[1]));
    if (parts[0] == "character" && parts.size() == 3)
        return MultiplicativeFunction::character(to_u64(parts[1]), to_u64(parts[2]));
    // prime:turns pairs
    std::map<std::uint64_t, corrlab::cplx> phases;
    for (const auto& pair : split(spec, ',')) {
        auto kv = split(pair, ':');
        if (kv.size() != 2) throw std::invalid_argument("malformed chi spec: " + spec);
        std::uint64_t p = to_u64(kv[0]);
        double t = turns_value(kv[1]);
        phases[p] = std::polar(1.0, 2.0 * M_PI * t);
    }
    if (phases.empty()) throw std::invalid_argument("malformed chi spec: " + spec);
    return MultiplicativeFunction::from_prime_phases(std::move(phases));
}

std::vector<std::int64_t> parse_int_list(const std::string& text, std::size_t expect) {
    std::vector<std::int64_t> out;
    for (const auto& tok : split(text, ',')) out.push_back(to_i64(tok));
    if (expect != 0 && out.size() != expect)
        throw std::invalid_argument("expected " + std::to_string(expect) + " integers: " + text);
    return out;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    json j;
    in >> j;
    return j;
}

namespace {

std::string scalar_csv(const json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void flatten(const json& node, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& out) {
    if (node.is_object()) {
        for (auto it = node.begin(); it != node.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (node.is_array()) {
        std::string joined;
        for (std::size_t i = 0; i < node.size(); ++i) {
            if (i) joined += ';';
            joined += scalar_csv(node[i]);
        }
        out.emplace_back(prefix, joined);
    } else {
        out.emplace_back(prefix, scalar_csv(node));
    }
}

}  // namespace

std::string render_csv(const json& doc) {
    std::ostringstream os;
    if (doc.contains("rows") && doc["rows"].is_array() && !doc["rows"].empty()) {
        const json& rows = doc["rows"];
        bool first = true;
        for (auto it = rows[0].begin(); it != rows[0].end(); ++it) {
            if (!first) os << ',';
            os << it.key();
            first = false;
        }
        os << '\n';
        for (const auto& row : rows) {
            first = true;
            for (auto it = row.begin(); it != row.end(); ++it) {
                if (!first) os << ',';
                os << scalar_csv(it.value());
                first = false;
            }
            os << '\n';
        }
        return os.str();
    }
    std::vector<std::pair<std::string, std::string>> cells;
    flatten(doc, "", cells);
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i].first;
    os << '\n';
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i].second;
    os << '\n';
    return os.str();
}

}  // namespace corrlab_cli
