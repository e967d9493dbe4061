#pragma once

// Canonical JSON for the value types.  Output is produced by a small writer so
// that degree keys appear in numeric order and arbitrary-precision
// multiplicities are emitted exactly; input is parsed with nlohmann/json
// (multiplicities may be JSON integers or decimal strings).

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "untwist/errors.hpp"
#include "untwist/graded.hpp"
#include "untwist/twist_engine.hpp"

namespace untwist {

using json = nlohmann::json;

inline std::string partition_key(const Partition& lam) {
    std::string s;
    for (auto v : lam) s += (s.empty() ? "" : ",") + std::to_string(v);
    return s;
}

inline Int parse_int_value(const json& v, const char* what) {
    if (v.is_number_unsigned()) return Int(v.get<std::uint64_t>());
    if (v.is_number_integer()) return Int(v.get<std::int64_t>());
    if (v.is_string()) {
        const std::string& s = v.get_ref<const std::string&>();
        require(!s.empty() && s.find_first_not_of("0123456789") == std::string::npos,
                ErrorCode::domain, std::string(what) + ": not a decimal integer");
        return Int(s);
    }
    fail(ErrorCode::domain, std::string(what) + ": expected an integer");
}

inline GradedDims parse_graded_dims(const json& j) {
    require(j.is_object(), ErrorCode::domain, "graded dims: expected an object");
    GradedDims g;
    for (const auto& [key, value] : j.items()) {
        require(!key.empty() && key.find_first_not_of("0123456789") == std::string::npos,
                ErrorCode::domain, "graded dims: degree keys must be decimal");
        g.add(std::stoull(key), parse_int_value(value, "multiplicity"));
    }
    return g;
}

inline std::string write_graded_dims(const GradedDims& g) {
    std::string out = "{";
    bool first = true;
    for (const auto& [deg, mult] : g.dims()) {
        if (!first) out += ",";
        first = false;
        out += "\"" + std::to_string(deg) + "\":" + mult.str();
    }
    return out + "}";
}

inline ExtTable parse_ext_table(const json& j) {
    require(j.is_object() && j.contains("d") && j.contains("entries"),
            ErrorCode::domain, "table: expected {\"d\": ..., \"entries\": {...}}");
    ExtTable t;
    t.d = j.at("d").get<std::uint32_t>();
    for (const auto& [key, value] : j.at("entries").items()) {
        Partition lam;
        std::size_t pos = 0;
        while (pos < key.size()) {
            std::size_t comma = key.find(',', pos);
            if (comma == std::string::npos) comma = key.size();
            lam.push_back(static_cast<std::uint32_t>(
                std::stoul(key.substr(pos, comma - pos))));
            pos = comma + 1;
        }
        t.entries[lam] = parse_graded_dims(value);
    }
    t.validate();
    return t;
}

inline std::string write_ext_table(const ExtTable& t) {
    // partitions in descending lexicographic order, e.g. "2" before "1,1"
    std::string out = "{\"d\":" + std::to_string(t.d) + ",\"entries\":{";
    bool first = true;
    for (auto it = t.entries.rbegin(); it != t.entries.rend(); ++it) {
        if (!first) out += ",";
        first = false;
        out += "\"" + partition_key(it->first) + "\":" + write_graded_dims(it->second);
    }
    return out + "}}";
}

inline std::string write_bigraded_table(const BigradedTable& t) {
    std::string out = "{\"trunc_coh\":" + std::to_string(t.trunc_coh) +
                      ",\"trunc_poly\":" + std::to_string(t.trunc_poly) +
                      ",\"entries\":[";
    bool first = true;
    for (const auto& [key, mult] : t.entries) {
        if (!first) out += ",";
        first = false;
        out += "[" + std::to_string(key.first) + "," + std::to_string(key.second) +
               "," + mult.str() + "]";
    }
    return out + "]}";
}

inline std::string write_poly(const Poly& f) {
    // lowest-degree coefficient first, each as "num/den" or "num"
    std::string out = "[";
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) out += ",";
        Int num = boost::multiprecision::numerator(f[i]);
        Int den = boost::multiprecision::denominator(f[i]);
        out += "\"" + num.str() + (den == 1 ? "" : "/" + den.str()) + "\"";
    }
    return out + "]";
}

}  // namespace untwist
