#pragma once

#include "pt/report.hpp"

#include <fstream>
#include <string>

namespace pt_test {

// Subset of JSON Schema: type, enum, required, properties, items, local $ref.
class SchemaCheck {
public:
    explicit SchemaCheck(pt::Json root) : root_(std::move(root)) {}

    static SchemaCheck load()
    {
        std::ifstream in(std::string(PT_SOURCE_DIR) + "/schema/report.schema.json");
        return SchemaCheck(pt::Json::parse(in));
    }

    const pt::Json& def(const std::string& name) const { return root_.at("$defs").at(name); }
    const pt::Json& root() const { return root_; }

    // Empty string when valid, else the path of the first violation.
    std::string validate(const pt::Json& v, const pt::Json& s, const std::string& path = "$") const
    {
        if (s.contains("$ref")) {
            std::string ref = s["$ref"];
            return validate(v, def(ref.substr(ref.rfind('/') + 1)), path);
        }
        if (s.contains("type") && !has_type(v, s["type"])) return path + ": expected " + s["type"].get<std::string>();
        if (s.contains("enum")) {
            bool found = false;
            for (const auto& e : s["enum"]) found = found || e == v;
            if (!found) return path + ": not in enum";
        }
        if (v.is_object()) {
            if (s.contains("required"))
                for (const auto& k : s["required"])
                    if (!v.contains(k.get<std::string>())) return path + ": missing " + k.get<std::string>();
            if (s.contains("properties"))
                for (const auto& [k, sub] : s["properties"].items())
                    if (v.contains(k)) {
                        auto r = validate(v[k], sub, path + "." + k);
                        if (!r.empty()) return r;
                    }
        }
        if (v.is_array() && s.contains("items")) {
            for (std::size_t i = 0; i < v.size(); ++i) {
                auto r = validate(v[i], s["items"], path + "[" + std::to_string(i) + "]");
                if (!r.empty()) return r;
            }
        }
        return "";
    }

private:
    static bool has_type(const pt::Json& v, const std::string& t)
    {
        if (t == "object") return v.is_object();
        if (t == "array") return v.is_array();
        if (t == "string") return v.is_string();
        if (t == "integer") return v.is_number_integer();
        if (t == "number") return v.is_number();
        if (t == "boolean") return v.is_boolean();
        return false;
    }

    pt::Json root_;
};

}  // namespace pt_test
