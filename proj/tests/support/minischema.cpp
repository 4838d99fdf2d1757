#include "support/minischema.hpp"

namespace minischema {
namespace {

using nlohmann::json;

bool type_matches(const std::string& t, const json& doc) {
    if (t == "object") return doc.is_object();
    if (t == "array") return doc.is_array();
    if (t == "string") return doc.is_string();
    if (t == "boolean") return doc.is_boolean();
    if (t == "null") return doc.is_null();
    if (t == "integer") return doc.is_number_integer() || doc.is_number_unsigned();
    if (t == "number") return doc.is_number();
    return false;
}

std::optional<std::string> check(const json& schema, const json& doc, const std::string& path) {
    if (schema.contains("type")) {
        const json& ty = schema["type"];
        bool ok = false;
        if (ty.is_string()) {
            ok = type_matches(ty.get<std::string>(), doc);
        } else {
            for (const auto& t : ty)
                if (type_matches(t.get<std::string>(), doc)) ok = true;
        }
        if (!ok) return path + ": type mismatch, expected " + ty.dump();
    }
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& v : schema["enum"])
            if (v == doc) ok = true;
        if (!ok) return path + ": value not in enum " + schema["enum"].dump();
    }
    if (doc.is_object()) {
        if (schema.contains("required")) {
            for (const auto& key : schema["required"])
                if (!doc.contains(key.get<std::string>()))
                    return path + ": missing required key \"" + key.get<std::string>() + "\"";
        }
        const json* props = schema.contains("properties") ? &schema["properties"] : nullptr;
        bool closed = schema.contains("additionalProperties") &&
                      schema["additionalProperties"].is_boolean() &&
                      !schema["additionalProperties"].get<bool>();
        for (auto it = doc.begin(); it != doc.end(); ++it) {
            if (props && props->contains(it.key())) {
                if (auto err = check((*props)[it.key()], it.value(), path + "." + it.key()))
                    return err;
            } else if (closed) {
                return path + ": unexpected key \"" + it.key() + "\"";
            }
        }
    }
    if (doc.is_array() && schema.contains("items")) {
        for (std::size_t i = 0; i < doc.size(); ++i) {
            if (auto err = check(schema["items"], doc[i], path + "[" + std::to_string(i) + "]"))
                return err;
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<std::string> violation(const nlohmann::json& schema, const nlohmann::json& doc) {
    return check(schema, doc, "$");
}

}  // namespace minischema
