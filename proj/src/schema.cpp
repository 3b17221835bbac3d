#include "shearbd/schema.hpp"

#include <cmath>
#include <map>

#include "bundled_schemas.hpp"
#include "shearbd/error.hpp"

namespace shearbd {

using nlohmann::json;

namespace {

std::string escape_token(const std::string& key) {
  std::string out;
  for (char ch : key) {
    if (ch == '~')
      out += "~0";
    else if (ch == '/')
      out += "~1";
    else
      out += ch;
  }
  return out;
}

bool has_type(const json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "boolean") return v.is_boolean();
  if (t == "null") return v.is_null();
  if (t == "number") return v.is_number();
  if (t == "integer") {
    if (v.is_number_integer()) return true;
    return v.is_number_float() && std::floor(v.get<double>()) == v.get<double>();
  }
  return false;
}

class Validator {
 public:
  explicit Validator(const json& root) : root_(root) {}

  void check(const json& s, const json& v, const std::string& at, std::vector<SchemaViolation>& out) const {
    if (s.is_boolean()) {
      if (!s.get<bool>()) out.push_back({at, "no value allowed here"});
      return;
    }
    if (s.contains("$ref")) {
      check(resolve(s["$ref"].get<std::string>()), v, at, out);
      return;
    }
    if (s.contains("type")) {
      const json& t = s["type"];
      bool ok = false;
      if (t.is_string()) ok = has_type(v, t.get<std::string>());
      for (const json& e : t.is_array() ? t : json::array()) ok = ok || has_type(v, e.get<std::string>());
      if (!ok) {
        out.push_back({at, "expected type " + t.dump() + ", got " + std::string(v.type_name())});
        return;
      }
    }
    if (s.contains("enum")) {
      bool found = false;
      for (const json& e : s["enum"]) found = found || e == v;
      if (!found) out.push_back({at, v.dump() + " is not one of " + s["enum"].dump()});
    }
    if (s.contains("const") && s["const"] != v) out.push_back({at, "must equal " + s["const"].dump()});
    if (v.is_number()) {
      double x = v.get<double>();
      if (s.contains("minimum") && x < s["minimum"].get<double>())
        out.push_back({at, v.dump() + " is below the minimum " + s["minimum"].dump()});
      if (s.contains("maximum") && x > s["maximum"].get<double>())
        out.push_back({at, v.dump() + " is above the maximum " + s["maximum"].dump()});
      if (s.contains("exclusiveMinimum") && x <= s["exclusiveMinimum"].get<double>())
        out.push_back({at, v.dump() + " must be greater than " + s["exclusiveMinimum"].dump()});
      if (s.contains("exclusiveMaximum") && x >= s["exclusiveMaximum"].get<double>())
        out.push_back({at, v.dump() + " must be less than " + s["exclusiveMaximum"].dump()});
    }
    if (v.is_string() && s.contains("minLength") && v.get<std::string>().size() < s["minLength"].get<std::size_t>())
      out.push_back({at, "string is too short"});
    if (v.is_array()) {
      if (s.contains("minItems") && v.size() < s["minItems"].get<std::size_t>())
        out.push_back({at, "needs at least " + s["minItems"].dump() + " items"});
      if (s.contains("maxItems") && v.size() > s["maxItems"].get<std::size_t>())
        out.push_back({at, "allows at most " + s["maxItems"].dump() + " items"});
      if (s.contains("items"))
        for (std::size_t i = 0; i < v.size(); ++i) check(s["items"], v[i], at + "/" + std::to_string(i), out);
    }
    if (v.is_object()) {
      for (const json& key : s.value("required", json::array()))
        if (!v.contains(key.get<std::string>()))
          out.push_back({at + "/" + escape_token(key.get<std::string>()), "required property is missing"});
      const json props = s.value("properties", json::object());
      for (auto it = v.begin(); it != v.end(); ++it) {
        std::string child = at + "/" + escape_token(it.key());
        if (props.contains(it.key()))
          check(props[it.key()], it.value(), child, out);
        else if (s.contains("additionalProperties"))
          check(s["additionalProperties"], it.value(), child, out);
      }
    }
    if (s.contains("anyOf") || s.contains("oneOf")) {
      bool one = s.contains("oneOf");
      const json& options = one ? s["oneOf"] : s["anyOf"];
      int matches = 0;
      std::vector<SchemaViolation> best;
      for (const json& option : options) {
        std::vector<SchemaViolation> sub;
        check(option, v, at, sub);
        if (sub.empty())
          ++matches;
        else if (best.empty() || sub.size() < best.size())
          best = sub;
      }
      if (matches == 0) {
        out.push_back({at, "matches none of the allowed alternatives"});
        if (!best.empty()) out.push_back(best.front());
      } else if (one && matches > 1) {
        out.push_back({at, "matches more than one alternative"});
      }
    }
  }

 private:
  const json& resolve(const std::string& ref) const {
    if (ref.rfind("#", 0) != 0) throw Error(ErrorCode::ConfigInvalid, "only local schema references are supported: " + ref);
    return root_.at(json::json_pointer(ref.substr(1)));
  }

  const json& root_;
};

}  // namespace

std::vector<SchemaViolation> validate_schema(const json& schema, const json& document) {
  std::vector<SchemaViolation> out;
  Validator(schema).check(schema, document, "", out);
  return out;
}

const json& bundled_schema(const std::string& name) {
  static const std::map<std::string, json> schemas = [] {
    std::map<std::string, json> m;
    for (const auto& [key, text] : bundled_schema_texts()) m[key] = json::parse(text);
    // The cartoon and run schemas reference the domain schema by name.
    json domain = m.at("domain");
    for (auto& [key, s] : m) {
      if (key == "domain") continue;
      s["definitions"]["domain"] = domain;
      if (domain.contains("definitions"))
        for (auto it = domain["definitions"].begin(); it != domain["definitions"].end(); ++it)
          s["definitions"][it.key()] = it.value();
    }
    json cartoon = m.at("cartoon");
    m.at("run")["definitions"]["cartoon"] = cartoon;
    for (auto it = cartoon["definitions"].begin(); it != cartoon["definitions"].end(); ++it)
      m.at("run")["definitions"][it.key()] = it.value();
    return m;
  }();
  auto it = schemas.find(name);
  if (it == schemas.end()) throw Error(ErrorCode::ConfigInvalid, "no bundled schema named " + name);
  return it->second;
}

void require_valid(const std::string& schema_name, const json& document, const std::string& source) {
  auto v = validate_schema(bundled_schema(schema_name), document);
  if (v.empty()) return;
  std::string pointer = v.front().pointer.empty() ? "/" : v.front().pointer;
  throw Error(ErrorCode::ConfigInvalid, source + " at " + pointer + ": " + v.front().message);
}

}  // namespace shearbd
