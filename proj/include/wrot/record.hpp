#pragma once

// Flat `key=value` output records and their strict-JSON twins. Key order
// is part of the format, and numbers use the shortest round-trip decimal
// form, so identical inputs serialize to identical bytes.

#include <charconv>
#include <cstdint>
#include <string>
#include <system_error>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace wrot {

/// Shortest decimal representation that parses back to the same double.
inline std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

class Record {
  public:
    Record& add(std::string key, double value) {
        fields_.emplace_back(std::move(key), value);
        return *this;
    }
    Record& add(std::string key, std::uint64_t value) {
        fields_.emplace_back(std::move(key), value);
        return *this;
    }
    Record& add(std::string key, std::string value) {
        fields_.emplace_back(std::move(key), std::move(value));
        return *this;
    }

    /// `k1=v1 k2=v2 ...` in insertion order, no trailing newline.
    std::string flat() const {
        std::string out;
        for (const auto& [key, value] : fields_) {
            if (!out.empty()) out += ' ';
            out += key;
            out += '=';
            std::visit(
                [&out](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>)
                        out += format_double(v);
                    else if constexpr (std::is_same_v<T, std::uint64_t>)
                        out += std::to_string(v);
                    else
                        out += v;
                },
                value);
        }
        return out;
    }

    /// One JSON object, keys in insertion order.
    std::string json() const {
        nlohmann::ordered_json j = nlohmann::ordered_json::object();
        for (const auto& field : fields_) {
            const std::string& key = field.first;
            std::visit([&j, &key](const auto& v) { j[key] = v; },
                       field.second);
        }
        return j.dump();
    }

  private:
    using Value = std::variant<double, std::uint64_t, std::string>;
    std::vector<std::pair<std::string, Value>> fields_;
};

}  // namespace wrot
