#pragma once

// Small helpers shared by the TOML readers/writers. Internal to the library.

#include "placesim/errors.hpp"
#include "placesim/netmodel.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#define TOML_EXCEPTIONS 1
#include "toml.hpp"

namespace placesim::detail {

inline std::string where(const std::string& ctx, std::string_view key)
{
    return ctx.empty() ? std::string(key) : ctx + "." + std::string(key);
}

inline void reject_unknown_keys(const toml::table& t, std::initializer_list<std::string_view> known,
                                const std::string& ctx)
{
    for (const auto& [k, v] : t) {
        bool ok = false;
        for (auto name : known) ok = ok || (k.str() == name);
        if (!ok) throw ConfigError("unknown key '" + where(ctx, k.str()) + "'");
    }
}

inline std::optional<double> opt_number(const toml::table& t, std::string_view key, const std::string& ctx)
{
    const auto* node = t.get(key);
    if (!node) return std::nullopt;
    if (auto f = node->value_exact<double>()) return *f;
    if (auto i = node->value_exact<std::int64_t>()) return static_cast<double>(*i);
    throw ConfigError("'" + where(ctx, key) + "' must be a number");
}

inline double req_number(const toml::table& t, std::string_view key, const std::string& ctx)
{
    auto v = opt_number(t, key, ctx);
    if (!v) throw ConfigError("missing required key '" + where(ctx, key) + "'");
    return *v;
}

inline std::optional<std::int64_t> opt_integer(const toml::table& t, std::string_view key, const std::string& ctx)
{
    const auto* node = t.get(key);
    if (!node) return std::nullopt;
    if (auto i = node->value_exact<std::int64_t>()) return *i;
    throw ConfigError("'" + where(ctx, key) + "' must be an integer");
}

inline std::optional<std::string> opt_string(const toml::table& t, std::string_view key, const std::string& ctx)
{
    const auto* node = t.get(key);
    if (!node) return std::nullopt;
    if (auto s = node->value_exact<std::string>()) return *s;
    throw ConfigError("'" + where(ctx, key) + "' must be a string");
}

inline std::string req_string(const toml::table& t, std::string_view key, const std::string& ctx)
{
    auto v = opt_string(t, key, ctx);
    if (!v) throw ConfigError("missing required key '" + where(ctx, key) + "'");
    return *v;
}

inline std::optional<bool> opt_bool(const toml::table& t, std::string_view key, const std::string& ctx)
{
    const auto* node = t.get(key);
    if (!node) return std::nullopt;
    if (auto b = node->value_exact<bool>()) return *b;
    throw ConfigError("'" + where(ctx, key) + "' must be a boolean");
}

inline std::optional<std::vector<double>> opt_number_array(const toml::table& t, std::string_view key,
                                                           const std::string& ctx)
{
    const auto* node = t.get(key);
    if (!node) return std::nullopt;
    const auto* arr = node->as_array();
    if (!arr) throw ConfigError("'" + where(ctx, key) + "' must be an array of numbers");
    std::vector<double> out;
    for (const auto& el : *arr) {
        if (auto f = el.value_exact<double>()) {
            out.push_back(*f);
        } else if (auto i = el.value_exact<std::int64_t>()) {
            out.push_back(static_cast<double>(*i));
        } else {
            throw ConfigError("'" + where(ctx, key) + "' must contain only numbers");
        }
    }
    return out;
}

inline std::optional<std::vector<std::string>> opt_string_array(const toml::table& t, std::string_view key,
                                                                const std::string& ctx)
{
    const auto* node = t.get(key);
    if (!node) return std::nullopt;
    const auto* arr = node->as_array();
    if (!arr) throw ConfigError("'" + where(ctx, key) + "' must be an array of strings");
    std::vector<std::string> out;
    for (const auto& el : *arr) {
        auto s = el.value_exact<std::string>();
        if (!s) throw ConfigError("'" + where(ctx, key) + "' must contain only strings");
        out.push_back(*s);
    }
    return out;
}

inline const toml::table* opt_table(const toml::table& t, std::string_view key, const std::string& ctx)
{
    const auto* node = t.get(key);
    if (!node) return nullptr;
    const auto* tbl = node->as_table();
    if (!tbl) throw ConfigError("'" + where(ctx, key) + "' must be a table");
    return tbl;
}

inline toml::table parse_toml(const std::string& text, const std::string& origin)
{
    try {
        return toml::parse(text, origin);
    } catch (const toml::parse_error& e) {
        const auto& src = e.source();
        throw ConfigError(origin + ":" + std::to_string(src.begin.line) + ":" + std::to_string(src.begin.column) +
                          ": " + std::string(e.description()));
    }
}

/// Shortest decimal that reads back to the same double; always carries a '.'
/// or exponent so TOML parses it as a float.
inline std::string format_float(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, ptr);
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

inline std::string quote(std::string_view s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

/// Parses a `[network.<name>]` body.
net::LatencySampler parse_network(const toml::table& t, const std::string& ctx,
                                  const std::filesystem::path& base_dir);

/// Renders a sampler as the body lines of a `[network.<name>]` section.
std::string render_network(const net::LatencySampler& s);

}  // namespace placesim::detail
