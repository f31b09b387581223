#pragma once

#include <map>
#include <optional>
#include <string>

#include "fracrel/field.hpp"
#include "fracrel/profile.hpp"

namespace fracrel {

/// Flat binary field container: magic "FRLF", u32 version, u32 N,
/// per-axis u32 n, per-axis f64 L (little endian), then row-major f64
/// samples.
void write_field_binary(const std::string& path, const Field& u);
Field read_field_binary(const std::string& path);

/// CSV: header "i[,j[,k]],value", one node per row.
void write_field_csv(const std::string& path, const Field& u);
Field read_field_csv(const std::string& path);

/// Profile table CSV (y, phi, dphi) and its JSON sidecar (s, tail fit,
/// residual stats).
void write_profile_csv(const std::string& path, const ProfileTable& table);
std::string profile_sidecar_json(const ProfileTable& table);

/// TOML-style key = value configuration with [section] headers; keys are
/// exposed as "section.key". Unknown sections are allowed; errors name the
/// offending key or line.
class KeyValueConfig {
public:
    static KeyValueConfig parse_file(const std::string& path);
    static KeyValueConfig parse_string(const std::string& text);

    bool has(const std::string& key) const { return entries_.count(key) > 0; }
    std::string get_string(const std::string& key) const;
    std::string get_string_or(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double_or(const std::string& key, double fallback) const;
    long get_int(const std::string& key) const;
    long get_int_or(const std::string& key, long fallback) const;

    const std::map<std::string, std::string>& entries() const { return entries_; }

private:
    std::map<std::string, std::string> entries_;
};

} // namespace fracrel
