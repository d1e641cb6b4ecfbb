#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace placesim {

struct RunManifest {
    std::string tool_version;
    std::string config_digest;  // 16 hex digits
    std::uint64_t seed = 0;
    std::string timestamp;  // ISO-8601 UTC
    std::string subcommand;

    /// `# placesim <version> <subcommand> digest=<hex> seed=<n>`. Leaves out the
    /// timestamp so identical inputs give byte-identical files.
    std::string comment_line() const;
};

/// 64-bit FNV-1a of the text, as lowercase hex.
std::string content_digest(std::string_view text);

std::string utc_timestamp_now();

RunManifest make_manifest(std::string subcommand, std::string_view resolved_config, std::uint64_t seed);

}  // namespace placesim
