#include "placesim/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>

namespace placesim {

std::string RunManifest::comment_line() const
{
    return "# placesim " + tool_version + " " + subcommand + " digest=" + config_digest +
           " seed=" + std::to_string(seed);
}

std::string content_digest(std::string_view text)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string utc_timestamp_now()
{
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

RunManifest make_manifest(std::string subcommand, std::string_view resolved_config, std::uint64_t seed)
{
    RunManifest m;
    m.tool_version = PLACESIM_VERSION;
    m.config_digest = content_digest(resolved_config);
    m.seed = seed;
    m.timestamp = utc_timestamp_now();
    m.subcommand = std::move(subcommand);
    return m;
}

}  // namespace placesim
