#ifndef STAGEDTSP_VERSION_HPP
#define STAGEDTSP_VERSION_HPP

#include <cstdint>
#include <string>

namespace stagedtsp {

inline constexpr const char* kToolVersion = "0.1.0";

// FNV-1a, used to stamp reports with the instance they were produced from.
inline std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace stagedtsp

#endif
