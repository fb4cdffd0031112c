#ifndef PRPPP_FINGERPRINT_HPP
#define PRPPP_FINGERPRINT_HPP

#include <cstdint>
#include <string>
#include <string_view>

namespace prppp {

// 64-bit FNV-1a over bytes.
inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char byte : data) {
        hash ^= static_cast<std::uint64_t>(byte);
        hash *= 0x00000100000001b3ull;
    }
    return hash;
}

std::string hex64(std::uint64_t value);

} // namespace prppp

#endif
