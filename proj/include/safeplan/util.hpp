#pragma once

#include <cstdint>
#include <string>

namespace safeplan {

/// SHA-256 hex digest (lowercase) of the given bytes.
std::string sha256_hex(const std::string& data);

/// splitmix64 mixer; used to derive independent per-run RNG seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace safeplan
