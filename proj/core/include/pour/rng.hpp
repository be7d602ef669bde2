#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace pour {

using Rng = std::mt19937_64;

namespace detail {

inline constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : s) {
        h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
        h *= 1099511628211ull;
    }
    return h;
}

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

} // namespace detail

/// Deterministically derives an independent seed from a root seed, a purpose
/// tag and an index. Distinct tags give disjoint seed namespaces, so e.g.
/// evaluation tasks can never collide with practice tasks.
inline std::uint64_t derive_seed(std::uint64_t root, std::string_view tag, std::uint64_t index = 0) {
    std::uint64_t h = detail::splitmix64(root ^ detail::fnv1a64(tag));
    return detail::splitmix64(h ^ (0x2545f4914f6cdd1dull * (index + 1)));
}

inline Rng make_rng(std::uint64_t root, std::string_view tag, std::uint64_t index = 0) {
    return Rng(derive_seed(root, tag, index));
}

} // namespace pour
