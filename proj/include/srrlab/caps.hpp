#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>

#include "srrlab/errors.hpp"

namespace srrlab {

// Resource caps for the exponential enumerations. `dual_enum` bounds every
// span/codeword/error-pattern enumeration; `clique_nodes` bounds the
// branch-and-bound search for maximum orthogonal families.
struct Caps {
    std::uint64_t dual_enum = std::uint64_t(1) << 24;
    std::uint64_t clique_nodes = 10'000'000;
};

namespace detail {
inline std::uint64_t parse_cap_value(const std::string& s, const std::string& key) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw UsageError("SRRLAB_CAPS: value for '" + key + "' must be a positive integer, got '" + s + "'");
    std::uint64_t v = 0;
    try {
        v = std::stoull(s);
    } catch (const std::exception&) {
        throw UsageError("SRRLAB_CAPS: value for '" + key + "' out of range: '" + s + "'");
    }
    if (v == 0) throw UsageError("SRRLAB_CAPS: value for '" + key + "' must be positive");
    return v;
}
} // namespace detail

// Applies the SRRLAB_CAPS environment variable ("dual=N,clique-nodes=N") on
// top of `base`. Command-line flags are applied afterwards and win.
inline Caps caps_from_env(Caps base = {}) {
    const char* env = std::getenv("SRRLAB_CAPS");
    if (env == nullptr) return base;
    std::string s(env);
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        std::string item = s.substr(pos, comma - pos);
        pos = comma + 1;
        if (item.empty()) continue;
        std::size_t eq = item.find('=');
        if (eq == std::string::npos)
            throw UsageError("SRRLAB_CAPS: expected key=value, got '" + item + "'");
        std::string key = item.substr(0, eq);
        std::string val = item.substr(eq + 1);
        if (key == "dual")
            base.dual_enum = detail::parse_cap_value(val, key);
        else if (key == "clique-nodes")
            base.clique_nodes = detail::parse_cap_value(val, key);
        else
            throw UsageError("SRRLAB_CAPS: unknown key '" + key + "' (known: dual, clique-nodes)");
    }
    return base;
}

} // namespace srrlab
