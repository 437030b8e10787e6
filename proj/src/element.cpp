#include "nilkit/element.hpp"

#include <limits>

namespace nilkit {

std::size_t ElementHash::operator()(const Element& e) const noexcept {
    std::size_t seed = e.size();
    for (const auto& v : e) {
        std::size_t h;
        if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max()) {
            h = std::hash<long long>{}(v.convert_to<long long>());
        } else {
            h = std::hash<std::string>{}(v.str());
        }
        seed ^= h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    }
    return seed;
}

bool canonical_less(const Element& a, const Element& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == b[i]) continue;
        const Int aa = abs(a[i]);
        const Int bb = abs(b[i]);
        if (aa != bb) return aa < bb;
        return a[i] > b[i];
    }
    return a.size() < b.size();
}

std::string join_entries(const Element& e, const std::string& separator) {
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) out += separator;
        out += e[i].str();
    }
    return out;
}

Int floor_mod(const Int& v, const Int& m) {
    Int r = v % m;
    if (r < 0) r += m;
    return r;
}

}  // namespace nilkit
