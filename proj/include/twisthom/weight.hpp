#pragma once

#include <string>
#include <utility>
#include <vector>

namespace thh {

// Multidegree. Plain algebras use rank 1; smash products append the
// x-degree as an extra component.
using Weight = std::vector<int>;

inline Weight wadd(const Weight& a, const Weight& b) {
    Weight r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Weight wzero(int rank) { return Weight(static_cast<std::size_t>(rank), 0); }

inline bool is_wzero(const Weight& w) {
    for (int c : w)
        if (c != 0) return false;
    return true;
}

std::string wstr(const Weight& w);

// Per-component integer bounds on representable weights.
struct Window {
    std::vector<std::pair<int, int>> bounds; // inclusive [lo, hi] per component

    int rank() const { return static_cast<int>(bounds.size()); }

    bool contains(const Weight& w) const {
        if (w.size() != bounds.size()) return false;
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i] < bounds[i].first || w[i] > bounds[i].second) return false;
        return true;
    }

    // [0, cap] in a single component.
    static Window nat1(int cap) { return Window{{{0, cap}}}; }

    std::string str() const;
};

// All weights inside the window, lexicographically ordered.
std::vector<Weight> enumerate_weights(const Window& win);

} // namespace thh
