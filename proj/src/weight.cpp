#include "twisthom/weight.hpp"

namespace thh {

std::string wstr(const Weight& w) {
    if (w.size() == 1) return std::to_string(w[0]);
    std::string s = "[";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(w[i]);
    }
    return s + "]";
}

std::string Window::str() const {
    std::string s;
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        if (i) s += "x";
        s += "[" + std::to_string(bounds[i].first) + "," + std::to_string(bounds[i].second) + "]";
    }
    return s;
}

std::vector<Weight> enumerate_weights(const Window& win) {
    std::vector<Weight> out;
    Weight w(win.bounds.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = win.bounds[i].first;
    if (w.empty()) return {Weight{}};
    while (true) {
        out.push_back(w);
        std::size_t i = w.size();
        while (i > 0) {
            --i;
            if (w[i] < win.bounds[i].second) {
                ++w[i];
                for (std::size_t j = i + 1; j < w.size(); ++j) w[j] = win.bounds[j].first;
                break;
            }
            if (i == 0) return out;
        }
    }
}

} // namespace thh
