#include "twisthom/rational.hpp"

#include <cctype>

namespace thh {

Q rat_parse(const std::string& s) {
    auto bad = [&] { throw ParseError("not a rational: '" + s + "'"); };
    if (s.empty()) bad();
    std::size_t i = 0;
    if (s[0] == '-') i = 1;
    std::size_t num_begin = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == num_begin) bad();
    std::string num = s.substr(0, i);
    std::string den = "1";
    if (i < s.size()) {
        if (s[i] != '/') bad();
        ++i;
        std::size_t den_begin = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i != s.size() || i == den_begin) bad();
        den = s.substr(den_begin);
        if (den[0] == '0') bad(); // grammar requires [1-9][0-9]*
    }
    Q x(num + "/" + den);
    x.canonicalize();
    return x;
}

std::string rat_str(const Q& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

} // namespace thh
