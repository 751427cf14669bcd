#include "anneal/beta.hpp"

#include <charconv>
#include <cstdio>

namespace anneal {

std::string Beta::str() const {
    if (is_ninf()) return "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v_);
    return buf;
}

Beta Beta::parse(std::string_view token) {
    if (token == "-inf" || token == "-INF" || token == "-Inf") return Beta::ninf();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size())
        throw ParseError("bad beta token: " + std::string(token));
    return Beta(v);
}

}  // namespace anneal
