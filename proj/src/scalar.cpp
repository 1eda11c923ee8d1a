#include "liecurv/scalar.hpp"

#include <cctype>

namespace liecurv {

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw InvalidArgument("empty rational literal");
    try {
        const auto dot = s.find('.');
        if (dot == std::string::npos) {
            const auto slash = s.find('/');
            if (slash != std::string::npos &&
                s.find_first_not_of("0+", slash + 1) == std::string::npos)
                throw InvalidArgument("zero denominator in '" + text + "'");
            return Rational(s);
        }
        // decimal literal: scale by 10^digits
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        const auto frac = s.size() - dot - 1;
        if (digits.empty() || digits == "-" || digits == "+") throw InvalidArgument("bad decimal literal '" + text + "'");
        Rational den = 1;
        for (std::size_t i = 0; i < frac; ++i) den *= 10;
        return Rational(digits) / den;
    } catch (const std::runtime_error&) {
        throw InvalidArgument("cannot parse rational '" + text + "'");
    }
}

} // namespace liecurv
