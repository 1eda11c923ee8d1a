#include "liecurv/caps.hpp"

#include "liecurv/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>

namespace liecurv {

Caps parse_caps(const std::string& text, Caps base) {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw InvalidArgument("LIE_CURV_CAPS: expected key=value, got '" + item + "'");
        const std::string key = item.substr(0, eq);
        std::int64_t value = 0;
        try {
            std::size_t used = 0;
            value = std::stoll(item.substr(eq + 1), &used);
            if (used != item.size() - eq - 1 || value < 0) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw InvalidArgument("LIE_CURV_CAPS: bad value for '" + key + "'");
        }
        if (key == "omega_sym2") base.omega_sym2 = value;
        else if (key == "lambda_rows") base.lambda_rows = value;
        else if (key == "gram_sym2") base.gram_sym2 = value;
        else if (key == "exact_block") base.exact_block = value;
        else if (key == "float_block") base.float_block = value;
        else if (key == "auto_exact_dim") base.auto_exact_dim = value;
        else if (key == "auto_float_dim") base.auto_float_dim = value;
        else if (key == "identity32_dim") base.identity32_dim = value;
        else throw InvalidArgument("LIE_CURV_CAPS: unknown key '" + key + "'");
    }
    return base;
}

const Caps& caps() {
    static const Caps c = [] {
        const char* env = std::getenv("LIE_CURV_CAPS");
        return env ? parse_caps(env) : Caps{};
    }();
    return c;
}

} // namespace liecurv
