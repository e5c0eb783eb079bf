#include "gtf/common.hpp"

#include <cctype>
#include <limits>

namespace gtf {

Weight parse_weight(std::string_view text) {
    if (text.empty()) throw GtfError("malformed weight: empty");
    std::size_t i = 0;
    Weight whole = 0;
    bool any_digit = false;
    for (; i < text.size() && text[i] != '.'; ++i) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (!std::isdigit(c)) throw GtfError("malformed weight: '" + std::string(text) + "'");
        any_digit = true;
        if (whole > (std::numeric_limits<Weight>::max() - 9) / 10)
            throw GtfError("weight out of range: '" + std::string(text) + "'");
        whole = whole * 10 + (c - '0');
    }
    if (!any_digit) throw GtfError("malformed weight: '" + std::string(text) + "'");
    Weight frac = 0;
    if (i < text.size()) {
        ++i;  // skip '.'
        std::size_t digits = 0;
        for (; i < text.size(); ++i, ++digits) {
            unsigned char c = static_cast<unsigned char>(text[i]);
            if (!std::isdigit(c)) throw GtfError("malformed weight: '" + std::string(text) + "'");
            if (digits >= 3)
                throw GtfError("weight has more than three fractional digits: '" +
                               std::string(text) + "'");
            frac = frac * 10 + (c - '0');
        }
        if (digits == 0) throw GtfError("malformed weight: '" + std::string(text) + "'");
        for (; digits < 3; ++digits) frac *= 10;
    }
    if (whole > (std::numeric_limits<Weight>::max() - frac) / 1000)
        throw GtfError("weight out of range: '" + std::string(text) + "'");
    return whole * 1000 + frac;
}

std::string format_weight(Weight milli) {
    bool neg = milli < 0;
    if (neg) milli = -milli;
    std::string out = std::to_string(milli / 1000);
    Weight frac = milli % 1000;
    out += '.';
    out += static_cast<char>('0' + frac / 100);
    out += static_cast<char>('0' + (frac / 10) % 10);
    out += static_cast<char>('0' + frac % 10);
    return neg ? "-" + out : out;
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (char ch : text) {
        unsigned char c = static_cast<unsigned char>(ch);
        if (std::isalnum(c)) {
            current += static_cast<char>(std::tolower(c));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

}  // namespace gtf
