#ifndef GTF_COMMON_HPP
#define GTF_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gtf {

// Dense internal node handle. External string ids are kept in the graph.
using NodeId = std::uint32_t;
constexpr NodeId kNoNode = UINT32_MAX;

// All weights are integer milliunits. Input weights are decimal strings with
// at most three fractional digits, so arithmetic and ordering are exact.
using Weight = std::int64_t;
constexpr Weight kUnreachable = -1;

class GtfError : public std::runtime_error {
public:
    explicit GtfError(const std::string& msg) : std::runtime_error(msg) {}
};

// Parses a positive decimal weight ("1", "2.5", "0.001") into milliunits.
// Throws GtfError on malformed input, more than three fractional digits,
// or a value that does not fit.
Weight parse_weight(std::string_view text);

// Renders milliunits as a decimal with exactly three fractional digits.
std::string format_weight(Weight milli);

// Lowercases ASCII letters and splits on any non-alphanumeric byte.
std::vector<std::string> tokenize(std::string_view text);

}  // namespace gtf

#endif
