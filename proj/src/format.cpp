#include "hchain/format.hpp"

#include <charconv>
#include <system_error>

namespace hchain {

std::string render_number(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

}  // namespace hchain
