#include "mgp/common.hpp"

#include <charconv>
#include <cstdio>

namespace mgp {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v,
                           std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

bool parse_double(std::string_view token, double& out) {
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto res = std::from_chars(begin, end, out);
  return res.ec == std::errc() && res.ptr == end;
}

}  // namespace mgp
