#include "fitsgeo/number_format.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

#include "fitsgeo/error.hpp"

namespace fitsgeo {

std::string format_number(double v) {
  if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteNumber, "cannot format a non-finite number");
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);
  const auto e = s.find('e');
  if (e == std::string::npos) return s;
  // to_chars writes e+XX / e-XX; strip the plus sign and leading zeros.
  std::string mantissa = s.substr(0, e);
  std::string_view exp(s);
  exp.remove_prefix(e + 1);
  bool negative = false;
  if (!exp.empty() && (exp.front() == '+' || exp.front() == '-')) {
    negative = exp.front() == '-';
    exp.remove_prefix(1);
  }
  while (exp.size() > 1 && exp.front() == '0') exp.remove_prefix(1);
  return mantissa + "e" + (negative ? "-" : "") + std::string(exp);
}

std::optional<double> parse_number(std::string_view text) {
  if (text.empty() || text.size() > 64) return std::nullopt;
  std::string buf(text);
  for (auto& c : buf)
    if (c == 'd' || c == 'D') c = 'e';
  std::string_view body(buf);
  bool negative = false;
  if (body.front() == '+' || body.front() == '-') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  if (body.empty() || body.front() == '+' || body.front() == '-') return std::nullopt;
  // from_chars also accepts "inf"/"nan"; only plain decimals are allowed here.
  const char first = body.front();
  if (!(first == '.' || (first >= '0' && first <= '9'))) return std::nullopt;
  double v = 0.0;
  const auto res = std::from_chars(body.data(), body.data() + body.size(), v);
  if (res.ec != std::errc() || res.ptr != body.data() + body.size()) return std::nullopt;
  if (!std::isfinite(v)) return std::nullopt;
  return negative ? -v : v;
}

std::optional<long long> parse_integer(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  if (text.empty() || text.front() == '+') return std::nullopt;
  long long v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

}  // namespace fitsgeo
