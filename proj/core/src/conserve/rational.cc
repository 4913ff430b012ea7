#include "cpath/conserve/rational.h"

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace cpath::conserve {
namespace {

int64_t ParseInt(std::string_view text, std::string_view whole) {
  int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("not a rational number: \"" + std::string(whole) + "\"");
  }
  return v;
}

int64_t Pow10(int exp, std::string_view whole) {
  int64_t p = 1;
  for (int i = 0; i < exp; ++i) {
    if (p > INT64_MAX / 10) throw std::invalid_argument("rational out of range: \"" + std::string(whole) + "\"");
    p *= 10;
  }
  return p;
}

}  // namespace

Rational::Rational(int64_t num, int64_t den) {
  if (num <= 0 || den <= 0) {
    throw std::invalid_argument("rational must be positive: " + std::to_string(num) + "/" +
                                std::to_string(den));
  }
  const int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Rational Rational::Parse(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return Rational(ParseInt(text.substr(0, slash), text), ParseInt(text.substr(slash + 1), text));
  }
  std::string_view mantissa = text;
  int exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    std::string_view exp_text = text.substr(e + 1);
    if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
    exponent = static_cast<int>(ParseInt(exp_text, text));
  }
  std::string digits(mantissa);
  if (auto dot = digits.find('.'); dot != std::string::npos) {
    exponent -= static_cast<int>(digits.size() - dot - 1);
    digits.erase(dot, 1);
  }
  int64_t num = ParseInt(digits, text);
  int64_t den = 1;
  if (exponent >= 0) {
    const int64_t scale = Pow10(exponent, text);
    if (num > INT64_MAX / scale) throw std::invalid_argument("rational out of range: \"" + std::string(text) + "\"");
    num *= scale;
  } else {
    den = Pow10(-exponent, text);
  }
  return Rational(num, den);
}

Rational Rational::FromDouble(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::invalid_argument("cannot render rational");
  return Parse(std::string_view(buf, static_cast<size_t>(ptr - buf)));
}

std::string Rational::ToString() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

bool Rational::MultipleAtMost(uint64_t factor, uint64_t bound) const {
  // (num/den) * factor <= bound  <=>  num * factor <= bound * den
  const unsigned __int128 left = static_cast<unsigned __int128>(factor) * static_cast<uint64_t>(num_);
  const unsigned __int128 right = static_cast<unsigned __int128>(bound) * static_cast<uint64_t>(den_);
  return left <= right;
}

}  // namespace cpath::conserve
