#ifndef CPATH_CONSERVE_RATIONAL_H_
#define CPATH_CONSERVE_RATIONAL_H_

#include <cstdint>
#include <string>
#include <string_view>

namespace cpath::conserve {

// Positive fraction num/den in lowest terms.
class Rational {
 public:
  Rational() = default;
  // Throws std::invalid_argument unless num > 0 and den > 0.
  Rational(int64_t num, int64_t den);

  // Accepts "3", "5/2" or a plain decimal such as "0.25" or "1e6".
  static Rational Parse(std::string_view text);
  // Exact value of the shortest decimal rendering of `value`.
  static Rational FromDouble(double value);

  int64_t num() const { return num_; }
  int64_t den() const { return den_; }
  double ToDouble() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string ToString() const;

  // this * factor <= bound, evaluated exactly.
  bool MultipleAtMost(uint64_t factor, uint64_t bound) const;

  friend bool operator==(const Rational&, const Rational&) = default;

 private:
  int64_t num_ = 3;
  int64_t den_ = 1;
};

}  // namespace cpath::conserve

#endif  // CPATH_CONSERVE_RATIONAL_H_
