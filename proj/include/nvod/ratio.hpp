#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nvod {

// Exact rational on checked 64-bit integers: always in lowest terms with a
// positive denominator. Overflow throws std::overflow_error instead of
// wrapping; division by zero throws std::domain_error.
class Ratio {
 public:
  constexpr Ratio() = default;
  Ratio(std::int64_t value) : num_(value) {}  // NOLINT(runtime/explicit)
  Ratio(std::int64_t num, std::int64_t den) : num_(num), den_(den) { normalize(); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  bool is_positive() const { return num_ > 0; }
  bool is_integer() const { return den_ == 1; }

  Ratio operator-() const { return Ratio(checked_neg(num_), den_, already_reduced{}); }

  Ratio operator+(Ratio o) const {
    // a/b + c/d with partial reduction through g = gcd(b, d) to keep magnitudes small.
    std::int64_t g = std::gcd(den_, o.den_);
    std::int64_t num = checked_add(checked_mul(num_, o.den_ / g), checked_mul(o.num_, den_ / g));
    std::int64_t den = checked_mul(den_ / g, o.den_);
    return Ratio(num, den);
  }
  Ratio operator-(Ratio o) const { return *this + (-o); }
  Ratio operator*(Ratio o) const {
    std::int64_t g1 = std::gcd(num_, o.den_);
    std::int64_t g2 = std::gcd(o.num_, den_);
    std::int64_t num = checked_mul(num_ / g1, o.num_ / g2);
    std::int64_t den = checked_mul(den_ / g2, o.den_ / g1);
    return Ratio(num, den, already_reduced{});
  }
  Ratio operator/(Ratio o) const {
    if (o.num_ == 0) throw std::domain_error("Ratio: division by zero");
    return *this * Ratio(o.den_, o.num_);
  }

  Ratio& operator+=(Ratio o) { return *this = *this + o; }
  Ratio& operator-=(Ratio o) { return *this = *this - o; }
  Ratio& operator*=(Ratio o) { return *this = *this * o; }
  Ratio& operator/=(Ratio o) { return *this = *this / o; }

  friend bool operator==(Ratio a, Ratio b) = default;  // canonical representation
  std::strong_ordering operator<=>(Ratio o) const {
    __int128 lhs = static_cast<__int128>(num_) * o.den_;
    __int128 rhs = static_cast<__int128>(o.num_) * den_;
    return lhs < rhs ? std::strong_ordering::less
         : lhs > rhs ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
  }

  Ratio abs() const { return num_ < 0 ? -*this : *this; }

  std::int64_t floor() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }
  std::int64_t ceil() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return q;
  }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  // "7/3" for non-integers, "4" when the denominator is 1.
  std::string str() const {
    return den_ == 1 ? std::to_string(num_)
                     : std::to_string(num_) + "/" + std::to_string(den_);
  }

  static Ratio parse(std::string_view text);

 private:
  struct already_reduced {};
  Ratio(std::int64_t num, std::int64_t den, already_reduced) : num_(num), den_(den) {}

  static std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("Ratio: integer overflow");
    return r;
  }
  static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("Ratio: integer overflow");
    return r;
  }
  static std::int64_t checked_neg(std::int64_t a) {
    std::int64_t r;
    if (__builtin_sub_overflow(std::int64_t{0}, a, &r)) throw std::overflow_error("Ratio: integer overflow");
    return r;
  }

  void normalize() {
    if (den_ == 0) throw std::domain_error("Ratio: zero denominator");
    if (den_ < 0) {
      num_ = checked_neg(num_);
      den_ = checked_neg(den_);
    }
    std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Ratio Ratio::parse(std::string_view text) {
  auto parse_int = [](std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
      throw std::invalid_argument("Ratio: cannot parse '" + std::string(s) + "'");
    return v;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Ratio(parse_int(text));
  return Ratio(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

inline std::ostream& operator<<(std::ostream& os, Ratio r) { return os << r.str(); }

inline Ratio min(Ratio a, Ratio b) { return b < a ? b : a; }
inline Ratio max(Ratio a, Ratio b) { return a < b ? b : a; }

// H(n) = sum of 1/i for i in 1..n, exact.
inline Ratio harmonic(std::int64_t n) {
  if (n < 1) throw std::domain_error("harmonic: n must be >= 1");
  Ratio sum(0);
  for (std::int64_t i = 1; i <= n; ++i) sum += Ratio(1, i);
  return sum;
}

// lcm(1..n); overflow-checked, used for hyperperiod lengths.
inline std::int64_t lcm_range(std::int64_t n) {
  if (n < 1) throw std::domain_error("lcm_range: n must be >= 1");
  std::int64_t v = 1;
  for (std::int64_t i = 2; i <= n; ++i) {
    std::int64_t g = std::gcd(v, i);
    std::int64_t r;
    if (__builtin_mul_overflow(v / g, i, &r)) throw std::overflow_error("lcm_range: overflow");
    v = r;
  }
  return v;
}

}  // namespace nvod
