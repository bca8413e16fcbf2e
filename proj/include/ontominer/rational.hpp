#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ontominer {

// Non-negative-friendly exact fraction; supports are small ratios of counts.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) {
    if (den_ == 0) throw std::invalid_argument("zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    auto g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  // Parses "1", "0.5", "2/3".
  static Rational parse(std::string_view s) {
    auto bad = [&] { return std::invalid_argument("not a rational number: '" + std::string(s) + "'"); };
    if (s.empty()) throw bad();
    auto digits = [&](std::string_view d) {
      if (d.empty() || d.size() > 15) throw bad();
      std::int64_t v = 0;
      for (char c : d) {
        if (c < '0' || c > '9') throw bad();
        v = v * 10 + (c - '0');
      }
      return v;
    };
    if (auto slash = s.find('/'); slash != std::string_view::npos)
      return Rational(digits(s.substr(0, slash)), digits(s.substr(slash + 1)));
    auto dot = s.find('.');
    if (dot == std::string_view::npos) return Rational(digits(s));
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    std::int64_t w = whole.empty() ? 0 : digits(whole);
    std::int64_t f = frac.empty() ? 0 : digits(frac);
    if (whole.empty() && frac.empty()) throw bad();
    return Rational(w * den + f, den);
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  // Fixed-point decimal, rounded half up.
  std::string to_decimal(int places = 6) const {
    std::int64_t scale = 1;
    for (int i = 0; i < places; ++i) scale *= 10;
    bool neg = num_ < 0;
    std::int64_t n = neg ? -num_ : num_;
    std::int64_t scaled = (n * scale * 2 + den_) / (den_ * 2);
    std::string frac = std::to_string(scaled % scale);
    frac.insert(0, static_cast<std::size_t>(places) - frac.size(), '0');
    std::string out = (neg ? "-" : "") + std::to_string(scaled / scale);
    return places > 0 ? out + "." + frac : out;
  }

  std::string to_string() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ <=> b.num_ * a.den_;
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace ontominer
