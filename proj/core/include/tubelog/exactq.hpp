#ifndef TUBELOG_EXACTQ_HPP
#define TUBELOG_EXACTQ_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <vector>

namespace tubelog {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const BigRat& q) { return boost::multiprecision::numerator(q); }
inline BigInt rat_den(const BigRat& q) { return boost::multiprecision::denominator(q); }

inline std::string to_string(const BigInt& v) { return v.str(); }
inline double to_double(const BigRat& q) { return q.template convert_to<double>(); }

// nearest integer to q (ties toward +inf; the recursion below never meets a
// tie because the half-width bounds are strict in the cases that matter)
inline BigInt nearest_int(const BigRat& q) {
  const BigInt n = rat_num(q), d = rat_den(q);
  BigInt fl = n / d;
  if (n < 0 && fl * d != n) --fl;  // floor
  const BigRat frac = q - BigRat(fl);
  return 2 * frac >= 1 ? fl + 1 : fl;
}

// A time of the form  m + sum_i eps_i / (a_0 ... a_i), digits in {-1,0,1}.
// The value is exactly reproducible from the ledger's a-sequence.
struct RationalTime {
  BigInt integer_part = 0;
  std::vector<int> digits;  // eps_0, eps_1, ...

  BigRat value(const std::vector<std::int64_t>& a) const {
    BigRat v(integer_part);
    BigInt prod = 1;
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (i >= a.size()) break;
      prod *= a[i];
      if (digits[i] != 0) v += BigRat(digits[i], prod);
    }
    return v;
  }
};

}  // namespace tubelog

#endif
