#ifndef TUBELOG_TIMESET_HPP
#define TUBELOG_TIMESET_HPP

#include <cstdint>
#include <vector>

#include "tubelog/exactq.hpp"

namespace tubelog {

// The recursive time sets A_{j,n} of the folded semi-flows,
//   A_{j,n} = a_j^{-1} ( Z + A_{j+1,n} cap [-2/a_{j+1}, 2/a_{j+1}] ),
//   A_{n,n} = R.
// Membership is decided exactly with big-rational arithmetic.
struct TimeSetDescriptor {
  int j = 0;
  int n = 0;
  std::vector<std::int64_t> a;  // a_j, ..., a_n (a.size() == n - j + 1)
};

bool time_set_contains(const TimeSetDescriptor& T, const BigRat& t);

// Level decomposition of a legal time: a_j s_j = k_j + s_{j+1} with
// |s_{j+1}| <= 2/a_{j+1}, s_j the running remainder (s_0 = t).  Throws
// IllegalTime when t is not a member.
struct TimeDecomposition {
  std::vector<BigInt> k;   // integer parts per level, size n - j
  std::vector<BigRat> s;   // remainders, s[0] = t, size n - j + 1
};
TimeDecomposition decompose_time(const TimeSetDescriptor& T, const BigRat& t);

}  // namespace tubelog

#endif
