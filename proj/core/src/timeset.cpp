#include "tubelog/timeset.hpp"

#include "tubelog/errors.hpp"

namespace tubelog {

namespace {

void check_descriptor(const TimeSetDescriptor& T) {
  if (T.j < 0 || T.j > T.n)
    throw DomainError("time set: need 0 <= j <= n");
  if (T.a.size() != static_cast<std::size_t>(T.n - T.j + 1))
    throw DomainError("time set: a must list a_j..a_n");
}

}  // namespace

bool time_set_contains(const TimeSetDescriptor& T, const BigRat& t) {
  check_descriptor(T);
  BigRat s = t;
  for (int lvl = T.j; lvl < T.n; ++lvl) {
    const std::int64_t aj = T.a[lvl - T.j];
    const std::int64_t anext = T.a[lvl - T.j + 1];
    const BigRat scaled = s * aj;
    const BigInt k = nearest_int(scaled);
    const BigRat rem = scaled - BigRat(k);
    // |rem| <= 2/a_{next}; the nearest integer is the only candidate since
    // 2/a_{next} < 1/2 for a >= 5
    if ((rem < 0 ? -rem : rem) > BigRat(2, anext)) return false;
    s = rem;
  }
  return true;  // A_{n,n} = R
}

TimeDecomposition decompose_time(const TimeSetDescriptor& T, const BigRat& t) {
  check_descriptor(T);
  TimeDecomposition out;
  out.s.push_back(t);
  BigRat s = t;
  for (int lvl = T.j; lvl < T.n; ++lvl) {
    const std::int64_t aj = T.a[lvl - T.j];
    const std::int64_t anext = T.a[lvl - T.j + 1];
    const BigRat scaled = s * aj;
    const BigInt k = nearest_int(scaled);
    const BigRat rem = scaled - BigRat(k);
    if ((rem < 0 ? -rem : rem) > BigRat(2, anext))
      throw IllegalTime("decompose_time: t is not in the required time set");
    out.k.push_back(k);
    out.s.push_back(rem);
    s = rem;
  }
  return out;
}

}  // namespace tubelog
