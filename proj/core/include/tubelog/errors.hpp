#ifndef TUBELOG_ERRORS_HPP
#define TUBELOG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tubelog {

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Path of a translation or continuation entered the removed neighbourhood
// of a ramification point.
struct PathHitsRamification : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Path left the configured lower region of the surface.
struct LeftDomain : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Continuation step size underflowed near a ramification point.
struct StepUnderflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Time is not a member of the required recursive time set.
struct IllegalTime : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A flow orbit entered a removed region; the sampled point is outside the
// domain of definition of the semi-flow, not a bug.
struct OrbitHitsExclusion : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The curve solver could not bracket the target height.  Signals that the
// graph-over-axis hypotheses do not hold for the requested line.
struct BracketFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Requested transversal coordinate is not realizable at the available depth.
struct UnrealizableTheta : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Iterative solver failed to converge within its cap.
struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A certified parameter search exhausted its budget.  Carries the name of
// the first predicate that could not be satisfied.
struct SearchExhausted : std::runtime_error {
  std::string predicate;
  SearchExhausted(const std::string& pred, const std::string& what)
      : std::runtime_error(what), predicate(pred) {}
};

}  // namespace tubelog

#endif
