#pragma once

#include <stdexcept>
#include <string>

namespace loc5arc {

struct ReducibleModulus : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnsupportedDegree : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DivisionByZero : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidGenSpec : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegreeMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IndexOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotAProductGroup : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotNormal : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ClaimMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnknownLemma : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidParameter : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ScaleRefused : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RadiusTooSmall : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IOFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace loc5arc
