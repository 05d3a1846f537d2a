#pragma once

#include <stdexcept>
#include <string>

namespace stabfan {

struct InvalidRelation : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotFiniteDimensional : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EnumerationBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonIntegral : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PrimeTooSmall : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SplitFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotPresilting : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotInTbar : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotStringAlgebra : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct VerificationFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BadInputFile : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace stabfan
