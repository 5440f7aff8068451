#pragma once

#include <stdexcept>

namespace toda {

struct InvalidTau : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NonCoprime : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DegreeBoundExceeded : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct IncompatibleStep : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NonInvertibleLeading : std::domain_error {
  using std::domain_error::domain_error;
};

struct TruncationInsufficient : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace toda
