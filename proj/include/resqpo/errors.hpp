#pragma once

#include <stdexcept>
#include <string>

namespace resqpo {

/// Malformed input: invalid graph data, non-total maps, bad file contents.
class format_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Well-formed input that violates a domain precondition (constraint
/// violations, constant-false conditions, non-monic legs where monos are
/// required).
class precondition_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by cancellable searches once their deadline has passed.
class search_timeout : public std::runtime_error {
 public:
  search_timeout() : std::runtime_error("search timed out") {}
};

}  // namespace resqpo
