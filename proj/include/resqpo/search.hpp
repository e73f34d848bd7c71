#pragma once

#include <chrono>
#include <concepts>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "resqpo/errors.hpp"

namespace resqpo {

/// A finite-domain problem for the exhaustive backtracking engine.
///
/// Variables are decided in index order 0..num_variables()-1, values in
/// 0..domain_size(v)-1. assign() may propagate and prune: it returns false
/// to reject the value, in which case it must leave the state unchanged.
/// unassign() undoes the last successful assign() of that variable.
template <class P>
concept SearchProblem = requires(P p, const P cp, std::size_t i) {
  { cp.num_variables() } -> std::convertible_to<std::size_t>;
  { cp.domain_size(i) } -> std::convertible_to<std::size_t>;
  { p.assign(i, i) } -> std::convertible_to<bool>;
  p.unassign(i);
};

struct SearchLimits {
  std::optional<std::chrono::steady_clock::time_point> deadline;

  static SearchLimits within(std::chrono::milliseconds budget) {
    return {std::chrono::steady_clock::now() + budget};
  }
};

struct SearchStats {
  std::uint64_t nodes = 0;       // successful assignments
  std::uint64_t rejected = 0;    // values refused by assign()
  std::uint64_t solutions = 0;
};

namespace detail {

template <class P, class Visitor>
class Backtracker {
 public:
  Backtracker(P& p, Visitor& visit, const SearchLimits& limits) : p_(p), visit_(visit), limits_(limits) {}

  SearchStats run() {
    values_.assign(p_.num_variables(), 0);
    descend(0);
    return stats_;
  }

 private:
  void descend(std::size_t var) {
    if (var == values_.size()) {
      ++stats_.solutions;
      if (!visit_(std::as_const(values_))) stopped_ = true;
      return;
    }
    const std::size_t n = p_.domain_size(var);
    for (std::size_t val = 0; val < n && !stopped_; ++val) {
      if ((++ticks_ & 1023) == 0 && limits_.deadline && std::chrono::steady_clock::now() > *limits_.deadline)
        throw search_timeout();
      if (!p_.assign(var, val)) {
        ++stats_.rejected;
        continue;
      }
      ++stats_.nodes;
      values_[var] = val;
      descend(var + 1);
      p_.unassign(var);
    }
  }

  P& p_;
  Visitor& visit_;
  const SearchLimits& limits_;
  std::vector<std::size_t> values_;
  SearchStats stats_;
  std::uint64_t ticks_ = 0;
  bool stopped_ = false;
};

}  // namespace detail

/// Visits every solution of `problem` exactly once, in lexicographic order
/// of value vectors. The visitor receives the full value vector and returns
/// false to stop. Throws search_timeout once the deadline has passed.
template <SearchProblem P, class Visitor>
SearchStats solve(P& problem, Visitor&& visit, const SearchLimits& limits = {}) {
  detail::Backtracker<P, std::remove_reference_t<Visitor>> bt(problem, visit, limits);
  return bt.run();
}

/// Adapter for small problems given as explicit domain sizes plus a
/// pruning predicate over the partial assignment (values[0..depth)).
class TableProblem {
 public:
  using Prune = std::function<bool(const std::vector<std::size_t>& values, std::size_t depth)>;

  explicit TableProblem(std::vector<std::size_t> domains, Prune reject = {})
      : domains_(std::move(domains)), reject_(std::move(reject)), values_(domains_.size(), 0) {}

  std::size_t num_variables() const { return domains_.size(); }
  std::size_t domain_size(std::size_t v) const { return domains_[v]; }

  bool assign(std::size_t v, std::size_t val) {
    values_[v] = val;
    return !reject_ || !reject_(values_, v + 1);
  }
  void unassign(std::size_t) {}

 private:
  std::vector<std::size_t> domains_;
  Prune reject_;
  std::vector<std::size_t> values_;
};

}  // namespace resqpo
