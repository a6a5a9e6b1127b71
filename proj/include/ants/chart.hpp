#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace ants {

/// An ordered list of distinct coordinate names. The order is fixed for the
/// chart's lifetime; monomial order and evaluation order derive from it.
class Chart {
 public:
  explicit Chart(std::vector<std::string> vars) : vars_(std::move(vars)) {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      for (std::size_t j = i + 1; j < vars_.size(); ++j)
        if (vars_[i] == vars_[j])
          throw std::invalid_argument("Chart: duplicate variable " + vars_[i]);
  }

  std::size_t arity() const { return vars_.size(); }
  const std::string& var(std::size_t i) const { return vars_.at(i); }
  const std::vector<std::string>& vars() const { return vars_; }

  // -1 if the name is not a chart variable.
  int index_of(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return static_cast<int>(i);
    return -1;
  }

  bool operator==(const Chart& o) const { return vars_ == o.vars_; }
  bool operator!=(const Chart& o) const { return !(*this == o); }

 private:
  std::vector<std::string> vars_;
};

using ChartPtr = std::shared_ptr<const Chart>;

inline ChartPtr make_chart(std::vector<std::string> vars) {
  return std::make_shared<const Chart>(std::move(vars));
}

inline bool same_chart(const ChartPtr& a, const ChartPtr& b) {
  return a == b || (a && b && *a == *b);
}

// Cross-chart operations are rejected rather than coerced.
inline void require_same_chart(const ChartPtr& a, const ChartPtr& b,
                               const char* where) {
  if (!same_chart(a, b))
    throw std::invalid_argument(std::string(where) + ": chart mismatch");
}

}  // namespace ants
