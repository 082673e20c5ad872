#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace quilt {

// A step-budgeted partial function on tuples of naturals. eval(x, budget)
// yields the value once the budget covers the point's halting stage and
// nullopt before that. Implementations must be determinate: a value observed
// at some budget is the value at every larger budget.
class PartialEvaluator {
 public:
  using Args = std::span<const std::uint64_t>;
  using Fn = std::function<std::optional<std::uint64_t>(Args, std::uint64_t)>;

  PartialEvaluator() : fn_(never().fn_) {}
  explicit PartialEvaluator(Fn fn)
      : fn_(std::make_shared<Fn>(std::move(fn))) {}

  std::optional<std::uint64_t> eval(Args x, std::uint64_t budget) const {
    return (*fn_)(x, budget);
  }
  std::optional<std::uint64_t> eval(const std::vector<std::uint64_t>& x,
                                    std::uint64_t budget) const {
    return eval(Args(x), budget);
  }

  // Diverges everywhere.
  static PartialEvaluator never() {
    return PartialEvaluator(
        [](Args, std::uint64_t) { return std::optional<std::uint64_t>{}; });
  }

  // Total constant function, halting at budget 1.
  static PartialEvaluator constant(std::uint64_t v) {
    return PartialEvaluator([v](Args, std::uint64_t budget) {
      return budget >= 1 ? std::optional<std::uint64_t>(v)
                         : std::optional<std::uint64_t>{};
    });
  }

  // Projection onto coordinate i, halting at budget 1.
  static PartialEvaluator projection(std::size_t i) {
    return PartialEvaluator([i](Args x, std::uint64_t budget) {
      return budget >= 1 && i < x.size() ? std::optional<std::uint64_t>(x[i])
                                         : std::optional<std::uint64_t>{};
    });
  }

  // Total function halting at budget 1.
  static PartialEvaluator total(
      std::function<std::uint64_t(Args)> f) {
    return PartialEvaluator(
        [f = std::move(f)](Args x, std::uint64_t budget) {
          return budget >= 1 ? std::optional<std::uint64_t>(f(x))
                             : std::optional<std::uint64_t>{};
        });
  }

  struct TableEntry {
    std::uint64_t value = 0;
    std::uint64_t halt_stage = 1;  // least budget at which the value appears
  };

  // Finite lookup table; points absent from the table diverge.
  static PartialEvaluator table(
      std::map<std::vector<std::uint64_t>, TableEntry> entries) {
    auto data = std::make_shared<
        const std::map<std::vector<std::uint64_t>, TableEntry>>(
        std::move(entries));
    return PartialEvaluator(
        [data](Args x, std::uint64_t budget) -> std::optional<std::uint64_t> {
          auto it = data->find(std::vector<std::uint64_t>(x.begin(), x.end()));
          if (it != data->end() && budget >= it->second.halt_stage)
            return it->second.value;
          return std::nullopt;
        });
  }

 private:
  std::shared_ptr<Fn> fn_;
};

}  // namespace quilt
