#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rieszbasis/periodic_set.hpp"
#include "rieszbasis/rational.hpp"

namespace rieszbasis {

struct TraceNode;
using TracePtr = std::shared_ptr<const TraceNode>;

/// Empty frequency set in `dim` dimensions.
struct EmptyStep {
  std::size_t dim = 1;
};

/// {0, ..., modulus*length - 1} + modulus*Z, the basis of [0, length].
struct IntervalStep {
  Rational length;
  std::int64_t modulus = 1;
};

/// A single frequency set fixed by value (Z^d for full cubes).
struct LatticeStep {
  std::size_t dim = 1;
};

/// Folding assembly along the first axis:
/// ⋃_n shift(scale_axis(piece_n, 0, modulus), (first_shift + n - 1, 0, ..., 0)).
struct FoldStep {
  std::int64_t modulus = 1;
  std::int64_t first_shift = 1;
  std::vector<TracePtr> pieces;  // pieces[n-1] is the basis of the stretched X_{>=n}
  std::string reason;
};

/// ⋃_k product(first_k, second_k). `order` records the length ordering of
/// the step-decomposition fibers that produced the terms.
struct ProductStep {
  std::vector<std::pair<TracePtr, TracePtr>> terms;
  std::vector<std::size_t> order;
};

/// The inner basis reused for a rotated copy of its set; the frequency set is
/// unchanged because integer exponentials are periodic.
struct RotateStep {
  Rational shift;
  TracePtr inner;
};

struct TraceNode {
  std::variant<EmptyStep, IntervalStep, LatticeStep, FoldStep, ProductStep, RotateStep> step;
};

template <typename Step>
TracePtr make_trace(Step step) {
  return std::make_shared<const TraceNode>(TraceNode{std::move(step)});
}

/// Re-executes the recorded assembly and returns the frequency set it yields.
PeriodicSet replay(const TraceNode& node);

struct TraceStats {
  std::size_t nodes = 0;
  std::size_t depth = 0;
  std::size_t folds = 0;
  std::size_t products = 0;
  std::size_t rotations = 0;
  std::vector<std::int64_t> fold_moduli;  // distinct, ascending
};

TraceStats summarize(const TraceNode& node);

/// Short name of the top-level step ("fold", "product", ...).
std::string step_name(const TraceNode& node);

}  // namespace rieszbasis
