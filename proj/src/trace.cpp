#include "rieszbasis/trace.hpp"

#include <algorithm>
#include <map>

#include "rieszbasis/error.hpp"

namespace rieszbasis {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

PeriodicSet replay_cached(const TraceNode& node, std::map<const TraceNode*, PeriodicSet>& cache);

PeriodicSet replay_uncached(const TraceNode& node, std::map<const TraceNode*, PeriodicSet>& cache) {
  return std::visit(
      overloaded{
          [](const EmptyStep& s) { return PeriodicSet::empty(s.dim); },
          [](const LatticeStep& s) { return PeriodicSet::lattice(s.dim); },
          [](const IntervalStep& s) {
            const Rational cells = s.length * Rational(s.modulus);
            if (cells.denominator() != 1) throw ContractError("trace interval is not aligned to its modulus");
            return canonicalize(PeriodicSet::initial_block(s.modulus, cells.numerator()));
          },
          [&](const FoldStep& s) {
            if (s.pieces.empty()) throw ContractError("fold trace without pieces");
            PeriodicSet out;
            bool first = true;
            for (std::size_t n = 0; n < s.pieces.size(); ++n) {
              const PeriodicSet piece = replay_cached(*s.pieces[n], cache);
              IntVector offset(piece.dim(), 0);
              offset[0] = s.first_shift + static_cast<std::int64_t>(n);
              const PeriodicSet moved = shift(scale_axis(piece, 0, s.modulus), offset);
              out = first ? moved : unite(out, moved);
              first = false;
            }
            return out;
          },
          [&](const ProductStep& s) {
            if (s.terms.empty()) throw ContractError("product trace without terms");
            PeriodicSet out;
            bool first = true;
            for (const auto& [x, y] : s.terms) {
              const PeriodicSet term = product(replay_cached(*x, cache), replay_cached(*y, cache));
              out = first ? term : unite(out, term);
              first = false;
            }
            return out;
          },
          [&](const RotateStep& s) { return replay_cached(*s.inner, cache); },
      },
      node.step);
}

PeriodicSet replay_cached(const TraceNode& node, std::map<const TraceNode*, PeriodicSet>& cache) {
  if (auto it = cache.find(&node); it != cache.end()) return it->second;
  PeriodicSet out = replay_uncached(node, cache);
  cache.emplace(&node, out);
  return out;
}

void accumulate(const TraceNode& node, std::size_t depth, TraceStats& stats) {
  ++stats.nodes;
  stats.depth = std::max(stats.depth, depth);
  std::visit(overloaded{
                 [](const EmptyStep&) {},
                 [](const LatticeStep&) {},
                 [](const IntervalStep&) {},
                 [&](const FoldStep& s) {
                   ++stats.folds;
                   stats.fold_moduli.push_back(s.modulus);
                   for (const auto& p : s.pieces) accumulate(*p, depth + 1, stats);
                 },
                 [&](const ProductStep& s) {
                   ++stats.products;
                   for (const auto& [x, y] : s.terms) {
                     accumulate(*x, depth + 1, stats);
                     accumulate(*y, depth + 1, stats);
                   }
                 },
                 [&](const RotateStep& s) {
                   ++stats.rotations;
                   accumulate(*s.inner, depth + 1, stats);
                 },
             },
             node.step);
}

}  // namespace

PeriodicSet replay(const TraceNode& node) {
  std::map<const TraceNode*, PeriodicSet> cache;
  return replay_cached(node, cache);
}

TraceStats summarize(const TraceNode& node) {
  TraceStats stats;
  accumulate(node, 1, stats);
  std::sort(stats.fold_moduli.begin(), stats.fold_moduli.end());
  stats.fold_moduli.erase(std::unique(stats.fold_moduli.begin(), stats.fold_moduli.end()), stats.fold_moduli.end());
  return stats;
}

std::string step_name(const TraceNode& node) {
  return std::visit(overloaded{
                        [](const EmptyStep&) { return std::string("empty"); },
                        [](const LatticeStep&) { return std::string("lattice"); },
                        [](const IntervalStep&) { return std::string("interval"); },
                        [](const FoldStep&) { return std::string("fold"); },
                        [](const ProductStep&) { return std::string("product"); },
                        [](const RotateStep&) { return std::string("rotate"); },
                    },
                    node.step);
}

}  // namespace rieszbasis
