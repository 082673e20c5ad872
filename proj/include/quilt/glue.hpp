#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "quilt/collection.hpp"
#include "quilt/enumeration.hpp"
#include "quilt/partial_eval.hpp"

namespace quilt {

// Separator table for the glue: one enumeration of tuple codes per
// subcollection mask.
using GlueSeparators = std::map<Mask, Enumeration<std::uint64_t>>;

// A gluing instance: one step-budgeted evaluator per member of the
// collection, plus a separator enumeration for every non-empty mask.
struct GlueInstance {
  std::size_t arity = 1;
  std::vector<PartialEvaluator> pieces;
  GlueSeparators separators;
};

inline GlueInstance make_glue_instance(std::size_t arity,
                                       std::vector<PartialEvaluator> pieces,
                                       GlueSeparators separators) {
  if (arity < 1) throw std::invalid_argument("glue: arity must be positive");
  if (pieces.empty()) throw std::invalid_argument("glue: no pieces");
  if (pieces.size() > 20) throw std::invalid_argument("glue: too many pieces");
  Mask full = full_mask(pieces.size());
  for (Mask k = 1; k <= full; ++k)
    if (!separators.contains(k))
      throw std::invalid_argument("glue: separator table misses a mask");
  return {arity, std::move(pieces), std::move(separators)};
}

// Deterministic least-(stage, mask) uniformization of the glue relation:
// at stage B the non-empty masks are scanned in ascending numeric order, and
// a mask fires when its separator has emitted the point within budget B and
// every selected piece halts within B with one common value. The first
// firing value is returned; nullopt means "not yet known at this budget".
//
// If f is any function with dom(f) inside the collection's union whose
// restrictions the pieces extend, and the separators are valid, then for
// every x in dom(f) some budget makes this return exactly f(x), and the
// value never changes as the budget grows.
inline std::optional<std::uint64_t> glue_eval(const GlueInstance& g,
                                              std::span<const std::uint64_t> x,
                                              std::uint64_t budget) {
  if (x.size() != g.arity)
    throw std::invalid_argument("glue_eval: arity mismatch");
  std::uint64_t code = tuple_code(x);
  Mask full = full_mask(g.pieces.size());

  // Incremental restatement of the stage search: extending each separator
  // scan by one index per stage keeps the firing order identical to
  // rescanning prefixes from scratch.
  std::vector<bool> seen(full + 1, false);
  for (std::uint64_t stage = 1; stage <= budget; ++stage) {
    for (Mask k = 1; k <= full; ++k) {
      auto item = g.separators.at(k).step(stage - 1);
      if (item && *item == code) seen[k] = true;
      if (!seen[k]) continue;
      std::optional<std::uint64_t> common;
      bool all_halt = true;
      for (std::size_t i = 0; i < g.pieces.size() && all_halt; ++i) {
        if (!mask_has(k, i)) continue;
        auto v = g.pieces[i].eval(x, stage);
        if (!v || (common && *common != *v))
          all_halt = false;
        else
          common = v;
      }
      if (all_halt && common) return common;
    }
  }
  return std::nullopt;
}

inline std::optional<std::uint64_t> glue_eval(
    const GlueInstance& g, const std::vector<std::uint64_t>& x,
    std::uint64_t budget) {
  return glue_eval(g, std::span<const std::uint64_t>(x), budget);
}

// Separator table for a collection of recursively enumerable members: the
// separator for K is just the dovetailed union of the selected members.
inline GlueSeparators separators_from_re(
    const std::vector<Enumeration<std::uint64_t>>& members) {
  GlueSeparators table;
  Mask full = full_mask(members.size());
  for (Mask k = 0; k <= full; ++k) {
    std::vector<Enumeration<std::uint64_t>> selected;
    for (std::size_t i = 0; i < members.size(); ++i)
      if (mask_has(k, i)) selected.push_back(members[i]);
    table.emplace(k, interleave(std::move(selected)));
  }
  return table;
}

// Separator table for a collection whose members are the complements of the
// given enumerable sets: the separator for K is the dovetailed intersection
// of the sets whose complements lie outside K. For K = full the whole
// ground enumeration serves.
inline GlueSeparators separators_from_complements(
    const std::vector<Enumeration<std::uint64_t>>& complemented) {
  GlueSeparators table;
  Mask full = full_mask(complemented.size());
  for (Mask k = 0; k <= full; ++k) {
    if (k == full) {
      table.emplace(k, naturals());
      continue;
    }
    std::vector<Enumeration<std::uint64_t>> kept;
    for (std::size_t i = 0; i < complemented.size(); ++i)
      if (!mask_has(k, i)) kept.push_back(complemented[i]);
    table.emplace(k, intersect_all(std::move(kept)));
  }
  return table;
}

// The simpler search available when the members themselves are enumerable:
// fire on the first (stage, index) whose member has emitted the point and
// whose evaluator halts within the stage. Same extension contract as
// glue_eval on such instances.
inline std::optional<std::uint64_t> simple_glue_eval(
    const std::vector<std::pair<Enumeration<std::uint64_t>, PartialEvaluator>>&
        pieces,
    std::span<const std::uint64_t> x, std::uint64_t budget) {
  std::uint64_t code = tuple_code(x);
  std::vector<bool> seen(pieces.size(), false);
  for (std::uint64_t stage = 1; stage <= budget; ++stage) {
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      auto item = pieces[i].first.step(stage - 1);
      if (item && *item == code) seen[i] = true;
      if (!seen[i]) continue;
      if (auto v = pieces[i].second.eval(x, stage)) return v;
    }
  }
  return std::nullopt;
}

inline std::optional<std::uint64_t> simple_glue_eval(
    const std::vector<std::pair<Enumeration<std::uint64_t>, PartialEvaluator>>&
        pieces,
    const std::vector<std::uint64_t>& x, std::uint64_t budget) {
  return simple_glue_eval(pieces, std::span<const std::uint64_t>(x), budget);
}

}  // namespace quilt
