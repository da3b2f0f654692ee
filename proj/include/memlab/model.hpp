#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "memlab/access.hpp"

namespace memlab {

// Selectable relaxations. ReadEarly enables store forwarding and drags
// the WROwn layer in with it; WROwn is not selectable on its own.
enum class Feature { WR, WW, RR, RW, ReadEarly };

// Swap-rule layers, each wrapping the next-inner rule ("original").
enum class LayerKind { WROwn, WR, WW, RR, RW };

const char* to_string(Feature f);
const char* to_string(LayerKind k);
std::optional<Feature> feature_from_string(std::string_view s);

using FeatureSet = std::set<Feature>;
using SwapPredicate =
    std::function<bool(const AccessEvent&, const AccessEvent&)>;

// Core scheduling predicate: may `b` execute before `a`? False exactly
// when the two accesses are from the same thread.
bool base_may_swap(const AccessEvent& a, const AccessEvent& b);

// One relaxation layer on top of `original`. Shapes a layer does not
// match delegate to `original` unchanged.
bool layer_may_swap(LayerKind layer, const AccessEvent& a,
                    const AccessEvent& b, const SwapPredicate& original);

// An ordered stack of relaxation layers over the base predicate, plus
// the store-forwarding flag. Immutable after construction.
class MemoryModel {
 public:
  // SC: empty stack, no forwarding.
  MemoryModel() = default;

  // Raw constructor for custom stacks; compose() is the checked path.
  MemoryModel(std::vector<LayerKind> layers, bool read_early,
              std::string name = "");

  // Canonical stack for a feature set, outermost to innermost:
  // RW, RR, WW, WR, WROwn.
  static MemoryModel compose(const FeatureSet& features);

  // Catalog entry by name (case-insensitive). Throws UnknownProduct.
  static MemoryModel product(const std::string& name);

  // Whether the later access `b` may execute before the earlier `a`.
  bool may_swap(const AccessEvent& a, const AccessEvent& b) const;

  bool read_early() const { return read_early_; }
  const std::vector<LayerKind>& layers() const { return layers_; }
  const std::string& name() const { return name_; }

  // Catalog name when there is one, otherwise the feature list.
  std::string describe() const;

 private:
  std::vector<LayerKind> layers_;  // outermost first
  bool read_early_ = false;
  std::string name_;
};

// Feature sets behind the catalog names. Throws UnknownProduct.
// SC -> {}, IBM370 -> {WR}, TSO -> {WR, ReadEarly},
// PSO -> {WR, WW, ReadEarly}.
FeatureSet named_product(const std::string& name);

// True when every cross-thread pair stays swappable under `model`. The
// explorer's fixed enqueue order is only sound when this holds; all five
// defined layers preserve it.
bool cross_thread_open(const MemoryModel& model);

}  // namespace memlab
