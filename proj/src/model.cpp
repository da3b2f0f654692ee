#include "memlab/model.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "memlab/error.hpp"

namespace memlab {

const char* to_string(Feature f) {
  switch (f) {
    case Feature::WR:
      return "WR";
    case Feature::WW:
      return "WW";
    case Feature::RR:
      return "RR";
    case Feature::RW:
      return "RW";
    case Feature::ReadEarly:
      return "ReadEarly";
  }
  return "?";
}

const char* to_string(LayerKind k) {
  switch (k) {
    case LayerKind::WROwn:
      return "WROwn";
    case LayerKind::WR:
      return "WR";
    case LayerKind::WW:
      return "WW";
    case LayerKind::RR:
      return "RR";
    case LayerKind::RW:
      return "RW";
  }
  return "?";
}

namespace {

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

std::optional<Feature> feature_from_string(std::string_view s) {
  std::string key = lowercase(s);
  if (key == "wr") return Feature::WR;
  if (key == "ww") return Feature::WW;
  if (key == "rr") return Feature::RR;
  if (key == "rw") return Feature::RW;
  if (key == "readearly") return Feature::ReadEarly;
  return std::nullopt;
}

bool base_may_swap(const AccessEvent& a, const AccessEvent& b) {
  return a.tid != b.tid;
}

bool layer_may_swap(LayerKind layer, const AccessEvent& a,
                    const AccessEvent& b, const SwapPredicate& original) {
  switch (layer) {
    case LayerKind::WR:
      if (a.is_write() && b.is_read()) {
        return a.loc != b.loc || original(a, b);
      }
      return original(a, b);
    case LayerKind::WROwn:
      // The forwarding companion: a read may pass a write to the same
      // location because it will take that write's value anyway.
      if (a.is_write() && b.is_read() && a.loc == b.loc) return true;
      return original(a, b);
    case LayerKind::WW:
      if (a.is_write() && b.is_write()) {
        return a.loc != b.loc || original(a, b);
      }
      return original(a, b);
    case LayerKind::RR:
      if (a.is_read() && b.is_read()) {
        return a.loc != b.loc || original(a, b);
      }
      return original(a, b);
    case LayerKind::RW:
      if (a.is_read() && b.is_write()) {
        return a.loc != b.loc || original(a, b);
      }
      return original(a, b);
  }
  return original(a, b);
}

namespace {

// may_swap folded over the stack tail starting at layer index i, with
// base_may_swap at the bottom. The lambda handed to layer_may_swap as
// "original" recurses one level deeper.
bool fold_may_swap(const std::vector<LayerKind>& layers, std::size_t i,
                   const AccessEvent& a, const AccessEvent& b) {
  if (i == layers.size()) return base_may_swap(a, b);
  return layer_may_swap(
      layers[i], a, b,
      [&layers, i](const AccessEvent& x, const AccessEvent& y) {
        return fold_may_swap(layers, i + 1, x, y);
      });
}

}  // namespace

MemoryModel::MemoryModel(std::vector<LayerKind> layers, bool read_early,
                         std::string name)
    : layers_(std::move(layers)), read_early_(read_early),
      name_(std::move(name)) {}

MemoryModel MemoryModel::compose(const FeatureSet& features) {
  std::vector<LayerKind> stack;
  if (features.count(Feature::RW)) stack.push_back(LayerKind::RW);
  if (features.count(Feature::RR)) stack.push_back(LayerKind::RR);
  if (features.count(Feature::WW)) stack.push_back(LayerKind::WW);
  if (features.count(Feature::WR)) stack.push_back(LayerKind::WR);
  bool read_early = features.count(Feature::ReadEarly) != 0;
  if (read_early) stack.push_back(LayerKind::WROwn);
  return MemoryModel(std::move(stack), read_early);
}

MemoryModel MemoryModel::product(const std::string& name) {
  MemoryModel model = compose(named_product(name));
  std::string key = lowercase(name);
  if (key == "sc") model.name_ = "SC";
  if (key == "ibm370") model.name_ = "IBM370";
  if (key == "tso") model.name_ = "TSO";
  if (key == "pso") model.name_ = "PSO";
  return model;
}

bool MemoryModel::may_swap(const AccessEvent& a, const AccessEvent& b) const {
  return fold_may_swap(layers_, 0, a, b);
}

std::string MemoryModel::describe() const {
  if (!name_.empty()) return name_;
  FeatureSet features;
  for (LayerKind layer : layers_) {
    switch (layer) {
      case LayerKind::WR:
        features.insert(Feature::WR);
        break;
      case LayerKind::WW:
        features.insert(Feature::WW);
        break;
      case LayerKind::RR:
        features.insert(Feature::RR);
        break;
      case LayerKind::RW:
        features.insert(Feature::RW);
        break;
      case LayerKind::WROwn:
        break;  // implied by ReadEarly
    }
  }
  if (read_early_) features.insert(Feature::ReadEarly);
  if (features.empty()) return "SC";
  std::string out;
  for (Feature f : features) {
    if (!out.empty()) out += "+";
    out += to_string(f);
  }
  return out;
}

FeatureSet named_product(const std::string& name) {
  std::string key = lowercase(name);
  if (key == "sc") return {};
  if (key == "ibm370") return {Feature::WR};
  if (key == "tso") return {Feature::WR, Feature::ReadEarly};
  if (key == "pso") return {Feature::WR, Feature::WW, Feature::ReadEarly};
  throw UnknownProduct(name);
}

bool cross_thread_open(const MemoryModel& model) {
  const LocationId v{"v"}, w{"w"};
  std::vector<AccessEvent> shapes_a, shapes_b;
  for (const LocationId& loc : {v, w}) {
    shapes_a.push_back(AccessEvent::make_write(ThreadId{0}, loc, 1, 0));
    shapes_a.push_back(AccessEvent::make_read(ThreadId{0}, loc, 0));
    shapes_b.push_back(AccessEvent::make_write(ThreadId{1}, loc, 1, 1));
    shapes_b.push_back(AccessEvent::make_read(ThreadId{1}, loc, 1));
  }
  for (const AccessEvent& a : shapes_a) {
    for (const AccessEvent& b : shapes_b) {
      if (!model.may_swap(a, b)) return false;
      if (!model.may_swap(b, a)) return false;
    }
  }
  return true;
}

}  // namespace memlab
