#include "polymer/polymer_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "polymer/connected_sets.hpp"

namespace polymer {

namespace {

bool canonical_less(const Polymer& a, const Polymer& b) {
  if (a.size != b.size) return a.size < b.size;
  return a.set < b.set;
}

}  // namespace

PolymerIndex::PolymerIndex(std::size_t vertex_count, std::vector<Polymer> polymers,
                           const std::vector<std::pair<PolymerId, PolymerId>>& incompatible_pairs,
                           double decay_slope, std::string label)
    : vertex_count_(vertex_count), decay_slope_(decay_slope), label_(std::move(label)) {
  std::vector<PolymerId> order(polymers.size());
  std::iota(order.begin(), order.end(), PolymerId{0});
  std::stable_sort(order.begin(), order.end(), [&](PolymerId a, PolymerId b) {
    return canonical_less(polymers[a], polymers[b]);
  });
  std::vector<PolymerId> new_id(polymers.size());
  polymers_.reserve(polymers.size());
  for (PolymerId i = 0; i < order.size(); ++i) {
    new_id[order[i]] = i;
    polymers_.push_back(polymers[order[i]]);
  }
  incompat_.assign(polymers_.size(), {});
  for (auto [a, b] : incompatible_pairs) {
    if (a >= polymers.size() || b >= polymers.size())
      throw Error("bad-polymer", "incompatible pair refers to an unknown polymer");
    if (a == b) continue;
    incompat_[new_id[a]].push_back(new_id[b]);
    incompat_[new_id[b]].push_back(new_id[a]);
  }
  for (auto& list : incompat_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
}

bool PolymerIndex::incompatible(PolymerId a, PolymerId b) const {
  if (a == b) return true;
  const auto& list = incompat_[a];
  return std::binary_search(list.begin(), list.end(), b);
}

std::size_t PolymerIndex::max_polymer_size() const {
  std::size_t best = 0;
  for (const auto& p : polymers_) best = std::max(best, p.size);
  return best;
}

PolymerIndex PolymerIndex::filtered(const std::function<bool(const Polymer&)>& keep) const {
  PolymerIndex out;
  out.vertex_count_ = vertex_count_;
  out.decay_slope_ = decay_slope_;
  out.label_ = label_;
  constexpr PolymerId kDropped = ~PolymerId{0};
  std::vector<PolymerId> new_id(polymers_.size(), kDropped);
  for (PolymerId i = 0; i < polymers_.size(); ++i) {
    if (!keep(polymers_[i])) continue;
    new_id[i] = static_cast<PolymerId>(out.polymers_.size());
    out.polymers_.push_back(polymers_[i]);
  }
  out.incompat_.assign(out.polymers_.size(), {});
  for (PolymerId i = 0; i < polymers_.size(); ++i) {
    if (new_id[i] == kDropped) continue;
    for (PolymerId j : incompat_[i])
      if (new_id[j] != kDropped) out.incompat_[new_id[i]].push_back(new_id[j]);
  }
  return out;
}

PolymerIndex enumerate_polymers(const Graph& g, const PolymerModelSpec& spec, std::size_t size_cap) {
  if (spec.power < 1 || spec.power > 3) throw Error("bad-power", "polymer power must be 1, 2 or 3");
  PolymerIndex index;
  index.vertex_count_ = g.n();
  index.decay_slope_ = spec.decay_slope;
  index.label_ = spec.label;
  const VertexSet allowed = spec.allowed.empty() ? g.all() : (spec.allowed & g.all());

  std::vector<Polymer> found;
  allowed.for_each([&](Vertex anchor) {
    // Anchor is the minimum vertex, so each set is reached from one anchor.
    VertexSet window = allowed - VertexSet::prefix(anchor);
    enumerate_connected_sets(g, anchor, size_cap, spec.power, window, [&](const VertexSet& s) {
      if (spec.admissible && !spec.admissible(s)) return;
      double lw = spec.log_weight(s);
      if (std::isinf(lw) && lw < 0) return;
      Polymer p;
      p.set = s;
      p.size = s.size();
      p.log_weight = lw;
      p.g = spec.decay ? spec.decay(s) : static_cast<double>(p.size);
      p.min_vertex = anchor;
      found.push_back(p);
      if (found.size() > kMaxPolymers)
        throw Error("too-many-polymers", "polymer universe exceeds " + std::to_string(kMaxPolymers) +
                                             " sets; lower the size cap");
    });
  });
  std::sort(found.begin(), found.end(), canonical_less);
  index.polymers_ = std::move(found);

  const std::size_t count = index.polymers_.size();
  std::vector<std::vector<PolymerId>> by_vertex(g.n());
  for (PolymerId i = 0; i < count; ++i)
    index.polymers_[i].set.for_each([&](Vertex v) { by_vertex[v].push_back(i); });

  index.incompat_.assign(count, {});
  std::vector<PolymerId> stamp(count, ~PolymerId{0});
  for (PolymerId i = 0; i < count; ++i) {
    VertexSet reach;
    index.polymers_[i].set.for_each([&](Vertex v) { reach |= g.ball(v, spec.power); });
    auto& list = index.incompat_[i];
    reach.for_each([&](Vertex v) {
      for (PolymerId j : by_vertex[v]) {
        if (j == i || stamp[j] == i) continue;
        stamp[j] = i;
        list.push_back(j);
      }
    });
    std::sort(list.begin(), list.end());
  }
  return index;
}

PolymerIndex abstract_index(const std::vector<double>& log_weights,
                            const std::vector<std::vector<bool>>& incompat,
                            const std::vector<double>& g_values) {
  const std::size_t count = log_weights.size();
  if (count > kMaxVertices) throw Error("too-large", "abstract index holds at most kMaxVertices polymers");
  if (incompat.size() != count || (!g_values.empty() && g_values.size() != count))
    throw Error("bad-polymer", "abstract index inputs disagree in size");
  std::vector<Polymer> polymers(count);
  std::vector<std::pair<PolymerId, PolymerId>> pairs;
  for (PolymerId i = 0; i < count; ++i) {
    polymers[i].set = VertexSet::singleton(i);
    polymers[i].size = 1;
    polymers[i].log_weight = log_weights[i];
    polymers[i].g = g_values.empty() ? 1.0 : g_values[i];
    polymers[i].min_vertex = i;
    for (PolymerId j = i + 1; j < count; ++j) {
      if (incompat[i][j] != incompat[j][i]) throw Error("bad-polymer", "incompatibility must be symmetric");
      if (incompat[i][j]) pairs.emplace_back(i, j);
    }
  }
  double slope = 1.0;
  for (const auto& p : polymers) slope = std::min(slope, p.g);
  return PolymerIndex(count, std::move(polymers), pairs, slope, "abstract");
}

}  // namespace polymer
