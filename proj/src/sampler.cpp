#include "polymer/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace polymer {

namespace {
constexpr std::size_t kCacheLimit = 1U << 16;
}

PolymerSampler::PolymerSampler(const PolymerIndex& index, double eps)
    : index_(index), eps_(eps), walker_(index) {
  if (!(eps > 0.0)) throw Error("bad-parameter", "sampler needs eps > 0");
  const double n = static_cast<double>(std::max<std::size_t>(index.vertex_count(), 1));
  m_ = std::log(2.0 * n / eps);
  m_step_ = std::log(8.0 * n * n / eps);
  base_active_.assign(index.size(), 0);
  std::map<Vertex, std::vector<PolymerId>> owned;
  for (PolymerId i = 0; i < index.size(); ++i) {
    if (index[i].g >= m_) continue;
    base_active_[i] = 1;
    ++universe_;
    owned[index[i].min_vertex].push_back(i);
  }
  steps_.assign(owned.begin(), owned.end());
}

const std::vector<double>& PolymerSampler::step_probabilities(std::size_t step,
                                                              const std::vector<std::uint8_t>& active,
                                                              const std::vector<PolymerId>& chosen) {
  auto key = std::make_pair(step, chosen);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;

  const auto& candidates = steps_[step].second;
  std::vector<double> probs(candidates.size(), 0.0);
  double mass = 0.0;
  std::vector<PolymerId> closed;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const PolymerId id = candidates[c];
    if (!active[id]) continue;
    closed.assign(1, id);
    for (PolymerId j : index_.incompatible_with(id))
      if (active[j]) closed.push_back(j);
    const double drop = walker_.touching_sum(closed, m_step_, kNoSizeBound, &active);
    probs[c] = std::exp(index_[id].log_weight - drop);
    mass += probs[c];
  }
  max_mass_ = std::max(max_mass_, mass);
  if (mass > 1.0 + kMassTolerance) {
    std::ostringstream msg;
    msg << "step probabilities at vertex " << steps_[step].first << " sum to " << mass
        << "; the polymer weights are too large for the cluster expansion";
    throw Error("kp-failure", msg.str());
  }
  if (mass > 1.0)
    for (double& p : probs) p /= mass;
  if (cache_.size() >= kCacheLimit) cache_.clear();
  return cache_.emplace(std::move(key), std::move(probs)).first->second;
}

std::vector<PolymerId> PolymerSampler::draw(Rng& rng) {
  std::vector<std::uint8_t> active = base_active_;
  std::vector<PolymerId> chosen;
  for (std::size_t step = 0; step < steps_.size(); ++step) {
    const auto& candidates = steps_[step].second;
    bool any = false;
    for (PolymerId id : candidates) any = any || active[id];
    if (!any) continue;
    const auto& probs = step_probabilities(step, active, chosen);
    const double u = rng.uniform();
    double acc = 0.0;
    std::size_t pick = candidates.size();
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      acc += probs[c];
      if (u < acc) {
        pick = c;
        break;
      }
    }
    for (PolymerId id : candidates) active[id] = 0;
    if (pick == candidates.size()) continue;
    const PolymerId id = candidates[pick];
    chosen.push_back(id);
    for (PolymerId j : index_.incompatible_with(id)) active[j] = 0;
  }
  if (!pairwise_compatible(index_, chosen)) throw Error("internal", "sampler produced incompatible polymers");
  return chosen;
}

std::vector<PolymerId> sample_config(const PolymerIndex& index, double eps, Rng& rng) {
  PolymerSampler sampler(index, eps);
  return sampler.draw(rng);
}

bool pairwise_compatible(const PolymerIndex& index, const std::vector<PolymerId>& ids) {
  for (std::size_t a = 0; a < ids.size(); ++a)
    for (std::size_t b = a + 1; b < ids.size(); ++b)
      if (index.incompatible(ids[a], ids[b])) return false;
  return true;
}

}  // namespace polymer
