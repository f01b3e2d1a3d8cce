#include "polymer/clusters.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>
#include <unordered_map>

#include "json.hpp"

namespace polymer {

namespace {

enum : std::uint8_t { kFree = 0, kInSupport = 1, kExcluded = 2, kCandidate = 3 };

// U(H) depends only on the support's incompatibility rows and the
// multiplicities; clusters of one shape recur constantly.
std::int64_t cached_ursell(const PolymerIndex& index, const std::vector<PolymerId>& ids,
                           const std::vector<std::uint32_t>& rows, const std::vector<std::uint32_t>& mults) {
  thread_local std::unordered_map<std::string, std::int64_t> cache;
  thread_local std::string key;
  key.clear();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    key.append(reinterpret_cast<const char*>(&mults[i]), sizeof(std::uint32_t));
    key.append(reinterpret_cast<const char*>(&rows[i]), sizeof(std::uint32_t));
  }
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::int64_t u = ursell_sum(cluster_graph(index, ids, mults));
  if (cache.size() > (1U << 20)) cache.clear();
  cache.emplace(key, u);
  return u;
}

}  // namespace

std::size_t Cluster::node_count() const {
  std::size_t c = 0;
  for (auto m : mults) c += m;
  return c;
}

Rational Cluster::coefficient() const { return Rational(ursell) / Rational(mult_factorial); }

std::vector<PolymerId> Cluster::sequence() const {
  std::vector<PolymerId> out;
  for (std::size_t i = 0; i < ids.size(); ++i) out.insert(out.end(), mults[i], ids[i]);
  return out;
}

double Cluster::term() const {
  double mag = std::log(std::fabs(static_cast<double>(ursell))) -
               std::log(static_cast<double>(mult_factorial)) + log_weight_sum;
  return (ursell < 0 ? -1.0 : 1.0) * std::exp(mag);
}

SmallGraph cluster_graph(const PolymerIndex& index, const std::vector<PolymerId>& ids,
                         const std::vector<std::uint32_t>& mults) {
  std::size_t nodes = 0;
  for (auto m : mults) nodes += m;
  if (nodes > 32) throw Error("cluster-too-large", "cluster has more than 32 polymer copies");
  SmallGraph h(nodes);
  std::vector<std::size_t> start(ids.size() + 1, 0);
  for (std::size_t i = 0; i < ids.size(); ++i) start[i + 1] = start[i] + mults[i];
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t a = start[i]; a < start[i + 1]; ++a)
      for (std::size_t b = a + 1; b < start[i + 1]; ++b) h.add_edge(a, b);
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      if (!index.incompatible(ids[i], ids[j])) continue;
      for (std::size_t a = start[i]; a < start[i + 1]; ++a)
        for (std::size_t b = start[j]; b < start[j + 1]; ++b) h.add_edge(a, b);
    }
  }
  return h;
}

ClusterWalker::ClusterWalker(const PolymerIndex& index) : index_(index), state_(index.size(), kFree) {}

bool ClusterWalker::usable(PolymerId u) const {
  if (state_[u] != kFree) return false;
  if (active_ && !(*active_)[u]) return false;
  return !min_rooted_ || u > root_;
}

void ClusterWalker::run(PolymerId root, bool min_rooted, double g_bound, std::size_t size_bound,
                        const std::vector<std::uint8_t>* active, const ClusterVisitor& visit) {
  const Polymer& r = index_[root];
  if (active && !(*active)[root]) return;
  if (r.g >= g_bound || r.size > size_bound) return;
  root_ = root;
  min_rooted_ = min_rooted;
  g_bound_ = g_bound;
  size_bound_ = size_bound;
  active_ = active;
  visit_ = &visit;

  state_[root] = kInSupport;
  support_.assign(1, root);
  std::vector<PolymerId> cand;
  for (PolymerId u : index_.incompatible_with(root)) {
    if (!usable(u)) continue;
    state_[u] = kCandidate;
    cand.push_back(u);
  }
  grow(cand, r.g, r.size);
  for (PolymerId u : cand) state_[u] = kFree;
  state_[root] = kFree;
  support_.clear();
}

// Include/exclude over candidates: child i takes cand[i] and excludes
// cand[0..i), so each connected support is produced once.
void ClusterWalker::grow(const std::vector<PolymerId>& cand, double g_sum, std::size_t size_sum) {
  emit_support(g_sum, size_sum);
  std::vector<PolymerId> excluded_here;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    const PolymerId w = cand[i];
    const Polymer& p = index_[w];
    // Budgets only shrink deeper down, so w can never fit below here either.
    if (g_sum + p.g >= g_bound_ || size_sum + p.size > size_bound_) continue;
    state_[w] = kInSupport;
    support_.push_back(w);
    std::vector<PolymerId> child(cand.begin() + static_cast<std::ptrdiff_t>(i) + 1, cand.end());
    const std::size_t inherited = child.size();
    for (PolymerId u : index_.incompatible_with(w)) {
      if (!usable(u)) continue;
      state_[u] = kCandidate;
      child.push_back(u);
    }
    grow(child, g_sum + p.g, size_sum + p.size);
    for (std::size_t k = inherited; k < child.size(); ++k) state_[child[k]] = kFree;
    support_.pop_back();
    state_[w] = kExcluded;
    excluded_here.push_back(w);
  }
  for (PolymerId w : excluded_here) state_[w] = kCandidate;
}

void ClusterWalker::emit_support(double g_sum, std::size_t size_sum) {
  if (support_.size() > max_nodes)
    throw Error("cluster-too-large", "cluster with " + std::to_string(support_.size()) +
                                         " polymers exceeds the Ursell cap");
  sorted_ = support_;
  std::sort(sorted_.begin(), sorted_.end());
  mults_.assign(sorted_.size(), 1);
  rows_.assign(sorted_.size(), 0);
  for (std::size_t i = 0; i < sorted_.size(); ++i)
    for (std::size_t j = i + 1; j < sorted_.size(); ++j)
      if (index_.incompatible(sorted_[i], sorted_[j])) {
        rows_[i] |= std::uint32_t{1} << j;
        rows_[j] |= std::uint32_t{1} << i;
      }
  assign_mults(0, g_sum, size_sum);
}

void ClusterWalker::assign_mults(std::size_t i, double g_sum, std::size_t size_sum) {
  if (i == sorted_.size()) {
    emit_cluster(g_sum, size_sum);
    return;
  }
  const Polymer& p = index_[sorted_[i]];
  const std::uint32_t base = mults_[i];
  for (;;) {
    assign_mults(i + 1, g_sum, size_sum);
    if (g_sum + p.g >= g_bound_ || size_sum + p.size > size_bound_) break;
    g_sum += p.g;
    size_sum += p.size;
    ++mults_[i];
  }
  mults_[i] = base;
}

void ClusterWalker::emit_cluster(double g_sum, std::size_t size_sum) {
  Cluster& c = current_;
  c.ids.assign(sorted_.begin(), sorted_.end());
  c.mults.assign(mults_.begin(), mults_.end());
  c.total_size = size_sum;
  c.total_g = g_sum;
  if (c.node_count() > max_nodes)
    throw Error("cluster-too-large", "cluster with " + std::to_string(c.node_count()) +
                                         " polymer copies exceeds the Ursell cap");
  c.mult_factorial = 1;
  c.log_weight_sum = 0.0;
  for (std::size_t i = 0; i < c.ids.size(); ++i) {
    c.mult_factorial *= factorial(c.mults[i]);
    c.log_weight_sum += c.mults[i] * index_[c.ids[i]].log_weight;
  }
  c.ursell = cached_ursell(index_, c.ids, rows_, c.mults);
  (*visit_)(c);
}

void ClusterWalker::rooted(PolymerId root, double g_bound, std::size_t size_bound,
                           const std::vector<std::uint8_t>* active, const ClusterVisitor& visit) {
  run(root, true, g_bound, size_bound, active, visit);
}

void ClusterWalker::touching(const std::vector<PolymerId>& touch, double g_bound,
                             std::size_t size_bound, const std::vector<std::uint8_t>* active,
                             const ClusterVisitor& visit) {
  std::vector<PolymerId> roots = touch;
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  // Root at r = smallest touched member: earlier touched ids are excluded.
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (i > 0) state_[roots[i - 1]] = kExcluded;
    run(roots[i], false, g_bound, size_bound, active, visit);
  }
  for (std::size_t i = 0; i + 1 < roots.size(); ++i) state_[roots[i]] = kFree;
}

double ClusterWalker::touching_sum(const std::vector<PolymerId>& touch, double g_bound,
                                   std::size_t size_bound, const std::vector<std::uint8_t>* active) {
  kernels::CompensatedSum acc;
  touching(touch, g_bound, size_bound, active, [&](const Cluster& c) { acc.add(c.term()); });
  return acc.value();
}

void for_each_cluster(const PolymerIndex& index, double g_bound, std::size_t size_bound,
                      const ClusterVisitor& visit) {
  ClusterWalker walker(index);
  for (PolymerId r = 0; r < index.size(); ++r) walker.rooted(r, g_bound, size_bound, nullptr, visit);
}

namespace {

struct TermBuffer {
  static constexpr std::size_t kFlush = 1024;
  std::vector<double> signs, logs;
  kernels::CompensatedSum acc;
  kernels::Isa isa;

  void push(const Cluster& c) {
    signs.push_back(c.ursell < 0 ? -1.0 : 1.0);
    logs.push_back(std::log(std::fabs(static_cast<double>(c.ursell))) -
                   std::log(static_cast<double>(c.mult_factorial)) + c.log_weight_sum);
    if (logs.size() == kFlush) flush();
  }
  void flush() {
    kernels::signed_exp_sum(signs, logs, acc, isa);
    signs.clear();
    logs.clear();
  }
};

}  // namespace

ExpansionResult truncated_expansion(const PolymerIndex& index, double m, const ExpansionOptions& options) {
  const std::size_t roots = index.size();
  std::vector<kernels::CompensatedSum> per_root(roots);
  std::vector<std::size_t> counts(roots, 0);
  const unsigned threads = std::max(1U, std::min<unsigned>(options.threads, static_cast<unsigned>(std::max<std::size_t>(roots, 1))));

  auto work = [&](unsigned t) {
    ClusterWalker walker(index);
    TermBuffer buf;
    buf.isa = options.isa;
    for (std::size_t r = t; r < roots; r += threads) {
      buf.acc = {};
      walker.rooted(static_cast<PolymerId>(r), m, options.size_bound, nullptr, [&](const Cluster& c) {
        buf.push(c);
        ++counts[r];
      });
      buf.flush();
      per_root[r] = buf.acc;
    }
  };

  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        try {
          work(t);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  ExpansionResult result;
  kernels::CompensatedSum total;
  for (std::size_t r = 0; r < roots; ++r) {
    total.merge(per_root[r]);
    result.cluster_count += counts[r];
  }
  result.value = total.value();
  return result;
}

Rational truncated_expansion_rational(const PolymerIndex& index, double m,
                                      const std::vector<Rational>& weights, std::size_t size_bound) {
  if (weights.size() != index.size()) throw Error("bad-polymer", "one weight per polymer required");
  Rational total = 0;
  for_each_cluster(index, m, size_bound, [&](const Cluster& c) {
    Rational t = c.coefficient();
    for (std::size_t i = 0; i < c.ids.size(); ++i)
      for (std::uint32_t k = 0; k < c.mults[i]; ++k) t *= weights[c.ids[i]];
    total += t;
  });
  return total;
}

std::size_t xi_exact_cap() { return brute_cap(25); }

namespace {

// Sum over independent sets of the incompatibility graph restricted to
// `remaining`, branching on the lowest remaining id.
template <class T>
T independent_sum(const std::vector<std::uint64_t>& closed_nbr, const std::vector<T>& w,
                  std::uint64_t remaining) {
  if (remaining == 0) return T(1);
  const int v = std::countr_zero(remaining);
  const std::uint64_t without = remaining & (remaining - 1);
  return independent_sum(closed_nbr, w, without) +
         w[static_cast<std::size_t>(v)] * independent_sum(closed_nbr, w, remaining & ~closed_nbr[static_cast<std::size_t>(v)]);
}

std::vector<std::uint64_t> closed_neighborhoods(const PolymerIndex& index) {
  if (index.size() > xi_exact_cap() || index.size() > 64)
    throw Error("too-large", "exact Xi enumeration capped at " + std::to_string(std::min<std::size_t>(xi_exact_cap(), 64)) +
                                 " polymers, got " + std::to_string(index.size()));
  std::vector<std::uint64_t> nbr(index.size());
  for (PolymerId i = 0; i < index.size(); ++i) {
    nbr[i] = std::uint64_t{1} << i;
    for (PolymerId j : index.incompatible_with(i)) nbr[i] |= std::uint64_t{1} << j;
  }
  return nbr;
}

std::uint64_t full_mask(std::size_t n) { return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

}  // namespace

double xi_exact(const PolymerIndex& index) {
  auto nbr = closed_neighborhoods(index);
  std::vector<double> w(index.size());
  for (PolymerId i = 0; i < index.size(); ++i) w[i] = std::exp(index[i].log_weight);
  return std::log(independent_sum(nbr, w, full_mask(index.size())));
}

Rational xi_exact_rational(const PolymerIndex& index, const std::vector<Rational>& weights) {
  if (weights.size() != index.size()) throw Error("bad-polymer", "one weight per polymer required");
  auto nbr = closed_neighborhoods(index);
  return independent_sum(nbr, weights, full_mask(index.size()));
}

std::string clusters_json(const PolymerIndex& index, double m, std::size_t size_bound) {
  nlohmann::json out = nlohmann::json::array();
  for_each_cluster(index, m, size_bound, [&](const Cluster& c) {
    Rational coef = c.coefficient();
    out.push_back({{"ids", c.ids},
                   {"mults", c.mults},
                   {"U_num", static_cast<std::int64_t>(boost::multiprecision::numerator(coef))},
                   {"U_den", static_cast<std::int64_t>(boost::multiprecision::denominator(coef))},
                   {"term", c.term()}});
  });
  return out.dump();
}

}  // namespace polymer
