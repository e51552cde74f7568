#include "pdp/frag_coag.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include <json.hpp>

#include "pdp/error.hpp"
#include "pdp/samplers.hpp"

namespace pdp {

namespace {

std::vector<int> sorted_elements(const SetPartition& partition) {
  std::vector<int> all;
  for (const auto& block : partition) all.insert(all.end(), block.begin(), block.end());
  std::sort(all.begin(), all.end());
  return all;
}

void check_partition_of(const SetPartition& q, Block target, const std::string& what) {
  for (const auto& block : q) {
    if (block.empty()) throw DomainError(what + " contains an empty block");
  }
  std::sort(target.begin(), target.end());
  const auto got = sorted_elements(q);
  if (got != target) throw DomainError(what + " does not partition its target set");
}

std::vector<int> iota_elements(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  return v;
}

void check_theorem_params(double a1, double a2, double b) {
  if (!(a1 > 0.0 && a1 < 1.0)) throw DomainError("need 0 < a1 < 1");
  if (!(a2 >= 0.0 && a2 < 1.0)) throw DomainError("need 0 <= a2 < 1");
  if (!(b > -a1 * a2)) throw DomainError("need b > -a1 a2");
}

}  // namespace

SetPartition normalize(SetPartition partition) {
  for (auto& block : partition) std::sort(block.begin(), block.end());
  std::sort(partition.begin(), partition.end(), [](const Block& x, const Block& y) {
    if (x.empty() || y.empty()) return x.size() < y.size();
    return x.front() < y.front();
  });
  return partition;
}

SizeBiasedPartition to_size_biased(const SetPartition& partition) {
  const auto elements = sorted_elements(partition);
  if (elements.empty()) throw DomainError("empty partition");
  if (std::adjacent_find(elements.begin(), elements.end()) != elements.end()) {
    throw DomainError("blocks are not disjoint");
  }
  std::vector<int> block_of(elements.size());
  for (std::size_t m = 0; m < partition.size(); ++m) {
    for (int e : partition[m]) {
      const auto pos = std::lower_bound(elements.begin(), elements.end(), e) - elements.begin();
      block_of[static_cast<std::size_t>(pos)] = static_cast<int>(m);
    }
  }
  return canonicalize(std::span<const int>(block_of));
}

SetPartition to_blocks(const SizeBiasedPartition& partition, std::span<const int> elements) {
  if (static_cast<int>(elements.size()) != partition.items()) {
    throw DomainError("element list does not match partition size");
  }
  SetPartition out(static_cast<std::size_t>(partition.size()));
  for (std::size_t i = 0; i < elements.size(); ++i) {
    out[static_cast<std::size_t>(partition.assignments()[i] - 1)].push_back(elements[i]);
  }
  return out;
}

SetPartition fragment(const SetPartition& p, const std::vector<SetPartition>& q) {
  if (p.size() != q.size()) throw DomainError("need one fragmenting partition per block");
  SetPartition out;
  for (std::size_t m = 0; m < p.size(); ++m) {
    check_partition_of(q[m], p[m], "fragment Q_" + std::to_string(m + 1));
    out.insert(out.end(), q[m].begin(), q[m].end());
  }
  return normalize(std::move(out));
}

SetPartition coagulate(const SetPartition& p, const SetPartition& q) {
  std::set<int> seen;
  SetPartition out;
  out.reserve(q.size());
  for (const auto& group : q) {
    if (group.empty()) throw DomainError("coagulating partition contains an empty block");
    Block merged;
    for (int m : group) {
      if (m < 1 || m > static_cast<int>(p.size())) {
        throw DomainError("block index " + std::to_string(m) + " out of range");
      }
      if (!seen.insert(m).second) throw DomainError("block index " + std::to_string(m) + " repeated");
      merged.insert(merged.end(), p[static_cast<std::size_t>(m - 1)].begin(), p[static_cast<std::size_t>(m - 1)].end());
    }
    out.push_back(std::move(merged));
  }
  if (seen.size() != p.size()) throw DomainError("coagulating partition does not cover every block");
  return normalize(std::move(out));
}

SetPartition sample_crd(std::span<const int> elements, const PdParams& params, Rng& rng) {
  if (elements.empty()) throw DomainError("cannot partition an empty set");
  return to_blocks(sample_crp(params, static_cast<int>(elements.size()), rng), elements);
}

SizeBiasedPartition sample_fragmented_crd(int n, double a1, double a2, double b, Rng& rng) {
  check_theorem_params(a1, a2, b);
  const PdParams coarse(a1 * a2, b);
  const PdParams fine(a1, -a1 * a2);
  const auto elements = iota_elements(n);
  const SetPartition outer = sample_crd(elements, coarse, rng);
  std::vector<SetPartition> splits;
  splits.reserve(outer.size());
  for (const auto& block : outer) splits.push_back(sample_crd(block, fine, rng));
  return to_size_biased(fragment(outer, splits));
}

SizeBiasedPartition sample_coagulated_crd(int n, double a1, double a2, double b, Rng& rng) {
  if (a1 == 0.0) throw DomainError("coagulation needs a1 > 0 (b / a1 undefined)");
  check_theorem_params(a1, a2, b);
  const auto elements = iota_elements(n);
  const SetPartition fine = sample_crd(elements, PdParams(a1, b), rng);
  const auto labels = iota_elements(static_cast<int>(fine.size()));
  const SetPartition grouping = sample_crd(labels, PdParams(a2, b / a1), rng);
  return to_size_biased(coagulate(fine, grouping));
}

// ---------------------------------------------------------------------------
// Trees

TreeStructure::TreeStructure(std::vector<TreeNode> nodes, std::vector<double> schedule, int maxdepth)
    : nodes_(std::move(nodes)), schedule_(std::move(schedule)), maxdepth_(maxdepth) {}

SetPartition TreeStructure::level(int depth) const {
  SetPartition out;
  for (const auto& node : nodes_) {
    if (node.depth == depth) out.push_back(node.members);
  }
  return out;
}

std::vector<int> TreeStructure::children(int id) const {
  std::vector<int> out;
  for (const auto& node : nodes_) {
    if (node.parent == id) out.push_back(node.id);
  }
  return out;
}

std::string TreeStructure::to_json() const {
  nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
  nlohmann::ordered_json edges = nlohmann::ordered_json::array();
  for (const auto& node : nodes_) {
    nodes.push_back({{"id", node.id}, {"depth", node.depth}, {"members", node.members}});
    if (node.parent >= 0) edges.push_back({{"child", node.id}, {"parent", node.parent}});
  }
  nlohmann::ordered_json doc;
  doc["nodes"] = std::move(nodes);
  doc["edges"] = std::move(edges);
  return doc.dump();
}

TreeStructure sample_tree(int n, std::span<const double> schedule, double b, int maxdepth, Rng& rng) {
  if (n < 1) throw DomainError("tree needs at least one element");
  if (maxdepth < 1) throw DomainError("maxdepth must be at least 1");
  if (static_cast<int>(schedule.size()) != maxdepth) {
    throw DomainError("discount schedule length must equal maxdepth");
  }
  for (std::size_t d = 0; d < schedule.size(); ++d) {
    const double lo = d == 0 ? 0.0 : schedule[d - 1];
    const bool ok = d == 0 ? (schedule[0] >= 0.0 && schedule[0] < 1.0) : (schedule[d] > lo && schedule[d] < 1.0);
    if (!ok) throw DomainError("discount schedule must be strictly increasing within [0, 1)");
  }
  const PdParams root_params(schedule[0], b);

  struct Pending {
    Block members;
    int depth;
    int parent_index;
  };
  std::vector<TreeNode> nodes;
  nodes.push_back({0, 0, -1, iota_elements(n)});
  std::deque<Pending> work;
  for (auto& block : sample_crd(nodes[0].members, root_params, rng)) {
    std::sort(block.begin(), block.end());
    work.push_back({std::move(block), 1, 0});
  }
  while (!work.empty()) {
    Pending item = std::move(work.front());
    work.pop_front();
    const int index = static_cast<int>(nodes.size());
    nodes.push_back({index, item.depth, item.parent_index, item.members});
    if (item.depth >= maxdepth) continue;
    if (item.members.size() > 1) {
      const auto d = static_cast<std::size_t>(item.depth);
      const PdParams split(schedule[d], -schedule[d - 1]);
      for (auto& block : sample_crd(item.members, split, rng)) {
        std::sort(block.begin(), block.end());
        work.push_back({std::move(block), item.depth + 1, index});
      }
    } else {
      work.push_back({item.members, item.depth + 1, index});
    }
  }

  // Renumber by (depth, least member).
  std::vector<int> order(nodes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    const auto& nx = nodes[static_cast<std::size_t>(x)];
    const auto& ny = nodes[static_cast<std::size_t>(y)];
    if (nx.depth != ny.depth) return nx.depth < ny.depth;
    return nx.members.front() < ny.members.front();
  });
  std::vector<int> new_id(nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) new_id[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
  std::vector<TreeNode> renumbered;
  renumbered.reserve(nodes.size());
  for (int old : order) {
    TreeNode node = nodes[static_cast<std::size_t>(old)];
    node.id = new_id[static_cast<std::size_t>(old)];
    if (node.parent >= 0) node.parent = new_id[static_cast<std::size_t>(node.parent)];
    renumbered.push_back(std::move(node));
  }
  return TreeStructure(std::move(renumbered), std::vector<double>(schedule.begin(), schedule.end()), maxdepth);
}

}  // namespace pdp
