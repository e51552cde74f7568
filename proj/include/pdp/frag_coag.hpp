#pragma once

#include <span>
#include <string>
#include <vector>

#include "pdp/core.hpp"
#include "pdp/rng.hpp"

namespace pdp {

/// A block is a set of element ids; a set partition is a list of blocks.
using Block = std::vector<int>;
using SetPartition = std::vector<Block>;

/// Sorts every block and orders blocks by least element.
SetPartition normalize(SetPartition partition);

/// Size-biased form over the elements in ascending order.
SizeBiasedPartition to_size_biased(const SetPartition& partition);

/// Blocks of `partition` with item i (1-based) replaced by elements[i-1].
SetPartition to_blocks(const SizeBiasedPartition& partition, std::span<const int> elements);

/// Union of the partitions Q_m, where Q_m must partition block P_m.
SetPartition fragment(const SetPartition& p, const std::vector<SetPartition>& q);

/// {union_{m in q} P_m : q in Q}, where Q partitions the block indices {1..M}.
SetPartition coagulate(const SetPartition& p, const SetPartition& q);

/// One CRD(elements; a, b) draw.
SetPartition sample_crd(std::span<const int> elements, const PdParams& params, Rng& rng);

/// CRD(N; a1 a2, b) fragmented blockwise by CRD(block; a1, -a1 a2).
/// Distributed as CRD(N; a1, b). Needs 0 < a1 < 1, 0 <= a2 < 1, b > -a1 a2.
SizeBiasedPartition sample_fragmented_crd(int n, double a1, double a2, double b, Rng& rng);

/// I ~ CRD(N; a1, b) coagulated by J ~ CRD(|I|; a2, b / a1).
/// Distributed as CRD(N; a1 a2, b).
SizeBiasedPartition sample_coagulated_crd(int n, double a1, double a2, double b, Rng& rng);

struct TreeNode {
  int id;
  int depth;
  int parent;  // -1 for the root
  Block members;
};

/// Level-wise tree over {1..N}. Nodes are numbered by (depth, least member),
/// so serialization is deterministic. Every leaf sits at depth maxdepth.
class TreeStructure {
 public:
  TreeStructure(std::vector<TreeNode> nodes, std::vector<double> schedule, int maxdepth);

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const std::vector<double>& schedule() const { return schedule_; }
  int maxdepth() const { return maxdepth_; }

  /// Member sets of all nodes at `depth`, a partition of {1..N}.
  SetPartition level(int depth) const;
  std::vector<int> children(int id) const;

  /// {"nodes": [{id, depth, members}], "edges": [{child, parent}]}
  std::string to_json() const;

 private:
  std::vector<TreeNode> nodes_;
  std::vector<double> schedule_;
  int maxdepth_;
};

/// Root split by CRD(root; a_1, b); each non-singleton node at depth d split
/// by CRD(node; a_{d+1}, -a_d); singletons copied through to the next depth.
/// `schedule` must be strictly increasing with length maxdepth.
TreeStructure sample_tree(int n, std::span<const double> schedule, double b, int maxdepth, Rng& rng);

}  // namespace pdp
