#pragma once

#include <vector>

namespace scde {

// One bundle of parallel edges between a variable node and a check node of
// the chained protograph. Positions are 1-based; check position L+1 is the
// terminating check.
struct EdgeBundle {
  int vn_position;
  int vn_index;  // 0 = first variable node of the segment, 1 = second
  int cn_position;
  int multiplicity;
};

// Chain of L copies of an elementary segment (dv, b1, b2). Each segment z
// brings two degree-dv variable nodes and one check node c(z); the first
// variable node sends b1 edges to c(z) and dv-b1 to c(z+1), the second b2
// and dv-b2. c(L+1) only terminates the chain.
class ProtographChain {
 public:
  ProtographChain(int dv, int b1, int b2, int L);

  int dv() const { return dv_; }
  int b1() const { return b1_; }
  int b2() const { return b2_; }
  int chain_length() const { return L_; }

  // Total multiplicity entering check node p, p in [1, L+1].
  int check_degree(int cn_position) const;

  // All bundles with non-zero multiplicity, ordered by position.
  std::vector<EdgeBundle> bundles() const;

  double design_rate() const;

 private:
  int dv_;
  int b1_;
  int b2_;
  int L_;
};

ProtographChain build_protograph_chain(int dv, int b1, int b2, int L);

}  // namespace scde
