#pragma once

#include <map>
#include <string>
#include <vector>

#include "strat/rootdata.hpp"

namespace strat {

/**
 * One Weyl group element: its action on X_*(T) in ambient coordinates, the
 * lexicographically smallest reduced word, and the Coxeter length.  Elements
 * are owned by a WeylGroup and referred to by index; `index` is the position
 * in the canonical (length, then lex word) order, so index 0 is the identity.
 */
struct WeylElement {
  IntMat action;
  std::vector<int> word; // reduced, lex-minimal, letters are simple indices
  int length = 0;
  int index = 0;
};

/// Subset of simple-root indices, kept sorted and duplicate-free.
using ParabolicType = std::vector<int>;

/**
 * The full Weyl group of a root datum, generated breadth-first from the
 * simple reflections.  Products compose like matrices: mult(a, b) is the
 * element acting by A_a * A_b (b applied first).  Generation refuses groups
 * beyond 10^7 elements.
 */
class WeylGroup {
public:
  explicit WeylGroup(const RootDatum &datum);

  const RootDatum &datum() const { return *datum_; }
  int size() const { return (int)elements_.size(); }
  const WeylElement &element(int i) const { return elements_.at(i); }
  int identity() const { return 0; }
  int simple_reflection(int i) const { return simple_elt_.at(i); }

  int mult(int a, int b) const;
  int inverse(int a) const { return inv_.at(a); }
  /// Product s_{i1} * s_{i2} * ... in the written order.
  int apply_word(const std::vector<int> &word) const;
  /// Index of the element with the given action matrix; throws if absent.
  int index_of_action(const IntMat &action) const;

  Cochar apply(int w, const Cochar &v) const;
  RatCochar apply(int w, const RatCochar &v) const;

  /// sigma as a group automorphism: the element acting by S * A_w * S^{-1}.
  int sigma_elt(int w) const;

  /// Standard Bruhat order (table built on first use).
  bool bruhat_leq(int a, int b) const;

  /// Longest element of the standard parabolic W_J (J = all: w_0).
  int longest_element(const ParabolicType &J) const;
  /// All elements of W_J, in canonical order.
  std::vector<int> parabolic_subgroup(const ParabolicType &J) const;
  /// Minimal-length left-coset representatives ^J W, in canonical order.
  std::vector<int> min_coset_reps(const ParabolicType &J) const;
  bool is_min_coset_rep(int w, const ParabolicType &J) const;

  /**
   * The refined order on ^J W: w' is below w iff some y in W_J satisfies
   * y * w' * sigma(x_J y x_J^{-1}) <= w in Bruhat order, with x_J = w_0 w_0J.
   * Throws if either argument is not a minimal coset representative.
   */
  bool eo_leq(int w_prime, int w, const ParabolicType &J) const;

  /// Subgroup generated by arbitrary reflections s_alpha, as element indices.
  std::vector<int> reflection_subgroup(const std::vector<int> &pos_root_indices) const;

private:
  void ensure_bruhat() const;

  const RootDatum *datum_;
  std::vector<WeylElement> elements_;
  std::vector<int> simple_elt_;
  std::map<IntMat, int> index_of_;
  std::vector<std::vector<int>> right_mult_; // [elt][simple] -> elt * s
  std::vector<int> inv_;
  mutable std::vector<std::vector<bool>> bruhat_; // filled lazily
};

/**
 * The partial order on the minimal coset representatives, with built-in
 * consistency checks: the relation must be reflexive, antisymmetric and
 * transitive, with unique maximum w_0J * w_0 and unique minimum 1; any
 * violation throws (it would mean an implementation bug, not bad input).
 */
struct EOPoset {
  std::vector<int> elements; // indices into the WeylGroup, canonical order
  std::vector<std::vector<bool>> leq;
  int max_pos = -1; // positions within `elements`
  int min_pos = -1;
};
EOPoset eo_poset(const WeylGroup &w, const ParabolicType &J);

/// Covering relations (transitive reduction) of a reflexive order table.
std::vector<std::pair<int, int>> hasse_edges(const std::vector<std::vector<bool>> &leq);

/**
 * Dominant representative together with the Weyl element realizing it:
 * returns (v_plus, w) with w(v) = v_plus.
 */
std::pair<RatCochar, int> dominant_weyl_pair(const WeylGroup &w, const RatCochar &v);

/// Render a word as "s1*s2" (1-based letters), or "e" for the identity.
std::string word_str(const std::vector<int> &word);

} // namespace strat
