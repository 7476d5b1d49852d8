#include "strat/weyl.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace strat {

namespace {
constexpr size_t kGenerationGuard = 10000000;
} // namespace

WeylGroup::WeylGroup(const RootDatum &datum) : datum_(&datum) {
  int dim = datum.dim;
  // Breadth-first over the Cayley graph with ascending generators: elements
  // come out sorted by (length, lex word) and each first-discovery word is
  // the lex-minimal reduced word.
  WeylElement id;
  id.action = identity_mat(dim);
  elements_.push_back(id);
  index_of_[elements_[0].action] = 0;

  std::vector<IntMat> gen;
  for (int i = 0; i < datum.ss_rank; ++i)
    gen.push_back(reflection_matrix(datum, datum.simple_root(i), datum.simple_coroot(i)));

  size_t processed = 0;
  while (processed < elements_.size()) {
    size_t cur = processed++;
    right_mult_.emplace_back(datum.ss_rank, -1);
    for (int s = 0; s < datum.ss_rank; ++s) {
      IntMat prod = mat_mul(elements_[cur].action, gen[s]);
      auto it = index_of_.find(prod);
      if (it == index_of_.end()) {
        if (elements_.size() >= kGenerationGuard)
          throw std::runtime_error("Weyl group generation guard exceeded (10^7 elements)");
        WeylElement e;
        e.action = std::move(prod);
        e.word = elements_[cur].word;
        e.word.push_back(s);
        e.length = elements_[cur].length + 1;
        e.index = (int)elements_.size();
        index_of_[e.action] = e.index;
        right_mult_[cur][s] = e.index;
        elements_.push_back(std::move(e));
      } else {
        right_mult_[cur][s] = it->second;
      }
    }
  }

  simple_elt_.assign(datum.ss_rank, -1);
  for (int i = 0; i < datum.ss_rank; ++i) simple_elt_[i] = index_of_.at(gen[i]);

  inv_.resize(elements_.size());
  for (size_t k = 0; k < elements_.size(); ++k) {
    std::vector<int> rev(elements_[k].word.rbegin(), elements_[k].word.rend());
    inv_[k] = apply_word(rev);
  }
}

int WeylGroup::mult(int a, int b) const {
  // Fold b's reduced word into the right-multiplication table.
  int cur = a;
  for (int s : elements_.at(b).word) cur = right_mult_[cur][s];
  return cur;
}

int WeylGroup::apply_word(const std::vector<int> &word) const {
  int cur = 0;
  for (int s : word) {
    if (s < 0 || s >= datum_->ss_rank)
      throw std::invalid_argument("apply_word: letter out of range");
    cur = right_mult_[cur][s];
  }
  return cur;
}

int WeylGroup::index_of_action(const IntMat &action) const {
  auto it = index_of_.find(action);
  if (it == index_of_.end())
    throw std::invalid_argument("index_of_action: matrix is not a Weyl group element");
  return it->second;
}

Cochar WeylGroup::apply(int w, const Cochar &v) const {
  return mat_apply(elements_.at(w).action, v);
}

RatCochar WeylGroup::apply(int w, const RatCochar &v) const {
  return mat_apply(elements_.at(w).action, v);
}

int WeylGroup::sigma_elt(int w) const {
  if (datum_->sigma_order == 1) return w;
  IntMat s_inv = mat_pow(datum_->sigma_cochar, datum_->sigma_order - 1);
  return index_of_action(
      mat_mul(mat_mul(datum_->sigma_cochar, elements_.at(w).action), s_inv));
}

void WeylGroup::ensure_bruhat() const {
  if (!bruhat_.empty()) return;
  size_t n = elements_.size();
  bruhat_.assign(n, std::vector<bool>(n, false));
  bruhat_[0][0] = true;
  // Lifting property, rows in increasing length: pick a right descent s of w
  // and set v = ws; then u <= w iff (us < u ? us : u) <= v.
  for (size_t w = 1; w < n; ++w) {
    int s = elements_[w].word.back(); // guaranteed descent: word is reduced
    int v = right_mult_[w][s];
    for (size_t u = 0; u < n; ++u) {
      int us = right_mult_[u][s];
      int key = elements_[us].length < elements_[u].length ? us : (int)u;
      bruhat_[u][w] = bruhat_[key][v];
    }
  }
}

bool WeylGroup::bruhat_leq(int a, int b) const {
  ensure_bruhat();
  return bruhat_.at(a).at(b);
}

std::vector<int> WeylGroup::parabolic_subgroup(const ParabolicType &J) const {
  for (int j : J)
    if (j < 0 || j >= datum_->ss_rank)
      throw std::invalid_argument("parabolic_subgroup: index out of range");
  std::set<int> seen{0};
  std::vector<int> frontier{0};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int w : frontier)
      for (int j : J) {
        int ws = right_mult_[w][j];
        if (seen.insert(ws).second) next.push_back(ws);
      }
    frontier = std::move(next);
  }
  return std::vector<int>(seen.begin(), seen.end()); // ascending index = canonical
}

int WeylGroup::longest_element(const ParabolicType &J) const {
  auto sub = parabolic_subgroup(J);
  int best = 0;
  for (int w : sub)
    if (elements_[w].length > elements_[best].length) best = w;
  for (int w : sub)
    if (w != best && elements_[w].length == elements_[best].length)
      throw std::logic_error("longest_element: maximum length not unique");
  return best;
}

bool WeylGroup::is_min_coset_rep(int w, const ParabolicType &J) const {
  // w in ^J W iff w^{-1}(alpha_j) > 0 for all j in J; the inverse acts on
  // characters by the transpose of w's cocharacter matrix.
  IntMat wt = mat_transpose(elements_.at(w).action);
  for (int j : J) {
    IntVec img = mat_apply(wt, datum_->simple_root(j));
    bool positive = false;
    for (int k = 0; k < datum_->n_pos(); ++k)
      if (datum_->pos_root(k) == img) { positive = true; break; }
    if (!positive) return false;
  }
  return true;
}

std::vector<int> WeylGroup::min_coset_reps(const ParabolicType &J) const {
  std::vector<int> reps;
  for (int w = 0; w < size(); ++w)
    if (is_min_coset_rep(w, J)) reps.push_back(w);
  size_t wj = parabolic_subgroup(J).size();
  if (reps.size() * wj != elements_.size())
    throw std::logic_error("min_coset_reps: |^J W| * |W_J| != |W|");
  return reps;
}

bool WeylGroup::eo_leq(int w_prime, int w, const ParabolicType &J) const {
  if (!is_min_coset_rep(w_prime, J) || !is_min_coset_rep(w, J))
    throw std::invalid_argument("eo_leq: arguments must be minimal coset representatives");
  ParabolicType all(datum_->ss_rank);
  for (int i = 0; i < datum_->ss_rank; ++i) all[i] = i;
  int w0 = longest_element(all);
  int w0J = longest_element(J);
  int xj = mult(w0, w0J);
  int xj_inv = inverse(xj);
  for (int y : parabolic_subgroup(J)) {
    int twisted = sigma_elt(mult(mult(xj, y), xj_inv));
    int z = mult(mult(y, w_prime), twisted);
    if (bruhat_leq(z, w)) return true;
  }
  return false;
}

std::vector<int> WeylGroup::reflection_subgroup(const std::vector<int> &pos_root_indices) const {
  std::vector<int> gens;
  for (int k : pos_root_indices)
    gens.push_back(index_of_action(
        reflection_matrix(*datum_, datum_->pos_root(k), datum_->pos_coroot(k))));
  std::set<int> seen{0};
  std::vector<int> frontier{0};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int w : frontier)
      for (int g : gens) {
        int wg = mult(w, g);
        if (seen.insert(wg).second) next.push_back(wg);
      }
    frontier = std::move(next);
  }
  return std::vector<int>(seen.begin(), seen.end());
}

EOPoset eo_poset(const WeylGroup &w, const ParabolicType &J) {
  EOPoset p;
  p.elements = w.min_coset_reps(J);
  size_t n = p.elements.size();
  p.leq.assign(n, std::vector<bool>(n, false));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      p.leq[i][j] = w.eo_leq(p.elements[i], p.elements[j], J);

  // The relation is a partial order per the underlying theory; violations
  // are implementation bugs and must not pass silently.
  for (size_t i = 0; i < n; ++i)
    if (!p.leq[i][i]) throw std::logic_error("eo_poset: relation not reflexive");
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (i != j && p.leq[i][j] && p.leq[j][i])
        throw std::logic_error("eo_poset: relation not antisymmetric");
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (!p.leq[i][j]) continue;
      for (size_t k = 0; k < n; ++k)
        if (p.leq[j][k] && !p.leq[i][k])
          throw std::logic_error("eo_poset: relation not transitive");
    }

  ParabolicType all(w.datum().ss_rank);
  for (int i = 0; i < w.datum().ss_rank; ++i) all[i] = i;
  int w_max = w.mult(w.longest_element(J), w.longest_element(all));
  for (size_t i = 0; i < n; ++i) {
    bool is_max = true, is_min = true;
    for (size_t j = 0; j < n; ++j) {
      if (!p.leq[j][i]) is_max = false;
      if (!p.leq[i][j]) is_min = false;
    }
    if (is_max) {
      if (p.max_pos != -1) throw std::logic_error("eo_poset: maximum not unique");
      p.max_pos = (int)i;
    }
    if (is_min) {
      if (p.min_pos != -1) throw std::logic_error("eo_poset: minimum not unique");
      p.min_pos = (int)i;
    }
  }
  if (p.max_pos == -1 || p.elements[p.max_pos] != w_max)
    throw std::logic_error("eo_poset: maximum is not w_0J * w_0");
  if (p.min_pos == -1 || p.elements[p.min_pos] != w.identity())
    throw std::logic_error("eo_poset: minimum is not the identity");
  return p;
}

std::vector<std::pair<int, int>> hasse_edges(const std::vector<std::vector<bool>> &leq) {
  std::vector<std::pair<int, int>> edges;
  size_t n = leq.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (i == j || !leq[i][j]) continue;
      bool covering = true;
      for (size_t k = 0; k < n && covering; ++k)
        if (k != i && k != j && leq[i][k] && leq[k][j]) covering = false;
      if (covering) edges.emplace_back((int)i, (int)j);
    }
  return edges;
}

std::pair<RatCochar, int> dominant_weyl_pair(const WeylGroup &w, const RatCochar &v) {
  DominantRep rep = dominant_representative(w.datum(), v);
  int elt = w.identity();
  // raw_word lists reflections first-applied first, so the group element is
  // the product in reverse order.
  for (int i : rep.raw_word) elt = w.mult(w.simple_reflection(i), elt);
  return {rep.vplus, elt};
}

std::string word_str(const std::vector<int> &word) {
  if (word.empty()) return "e";
  std::string out;
  for (size_t i = 0; i < word.size(); ++i) {
    if (i) out += "*";
    out += "s" + std::to_string(word[i] + 1);
  }
  return out;
}

} // namespace strat
