#include "grouplab/finite_group.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace grouplab {

namespace {

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<int> intersect_sorted(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> r;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

}  // namespace

bool FiniteSubgroup::contains(int x) const {
  return std::binary_search(members.begin(), members.end(), x);
}

bool FiniteSubgroup::contains(const FiniteSubgroup& o) const {
  return std::includes(members.begin(), members.end(), o.members.begin(), o.members.end());
}

void FiniteGroup::finish_construction() {
  n_ = static_cast<int>(table_.size());
  if (n_ == 0) throw std::invalid_argument("FiniteGroup: empty table");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n_)
      throw std::invalid_argument("FiniteGroup: table is not square");
    for (int x : row)
      if (x < 0 || x >= n_) throw std::invalid_argument("FiniteGroup: table entry out of range");
  }
  // Latin square: every row and column is a permutation
  for (int i = 0; i < n_; ++i) {
    std::vector<char> row_seen(static_cast<size_t>(n_), 0), col_seen(static_cast<size_t>(n_), 0);
    for (int j = 0; j < n_; ++j) {
      if (row_seen[static_cast<size_t>(mul(i, j))]++)
        throw std::invalid_argument("FiniteGroup: row " + std::to_string(i) +
                                    " is not a permutation");
      if (col_seen[static_cast<size_t>(mul(j, i))]++)
        throw std::invalid_argument("FiniteGroup: column " + std::to_string(i) +
                                    " is not a permutation");
    }
  }
  // identity
  e_ = -1;
  for (int i = 0; i < n_ && e_ < 0; ++i) {
    bool id = true;
    for (int j = 0; j < n_ && id; ++j) id = mul(i, j) == j && mul(j, i) == j;
    if (id) e_ = i;
  }
  if (e_ < 0) throw std::invalid_argument("FiniteGroup: no identity element");
  // inverses
  inv_.assign(static_cast<size_t>(n_), -1);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j)
      if (mul(i, j) == e_ && mul(j, i) == e_) {
        inv_[static_cast<size_t>(i)] = j;
        break;
      }
    if (inv_[static_cast<size_t>(i)] < 0)
      throw std::invalid_argument("FiniteGroup: element " + std::to_string(i) +
                                  " has no two-sided inverse");
  }
  // associativity: exhaustive up to order 256, densely sampled above
  auto check_triple = [&](int a, int b, int c) {
    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
      throw std::invalid_argument("FiniteGroup: associativity fails at (" + std::to_string(a) +
                                  "," + std::to_string(b) + "," + std::to_string(c) + ")");
  };
  if (n_ <= 256) {
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        for (int c = 0; c < n_; ++c) check_triple(a, b, c);
  } else {
    std::mt19937_64 rng(0xA55A5AA5u);
    std::uniform_int_distribution<int> pick(0, n_ - 1);
    for (int t = 0; t < 20000; ++t) check_triple(pick(rng), pick(rng), pick(rng));
  }
  if (gens_.empty())
    for (int i = 0; i < n_; ++i)
      if (i != e_) gens_.push_back(i);
}

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> table, std::string name) {
  FiniteGroup g;
  g.table_ = std::move(table);
  g.name_ = std::move(name);
  g.finish_construction();
  return g;
}

FiniteGroup FiniteGroup::from_permutations(const std::vector<std::vector<int>>& gens,
                                           std::string name) {
  if (gens.empty()) throw std::invalid_argument("from_permutations: no generators");
  const size_t degree = gens.front().size();
  if (degree == 0 || degree > 16)
    throw std::invalid_argument("from_permutations: degree must be between 1 and 16");
  std::vector<std::vector<int>> gen_perms;  // 0-based image arrays
  for (const auto& g : gens) {
    if (g.size() != degree)
      throw std::invalid_argument("from_permutations: generators have mixed degrees");
    std::vector<char> seen(degree, 0);
    std::vector<int> p(degree);
    for (size_t i = 0; i < degree; ++i) {
      if (g[i] < 1 || g[i] > static_cast<int>(degree) || seen[static_cast<size_t>(g[i] - 1)]++)
        throw std::invalid_argument("from_permutations: not a permutation (1-based images)");
      p[i] = g[i] - 1;
    }
    gen_perms.push_back(std::move(p));
  }

  auto key_of = [](const std::vector<int>& p) {
    std::uint64_t k = 0;
    for (size_t i = 0; i < p.size(); ++i) k |= static_cast<std::uint64_t>(p[i]) << (4 * i);
    return k;
  };
  auto compose = [degree](const std::vector<int>& p, const std::vector<int>& q) {
    std::vector<int> r(degree);  // apply p, then q
    for (size_t i = 0; i < degree; ++i) r[i] = q[static_cast<size_t>(p[i])];
    return r;
  };

  std::vector<std::vector<int>> elements;
  std::map<std::uint64_t, int> index;
  std::vector<int> identity(degree);
  for (size_t i = 0; i < degree; ++i) identity[i] = static_cast<int>(i);
  elements.push_back(identity);
  index[key_of(identity)] = 0;
  for (size_t head = 0; head < elements.size(); ++head) {
    const auto current = elements[head];
    for (const auto& gp : gen_perms) {
      auto next = compose(current, gp);
      auto k = key_of(next);
      if (!index.count(k)) {
        if (elements.size() >= 5000)
          throw std::invalid_argument("from_permutations: order exceeds the 5000 cap");
        index[k] = static_cast<int>(elements.size());
        elements.push_back(std::move(next));
      }
    }
  }

  const int n = static_cast<int>(elements.size());
  std::vector<std::vector<int>> table(static_cast<size_t>(n),
                                      std::vector<int>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      table[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          index.at(key_of(compose(elements[static_cast<size_t>(i)],
                                  elements[static_cast<size_t>(j)])));

  FiniteGroup g;
  g.table_ = std::move(table);
  g.name_ = std::move(name);
  g.labels_.reserve(static_cast<size_t>(n));
  for (const auto& p : elements) {
    // cycle notation on 1-based points
    std::ostringstream os;
    std::vector<char> used(degree, 0);
    for (size_t i = 0; i < degree; ++i) {
      if (used[i] || p[i] == static_cast<int>(i)) continue;
      os << "(";
      size_t j = i;
      bool first = true;
      while (!used[j]) {
        used[j] = 1;
        os << (first ? "" : " ") << (j + 1);
        first = false;
        j = static_cast<size_t>(p[j]);
      }
      os << ")";
    }
    std::string s = os.str();
    g.labels_.push_back(s.empty() ? "()" : s);
  }
  for (const auto& gp : gen_perms) g.gens_.push_back(index.at(key_of(gp)));
  g.gens_ = sorted_unique(std::move(g.gens_));
  g.finish_construction();
  return g;
}

int FiniteGroup::pow(int a, long e) const {
  if (e < 0) return pow(inv(a), -e);
  int r = e_;
  while (e > 0) {
    r = mul(r, a);
    --e;
  }
  return r;
}

int FiniteGroup::element_order(int a) const {
  int x = a, o = 1;
  while (x != e_) {
    x = mul(x, a);
    ++o;
  }
  return o;
}

std::string FiniteGroup::element_name(int a) const {
  if (!labels_.empty()) return labels_[static_cast<size_t>(a)];
  return a == e_ ? "e" : "g" + std::to_string(a);
}

FiniteSubgroup FiniteGroup::trivial_subgroup() const { return FiniteSubgroup{{e_}}; }

FiniteSubgroup FiniteGroup::full_subgroup() const {
  FiniteSubgroup s;
  s.members.resize(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i) s.members[static_cast<size_t>(i)] = i;
  return s;
}

FiniteSubgroup FiniteGroup::subgroup(std::vector<int> members) const {
  members = sorted_unique(std::move(members));
  for (int x : members)
    if (x < 0 || x >= n_) throw std::invalid_argument("subgroup: element out of range");
  FiniteSubgroup s{members};
  if (!s.contains(e_)) throw std::invalid_argument("subgroup: missing identity");
  for (int x : members)
    for (int y : members)
      if (!s.contains(mul(x, y)))
        throw std::invalid_argument("subgroup: set is not closed under multiplication");
  return s;
}

FiniteSubgroup FiniteGroup::closure(std::vector<int> seed) const {
  std::vector<char> in(static_cast<size_t>(n_), 0);
  std::vector<int> order_added;
  auto push = [&](int x) {
    if (!in[static_cast<size_t>(x)]) {
      in[static_cast<size_t>(x)] = 1;
      order_added.push_back(x);
    }
  };
  push(e_);
  for (int x : seed) {
    if (x < 0 || x >= n_) throw std::invalid_argument("closure: element out of range");
    push(x);
  }
  seed = sorted_unique(std::move(seed));
  // monoid closure equals subgroup closure in a finite group
  for (size_t head = 0; head < order_added.size(); ++head)
    for (int s : seed) push(mul(order_added[head], s));
  FiniteSubgroup r{sorted_unique(std::move(order_added))};
  return r;
}

FiniteSubgroup FiniteGroup::conjugate(const FiniteSubgroup& s, int g) const {
  std::vector<int> m;
  m.reserve(s.members.size());
  for (int x : s.members) m.push_back(conj_by(x, g));
  return FiniteSubgroup{sorted_unique(std::move(m))};
}

bool FiniteGroup::normalizes(const FiniteSubgroup& a, const FiniteSubgroup& b) const {
  for (int g : a.members)
    if (!(conjugate(b, g) == b)) return false;
  return true;
}

bool FiniteGroup::is_normal(const FiniteSubgroup& s) const {
  return normalizes(full_subgroup(), s);
}

bool FiniteGroup::centralizes(const FiniteSubgroup& a, const FiniteSubgroup& b) const {
  for (int x : a.members)
    for (int y : b.members)
      if (mul(x, y) != mul(y, x)) return false;
  return true;
}

FiniteSubgroup FiniteGroup::normal_closure(const std::vector<int>& seed) const {
  std::vector<int> conjs;
  conjs.reserve(seed.size() * static_cast<size_t>(n_));
  for (int s : seed)
    for (int g = 0; g < n_; ++g) conjs.push_back(conj_by(s, g));
  return closure(sorted_unique(std::move(conjs)));
}

FiniteSubgroup FiniteGroup::centralizer(const FiniteSubgroup& within,
                                        const FiniteSubgroup& s) const {
  std::vector<int> m;
  for (int x : within.members) {
    bool central = true;
    for (int y : s.members)
      if (mul(x, y) != mul(y, x)) {
        central = false;
        break;
      }
    if (central) m.push_back(x);
  }
  return FiniteSubgroup{std::move(m)};
}

FiniteSubgroup FiniteGroup::centralizer_of_element(const FiniteSubgroup& within, int x) const {
  std::vector<int> m;
  for (int y : within.members)
    if (mul(x, y) == mul(y, x)) m.push_back(y);
  return FiniteSubgroup{std::move(m)};
}

FiniteSubgroup FiniteGroup::normalizer(const FiniteSubgroup& s) const {
  std::vector<int> m;
  for (int g = 0; g < n_; ++g)
    if (conjugate(s, g) == s) m.push_back(g);
  return FiniteSubgroup{std::move(m)};
}

FiniteSubgroup FiniteGroup::center() const { return centralizer(full_subgroup(), full_subgroup()); }

FiniteSubgroup FiniteGroup::intersect(const FiniteSubgroup& a, const FiniteSubgroup& b) const {
  return FiniteSubgroup{intersect_sorted(a.members, b.members)};
}

FiniteSubgroup FiniteGroup::join(const FiniteSubgroup& a, const FiniteSubgroup& b) const {
  std::vector<int> u = a.members;
  u.insert(u.end(), b.members.begin(), b.members.end());
  return closure(std::move(u));
}

std::vector<int> FiniteGroup::commutator_set(const FiniteSubgroup& a,
                                             const FiniteSubgroup& b) const {
  std::vector<char> in(static_cast<size_t>(n_), 0);
  for (int x : a.members)
    for (int y : b.members) in[static_cast<size_t>(comm(x, y))] = 1;
  std::vector<int> r;
  for (int i = 0; i < n_; ++i)
    if (in[static_cast<size_t>(i)]) r.push_back(i);
  return r;
}

FiniteSubgroup FiniteGroup::commutator_subgroup(const FiniteSubgroup& a,
                                                const FiniteSubgroup& b) const {
  return closure(commutator_set(a, b));
}

bool FiniteGroup::is_abelian() const { return center().order() == n_; }

std::optional<int> FiniteGroup::nilpotency_class(const FiniteSubgroup& s) const {
  // S^0 = S, S^{n+1} = [S, S^n]; the class is the first n with S^n trivial
  FiniteSubgroup cur = s;
  int cls = 0;
  while (cur.order() > 1) {
    FiniteSubgroup next = commutator_subgroup(s, cur);
    if (next == cur) return std::nullopt;
    cur = std::move(next);
    ++cls;
  }
  return cls;
}

bool FiniteGroup::is_nilpotent(const FiniteSubgroup& s) const {
  return nilpotency_class(s).has_value();
}

bool FiniteGroup::is_solvable(const FiniteSubgroup& s) const {
  FiniteSubgroup cur = s;
  while (cur.order() > 1) {
    FiniteSubgroup next = commutator_subgroup(cur, cur);
    if (next == cur) return false;
    cur = std::move(next);
  }
  return true;
}

std::vector<FiniteSubgroup> FiniteGroup::all_subgroups() const {
  std::set<std::vector<int>> seen;
  std::queue<std::vector<int>> work;
  seen.insert(trivial_subgroup().members);
  work.push(trivial_subgroup().members);
  while (!work.empty()) {
    auto s = work.front();
    work.pop();
    FiniteSubgroup cur{s};
    for (int x = 0; x < n_; ++x) {
      if (cur.contains(x)) continue;
      auto bigger = s;
      bigger.push_back(x);
      auto t = closure(std::move(bigger)).members;
      if (seen.insert(t).second) work.push(t);
    }
  }
  std::vector<FiniteSubgroup> r;
  r.reserve(seen.size());
  for (auto& m : seen) r.push_back(FiniteSubgroup{m});
  std::sort(r.begin(), r.end(), [](const FiniteSubgroup& x, const FiniteSubgroup& y) {
    return x.order() != y.order() ? x.order() < y.order() : x.members < y.members;
  });
  return r;
}

std::vector<std::vector<int>> FiniteGroup::conjugacy_classes() const {
  std::vector<char> done(static_cast<size_t>(n_), 0);
  std::vector<std::vector<int>> classes;
  for (int x = 0; x < n_; ++x) {
    if (done[static_cast<size_t>(x)]) continue;
    std::vector<char> in(static_cast<size_t>(n_), 0);
    std::vector<int> cls;
    for (int g = 0; g < n_; ++g) {
      int y = conj_by(x, g);
      if (!in[static_cast<size_t>(y)]) {
        in[static_cast<size_t>(y)] = 1;
        cls.push_back(y);
        done[static_cast<size_t>(y)] = 1;
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

std::vector<FiniteSubgroup> FiniteGroup::normal_subgroups() const {
  // every normal subgroup is generated by the conjugacy classes it contains,
  // so the join-closure of classes over the trivial subgroup finds them all
  const auto classes = conjugacy_classes();
  std::set<std::vector<int>> seen;
  std::queue<std::vector<int>> work;
  seen.insert(trivial_subgroup().members);
  work.push(trivial_subgroup().members);
  while (!work.empty()) {
    auto s = work.front();
    work.pop();
    for (const auto& cls : classes) {
      auto u = s;
      u.insert(u.end(), cls.begin(), cls.end());
      auto t = closure(std::move(u)).members;
      if (seen.insert(t).second) work.push(t);
    }
  }
  std::vector<FiniteSubgroup> r;
  r.reserve(seen.size());
  for (auto& m : seen) r.push_back(FiniteSubgroup{m});
  std::sort(r.begin(), r.end(), [](const FiniteSubgroup& x, const FiniteSubgroup& y) {
    return x.order() != y.order() ? x.order() < y.order() : x.members < y.members;
  });
  return r;
}

FiniteQuotient FiniteGroup::quotient(const FiniteSubgroup& n) const {
  if (!is_normal(n)) throw std::domain_error("quotient: subgroup is not normal");
  std::vector<int> rep(static_cast<size_t>(n_), -1);
  std::vector<int> reps;
  for (int x = 0; x < n_; ++x) {
    if (rep[static_cast<size_t>(x)] >= 0) continue;
    int least = x;
    for (int m : n.members) least = std::min(least, mul(x, m));
    for (int m : n.members) rep[static_cast<size_t>(mul(x, m))] = least;
    reps.push_back(least);
  }
  std::sort(reps.begin(), reps.end());
  std::vector<int> qindex(static_cast<size_t>(n_), -1);
  for (size_t i = 0; i < reps.size(); ++i) qindex[static_cast<size_t>(reps[i])] =
      static_cast<int>(i);

  const int m = static_cast<int>(reps.size());
  std::vector<std::vector<int>> table(static_cast<size_t>(m),
                                      std::vector<int>(static_cast<size_t>(m)));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int prod = mul(reps[static_cast<size_t>(i)], reps[static_cast<size_t>(j)]);
      table[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          qindex[static_cast<size_t>(rep[static_cast<size_t>(prod)])];
    }

  FiniteQuotient q{from_table(std::move(table), name_.empty() ? "quotient" : name_ + "/N"),
             std::vector<int>(static_cast<size_t>(n_)), reps};
  for (int x = 0; x < n_; ++x)
    q.proj[static_cast<size_t>(x)] = qindex[static_cast<size_t>(rep[static_cast<size_t>(x)])];
  if (!labels_.empty()) {
    q.group.labels_.clear();
    for (int r : reps) q.group.labels_.push_back(element_name(r) + "N");
  }
  return q;
}

WidthProfile commutator_profile(const FiniteGroup& g, const FiniteSubgroup& a,
                                const FiniteSubgroup& b) {
  const auto raw = g.commutator_set(a, b);
  std::vector<int> sym = raw;
  for (int x : raw) sym.push_back(g.inv(x));
  sym = sorted_unique(std::move(sym));

  WidthProfile p;
  std::vector<char> in(static_cast<size_t>(g.order()), 0);
  in[static_cast<size_t>(g.identity())] = 1;
  std::vector<int> layer{g.identity()};
  p.sets.push_back(layer);
  while (true) {
    std::vector<int> next = layer;
    for (int x : layer)
      for (int s : sym) {
        int y = g.mul(x, s);
        if (!in[static_cast<size_t>(y)]) {
          in[static_cast<size_t>(y)] = 1;
          next.push_back(y);
        }
      }
    std::sort(next.begin(), next.end());
    if (next == layer) break;
    p.sets.push_back(next);
    layer = std::move(next);
  }
  p.width = static_cast<int>(p.sets.size()) - 1;
  p.subgroup = FiniteSubgroup{layer};
  return p;
}

BaerReport baer_check(const FiniteGroup& g, const FiniteSubgroup& a, const FiniteSubgroup& b) {
  if (!g.normalizes(a, b)) throw std::domain_error("baer_check: A does not normalize B");
  BaerReport r;
  r.commutator = g.commutator_subgroup(a, b);
  r.commutator_in_b = b.contains(r.commutator);

  const auto raw = g.commutator_set(a, b);
  FiniteSubgroup raw_set{raw};  // only for sorted membership tests
  // {[a,b]} is stable under conjugation by A: [x,y]^a = [x^a, y^a]
  r.set_closed_under_conjugation = true;
  for (int x : raw)
    for (int t : a.members)
      if (!raw_set.contains(g.conj_by(x, t))) {
        r.set_closed_under_conjugation = false;
        break;
      }

  // proof shape: with a = a_i alpha and b = b_j beta over coset representatives
  // of the mutual centralizers, every commutator is [a_i, b_j]^beta
  const auto ca = g.centralizer(a, b);  // C_A(B)
  const auto cb = g.centralizer(b, a);  // C_B(A)
  auto reps_of = [&g](const FiniteSubgroup& whole, const FiniteSubgroup& part) {
    std::vector<char> covered(static_cast<size_t>(g.order()), 0);
    std::vector<int> reps;
    for (int x : whole.members) {
      if (covered[static_cast<size_t>(x)]) continue;
      reps.push_back(x);
      for (int c : part.members) covered[static_cast<size_t>(g.mul(x, c))] = 1;
    }
    return reps;
  };
  std::vector<int> bound;
  for (int ai : reps_of(a, ca))
    for (int bj : reps_of(b, cb))
      for (int beta : cb.members) bound.push_back(g.conj_by(g.comm(ai, bj), beta));
  bound = sorted_unique(std::move(bound));
  r.rep_bound_holds = bound == raw;
  return r;
}

WidthAdditivityReport width_additivity_check(const FiniteGroup& g, const FiniteSubgroup& n,
                                             const FiniteSubgroup& a, const FiniteSubgroup& b) {
  auto q = g.quotient(n);
  auto push = [&q](const FiniteSubgroup& s) {
    std::vector<int> m;
    m.reserve(s.members.size());
    for (int x : s.members) m.push_back(q.proj[static_cast<size_t>(x)]);
    return FiniteSubgroup{sorted_unique(std::move(m))};
  };
  WidthAdditivityReport r;
  r.k = commutator_profile(q.group, push(a), push(b)).width;

  const auto profile = commutator_profile(g, a, b);
  r.width = profile.width;
  const auto target = intersect_sorted(profile.subgroup.members, n.members);
  for (int s = 0; s < static_cast<int>(profile.sets.size()); ++s)
    if (intersect_sorted(profile.sets[static_cast<size_t>(s)], n.members) == target) {
      r.s = s;
      break;
    }
  return r;
}

SeriesReport series(const FiniteGroup& g) {
  SeriesReport r;
  const auto full = g.full_subgroup();
  const auto triv = g.trivial_subgroup();

  r.lower_central.push_back(full);
  while (true) {
    auto next = g.commutator_subgroup(full, r.lower_central.back());
    if (next == r.lower_central.back()) break;
    r.lower_central.push_back(std::move(next));
  }
  r.derived.push_back(full);
  while (true) {
    auto next = g.commutator_subgroup(r.derived.back(), r.derived.back());
    if (next == r.derived.back()) break;
    r.derived.push_back(std::move(next));
  }
  r.upper_central.push_back(triv);
  while (true) {
    const auto& z = r.upper_central.back();
    std::vector<int> next;
    for (int x = 0; x < g.order(); ++x) {
      bool in_next = true;
      for (int y = 0; y < g.order() && in_next; ++y) in_next = z.contains(g.comm(x, y));
      if (in_next) next.push_back(x);
    }
    FiniteSubgroup nz{std::move(next)};
    if (nz == z) break;
    r.upper_central.push_back(std::move(nz));
  }

  r.nilpotent = r.lower_central.back() == triv;
  r.solvable = r.derived.back() == triv;
  if (r.nilpotent) r.nilpotency_class = static_cast<int>(r.lower_central.size()) - 1;
  if (r.solvable) r.solvability_class = static_cast<int>(r.derived.size()) - 1;

  auto lower_at = [&](int i) {
    return i < static_cast<int>(r.lower_central.size()) ? r.lower_central[static_cast<size_t>(i)]
                                                        : r.lower_central.back();
  };
  auto upper_at = [&](int i) {
    return i < static_cast<int>(r.upper_central.size()) ? r.upper_central[static_cast<size_t>(i)]
                                                        : r.upper_central.back();
  };
  if (r.nilpotent) {
    const int cls = r.nilpotency_class;
    for (int i = 0; i <= cls; ++i)
      if (!upper_at(cls - i).contains(lower_at(i))) r.nilpotent_inclusions_ok = false;
    if (cls >= 1) {
      r.class_characterization_ok =
          upper_at(cls) == full && !(upper_at(cls - 1) == full);
      auto q = g.quotient(g.center());
      auto qcls = q.group.nilpotency_class(q.group.full_subgroup());
      r.class_characterization_ok =
          r.class_characterization_ok && qcls.has_value() && *qcls == cls - 1;
    }
  } else {
    // the upper central series of a non-nilpotent group stabilizes short of G
    r.class_characterization_ok = !(r.upper_central.back() == full);
  }
  return r;
}

FittingReport fitting_and_radical(const FiniteGroup& g) {
  FittingReport r;
  r.fitting = g.trivial_subgroup();
  r.radical = g.trivial_subgroup();
  for (const auto& n : g.normal_subgroups()) {
    if (g.is_nilpotent(n)) r.fitting = g.join(r.fitting, n);
    if (g.is_solvable(n)) r.radical = g.join(r.radical, n);
  }
  r.fitting_nilpotent = g.is_nilpotent(r.fitting);
  r.radical_solvable = g.is_solvable(r.radical);
  r.fitting_in_radical = r.radical.contains(r.fitting);
  return r;
}

NilpotentAnalogReport nilpotent_analog_checks(const FiniteGroup& g) {
  if (!g.is_nilpotent()) throw std::domain_error("nilpotent_analog_checks: group not nilpotent");
  NilpotentAnalogReport r;
  const auto z = g.center();
  r.center_intersections_ok = true;
  for (const auto& h : g.normal_subgroups()) {
    if (h.order() == 1) continue;
    ++r.normal_checked;
    if (g.intersect(h, z).order() == 1) r.center_intersections_ok = false;
  }
  r.normalizer_growth_ok = true;
  for (const auto& h : g.all_subgroups()) {
    if (h.order() == g.order()) continue;
    ++r.proper_checked;
    if (!(g.normalizer(h).order() > h.order())) r.normalizer_growth_ok = false;
  }
  return r;
}

AdMapReport ad_map_check(const FiniteGroup& g, const FiniteSubgroup& h, int x) {
  AdMapReport r;
  const auto ch = g.centralizer(g.full_subgroup(), h);  // C_G(H)
  r.premise_holds = true;
  for (int y : h.members)
    if (!ch.contains(g.comm(y, x))) {
      r.premise_holds = false;
      break;
    }
  if (!r.premise_holds) return r;

  r.homomorphism_ok = true;
  for (int h1 : h.members)
    for (int h2 : h.members)
      if (g.comm(g.mul(h1, h2), x) != g.mul(g.comm(h1, x), g.comm(h2, x))) {
        r.homomorphism_ok = false;
        break;
      }
  std::vector<int> kernel;
  for (int y : h.members)
    if (g.comm(y, x) == g.identity()) kernel.push_back(y);
  r.kernel_is_centralizer = FiniteSubgroup{kernel} == g.centralizer_of_element(h, x);
  return r;
}

}  // namespace grouplab
