#include "cwp/finite_group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace cwp {

std::vector<std::string> FiniteGroup::diagnose(const std::vector<std::string>& names,
                                               const std::vector<std::vector<int>>& table) {
  std::vector<std::string> errors;
  const int n = static_cast<int>(names.size());
  if (n == 0) return {"group has no elements"};
  {
    std::unordered_map<std::string, int> seen;
    for (int i = 0; i < n; ++i)
      if (!seen.emplace(names[i], i).second) errors.push_back("duplicate element name '" + names[i] + "'");
  }
  if (static_cast<int>(table.size()) != n) return {"table has " + std::to_string(table.size()) + " rows, expected " + std::to_string(n)};
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(table[i].size()) != n)
      return {"table row " + std::to_string(i) + " has wrong length"};
    for (int x : table[i])
      if (x < 0 || x >= n) return {"table row " + std::to_string(i) + " has an entry out of range"};
  }
  int e = -1;
  for (int i = 0; i < n && e < 0; ++i) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = table[i][x] == x && table[x][i] == x;
    if (ok) e = i;
  }
  if (e < 0) errors.push_back("no identity element");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]]) {
          errors.push_back("associativity fails at (" + names[a] + ", " + names[b] + ", " + names[c] + ")");
          a = b = c = n;
        }
  if (e >= 0)
    for (int a = 0; a < n; ++a) {
      bool has = false;
      for (int b = 0; b < n && !has; ++b) has = table[a][b] == e && table[b][a] == e;
      if (!has) errors.push_back("element '" + names[a] + "' has no inverse");
    }
  return errors;
}

FiniteGroup::FiniteGroup(std::vector<std::string> names, std::vector<std::vector<int>> table)
    : names_(std::move(names)), table_(std::move(table)) {
  auto errors = diagnose(names_, table_);
  if (!errors.empty()) {
    std::string msg = "invalid group table:";
    for (auto& e : errors) msg += " " + e + ";";
    throw InputError(msg);
  }
  const int n = order();
  for (int i = 0; i < n; ++i)
    if (table_[i][i] == i) identity_ = i;
  inverse_.assign(n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (table_[a][b] == identity_) inverse_[a] = b;
  for (int i = 0; i < n; ++i) by_name_.emplace(names_[i], i);
  std::ostringstream key;
  key << n << "[";
  for (auto& row : table_)
    for (int x : row) key << x << ",";
  key << "]";
  key_ = key.str();
}

std::optional<int> FiniteGroup::find(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

bool FiniteGroup::is_subgroup(std::span<const int> elements) const {
  std::vector<char> in(order(), 0);
  for (int x : elements) in[x] = 1;
  if (!in[identity_]) return false;
  for (int a : elements)
    for (int b : elements)
      if (!in[mul(a, b)]) return false;
  return true;
}

std::vector<int> FiniteGroup::subgroup_generated(std::span<const int> seeds) const {
  std::vector<char> in(order(), 0);
  std::vector<int> elements{identity_};
  in[identity_] = 1;
  for (int s : seeds)
    if (!in[s]) {
      in[s] = 1;
      elements.push_back(s);
    }
  // In a finite group closure under products suffices.
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      for (int p : {mul(elements[i], elements[j]), mul(elements[j], elements[i])})
        if (!in[p]) {
          in[p] = 1;
          elements.push_back(p);
        }
  std::sort(elements.begin(), elements.end());
  return elements;
}

std::shared_ptr<FiniteGroup> FiniteGroup::restrict_to(std::span<const int> subgroup,
                                                      std::vector<int>* embedding) const {
  std::vector<int> elems(subgroup.begin(), subgroup.end());
  std::sort(elems.begin(), elems.end());
  // Identity first so the restricted group has identity 0.
  std::stable_partition(elems.begin(), elems.end(), [&](int x) { return x == identity_; });
  std::vector<int> local(order(), -1);
  for (std::size_t i = 0; i < elems.size(); ++i) local[elems[i]] = static_cast<int>(i);
  std::vector<std::string> names;
  std::vector<std::vector<int>> table(elems.size(), std::vector<int>(elems.size()));
  for (std::size_t i = 0; i < elems.size(); ++i) {
    names.push_back(names_[elems[i]]);
    for (std::size_t j = 0; j < elems.size(); ++j) table[i][j] = local[mul(elems[i], elems[j])];
  }
  if (embedding) *embedding = elems;
  return std::make_shared<FiniteGroup>(std::move(names), std::move(table));
}

bool Subgroup::contains(int x) const { return std::binary_search(elements.begin(), elements.end(), x); }

std::vector<std::string> PartialIso::diagnose(const FiniteGroup& source, const FiniteGroup& target,
                                              const std::vector<int>& map) {
  if (static_cast<int>(map.size()) != source.order()) return {"map size does not match the source group"};
  std::vector<int> dom;
  for (int x = 0; x < source.order(); ++x) {
    if (map[x] < -1 || map[x] >= target.order()) return {"image out of range"};
    if (map[x] >= 0) dom.push_back(x);
  }
  // The empty map is allowed; composing can leave nothing defined.
  if (!dom.empty() && !source.is_subgroup(dom)) return {"domain is not a subgroup"};
  std::vector<char> hit(target.order(), 0);
  for (int x : dom) {
    if (hit[map[x]]) return {"not injective"};
    hit[map[x]] = 1;
  }
  for (int x : dom)
    for (int y : dom)
      if (map[source.mul(x, y)] != target.mul(map[x], map[y])) return {"not a homomorphism"};
  return {};
}

PartialIso::PartialIso(FiniteGroupPtr source, FiniteGroupPtr target, std::vector<int> map, bool)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {}

PartialIso::PartialIso(FiniteGroupPtr source, FiniteGroupPtr target, std::vector<int> map)
    : PartialIso(std::move(source), std::move(target), std::move(map), true) {
  auto errors = diagnose(*source_, *target_, map_);
  if (!errors.empty()) throw InputError("invalid partial isomorphism: " + errors.front());
}

PartialIso PartialIso::identity(FiniteGroupPtr g, std::span<const int> on) {
  std::vector<int> map(g->order(), -1);
  for (int x : on) map[x] = x;
  return PartialIso(g, g, std::move(map));
}

std::optional<int> PartialIso::apply(int x) const {
  if (map_[x] < 0) return std::nullopt;
  return map_[x];
}

std::vector<int> PartialIso::domain() const {
  std::vector<int> out;
  for (int x = 0; x < static_cast<int>(map_.size()); ++x)
    if (map_[x] >= 0) out.push_back(x);
  return out;
}

std::vector<int> PartialIso::range() const {
  std::vector<int> out;
  for (int y : map_)
    if (y >= 0) out.push_back(y);
  std::sort(out.begin(), out.end());
  return out;
}

int PartialIso::size() const {
  return static_cast<int>(std::count_if(map_.begin(), map_.end(), [](int y) { return y >= 0; }));
}

PartialIso PartialIso::inverse() const {
  std::vector<int> inv(target_->order(), -1);
  for (int x = 0; x < static_cast<int>(map_.size()); ++x)
    if (map_[x] >= 0) inv[map_[x]] = x;
  return PartialIso(target_, source_, std::move(inv), true);
}

std::string PartialIso::key() const {
  std::string out;
  for (int y : map_) out += std::to_string(y) + ",";
  return out;
}

PartialIso compose_partial(const PartialIso& phi, const PartialIso& psi) {
  if (psi.target()->key() != phi.source()->key())
    throw std::invalid_argument("partial isomorphisms are not composable");
  std::vector<int> map(psi.source()->order(), -1);
  for (int x = 0; x < psi.source()->order(); ++x)
    if (auto y = psi.apply(x))
      if (auto z = phi.apply(*y)) map[x] = *z;
  return PartialIso(psi.source(), phi.target(), std::move(map));
}

PartialIso invert_partial(const PartialIso& phi) { return phi.inverse(); }

namespace {

std::vector<std::string> indexed_names(int n, const std::string& prefix) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i));
  return names;
}

// Group generated by permutations, elements in discovery order from the identity.
std::shared_ptr<FiniteGroup> permutation_group(const std::vector<std::vector<int>>& gens,
                                               const std::string& prefix) {
  const int degree = static_cast<int>(gens.front().size());
  std::vector<int> id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::vector<int>> elems{id};
  std::map<std::vector<int>, int> index{{id, 0}};
  auto compose = [&](const std::vector<int>& p, const std::vector<int>& q) {
    std::vector<int> r(degree);
    for (int x = 0; x < degree; ++x) r[x] = p[q[x]];
    return r;
  };
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (auto& g : gens) {
      auto r = compose(elems[i], g);
      if (index.emplace(r, static_cast<int>(elems.size())).second) elems.push_back(r);
    }
  const int n = static_cast<int>(elems.size());
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[a][b] = index.at(compose(elems[a], elems[b]));
  return std::make_shared<FiniteGroup>(indexed_names(n, prefix), std::move(table));
}

}  // namespace

std::shared_ptr<FiniteGroup> cyclic_group(int n, const std::string& prefix) {
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  return std::make_shared<FiniteGroup>(indexed_names(n, prefix), std::move(table));
}

std::shared_ptr<FiniteGroup> klein_four(const std::string& prefix) {
  std::vector<std::vector<int>> table(4, std::vector<int>(4));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) table[a][b] = a ^ b;
  return std::make_shared<FiniteGroup>(indexed_names(4, prefix), std::move(table));
}

std::shared_ptr<FiniteGroup> symmetric3(const std::string& prefix) {
  return permutation_group({{1, 0, 2}, {1, 2, 0}}, prefix);
}

std::shared_ptr<FiniteGroup> dihedral4(const std::string& prefix) {
  return permutation_group({{1, 2, 3, 0}, {0, 3, 2, 1}}, prefix);
}

std::vector<std::string> catalog_names() {
  return {"Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "V4", "S3", "D4"};
}

std::shared_ptr<FiniteGroup> catalog_group(const std::string& name, const std::string& prefix) {
  if (name.size() == 2 && name[0] == 'Z' && name[1] >= '2' && name[1] <= '8')
    return cyclic_group(name[1] - '0', prefix);
  if (name == "V4") return klein_four(prefix);
  if (name == "S3") return symmetric3(prefix);
  if (name == "D4") return dihedral4(prefix);
  throw InputError("unknown catalog group '" + name + "'");
}

}  // namespace cwp
