#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "cwp/symbol.hpp"

namespace cwp {

// Finite group given by its multiplication table. Elements are indices.
class FiniteGroup {
 public:
  // Throws InputError listing every violated group axiom.
  FiniteGroup(std::vector<std::string> names, std::vector<std::vector<int>> table);

  static std::vector<std::string> diagnose(const std::vector<std::string>& names,
                                           const std::vector<std::vector<int>>& table);

  int order() const { return static_cast<int>(names_.size()); }
  int mul(int a, int b) const { return table_[a][b]; }
  int inv(int a) const { return inverse_[a]; }
  int identity() const { return identity_; }
  const std::string& name(int a) const { return names_[a]; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::vector<int>>& table() const { return table_; }
  std::optional<int> find(const std::string& name) const;

  bool is_subgroup(std::span<const int> elements) const;
  // Least subgroup containing the seeds, sorted.
  std::vector<int> subgroup_generated(std::span<const int> seeds) const;
  // The subgroup as a group of its own; `embedding[i]` is the parent element of i.
  std::shared_ptr<FiniteGroup> restrict_to(std::span<const int> subgroup,
                                           std::vector<int>* embedding = nullptr) const;

  const std::string& key() const { return key_; }

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  int identity_ = 0;
  std::unordered_map<std::string, int> by_name_;
  std::string key_;
};

using FiniteGroupPtr = std::shared_ptr<const FiniteGroup>;

struct Subgroup {
  FiniteGroupPtr group;
  std::vector<int> elements;  // sorted
  bool contains(int x) const;
  int order() const { return static_cast<int>(elements.size()); }
};

// Isomorphism between a subgroup of `source` and a subgroup of `target`.
class PartialIso {
 public:
  PartialIso() = default;
  // map[x] is the image of x, or -1 where undefined. Throws InputError if it
  // is not an isomorphism between subgroups.
  PartialIso(FiniteGroupPtr source, FiniteGroupPtr target, std::vector<int> map);

  static std::vector<std::string> diagnose(const FiniteGroup& source, const FiniteGroup& target,
                                           const std::vector<int>& map);
  static PartialIso identity(FiniteGroupPtr g, std::span<const int> on);

  const FiniteGroupPtr& source() const { return source_; }
  const FiniteGroupPtr& target() const { return target_; }
  std::optional<int> apply(int x) const;
  const std::vector<int>& map() const { return map_; }
  std::vector<int> domain() const;
  std::vector<int> range() const;
  int size() const;
  bool is_total() const { return size() == source_->order(); }
  PartialIso inverse() const;
  std::string key() const;
  friend bool operator==(const PartialIso& a, const PartialIso& b) { return a.map_ == b.map_; }

 private:
  PartialIso(FiniteGroupPtr source, FiniteGroupPtr target, std::vector<int> map, bool);
  FiniteGroupPtr source_;
  FiniteGroupPtr target_;
  std::vector<int> map_;
};

// phi ∘ psi on the largest domain where it is defined.
PartialIso compose_partial(const PartialIso& phi, const PartialIso& psi);
PartialIso invert_partial(const PartialIso& phi);

// Catalog fixtures. Element names are prefix + index; for cyclic groups the
// element named prefix+"1" generates.
std::shared_ptr<FiniteGroup> cyclic_group(int n, const std::string& prefix);
std::shared_ptr<FiniteGroup> klein_four(const std::string& prefix);
std::shared_ptr<FiniteGroup> symmetric3(const std::string& prefix);
std::shared_ptr<FiniteGroup> dihedral4(const std::string& prefix);
// Looks up "Z2".."Z8", "V4", "S3", "D4".
std::shared_ptr<FiniteGroup> catalog_group(const std::string& name, const std::string& prefix);
std::vector<std::string> catalog_names();

}  // namespace cwp
