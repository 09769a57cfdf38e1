#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace grl {

/// Dense index of a group element, always in [0, N).
using Element = std::uint32_t;

inline constexpr std::size_t kDefaultMaxGroupOrder = 4096;

/// A finite group given by its full multiplication table.
///
/// Elements are the indices 0..N-1 and `op(a, b)` is the table lookup for a*b.
/// Instances are immutable and share their table storage, so copies are cheap
/// and concurrent reads are safe.
class GroupTable {
 public:
  /// Wraps a row-major N x N table. Only the shape and entry range are checked
  /// here; use verify_group_axioms() before trusting a table from outside.
  /// If no two-sided identity exists, identity() is N and inverse lookups are N.
  static GroupTable from_table(std::size_t order, std::vector<std::uint16_t> table,
                               std::string name = "table");

  std::size_t order() const noexcept { return data_->order; }
  Element identity() const noexcept { return data_->identity; }
  bool is_abelian() const noexcept { return data_->abelian; }
  const std::string& name() const noexcept { return data_->name; }

  Element op(Element a, Element b) const noexcept {
    return data_->table[static_cast<std::size_t>(a) * data_->order + b];
  }
  Element inv(Element a) const noexcept { return data_->inverse[a]; }

  std::span<const std::uint16_t> row(Element a) const noexcept {
    return {data_->table.data() + static_cast<std::size_t>(a) * data_->order, data_->order};
  }
  std::span<const Element> inverses() const noexcept { return data_->inverse; }

  /// Order of the element (smallest n >= 1 with a^n = e); 0 when undefined.
  std::size_t element_order(Element a) const;

 private:
  struct Data {
    std::size_t order = 0;
    std::vector<std::uint16_t> table;
    std::vector<Element> inverse;
    Element identity = 0;
    bool abelian = false;
    std::string name;
  };

  explicit GroupTable(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

  std::shared_ptr<const Data> data_;
};

/// A subset of a group: sorted, duplicate-free indices below `group_order`.
class ElementSet {
 public:
  ElementSet() = default;
  /// Sorts and deduplicates; throws InvalidParameter on an out-of-range index.
  ElementSet(std::vector<Element> members, std::size_t group_order);

  static ElementSet full(std::size_t group_order);
  static ElementSet empty(std::size_t group_order) { return ElementSet({}, group_order); }

  std::span<const Element> members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  std::size_t group_order() const noexcept { return group_order_; }
  bool contains(Element x) const;

  ElementSet set_union(const ElementSet& other) const;
  ElementSet set_difference(const ElementSet& other) const;
  ElementSet set_intersection(const ElementSet& other) const;
  /// Complement inside the ambient group.
  ElementSet complement() const;

  friend bool operator==(const ElementSet&, const ElementSet&) = default;

 private:
  std::vector<Element> members_;
  std::size_t group_order_ = 0;
};

/// Z_n with table[i][j] = (i + j) mod n.
GroupTable make_cyclic(std::size_t n);

/// G1 x G2; the pair (a, b) is encoded as a * |G2| + b.
GroupTable make_direct_product(const GroupTable& g1, const GroupTable& g2,
                               std::size_t max_order = kDefaultMaxGroupOrder);

/// Dihedral group of order 2n. r^i s^j is encoded as j * n + i, with s r s = r^-1.
GroupTable make_dihedral(std::size_t n);

/// Symmetric group S_n, n in [1, 6]. A permutation is encoded by the
/// lexicographic rank of its one-line word; (p * q)(x) = p(q(x)).
GroupTable make_symmetric(std::size_t n);

/// One-line word of the permutation with the given lexicographic rank in S_n.
std::vector<int> permutation_from_rank(std::size_t n, std::size_t rank);
std::size_t permutation_rank(std::span<const int> word);

/// The first failed axiom found by verify_group_axioms().
struct AxiomViolation {
  enum class Kind { kBadShape, kNoIdentity, kNoInverse, kNotAssociative };
  Kind kind;
  Element a = 0, b = 0, c = 0;
  std::string describe() const;
};

/// Full check of identity, inverses and associativity (N^3 triples).
bool verify_group_axioms(const GroupTable& t, AxiomViolation* witness = nullptr);

/// Builds a group from a JSON descriptor:
///   {"type":"cyclic","n":12}, {"type":"product","factors":[...]},
///   {"type":"dihedral","n":5}, {"type":"symmetric","n":4},
///   {"type":"table","table":[[...],...]}.
/// Tables are axiom-checked; failures throw InvalidParameter.
GroupTable group_from_json(const nlohmann::json& descriptor,
                           std::size_t max_order = kDefaultMaxGroupOrder);

ElementSet element_set_from_json(const nlohmann::json& indices, std::size_t group_order);
nlohmann::json to_json(const ElementSet& s);

}  // namespace grl
