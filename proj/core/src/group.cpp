#include "grl/group.hpp"

#include <algorithm>
#include <numeric>

#include "grl/error.hpp"

namespace grl {

GroupTable GroupTable::from_table(std::size_t order, std::vector<std::uint16_t> table,
                                  std::string name) {
  if (order == 0) throw InvalidParameter("group order must be positive");
  if (order > 65536) throw SizeLimit("group order " + std::to_string(order) + " too large");
  if (table.size() != order * order) {
    throw InvalidParameter("multiplication table must be " + std::to_string(order) + "x" +
                           std::to_string(order));
  }
  for (auto v : table) {
    if (v >= order) throw InvalidParameter("table entry " + std::to_string(v) + " out of range");
  }

  auto data = std::make_shared<Data>();
  data->order = order;
  data->table = std::move(table);
  data->name = std::move(name);
  const auto& t = data->table;
  const auto at = [&](std::size_t i, std::size_t j) { return t[i * order + j]; };

  data->identity = static_cast<Element>(order);
  for (std::size_t e = 0; e < order; ++e) {
    bool ok = true;
    for (std::size_t j = 0; j < order && ok; ++j) ok = at(e, j) == j && at(j, e) == j;
    if (ok) {
      data->identity = static_cast<Element>(e);
      break;
    }
  }

  data->inverse.assign(order, static_cast<Element>(order));
  if (data->identity < order) {
    for (std::size_t i = 0; i < order; ++i) {
      for (std::size_t j = 0; j < order; ++j) {
        if (at(i, j) == data->identity && at(j, i) == data->identity) {
          data->inverse[i] = static_cast<Element>(j);
          break;
        }
      }
    }
  }

  data->abelian = true;
  for (std::size_t i = 0; i < order && data->abelian; ++i) {
    for (std::size_t j = i + 1; j < order; ++j) {
      if (at(i, j) != at(j, i)) {
        data->abelian = false;
        break;
      }
    }
  }
  return GroupTable(std::move(data));
}

std::size_t GroupTable::element_order(Element a) const {
  if (identity() >= order()) return 0;
  Element x = a;
  for (std::size_t n = 1; n <= order(); ++n) {
    if (x == identity()) return n;
    x = op(x, a);
  }
  return 0;
}

ElementSet::ElementSet(std::vector<Element> members, std::size_t group_order)
    : members_(std::move(members)), group_order_(group_order) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!members_.empty() && members_.back() >= group_order_) {
    throw InvalidParameter("element " + std::to_string(members_.back()) +
                           " outside group of order " + std::to_string(group_order_));
  }
}

ElementSet ElementSet::full(std::size_t group_order) {
  std::vector<Element> all(group_order);
  std::iota(all.begin(), all.end(), Element{0});
  return ElementSet(std::move(all), group_order);
}

bool ElementSet::contains(Element x) const {
  return std::binary_search(members_.begin(), members_.end(), x);
}

ElementSet ElementSet::set_union(const ElementSet& other) const {
  std::vector<Element> out;
  std::set_union(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                 std::back_inserter(out));
  return ElementSet(std::move(out), group_order_);
}

ElementSet ElementSet::set_difference(const ElementSet& other) const {
  std::vector<Element> out;
  std::set_difference(members_.begin(), members_.end(), other.members_.begin(),
                      other.members_.end(), std::back_inserter(out));
  return ElementSet(std::move(out), group_order_);
}

ElementSet ElementSet::set_intersection(const ElementSet& other) const {
  std::vector<Element> out;
  std::set_intersection(members_.begin(), members_.end(), other.members_.begin(),
                        other.members_.end(), std::back_inserter(out));
  return ElementSet(std::move(out), group_order_);
}

ElementSet ElementSet::complement() const { return full(group_order_).set_difference(*this); }

GroupTable make_cyclic(std::size_t n) {
  if (n == 0) throw InvalidParameter("cyclic group order must be >= 1");
  if (n > kDefaultMaxGroupOrder) throw SizeLimit("cyclic group order above cap");
  std::vector<std::uint16_t> t(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i * n + j] = static_cast<std::uint16_t>((i + j) % n);
  return GroupTable::from_table(n, std::move(t), "Z" + std::to_string(n));
}

GroupTable make_direct_product(const GroupTable& g1, const GroupTable& g2,
                               std::size_t max_order) {
  const std::size_t n1 = g1.order(), n2 = g2.order(), n = n1 * n2;
  if (n > max_order) {
    throw SizeLimit("direct product order " + std::to_string(n) + " exceeds cap " +
                    std::to_string(max_order));
  }
  std::vector<std::uint16_t> t(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    const auto a1 = static_cast<Element>(x / n2), b1 = static_cast<Element>(x % n2);
    for (std::size_t y = 0; y < n; ++y) {
      const auto a2 = static_cast<Element>(y / n2), b2 = static_cast<Element>(y % n2);
      t[x * n + y] = static_cast<std::uint16_t>(g1.op(a1, a2) * n2 + g2.op(b1, b2));
    }
  }
  return GroupTable::from_table(n, std::move(t), g1.name() + "x" + g2.name());
}

GroupTable make_dihedral(std::size_t n) {
  if (n < 3) throw InvalidParameter("dihedral group needs n >= 3");
  if (2 * n > kDefaultMaxGroupOrder) throw SizeLimit("dihedral group order above cap");
  const std::size_t order = 2 * n;
  std::vector<std::uint16_t> t(order * order);
  for (std::size_t x = 0; x < order; ++x) {
    const std::size_t i = x % n, j = x / n;
    for (std::size_t y = 0; y < order; ++y) {
      const std::size_t k = y % n, l = y / n;
      // r^i s^j r^k s^l = r^(i + (-1)^j k) s^(j + l)
      const std::size_t rot = j == 0 ? (i + k) % n : (i + n - k) % n;
      t[x * order + y] = static_cast<std::uint16_t>(((j + l) % 2) * n + rot);
    }
  }
  return GroupTable::from_table(order, std::move(t), "D" + std::to_string(n));
}

std::vector<int> permutation_from_rank(std::size_t n, std::size_t rank) {
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<std::size_t> fact(n + 1, 1);
  for (std::size_t i = 1; i <= n; ++i) fact[i] = fact[i - 1] * i;
  std::vector<int> word;
  word.reserve(n);
  for (std::size_t pos = n; pos > 0; --pos) {
    const std::size_t q = rank / fact[pos - 1];
    rank %= fact[pos - 1];
    word.push_back(pool[q]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(q));
  }
  return word;
}

std::size_t permutation_rank(std::span<const int> word) {
  const std::size_t n = word.size();
  std::size_t rank = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t smaller = 0;
    for (std::size_t j = i + 1; j < n; ++j) smaller += word[j] < word[i] ? 1 : 0;
    rank = rank * (n - i) + smaller;
  }
  return rank;
}

GroupTable make_symmetric(std::size_t n) {
  if (n < 1 || n > 6) throw InvalidParameter("symmetric group needs n in [1, 6]");
  std::size_t order = 1;
  for (std::size_t i = 2; i <= n; ++i) order *= i;
  std::vector<std::vector<int>> words(order);
  for (std::size_t r = 0; r < order; ++r) words[r] = permutation_from_rank(n, r);
  std::vector<std::uint16_t> t(order * order);
  std::vector<int> composed(n);
  for (std::size_t p = 0; p < order; ++p) {
    for (std::size_t q = 0; q < order; ++q) {
      for (std::size_t x = 0; x < n; ++x) composed[x] = words[p][words[q][x]];
      t[p * order + q] = static_cast<std::uint16_t>(permutation_rank(composed));
    }
  }
  return GroupTable::from_table(order, std::move(t), "S" + std::to_string(n));
}

std::string AxiomViolation::describe() const {
  switch (kind) {
    case Kind::kBadShape:
      return "table shape or entry range invalid";
    case Kind::kNoIdentity:
      return "no two-sided identity";
    case Kind::kNoInverse:
      return "element " + std::to_string(a) + " has no two-sided inverse";
    case Kind::kNotAssociative:
      return "(" + std::to_string(a) + "*" + std::to_string(b) + ")*" + std::to_string(c) +
             " != " + std::to_string(a) + "*(" + std::to_string(b) + "*" + std::to_string(c) +
             ")";
  }
  return "unknown";
}

bool verify_group_axioms(const GroupTable& t, AxiomViolation* witness) {
  const auto fail = [&](AxiomViolation v) {
    if (witness != nullptr) *witness = v;
    return false;
  };
  const std::size_t n = t.order();
  if (t.identity() >= n) return fail({AxiomViolation::Kind::kNoIdentity});
  for (Element i = 0; i < n; ++i) {
    if (t.inv(i) >= n) return fail({AxiomViolation::Kind::kNoInverse, i});
  }
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      const Element ab = t.op(a, b);
      for (Element c = 0; c < n; ++c) {
        if (t.op(ab, c) != t.op(a, t.op(b, c))) {
          return fail({AxiomViolation::Kind::kNotAssociative, a, b, c});
        }
      }
    }
  }
  return true;
}

namespace {

std::size_t positive_size(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer() || j.at(key).get<long long>() < 0) {
    throw InvalidParameter(std::string("group descriptor needs a non-negative integer '") + key +
                           "'");
  }
  return j.at(key).get<std::size_t>();
}

}  // namespace

GroupTable group_from_json(const nlohmann::json& descriptor, std::size_t max_order) {
  if (!descriptor.is_object() || !descriptor.contains("type") ||
      !descriptor.at("type").is_string()) {
    throw InvalidParameter("group descriptor must be an object with a 'type'");
  }
  const auto type = descriptor.at("type").get<std::string>();
  if (type == "cyclic") return make_cyclic(positive_size(descriptor, "n"));
  if (type == "dihedral") return make_dihedral(positive_size(descriptor, "n"));
  if (type == "symmetric") return make_symmetric(positive_size(descriptor, "n"));
  if (type == "product") {
    const auto& factors = descriptor.value("factors", nlohmann::json::array());
    if (!factors.is_array() || factors.empty()) {
      throw InvalidParameter("product descriptor needs a non-empty 'factors' array");
    }
    GroupTable g = group_from_json(factors.at(0), max_order);
    for (std::size_t i = 1; i < factors.size(); ++i) {
      g = make_direct_product(g, group_from_json(factors.at(i), max_order), max_order);
    }
    return g;
  }
  if (type == "table") {
    const auto& rows = descriptor.value("table", nlohmann::json::array());
    const std::size_t n = rows.size();
    if (n == 0) throw InvalidParameter("table descriptor needs a non-empty 'table'");
    if (n > max_order) throw SizeLimit("table order above cap");
    std::vector<std::uint16_t> flat;
    flat.reserve(n * n);
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != n) throw InvalidParameter("table must be square");
      for (const auto& v : row) {
        if (!v.is_number_integer() || v.get<long long>() < 0 ||
            v.get<long long>() >= static_cast<long long>(n)) {
          throw InvalidParameter("table entries must be indices in [0, N)");
        }
        flat.push_back(static_cast<std::uint16_t>(v.get<long long>()));
      }
    }
    auto g = GroupTable::from_table(n, std::move(flat));
    AxiomViolation why{};
    if (!verify_group_axioms(g, &why)) {
      throw InvalidParameter("table is not a group: " + why.describe());
    }
    return g;
  }
  throw InvalidParameter("unknown group type '" + type + "'");
}

ElementSet element_set_from_json(const nlohmann::json& indices, std::size_t group_order) {
  if (!indices.is_array()) throw InvalidParameter("element set must be an array of indices");
  std::vector<Element> members;
  members.reserve(indices.size());
  for (const auto& v : indices) {
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      throw InvalidParameter("element set entries must be non-negative integers");
    }
    members.push_back(v.get<Element>());
  }
  return ElementSet(std::move(members), group_order);
}

nlohmann::json to_json(const ElementSet& s) {
  return nlohmann::json(std::vector<Element>(s.members().begin(), s.members().end()));
}

}  // namespace grl
