#include "capdom/td_dp.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "capdom/errors.hpp"
#include "capdom/verify.hpp"

namespace capdom {
namespace {

using Key = std::vector<int64_t>;

Key key_of(const std::vector<int64_t>& need, const std::vector<int64_t>& rc) {
  Key key(need);
  key.insert(key.end(), rc.begin(), rc.end());
  return key;
}

// Drops every row for which another row has no more need and at least as much
// spare capacity at each position, and costs no more. Such a row can copy any
// completion of the dropped one at no higher cost.
std::vector<DpRow> prune_dominated(std::vector<DpRow> rows) {
  std::vector<int64_t> slack(rows.size(), 0);
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t p = 0; p < rows[i].rc.size(); ++p) slack[i] += rows[i].rc[p] - rows[i].need[p];
  }
  std::vector<int> order(rows.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (rows[a].cost != rows[b].cost) return rows[a].cost < rows[b].cost;
    return slack[a] > slack[b];
  });
  auto dominates = [&](int a, int b) {
    if (slack[a] < slack[b]) return false;
    for (size_t p = 0; p < rows[b].rc.size(); ++p) {
      if (rows[a].need[p] > rows[b].need[p] || rows[a].rc[p] < rows[b].rc[p]) return false;
    }
    return true;
  };
  std::vector<int> kept;
  std::vector<char> keep(rows.size(), 0);
  for (int i : order) {
    if (std::none_of(kept.begin(), kept.end(), [&](int k) { return dominates(k, i); })) {
      kept.push_back(i);
      keep[i] = 1;
    }
  }
  std::vector<DpRow> out;
  out.reserve(kept.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    if (keep[i]) out.push_back(std::move(rows[i]));
  }
  return out;
}

struct KeyHash {
  size_t operator()(const Key& key) const noexcept {
    uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (int64_t x : key) {
      h ^= static_cast<uint64_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

// Collects rows, keeping the cheapest (first on ties) per configuration.
class TableBuilder {
 public:
  explicit TableBuilder(std::vector<Vertex> bag) { table_.bag = std::move(bag); }

  void offer(DpRow row) {
    const Key key = key_of(row.need, row.rc);
    if (wanted(key, row.cost)) place(key, std::move(row));
  }

  // True when a row with this configuration and cost would be kept.
  bool wanted(const Key& key, int64_t cost) const {
    const auto it = index_.find(key);
    return it == index_.end() || cost < table_.rows[it->second].cost;
  }

  void place(const Key& key, DpRow row) {
    auto [it, inserted] = index_.try_emplace(key, static_cast<int>(table_.rows.size()));
    if (inserted) {
      table_.rows.push_back(std::move(row));
    } else {
      table_.rows[it->second] = std::move(row);
    }
  }

  DpTable take() {
    table_.rows = prune_dominated(std::move(table_.rows));
    return std::move(table_);
  }

 private:
  DpTable table_;
  std::unordered_map<Key, int, KeyHash> index_;
};

int position(const std::vector<Vertex>& bag, Vertex v) {
  return static_cast<int>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
}

// Moves `amount` of consumer demand (position a) onto server (position b).
DpRow serve(const Instance& inst, const std::vector<Vertex>& bag, const DpRow& row, int a, int b,
            int64_t amount) {
  DpRow next = row;
  next.need[a] -= amount;
  const Vertex server = bag[b];
  next.cost += inst.weight(server) * absorb(next.rc[b], amount, inst.capacity(server));
  next.added.push_back({bag[a], server, amount});
  return next;
}

// One round of optional transfers from consumer position a to server b.
std::vector<DpRow> transfer_round(const Instance& inst, const std::vector<Vertex>& bag,
                                  std::vector<DpRow> rows, int a, int b, DemandModel model) {
  if (inst.capacity(bag[b]) == 0) return rows;
  TableBuilder builder(bag);
  for (const DpRow& row : rows) {
    builder.offer(row);
    const int64_t need = row.need[a];
    if (need == 0) continue;
    if (model == DemandModel::Unsplittable) {
      builder.offer(serve(inst, bag, row, a, b, need));
    } else {
      for (int64_t amount = 1; amount <= need; ++amount) builder.offer(serve(inst, bag, row, a, b, amount));
    }
  }
  return builder.take().rows;
}

int64_t saturating_mul(int64_t a, int64_t b) {
  const __int128 p = static_cast<__int128>(a) * b;
  return p > INT64_MAX ? INT64_MAX : static_cast<int64_t>(p);
}

int64_t row_bound(const Instance& inst, const std::vector<Vertex>& bag, DemandModel model) {
  int64_t bound = 1;
  for (Vertex u : bag) {
    const int64_t states = model == DemandModel::Unsplittable ? 2 : inst.demand(u) + 1;
    bound = saturating_mul(bound, saturating_mul(states, std::max<int64_t>(inst.capacity(u), 1)));
  }
  return bound;
}

// Joins may serve a consumer in both subtrees. Cuts each consumer back to its
// demand, dropping amounts from the highest server ids first.
Assignment trim_surplus(const Instance& inst, Assignment assignment) {
  normalize(assignment);
  std::vector<int64_t> surplus(inst.num_vertices());
  for (Vertex v = 0; v < inst.num_vertices(); ++v) surplus[v] = -inst.demand(v);
  for (const Triple& t : assignment) surplus[t.consumer] += t.amount;
  for (auto it = assignment.rbegin(); it != assignment.rend(); ++it) {
    const int64_t cut = std::min(surplus[it->consumer], it->amount);
    if (cut <= 0) continue;
    it->amount -= cut;
    surplus[it->consumer] -= cut;
  }
  normalize(assignment);
  return assignment;
}

}  // namespace

const DpRow* DpTable::find(const std::vector<int64_t>& need, const std::vector<int64_t>& rc) const {
  for (const DpRow& row : rows) {
    if (row.need == need && row.rc == rc) return &row;
  }
  return nullptr;
}

int64_t absorb(int64_t& rc, int64_t amount, int64_t capacity) {
  if (amount <= rc) {
    rc -= amount;
    return 0;
  }
  const int64_t copies = (amount - rc + capacity - 1) / capacity;
  rc = rc + copies * capacity - amount;
  return copies;
}

DpTable dp_leaf(const Instance& inst, Vertex v, DemandModel model) {
  DpTable empty;
  empty.rows.push_back({});
  DpTable leaf = dp_introduce(inst, empty, v, model);
  for (DpRow& row : leaf.rows) row.left = -1;
  return leaf;
}

DpTable dp_introduce(const Instance& inst, const DpTable& child, Vertex v, DemandModel model) {
  std::vector<Vertex> bag = child.bag;
  const int pv = position(bag, v);
  if (pv < static_cast<int>(bag.size()) && bag[pv] == v) throw InvalidInput("vertex already in bag");
  bag.insert(bag.begin() + pv, v);

  std::vector<DpRow> rows;
  rows.reserve(child.rows.size());
  for (int i = 0; i < static_cast<int>(child.rows.size()); ++i) {
    const DpRow& old = child.rows[i];
    DpRow row;
    row.need = old.need;
    row.rc = old.rc;
    row.need.insert(row.need.begin() + pv, inst.demand(v));
    row.rc.insert(row.rc.begin() + pv, 0);
    row.cost = old.cost;
    row.left = i;
    rows.push_back(std::move(row));
  }

  rows = transfer_round(inst, bag, std::move(rows), pv, pv, model);
  for (int pu = 0; pu < static_cast<int>(bag.size()); ++pu) {
    if (pu == pv || !inst.adjacent(v, bag[pu])) continue;
    rows = transfer_round(inst, bag, std::move(rows), pu, pv, model);
    rows = transfer_round(inst, bag, std::move(rows), pv, pu, model);
  }
  DpTable out;
  out.bag = std::move(bag);
  out.rows = std::move(rows);
  return out;
}

DpTable dp_forget(const DpTable& child, Vertex v) {
  const int pv = position(child.bag, v);
  if (pv >= static_cast<int>(child.bag.size()) || child.bag[pv] != v) {
    throw InvalidInput("forgotten vertex not in bag");
  }
  std::vector<Vertex> bag = child.bag;
  bag.erase(bag.begin() + pv);
  TableBuilder builder(bag);
  for (int i = 0; i < static_cast<int>(child.rows.size()); ++i) {
    const DpRow& old = child.rows[i];
    if (old.need[pv] != 0) continue;
    DpRow row;
    row.need = old.need;
    row.rc = old.rc;
    row.need.erase(row.need.begin() + pv);
    row.rc.erase(row.rc.begin() + pv);
    row.cost = old.cost;
    row.left = i;
    builder.offer(std::move(row));
  }
  DpTable out = builder.take();
  if (out.rows.empty()) throw EmptyTable("no row serves vertex " + std::to_string(v + 1));
  return out;
}

DpTable dp_join(const Instance& inst, const DpTable& left, const DpTable& right) {
  if (left.bag != right.bag) throw InvalidInput("join children have different bags");
  const auto& bag = left.bag;
  const size_t width = bag.size();
  TableBuilder builder(bag);
  Key key(2 * width);
  for (int i = 0; i < static_cast<int>(left.rows.size()); ++i) {
    const DpRow& a = left.rows[i];
    for (int j = 0; j < static_cast<int>(right.rows.size()); ++j) {
      const DpRow& b = right.rows[j];
      int64_t cost = a.cost + b.cost;
      for (size_t p = 0; p < width; ++p) {
        const Vertex u = bag[p];
        key[p] = std::max<int64_t>(0, a.need[p] + b.need[p] - inst.demand(u));
        const int64_t c = inst.capacity(u);
        key[width + p] = 0;
        if (c > 0) {
          const int64_t spare = a.rc[p] + b.rc[p];
          cost -= inst.weight(u) * (spare / c);
          key[width + p] = spare % c;
        }
      }
      if (!builder.wanted(key, cost)) continue;
      DpRow row;
      row.need.assign(key.begin(), key.begin() + static_cast<std::ptrdiff_t>(width));
      row.rc.assign(key.begin() + static_cast<std::ptrdiff_t>(width), key.end());
      row.cost = cost;
      row.left = i;
      row.right = j;
      builder.place(key, std::move(row));
    }
  }
  return builder.take();
}

Solution solve_td(const Instance& inst, const NiceTreeDecomposition& ntd, DemandModel model, DpStats* stats) {
  if (const std::string problem = check_nice_structure(ntd); !problem.empty()) throw InvalidInput(problem);
  if (const TdReport report = validate_td(inst, ntd.project()); !report.passed()) {
    throw InvalidInput("not a decomposition of the instance: " + report.failures.front());
  }
  Solution sol;
  sol.multiplicity.assign(inst.num_vertices(), 0);
  if (ntd.root < 0) return sol;

  DpStats local;
  std::vector<DpTable> tables(ntd.nodes.size());
  try {
    for (int id : ntd.post_order()) {
      const NiceNode& node = ntd.nodes[id];
      switch (node.kind) {
        case NiceKind::Leaf:
          tables[id] = dp_leaf(inst, node.vertex, model);
          break;
        case NiceKind::Introduce:
          tables[id] = dp_introduce(inst, tables[node.children[0]], node.vertex, model);
          break;
        case NiceKind::Forget:
          tables[id] = dp_forget(tables[node.children[0]], node.vertex);
          break;
        case NiceKind::Join:
          tables[id] = dp_join(inst, tables[node.children[0]], tables[node.children[1]]);
          break;
      }
      const auto rows = static_cast<int64_t>(tables[id].rows.size());
      ++local.nodes;
      local.total_rows += rows;
      local.max_rows = std::max(local.max_rows, rows);
      if (rows > row_bound(inst, tables[id].bag, model)) local.within_bounds = false;
      if (rows == 0) throw EmptyTable("empty table");
    }
  } catch (const EmptyTable& e) {
    throw InfeasibleInstance(std::string("dynamic program found no feasible solution: ") + e.what());
  }
  if (stats) *stats = local;

  const DpTable& root = tables[ntd.root];
  if (root.rows.size() != 1) throw std::logic_error("root table must hold exactly one row");

  Assignment assignment;
  std::vector<std::pair<int, int>> stack{{ntd.root, 0}};
  while (!stack.empty()) {
    auto [id, r] = stack.back();
    stack.pop_back();
    const DpRow& row = tables[id].rows[r];
    assignment.insert(assignment.end(), row.added.begin(), row.added.end());
    const auto& children = ntd.nodes[id].children;
    if (row.left >= 0) stack.push_back({children[0], row.left});
    if (row.right >= 0) stack.push_back({children[1], row.right});
  }
  sol = minimum_multiplicities(inst, trim_surplus(inst, std::move(assignment)));
  if (sol.cost != root.rows[0].cost) throw std::logic_error("reconstructed cost differs from table cost");
  return sol;
}

Solution solve_td(const Instance& inst, DemandModel model, DpStats* stats) {
  return solve_td(inst, make_nice(heuristic_decomposition(inst)), model, stats);
}

}  // namespace capdom
