#include "motif/table.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "motif/errors.hpp"
#include "motif/rng.hpp"

namespace motif {

bool TableKey::operator<(const TableKey& o) const {
  return std::tie(key[0], key[1], rec[0], rec[1], sig) <
         std::tie(o.key[0], o.key[1], o.rec[0], o.rec[1], o.sig);
}

namespace {

uint64_t key_hash(const TableKey& k) {
  uint64_t h = splitmix64((static_cast<uint64_t>(k.key[0]) << 32) | k.key[1]);
  h ^= splitmix64((static_cast<uint64_t>(k.rec[0]) << 32) | k.rec[1]) * 0x9e3779b97f4a7c15ULL;
  h ^= splitmix64(k.sig);
  return h;
}

}  // namespace

void ProjectionTable::grow() {
  size_t cap = slots_.empty() ? 16 : slots_.size() * 2;
  std::vector<Slot> old = std::move(slots_);
  slots_.assign(cap, Slot{});
  count_ = 0;
  for (const Slot& s : old) {
    if (s.used) add(s.k, s.cnt);
  }
}

void ProjectionTable::add(const TableKey& k, uint64_t c) {
  if (c == 0) return;
  if (slots_.empty() || count_ * 10 >= slots_.size() * 7) grow();
  const size_t mask = slots_.size() - 1;
  size_t i = key_hash(k) & mask;
  while (slots_[i].used) {
    if (slots_[i].k == k) {
      slots_[i].cnt = checked_add(slots_[i].cnt, c);
      return;
    }
    i = (i + 1) & mask;
  }
  slots_[i].k = k;
  slots_[i].cnt = c;
  slots_[i].used = true;
  ++count_;
}

uint64_t ProjectionTable::get(const TableKey& k) const {
  if (slots_.empty()) return 0;
  const size_t mask = slots_.size() - 1;
  size_t i = key_hash(k) & mask;
  while (slots_[i].used) {
    if (slots_[i].k == k) return slots_[i].cnt;
    i = (i + 1) & mask;
  }
  return 0;
}

uint64_t ProjectionTable::total() const {
  uint64_t t = 0;
  for (const Slot& s : slots_) {
    if (s.used) t = checked_add(t, s.cnt);
  }
  return t;
}

std::vector<std::pair<TableKey, uint64_t>> ProjectionTable::sorted_entries() const {
  std::vector<std::pair<TableKey, uint64_t>> v;
  v.reserve(count_);
  for_each([&](const TableKey& k, uint64_t c) { v.emplace_back(k, c); });
  std::sort(v.begin(), v.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return v;
}

std::string ProjectionTable::dump() const {
  std::ostringstream out;
  for (const auto& [k, c] : sorted_entries()) {
    for (int i = 0; i < schema_.key_arity; ++i) out << k.key[i] << ' ';
    for (int i = 0; i < schema_.rec_arity; ++i) out << k.rec[i] << ' ';
    out << k.sig << ' ' << c << '\n';
  }
  return out.str();
}

bool ProjectionTable::operator==(const ProjectionTable& o) const {
  if (count_ != o.count_) return false;
  bool eq = true;
  for_each([&](const TableKey& k, uint64_t c) {
    if (o.get(k) != c) eq = false;
  });
  return eq;
}

ProjectionTable edge_table(const DataGraph& g, const Coloring& chi, const VertexOrdering* cap,
                           JoinStats* stats) {
  ProjectionTable t(TableSchema{2, 0, {-1, -1}});
  for (uint32_t v = 0; v < g.num_vertices(); ++v) {
    for (uint32_t u : g.neighbors(v)) {
      if (stats) stats->ops++;
      if (chi.color(u) == chi.color(v)) continue;  // cannot be colorful
      if (cap && !cap->above(u, v)) continue;
      TableKey k;
      k.key = {u, v};
      k.sig = chi.color_bit(u) | chi.color_bit(v);
      t.add(k, 1);
    }
  }
  return t;
}

namespace {

TableSchema extend_schema(const TableSchema& left, int record_slot, int record_boundary) {
  TableSchema s = left;
  if (record_slot >= 0) {
    if (record_slot != s.rec_arity) throw SchemaError("recorded slots must be appended in order");
    if (record_slot >= 2) throw SchemaError("more than two recorded slots");
    s.rec_arity = record_slot + 1;
    s.rec_boundary[record_slot] = record_boundary;
  }
  return s;
}

}  // namespace

ProjectionTable edge_join(const ProjectionTable& left, const ProjectionTable& right,
                          const Coloring& chi, const VertexOrdering* cap, int record_slot,
                          int record_boundary, JoinStats* stats) {
  (void)chi;
  if (left.schema().key_arity != 2 || right.schema().key_arity != 2)
    throw SchemaError("edge_join expects binary tables");
  if (right.schema().rec_arity != 0)
    throw SchemaError("edge_join right side cannot carry recorded slots");
  ProjectionTable out(extend_schema(left.schema(), record_slot, record_boundary));

  // Index right by its leading key.
  std::vector<std::vector<std::pair<TableKey, uint64_t>>> buckets;
  std::vector<std::pair<TableKey, uint64_t>> flat;
  right.for_each([&](const TableKey& k, uint64_t c) { flat.emplace_back(k, c); });
  std::sort(flat.begin(), flat.end(),
            [](const auto& a, const auto& b) { return a.first.key[0] < b.first.key[0]; });

  left.for_each([&](const TableKey& lk, uint64_t lc) {
    const uint32_t v = lk.key[1];
    auto lo = std::lower_bound(flat.begin(), flat.end(), v, [](const auto& e, uint32_t key) {
      return e.first.key[0] < key;
    });
    for (auto it = lo; it != flat.end() && it->first.key[0] == v; ++it) {
      if (stats) stats->ops++;
      const TableKey& rk = it->first;
      const uint32_t w = rk.key[1];
      if (cap && !cap->above(lk.key[0], w)) continue;
      if (!sig_overlap_is(lk.sig, rk.sig, 1)) continue;
      TableKey ok = lk;
      ok.key[1] = w;
      ok.sig = lk.sig | rk.sig;
      if (record_slot >= 0) ok.rec[record_slot] = w;
      out.add(ok, checked_mul(lc, it->second));
    }
  });
  return out;
}

ProjectionTable edge_join_graph(const ProjectionTable& left, const DataGraph& g,
                                const Coloring& chi, const VertexOrdering* cap, int record_slot,
                                int record_boundary, JoinStats* stats) {
  if (left.schema().key_arity != 2) throw SchemaError("edge_join expects a binary table");
  ProjectionTable out(extend_schema(left.schema(), record_slot, record_boundary));
  left.for_each([&](const TableKey& lk, uint64_t lc) {
    const uint32_t v = lk.key[1];
    for (uint32_t w : g.neighbors(v)) {
      if (stats) stats->ops++;
      if (cap && !cap->above(lk.key[0], w)) continue;
      const uint32_t wbit = chi.color_bit(w);
      if (lk.sig & wbit) continue;  // color already used
      TableKey ok = lk;
      ok.key[1] = w;
      ok.sig = lk.sig | wbit;
      if (record_slot >= 0) ok.rec[record_slot] = w;
      out.add(ok, lc);
    }
  });
  return out;
}

ProjectionTable node_join(const ProjectionTable& t, const ProjectionTable& unary,
                          const Coloring& chi, bool front, JoinStats* stats) {
  (void)chi;
  if (unary.schema().key_arity != 1 || unary.schema().rec_arity != 0)
    throw SchemaError("node_join expects a unary annotation table");
  if (t.schema().key_arity < 1) throw SchemaError("node_join target has no key");
  const int slot = front ? 0 : t.schema().key_arity - 1;

  std::vector<std::pair<TableKey, uint64_t>> flat;
  unary.for_each([&](const TableKey& k, uint64_t c) { flat.emplace_back(k, c); });
  std::sort(flat.begin(), flat.end(),
            [](const auto& a, const auto& b) { return a.first.key[0] < b.first.key[0]; });

  ProjectionTable out(t.schema());
  t.for_each([&](const TableKey& lk, uint64_t lc) {
    const uint32_t v = lk.key[slot];
    auto lo = std::lower_bound(flat.begin(), flat.end(), v, [](const auto& e, uint32_t key) {
      return e.first.key[0] < key;
    });
    for (auto it = lo; it != flat.end() && it->first.key[0] == v; ++it) {
      if (stats) stats->ops++;
      if (!sig_overlap_is(lk.sig, it->first.sig, 1)) continue;
      TableKey ok = lk;
      ok.sig = lk.sig | it->first.sig;
      out.add(ok, checked_mul(lc, it->second));
    }
  });
  return out;
}

ProjectionTable merge_halves(const ProjectionTable& plus, const ProjectionTable& minus,
                             const Coloring& chi, const MergeOutSpec& spec, JoinStats* stats) {
  (void)chi;
  if (plus.schema().key_arity != 2 || minus.schema().key_arity != 2)
    throw SchemaError("merge_halves expects binary tables");
  for (int i = 0; i < spec.arity; ++i) {
    const MergeSource& s = spec.src[i];
    if (s.kind == MergeSource::PlusRec && s.rec_slot >= plus.schema().rec_arity)
      throw SchemaError("merge output references a missing recorded slot");
    if (s.kind == MergeSource::MinusRec && s.rec_slot >= minus.schema().rec_arity)
      throw SchemaError("merge output references a missing recorded slot");
  }

  TableSchema out_schema{spec.arity, 0, {-1, -1}};
  ProjectionTable out(out_schema);

  std::vector<std::pair<TableKey, uint64_t>> flat;
  minus.for_each([&](const TableKey& k, uint64_t c) { flat.emplace_back(k, c); });
  auto pair_less = [](const TableKey& a, const TableKey& b) {
    return std::tie(a.key[0], a.key[1]) < std::tie(b.key[0], b.key[1]);
  };
  std::sort(flat.begin(), flat.end(),
            [&](const auto& a, const auto& b) { return pair_less(a.first, b.first); });

  plus.for_each([&](const TableKey& pk, uint64_t pc) {
    TableKey probe;
    probe.key = pk.key;
    auto lo = std::lower_bound(flat.begin(), flat.end(), probe, [&](const auto& e, const TableKey& q) {
      return pair_less(e.first, q);
    });
    for (auto it = lo;
         it != flat.end() && it->first.key[0] == pk.key[0] && it->first.key[1] == pk.key[1]; ++it) {
      if (stats) stats->ops++;
      const TableKey& mk = it->first;
      if (!sig_overlap_is(pk.sig, mk.sig, 2)) continue;
      TableKey ok;
      ok.sig = pk.sig | mk.sig;
      for (int i = 0; i < spec.arity; ++i) {
        const MergeSource& s = spec.src[i];
        switch (s.kind) {
          case MergeSource::KeyU: ok.key[i] = pk.key[0]; break;
          case MergeSource::KeyV: ok.key[i] = pk.key[1]; break;
          case MergeSource::PlusRec: ok.key[i] = pk.rec[s.rec_slot]; break;
          case MergeSource::MinusRec: ok.key[i] = mk.rec[s.rec_slot]; break;
        }
      }
      out.add(ok, checked_mul(pc, it->second));
    }
  });
  return out;
}

ProjectionTable merge_halves(const ProjectionTable& plus, const ProjectionTable& minus,
                             const Coloring& chi, JoinStats* stats) {
  MergeOutSpec spec;
  spec.arity = 2;
  spec.src[0] = {MergeSource::KeyU, 0};
  spec.src[1] = {MergeSource::KeyV, 0};
  return merge_halves(plus, minus, chi, spec, stats);
}

ProjectionTable transpose(const ProjectionTable& t) {
  if (t.schema().key_arity != 2) throw SchemaError("transpose expects a binary table");
  ProjectionTable out(t.schema());
  t.for_each([&](const TableKey& k, uint64_t c) {
    TableKey ok = k;
    std::swap(ok.key[0], ok.key[1]);
    out.add(ok, c);
  });
  return out;
}

ProjectionTable filter_cap(const ProjectionTable& t, const VertexOrdering& ord) {
  if (t.schema().key_arity != 2) throw SchemaError("cap filter expects a binary table");
  ProjectionTable out(t.schema());
  t.for_each([&](const TableKey& k, uint64_t c) {
    if (ord.above(k.key[0], k.key[1])) out.add(k, c);
  });
  return out;
}

ProjectionTable project_to_unary(const ProjectionTable& t) {
  if (t.schema().key_arity != 2) throw SchemaError("projection expects a binary table");
  if (t.schema().rec_arity != 0) throw SchemaError("projection with live recorded slots");
  ProjectionTable out(TableSchema{1, 0, {-1, -1}});
  t.for_each([&](const TableKey& k, uint64_t c) {
    TableKey ok;
    ok.key[0] = k.key[0];
    ok.sig = k.sig;
    out.add(ok, c);
  });
  return out;
}

void add_into(ProjectionTable& dst, const ProjectionTable& src) {
  if (!(dst.schema().key_arity == src.schema().key_arity &&
        dst.schema().rec_arity == src.schema().rec_arity))
    throw SchemaError("add_into schema mismatch");
  src.for_each([&](const TableKey& k, uint64_t c) { dst.add(k, c); });
}

}  // namespace motif
