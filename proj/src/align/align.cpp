#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

#include "dbeval/align.hpp"

namespace dbeval {

std::string granularity_name(Granularity g) {
  return g == Granularity::Loc ? "loc" : "func";
}

Granularity granularity_from_name(const std::string& name) {
  if (name == "loc") return Granularity::Loc;
  if (name == "func") return Granularity::Func;
  throw InputError("unknown granularity '" + name + "' (expected loc or func)");
}

UnitSet make_line_unit_set(std::vector<int> lines, long foreign_count) {
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  UnitSet u;
  u.granularity = Granularity::Loc;
  u.line_units = std::move(lines);
  u.foreign_count = foreign_count;
  return u;
}

UnitSet make_name_unit_set(std::vector<std::string> names, long foreign_count) {
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  UnitSet u;
  u.granularity = Granularity::Func;
  u.name_units = std::move(names);
  u.foreign_count = foreign_count;
  return u;
}

namespace {

// Unit lines of a document with interned content ids, so equality of keys is
// exact string equality rather than hash equality.
struct UnitSeq {
  std::vector<int> line_pos;  // document position of each unit line
  std::vector<int> key_id;
};

void intern_documents(const SourceDocument& a, const SourceDocument& b, UnitSeq* sa,
                      UnitSeq* sb) {
  std::unordered_map<std::string, int> ids;
  auto intern = [&ids](const std::string& s) {
    auto [it, inserted] = ids.emplace(s, static_cast<int>(ids.size()));
    return it->second;
  };
  for (int pos = 1; pos <= a.line_count(); ++pos) {
    if (!a.is_unit(pos)) continue;
    sa->line_pos.push_back(pos);
    sa->key_id.push_back(intern(a.record(pos).normalized));
  }
  for (int pos = 1; pos <= b.line_count(); ++pos) {
    if (!b.is_unit(pos)) continue;
    sb->line_pos.push_back(pos);
    sb->key_id.push_back(intern(b.record(pos).normalized));
  }
}

// Suffix-LCS table over the filtered sequences, stored as checkpoint rows
// every `stride` rows plus an on-demand window, keeping memory at
// O((n/stride + stride) * m) while the canonical walk advances forward.
class SuffixLcs {
 public:
  SuffixLcs(const std::vector<int>& a, const std::vector<int>& b) : a_(a), b_(b) {
    n_ = a.size();
    m_ = b.size();
    stride_ = std::max<std::size_t>(64, static_cast<std::size_t>(std::sqrt(static_cast<double>(n_ + 1))) + 1);
    std::size_t checkpoints = n_ / stride_ + 2;
    checkpoint_rows_.assign(checkpoints, {});
    std::vector<std::uint32_t> next(m_ + 1, 0);
    std::vector<std::uint32_t> cur(m_ + 1, 0);
    store_checkpoint(n_, next);
    for (std::size_t i = n_; i-- > 0;) {
      cur[m_] = 0;
      for (std::size_t j = m_; j-- > 0;) {
        if (a_[i] == b_[j]) {
          cur[j] = next[j + 1] + 1;
        } else {
          cur[j] = std::max(next[j], cur[j + 1]);
        }
      }
      if (i % stride_ == 0) store_checkpoint(i, cur);
      std::swap(next, cur);
    }
    window_base_ = n_ + 1;  // nothing cached yet
  }

  // dp(i, j): LCS length of a[i..) and b[j..). Walk access pattern: i is
  // non-decreasing, so a sliding window of recomputed rows suffices.
  std::uint32_t dp(std::size_t i, std::size_t j) {
    if (i > n_ || j >= m_ + 1) return 0;
    ensure_window(i);
    return window_[i - window_base_][j];
  }

 private:
  void store_checkpoint(std::size_t i, const std::vector<std::uint32_t>& row) {
    checkpoint_rows_[i / stride_ + (i % stride_ ? 1 : 0)] = row;
    // rows are stored only for i that is a multiple of stride_ (and i == n_);
    // the expression above is never called with other i.
  }

  void ensure_window(std::size_t i) {
    if (i >= window_base_ && i - window_base_ < window_.size()) return;
    std::size_t base = (i / stride_) * stride_;
    std::size_t top = std::min(n_, base + stride_);  // recompute rows [base, top]
    window_.assign(top - base + 1, std::vector<std::uint32_t>(m_ + 1, 0));
    // Row `top`: checkpoint (top is either n_ or a multiple of stride_).
    window_[top - base] = checkpoint_rows_[top / stride_ + (top % stride_ ? 1 : 0)];
    for (std::size_t r = top; r-- > base;) {
      auto& cur = window_[r - base];
      const auto& next = window_[r - base + 1];
      for (std::size_t j = m_; j-- > 0;) {
        if (a_[r] == b_[j]) {
          cur[j] = next[j + 1] + 1;
        } else {
          cur[j] = std::max(next[j], cur[j + 1]);
        }
      }
      cur[m_] = 0;
    }
    window_base_ = base;
  }

  const std::vector<int>& a_;
  const std::vector<int>& b_;
  std::size_t n_ = 0, m_ = 0, stride_ = 0;
  std::vector<std::vector<std::uint32_t>> checkpoint_rows_;
  std::vector<std::vector<std::uint32_t>> window_;
  std::size_t window_base_ = 0;
};

}  // namespace

Alignment align_to_original(const SourceDocument& original, const SourceDocument& variant) {
  Alignment al;
  al.kinds.assign(static_cast<std::size_t>(variant.line_count()), Alignment::Kind::NotUnit);
  al.to_original.assign(static_cast<std::size_t>(variant.line_count()), 0);
  al.to_variant.assign(static_cast<std::size_t>(original.line_count()), 0);
  for (int pos = 1; pos <= variant.line_count(); ++pos) {
    if (variant.is_unit(pos)) al.kinds[static_cast<std::size_t>(pos - 1)] = Alignment::Kind::Foreign;
  }

  UnitSeq so, sv;
  intern_documents(original, variant, &so, &sv);

  // Greedily match the common prefix: both sides smallest, so canonical.
  std::size_t lo = 0;
  while (lo < so.key_id.size() && lo < sv.key_id.size() && so.key_id[lo] == sv.key_id[lo]) {
    ++lo;
  }

  // Lines whose key never occurs on the other side cannot participate in any
  // common subsequence; dropping them shrinks the DP without changing it.
  std::vector<int> oa, ob;          // filtered key sequences
  std::vector<std::size_t> ia, ib;  // filtered index -> UnitSeq index
  {
    std::unordered_map<int, int> in_orig, in_var;
    for (std::size_t k = lo; k < so.key_id.size(); ++k) ++in_orig[so.key_id[k]];
    for (std::size_t k = lo; k < sv.key_id.size(); ++k) ++in_var[sv.key_id[k]];
    for (std::size_t k = lo; k < so.key_id.size(); ++k) {
      if (in_var.count(so.key_id[k])) {
        oa.push_back(so.key_id[k]);
        ia.push_back(k);
      }
    }
    for (std::size_t k = lo; k < sv.key_id.size(); ++k) {
      if (in_orig.count(sv.key_id[k])) {
        ob.push_back(sv.key_id[k]);
        ib.push_back(k);
      }
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> matches;  // (orig unit idx, var unit idx)
  matches.reserve(lo + std::min(oa.size(), ob.size()));
  for (std::size_t k = 0; k < lo; ++k) matches.emplace_back(k, k);

  if (!oa.empty() && !ob.empty()) {
    SuffixLcs lcs(oa, ob);
    std::size_t i = 0, j = 0;
    while (i < oa.size() && j < ob.size()) {
      std::uint32_t here = lcs.dp(i, j);
      if (here == 0) break;
      // Canonical greedy: match the current original line at the earliest
      // variant position that preserves optimality. Candidate positions stop
      // where skipping variant lines starts costing length; beyond that point
      // no match involving this original line can reach `here`.
      std::size_t found = ob.size();
      for (std::size_t j2 = j; j2 < ob.size() && lcs.dp(i, j2) == here; ++j2) {
        if (oa[i] == ob[j2] && lcs.dp(i + 1, j2 + 1) + 1 == here) {
          found = j2;
          break;
        }
      }
      if (found != ob.size()) {
        matches.emplace_back(ia[i], ib[found]);
        ++i;
        j = found + 1;
      } else {
        ++i;  // this original line appears in no optimal solution from here
      }
    }
  }

  for (auto [ko, kv] : matches) {
    int opos = so.line_pos[ko];
    int vpos = sv.line_pos[kv];
    al.kinds[static_cast<std::size_t>(vpos - 1)] = Alignment::Kind::Matched;
    al.to_original[static_cast<std::size_t>(vpos - 1)] = opos;
    al.to_variant[static_cast<std::size_t>(opos - 1)] = vpos;
  }
  al.matched_count = static_cast<long>(matches.size());
  al.foreign_count = static_cast<long>(sv.line_pos.size()) - al.matched_count;
  return al;
}

UnitSet project_units(const SourceDocument& original, const SourceDocument& variant,
                      const Alignment& alignment, Granularity g,
                      const std::vector<std::string>& rules) {
  if (g == Granularity::Loc) {
    std::vector<int> units;
    units.reserve(static_cast<std::size_t>(alignment.matched_count));
    for (int pos = 1; pos <= variant.line_count(); ++pos) {
      if (alignment.kind(pos) == Alignment::Kind::Matched) {
        units.push_back(alignment.original_of(pos));
      }
    }
    return make_line_unit_set(std::move(units), alignment.foreign_count);
  }

  UnitSet base = base_units(original, Granularity::Func, rules);
  std::vector<std::string> defined;
  for (const auto& fn : extract_functions(variant)) {
    if (fn.body_nonempty) defined.push_back(canonical_function_name(fn.name, rules));
  }
  std::sort(defined.begin(), defined.end());
  defined.erase(std::unique(defined.begin(), defined.end()), defined.end());

  std::vector<std::string> units;
  long foreign = 0;
  for (auto& name : defined) {
    if (std::binary_search(base.name_units.begin(), base.name_units.end(), name)) {
      units.push_back(name);
    } else {
      ++foreign;
    }
  }
  return make_name_unit_set(std::move(units), foreign);
}

UnitSet base_units(const SourceDocument& original, Granularity g,
                   const std::vector<std::string>& rules) {
  if (g == Granularity::Loc) {
    std::vector<int> units;
    for (int pos = 1; pos <= original.line_count(); ++pos) {
      if (original.is_unit(pos)) units.push_back(pos);
    }
    return make_line_unit_set(std::move(units));
  }
  std::vector<std::string> names;
  for (const auto& fn : extract_functions(original)) {
    if (fn.body_nonempty) names.push_back(canonical_function_name(fn.name, rules));
  }
  return make_name_unit_set(std::move(names));
}

}  // namespace dbeval
