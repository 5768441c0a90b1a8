#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <set>

#include "internal.hpp"

#include "dbeval/gt_assist.hpp"

namespace dbeval {

namespace {

// Three-valued expression evaluation over the fold grammar: flag keys,
// integer literals, !, unary -, comparisons, && and || (short-circuit aware),
// parentheses. Anything else makes the expression undecidable.
class GuardEvaluator {
 public:
  GuardEvaluator(const std::vector<Token>& toks, std::size_t begin, std::size_t end,
                 const FlagTable& flags)
      : toks_(toks), pos_(begin), end_(end), flags_(flags) {}

  std::optional<long> evaluate() {
    if (pos_ >= end_) return std::nullopt;
    std::optional<long> v = parse_or();
    if (!ok_ || pos_ != end_) return std::nullopt;
    return v;
  }

 private:
  const std::vector<Token>& toks_;
  std::size_t pos_;
  std::size_t end_;
  const FlagTable& flags_;
  bool ok_ = true;

  bool at_punct(const char* p) const {
    return pos_ < end_ && toks_[pos_].kind == TokKind::Punct && toks_[pos_].text == p;
  }

  std::optional<long> parse_or() {
    std::optional<long> left = parse_and();
    while (ok_ && at_punct("||")) {
      ++pos_;
      std::optional<long> right = parse_and();
      if (left && *left != 0) left = 1;
      else if (right && *right != 0) left = 1;
      else if (left && right) left = 0;
      else left = std::nullopt;
    }
    return left;
  }

  std::optional<long> parse_and() {
    std::optional<long> left = parse_cmp();
    while (ok_ && at_punct("&&")) {
      ++pos_;
      std::optional<long> right = parse_cmp();
      if (left && *left == 0) left = 0;
      else if (right && *right == 0) left = 0;
      else if (left && right) left = 1;
      else left = std::nullopt;
    }
    return left;
  }

  std::optional<long> parse_cmp() {
    std::optional<long> left = parse_unary();
    while (ok_ && pos_ < end_ && toks_[pos_].kind == TokKind::Punct) {
      const std::string& op = toks_[pos_].text;
      if (op != "==" && op != "!=" && op != "<=" && op != ">=" && op != "<" && op != ">") break;
      std::string o = op;
      ++pos_;
      std::optional<long> right = parse_unary();
      if (!left || !right) {
        left = std::nullopt;
        continue;
      }
      long l = *left, r = *right;
      if (o == "==") left = l == r;
      else if (o == "!=") left = l != r;
      else if (o == "<=") left = l <= r;
      else if (o == ">=") left = l >= r;
      else if (o == "<") left = l < r;
      else left = l > r;
    }
    return left;
  }

  std::optional<long> parse_unary() {
    if (at_punct("!")) {
      ++pos_;
      std::optional<long> v = parse_unary();
      if (!v) return std::nullopt;
      return *v == 0 ? 1 : 0;
    }
    if (at_punct("-")) {
      ++pos_;
      std::optional<long> v = parse_unary();
      if (!v) return std::nullopt;
      return -*v;
    }
    return parse_primary();
  }

  std::optional<long> parse_primary() {
    if (pos_ >= end_) {
      ok_ = false;
      return std::nullopt;
    }
    if (at_punct("(")) {
      ++pos_;
      std::optional<long> v = parse_or();
      if (!at_punct(")")) {
        ok_ = false;
        return std::nullopt;
      }
      ++pos_;
      return v;
    }
    const Token& t = toks_[pos_];
    if (t.kind == TokKind::Number) {
      ++pos_;
      char* endp = nullptr;
      long v = std::strtol(t.text.c_str(), &endp, 0);
      while (endp && (*endp == 'u' || *endp == 'U' || *endp == 'l' || *endp == 'L')) ++endp;
      if (!endp || *endp != '\0') {
        ok_ = false;
        return std::nullopt;
      }
      return v;
    }
    if (t.kind == TokKind::Identifier) {
      std::string key = t.text;
      ++pos_;
      while (pos_ + 1 < end_ && toks_[pos_].kind == TokKind::Punct &&
             (toks_[pos_].text == "->" || toks_[pos_].text == ".") &&
             toks_[pos_ + 1].kind == TokKind::Identifier) {
        key += toks_[pos_].text + toks_[pos_ + 1].text;
        pos_ += 2;
      }
      return flags_.lookup(key);  // unknown flags are simply undecidable
    }
    ok_ = false;
    return std::nullopt;
  }
};

struct TokenRange {
  std::size_t begin;  // inclusive
  std::size_t end;    // inclusive
};

// The whole-line rule: a statement may only be removed when every token on
// every touched line belongs to the deleted ranges, so retained lines stay
// byte-identical and keep their original identities.
bool ranges_own_their_lines(const std::vector<Token>& toks,
                            const std::vector<TokenRange>& ranges,
                            std::set<std::size_t>* deleted_out, std::set<int>* lines_out) {
  std::set<std::size_t> deleted;
  std::set<int> lines;
  for (const auto& r : ranges) {
    for (std::size_t i = r.begin; i <= r.end && i < toks.size(); ++i) {
      deleted.insert(i);
      lines.insert(toks[i].line);
    }
  }
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (lines.count(toks[i].line) && !deleted.count(i)) return false;
  }
  *deleted_out = std::move(deleted);
  *lines_out = std::move(lines);
  return true;
}

}  // namespace

namespace gt_detail {

std::optional<IfRemoval> plan_if_removal(const SourceAnalysis& a, const IfStmt& st,
                                         bool keep_then) {
  const auto& toks = a.tokens;
  const auto& sk = a.skeleton;
  if (st.then_block < 0) return std::nullopt;
  const Block& then_b = sk.blocks[static_cast<std::size_t>(st.then_block)];
  const Block* else_b =
      st.else_block >= 0 ? &sk.blocks[static_cast<std::size_t>(st.else_block)] : nullptr;

  std::vector<TokenRange> ranges;
  std::size_t pruned_begin = 1, pruned_end = 0;

  if (!keep_then) {
    if (else_b) {
      std::size_t else_tok = then_b.tok_close + 1;  // `else`
      std::size_t intro_end = else_b->synthetic ? else_tok : else_b->tok_open;
      ranges.push_back({st.tok_if, intro_end});
      if (!else_b->synthetic) ranges.push_back({else_b->tok_close, else_b->tok_close});
    } else {
      ranges.push_back({st.tok_if, then_b.tok_close});
    }
    pruned_begin = then_b.synthetic ? then_b.tok_open : then_b.tok_open + 1;
    pruned_end = then_b.synthetic ? then_b.tok_close : (then_b.tok_close > 0 ? then_b.tok_close - 1 : 0);
  } else {
    if (then_b.synthetic) {
      ranges.push_back({st.tok_if, st.guard_end});  // through ')'
    } else {
      ranges.push_back({st.tok_if, then_b.tok_open});
      ranges.push_back({then_b.tok_close, then_b.tok_close});
    }
    if (else_b) {
      std::size_t from = then_b.synthetic ? (then_b.tok_close + 1) : then_b.tok_close;
      ranges.push_back({from, else_b->tok_close});
      pruned_begin = else_b->synthetic ? else_b->tok_open : else_b->tok_open + 1;
      pruned_end = else_b->synthetic ? else_b->tok_close
                                     : (else_b->tok_close > 0 ? else_b->tok_close - 1 : 0);
    }
  }

  std::set<std::size_t> deleted;
  std::set<int> lines;
  if (!ranges_own_their_lines(toks, ranges, &deleted, &lines)) return std::nullopt;

  std::set<int> pruned_lines;
  for (std::size_t i = pruned_begin; i <= pruned_end && i < toks.size(); ++i) {
    pruned_lines.insert(toks[i].line);
  }

  IfRemoval plan;
  int low = *lines.begin(), high = *lines.rbegin();
  for (int pos = low; pos <= high; ++pos) {
    bool token_line = lines.count(pos) > 0;
    // comment/blank lines interior to the region go with it
    bool interior_nonunit = !token_line && !a.doc.is_unit(pos);
    if (!token_line && !interior_nonunit) continue;
    if (pruned_lines.count(pos)) {
      plan.pruned_positions.push_back(pos);
    } else {
      plan.structure_positions.push_back(pos);
    }
  }
  return plan;
}

std::optional<long> global_initializer(const SourceAnalysis& a, const std::string& name) {
  const auto& toks = a.tokens;
  auto inside_function = [&a](int line) {
    for (const auto& f : a.functions) {
      if (line >= f.span_begin && line <= f.span_end) return true;
    }
    return false;
  };
  std::optional<long> found;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    const Token& t = toks[i];
    if (t.kind != TokKind::Identifier || t.text != name) continue;
    if (inside_function(t.line)) continue;
    if (i > 0 && toks[i - 1].kind == TokKind::Punct &&
        (toks[i - 1].text == "." || toks[i - 1].text == "->")) {
      continue;
    }
    if (i + 1 < toks.size() && toks[i + 1].kind == TokKind::Punct && toks[i + 1].text == "(") {
      continue;  // function declaration, not this global
    }
    if (i + 2 < toks.size() && toks[i + 1].kind == TokKind::Punct && toks[i + 1].text == "=" &&
        toks[i + 2].kind == TokKind::Number) {
      char* endp = nullptr;
      long v = std::strtol(toks[i + 2].text.c_str(), &endp, 0);
      while (endp && (*endp == 'u' || *endp == 'U' || *endp == 'l' || *endp == 'L')) ++endp;
      if (endp && *endp == '\0') return v;
    }
    found = 0;  // declared without (recognizable) initializer
  }
  return found;
}

}  // namespace gt_detail

std::optional<long> evaluate_guard(const std::vector<Token>& toks, std::size_t begin,
                                   std::size_t end, const FlagTable& flags) {
  return GuardEvaluator(toks, begin, end, flags).evaluate();
}

void FlagTable::merge(const std::string& key, long value, Provenance provenance) {
  auto it = entries.find(key);
  if (it != entries.end() && it->second.provenance == Provenance::UserSupplied &&
      provenance == Provenance::InferredFromPrunedCase) {
    return;
  }
  entries[key] = {value, provenance};
}

FoldStats fold_conditionals(WorkingSource& src, const FlagTable& flags, RemovalLog* log,
                            Diagnostics* diags) {
  FoldStats stats;
  const SourceAnalysis& a = src.current();
  const auto& toks = a.tokens;
  const auto& sk = a.skeleton;

  std::set<int> dead_positions;  // current-document positions deleted this pass
  // Deletions are applied after the scan; removing lines mid-loop would
  // invalidate the analysis borrowed above.
  std::vector<std::pair<std::vector<int>, RemovalReason>> batches;

  for (const IfStmt& st : sk.ifs) {
    if (st.guard_begin >= st.guard_end || st.then_block < 0) continue;
    if (dead_positions.count(st.header_line)) continue;  // inside an earlier fold

    std::optional<long> value = evaluate_guard(toks, st.guard_begin, st.guard_end, flags);
    if (!value) continue;

    // Soundness: a branch is only pruned when its guard re-evaluates to the
    // decision being acted on.
    if (evaluate_guard(toks, st.guard_begin, st.guard_end, flags) != value) {
      throw InternalError("fold: guard re-evaluation diverged at line " +
                          std::to_string(a.doc.record(st.header_line).index));
    }

    auto plan = gt_detail::plan_if_removal(a, st, *value != 0);
    if (!plan) {
      ++stats.skipped_shared_lines;
      diag_info(diags, "fold skipped at line " +
                           std::to_string(a.doc.record(st.header_line).index) +
                           ": statement shares lines with retained code");
      continue;
    }

    std::vector<int> pruned_orig, structure_orig;
    for (int pos : plan->pruned_positions) {
      dead_positions.insert(pos);
      pruned_orig.push_back(a.doc.record(pos).index);
    }
    for (int pos : plan->structure_positions) {
      dead_positions.insert(pos);
      structure_orig.push_back(a.doc.record(pos).index);
    }
    batches.emplace_back(std::move(pruned_orig), RemovalReason::PrunedBranch);
    batches.emplace_back(std::move(structure_orig), RemovalReason::FoldedConditional);
    if (*value == 0) ++stats.folded_false;
    else ++stats.folded_true;
  }

  for (auto& [lines_batch, reason] : batches) {
    src.remove_lines(lines_batch, reason, log);
  }
  return stats;
}

}  // namespace dbeval
