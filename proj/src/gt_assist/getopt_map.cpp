#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

#include "internal.hpp"

#include "dbeval/gt_assist.hpp"

namespace dbeval {

namespace {

bool is_punct_tok(const Token& t, const char* text) {
  return t.kind == TokKind::Punct && t.text == text;
}

bool is_getopt_name(const std::string& s) {
  return s == "getopt" || s == "getopt_long" || s == "getopt_long_only";
}

std::optional<long> parse_int(const Token& t) {
  if (t.kind != TokKind::Number) return std::nullopt;
  char* endp = nullptr;
  long v = std::strtol(t.text.c_str(), &endp, 0);
  while (endp && (*endp == 'u' || *endp == 'U' || *endp == 'l' || *endp == 'L')) ++endp;
  if (!endp || *endp != '\0') return std::nullopt;
  return v;
}

// Matches a guard of exactly `var == N` or `N == var`.
std::optional<long> dispatch_code(const std::vector<Token>& toks, const IfStmt& st,
                                  const std::string& var) {
  if (st.guard_end != st.guard_begin + 3) return std::nullopt;
  const Token& a = toks[st.guard_begin];
  const Token& op = toks[st.guard_begin + 1];
  const Token& b = toks[st.guard_begin + 2];
  if (!is_punct_tok(op, "==")) return std::nullopt;
  if (a.kind == TokKind::Identifier && a.text == var) return parse_int(b);
  if (b.kind == TokKind::Identifier && b.text == var) return parse_int(a);
  return std::nullopt;
}

// The single `goto LABEL;` inside a dispatch branch, if that is all there is.
std::optional<std::string> sole_goto_target(const std::vector<Token>& toks, const Block& body) {
  std::size_t begin = body.synthetic ? body.tok_open : body.tok_open + 1;
  std::size_t end = body.synthetic ? body.tok_close : body.tok_close - 1;
  if (end < begin || end >= toks.size()) return std::nullopt;
  if (end - begin + 1 != 3) return std::nullopt;
  if (toks[begin].kind == TokKind::Identifier && toks[begin].text == "goto" &&
      toks[begin + 1].kind == TokKind::Identifier && is_punct_tok(toks[begin + 2], ";")) {
    return toks[begin + 1].text;
  }
  return std::nullopt;
}

// `ident = [(...cast...)] INT ;` statements lexically inside a span.
std::vector<std::pair<std::string, long>> scan_flag_assignments(const std::vector<Token>& toks,
                                                                int begin_line, int end_line) {
  std::vector<std::pair<std::string, long>> out;
  for (std::size_t i = 0; i + 2 < toks.size(); ++i) {
    const Token& t = toks[i];
    if (t.line < begin_line || t.line > end_line) continue;
    if (t.kind != TokKind::Identifier || !is_punct_tok(toks[i + 1], "=")) continue;
    if (i > 0 && toks[i - 1].line == t.line &&
        !is_punct_tok(toks[i - 1], ";") && !is_punct_tok(toks[i - 1], "{") &&
        !is_punct_tok(toks[i - 1], ":")) {
      continue;  // not at statement start
    }
    std::size_t j = i + 2;
    if (j < toks.size() && is_punct_tok(toks[j], "(")) {
      int depth = 0;
      while (j < toks.size()) {
        if (is_punct_tok(toks[j], "(")) ++depth;
        if (is_punct_tok(toks[j], ")")) {
          --depth;
          ++j;
          if (depth == 0) break;
          continue;
        }
        ++j;
      }
    }
    if (j + 1 < toks.size() && is_punct_tok(toks[j + 1], ";")) {
      std::optional<long> v = parse_int(toks[j]);
      if (v) out.emplace_back(t.text, *v);
    }
  }
  return out;
}

}  // namespace

GetoptMap build_getopt_map(const SourceAnalysis& src, Diagnostics* diags) {
  GetoptMap map;
  const auto& toks = src.tokens;

  // `optc = getopt_long(...)`
  std::size_t assign_tok = toks.size();
  for (std::size_t i = 0; i + 3 < toks.size(); ++i) {
    if (toks[i].kind == TokKind::Identifier && is_punct_tok(toks[i + 1], "=") &&
        toks[i + 2].kind == TokKind::Identifier && is_getopt_name(toks[i + 2].text) &&
        is_punct_tok(toks[i + 3], "(")) {
      map.dispatch_variable = toks[i].text;
      assign_tok = i;
      break;
    }
  }
  if (map.dispatch_variable.empty()) {
    diag_warn(diags, "no getopt dispatch found; option map is empty");
    return map;
  }

  const FunctionDef* owner = src.function_at(toks[assign_tok].line);
  int owner_index = -1;
  if (owner) {
    owner_index = static_cast<int>(owner - src.functions.data());
  }

  // CIL-style chains: if (optc == N) { goto case_N; }
  std::map<std::string, std::vector<std::pair<long, int>>> jumps;  // label -> (code, if index)
  for (std::size_t s = 0; s < src.skeleton.ifs.size(); ++s) {
    const IfStmt& st = src.skeleton.ifs[s];
    if (owner_index >= 0 && st.function != owner_index) continue;
    std::optional<long> code = dispatch_code(toks, st, map.dispatch_variable);
    if (!code || st.then_block < 0) continue;
    auto target = sole_goto_target(toks, src.skeleton.blocks[static_cast<std::size_t>(st.then_block)]);
    if (!target) continue;
    jumps[*target].emplace_back(*code, static_cast<int>(s));
  }

  if (!jumps.empty()) {
    // Label spans: a case body runs from its label to the line before the next
    // label in the same function.
    std::vector<const LabelDef*> fn_labels;
    for (const auto& l : src.skeleton.labels) {
      if (owner_index < 0 || l.function == owner_index) fn_labels.push_back(&l);
    }
    std::sort(fn_labels.begin(), fn_labels.end(),
              [](const LabelDef* a, const LabelDef* b) { return a->line < b->line; });
    for (const auto& [label, codes] : jumps) {
      const LabelDef* def = nullptr;
      const LabelDef* next = nullptr;
      for (std::size_t k = 0; k < fn_labels.size(); ++k) {
        if (fn_labels[k]->name == label) {
          def = fn_labels[k];
          if (k + 1 < fn_labels.size()) next = fn_labels[k + 1];
          break;
        }
      }
      if (!def) {
        diag_warn(diags, "dispatch jump targets unknown label '" + label + "'");
        continue;
      }
      int end_line = next ? next->line - 1 : (owner ? owner->span_end - 1 : def->line);
      for (const auto& [code, if_index] : codes) {
        GetoptOption opt;
        opt.code = static_cast<int>(code);
        if (code >= 33 && code <= 126) opt.short_name = static_cast<char>(code);
        opt.case_begin = def->line;
        opt.case_end = end_line;
        opt.dispatch_if = if_index;
        const IfStmt& st = src.skeleton.ifs[static_cast<std::size_t>(if_index)];
        const Block& then_b = src.skeleton.blocks[static_cast<std::size_t>(st.then_block)];
        for (int l = st.header_line; l <= then_b.end_line; ++l) opt.dispatch_lines.push_back(l);
        opt.flag_assignments = scan_flag_assignments(toks, opt.case_begin, opt.case_end);
        map.options.push_back(std::move(opt));
      }
    }
  }

  // Plain `switch (optc) { case N: ... }`.
  for (const auto& sw : src.skeleton.switches) {
    if (owner_index >= 0 && sw.function != owner_index) continue;
    if (sw.guard_end != sw.guard_begin + 1) continue;
    const Token& g = toks[sw.guard_begin];
    if (g.kind != TokKind::Identifier || g.text != map.dispatch_variable) continue;
    if (sw.block < 0) continue;
    for (const auto& b : src.skeleton.blocks) {
      if (b.kind != BlockKind::Case || b.parent != sw.block || !b.has_case_value) continue;
      GetoptOption opt;
      opt.code = static_cast<int>(b.case_value);
      if (b.case_value >= 33 && b.case_value <= 126) {
        opt.short_name = static_cast<char>(b.case_value);
      }
      opt.case_begin = b.header_line;
      opt.case_end = b.end_line;
      opt.flag_assignments = scan_flag_assignments(toks, opt.case_begin, opt.case_end);
      map.options.push_back(std::move(opt));
    }
  }

  std::sort(map.options.begin(), map.options.end(),
            [](const GetoptOption& a, const GetoptOption& b) { return a.code < b.code; });
  if (map.options.empty()) {
    diag_warn(diags, "getopt dispatch found for '" + map.dispatch_variable +
                         "' but no option cases recognized");
  }
  return map;
}

int prune_option_cases(WorkingSource& src, const GetoptMap& map,
                       const std::vector<RemovedFlag>& removed_flags, FlagTable* flags,
                       RemovalLog* log, Diagnostics* diags) {
  const SourceAnalysis& a = src.current();

  std::set<int> case_positions;      // current-document positions to delete
  std::set<int> dispatch_positions;
  std::set<std::string> inference_candidates;
  int pruned = 0;

  for (const RemovedFlag& rf : removed_flags) {
    std::optional<int> code = rf.code;
    if (!code && rf.short_name) code = static_cast<int>(*rf.short_name);
    const GetoptOption* opt = code ? map.find_code(*code) : nullptr;
    if (!opt) {
      diag_warn(diags, "removed flag '" +
                           (rf.long_name.empty()
                                ? (rf.short_name ? std::string(1, *rf.short_name) : "?")
                                : rf.long_name) +
                           "' has no matching option case; skipped");
      continue;
    }
    ++pruned;
    for (int pos = opt->case_begin; pos <= opt->case_end; ++pos) case_positions.insert(pos);

    if (opt->dispatch_if >= 0) {
      auto plan = gt_detail::plan_if_removal(
          a, a.skeleton.ifs[static_cast<std::size_t>(opt->dispatch_if)], /*keep_then=*/false);
      if (plan) {
        for (int pos : plan->structure_positions) dispatch_positions.insert(pos);
        for (int pos : plan->pruned_positions) dispatch_positions.insert(pos);
      } else {
        diag_warn(diags, "dispatch jump for code " + std::to_string(opt->code) +
                             " shares lines with retained code; left in place");
      }
    }

    if (flags) {
      for (const auto& [name, set_value] : opt->flag_assignments) {
        (void)set_value;
        inference_candidates.insert(name);
      }
    }
  }

  // A flag set inside a deleted case keeps its pre-main resting value, but
  // only if no surviving assignment can move it somewhere else.
  if (flags) {
    std::set<int> all_deleted = case_positions;
    all_deleted.insert(dispatch_positions.begin(), dispatch_positions.end());
    for (const std::string& name : inference_candidates) {
      long resting = gt_detail::global_initializer(a, name).value_or(0);
      bool constant = true;
      for (std::size_t i = 0; i + 2 < a.tokens.size(); ++i) {
        const Token& t = a.tokens[i];
        if (t.kind != TokKind::Identifier || t.text != name) continue;
        if (a.tokens[i + 1].kind != TokKind::Punct || a.tokens[i + 1].text != "=") continue;
        if (all_deleted.count(t.line)) continue;
        if (!a.function_at(t.line)) continue;  // declaration initializer handled above
        std::optional<long> v = std::nullopt;
        if (a.tokens[i + 2].kind == TokKind::Number) v = parse_int(a.tokens[i + 2]);
        if (!v || *v != resting) {
          constant = false;
          break;
        }
      }
      if (constant) {
        flags->merge(name, resting, FlagTable::Provenance::InferredFromPrunedCase);
      } else {
        diag_warn(diags, "flag '" + name +
                             "' is still assigned outside the pruned cases; not inferred");
      }
    }
  }

  auto to_original = [&a](const std::set<int>& positions) {
    std::vector<int> out;
    out.reserve(positions.size());
    for (int pos : positions) out.push_back(a.doc.record(pos).index);
    return out;
  };
  std::vector<int> case_orig = to_original(case_positions);
  std::vector<int> dispatch_orig;
  for (int pos : dispatch_positions) {
    if (!case_positions.count(pos)) dispatch_orig.push_back(a.doc.record(pos).index);
  }
  src.remove_lines(case_orig, RemovalReason::PrunedCase, log);
  src.remove_lines(dispatch_orig, RemovalReason::PrunedCase, log);
  return pruned;
}

}  // namespace dbeval
