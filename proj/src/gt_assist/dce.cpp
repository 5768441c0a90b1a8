#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "dbeval/gt_assist.hpp"

namespace dbeval {

std::string removal_reason_name(RemovalReason r) {
  switch (r) {
    case RemovalReason::PrunedBranch: return "pruned-branch";
    case RemovalReason::PrunedCase: return "pruned-case";
    case RemovalReason::DeadFunction: return "dead-function";
    case RemovalReason::FoldedConditional: return "folded-conditional";
  }
  return "unknown";
}

// --- WorkingSource -----------------------------------------------------------

WorkingSource::WorkingSource(SourceDocument original) : original_(std::move(original)) {
  alive_.assign(original_.raw_lines.size(), true);
}

const SourceAnalysis& WorkingSource::current() const {
  if (!current_) {
    SourceDocument doc;
    std::vector<int> orig_index;
    for (std::size_t i = 0; i < original_.raw_lines.size(); ++i) {
      if (!alive_[i]) continue;
      doc.raw_lines.push_back(original_.raw_lines[i]);
      orig_index.push_back(static_cast<int>(i) + 1);
    }
    doc = normalize(std::move(doc));
    for (std::size_t k = 0; k < doc.lines.size(); ++k) {
      doc.lines[k].index = orig_index[k];
    }
    current_ = analyze(std::move(doc));
  }
  return *current_;
}

std::size_t WorkingSource::alive_count() const {
  return static_cast<std::size_t>(std::count(alive_.begin(), alive_.end(), true));
}

void WorkingSource::remove_lines(const std::vector<int>& original_lines, RemovalReason reason,
                                 RemovalLog* log) {
  if (original_lines.empty()) return;
  std::vector<int> lines = original_lines;
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());

  for (int line : lines) {
    if (line < 1 || line > original_.line_count()) {
      throw InternalError("remove_lines: line " + std::to_string(line) + " out of range");
    }
    if (!alive_[static_cast<std::size_t>(line - 1)]) {
      throw InternalError("remove_lines: line " + std::to_string(line) + " removed twice");
    }
    alive_[static_cast<std::size_t>(line - 1)] = false;
  }
  current_.reset();

  if (!log) return;
  // One log entry per contiguous run.
  std::size_t start = 0;
  for (std::size_t i = 1; i <= lines.size(); ++i) {
    if (i == lines.size() || lines[i] != lines[i - 1] + 1) {
      RemovalEntry e;
      e.begin = lines[start];
      e.end = lines[i - 1];
      e.reason = reason;
      std::string snippet;
      for (int l = e.begin; l <= e.end; ++l) {
        snippet += original_.raw_lines[static_cast<std::size_t>(l - 1)];
        snippet += '\n';
      }
      e.snippet_key = content_hash(snippet);
      log->entries.push_back(e);
      start = i;
    }
  }
}

std::string WorkingSource::render_text() const {
  std::string out;
  for (std::size_t i = 0; i < original_.raw_lines.size(); ++i) {
    if (!alive_[i]) continue;
    out += original_.raw_lines[i];
    out += '\n';
  }
  return out;
}

SourceDocument replay_removal_log(const SourceDocument& original, const RemovalLog& log) {
  std::vector<bool> alive(original.raw_lines.size(), true);
  for (const auto& e : log.entries) {
    for (int l = e.begin; l <= e.end; ++l) {
      if (l < 1 || l > original.line_count()) {
        throw InputError("removal log cites line " + std::to_string(l) +
                         " outside the document");
      }
      alive[static_cast<std::size_t>(l - 1)] = false;
    }
  }
  SourceDocument doc;
  std::vector<int> orig_index;
  for (std::size_t i = 0; i < original.raw_lines.size(); ++i) {
    if (!alive[i]) continue;
    doc.raw_lines.push_back(original.raw_lines[i]);
    orig_index.push_back(static_cast<int>(i) + 1);
  }
  doc = normalize(std::move(doc));
  for (std::size_t k = 0; k < doc.lines.size(); ++k) {
    doc.lines[k].index = orig_index[k];
  }
  return doc;
}

// --- Dead function elimination -----------------------------------------------

namespace {

bool is_punct_tok(const Token& t, const char* text) {
  return t.kind == TokKind::Punct && t.text == text;
}

}  // namespace

int eliminate_dead_functions(WorkingSource& src, RemovalLog* log, Diagnostics* diags) {
  const SourceAnalysis& a = src.current();
  const auto& toks = a.tokens;
  const auto& funcs = a.functions;

  std::map<std::string, std::size_t> by_name;
  for (std::size_t i = 0; i < funcs.size(); ++i) by_name.emplace(funcs[i].name, i);

  if (!by_name.count("main")) {
    diag_warn(diags, "dead-function elimination skipped: no main function found");
    return 0;
  }

  // Label definition positions are not references.
  std::set<std::pair<int, std::string>> label_defs;
  for (const auto& l : a.skeleton.labels) label_defs.insert({l.line, l.name});

  // Build call edges (function body -> callee) and the set of names referenced
  // outside call position anywhere in the document.
  std::vector<std::set<std::size_t>> calls(funcs.size());
  std::set<std::size_t> address_taken;

  auto owner_of = [&funcs](std::size_t tok_index) -> int {
    for (std::size_t f = 0; f < funcs.size(); ++f) {
      if (tok_index > funcs[f].tok_body_begin && tok_index < funcs[f].tok_body_end) {
        return static_cast<int>(f);
      }
    }
    return -1;
  };

  for (std::size_t i = 0; i < toks.size(); ++i) {
    const Token& t = toks[i];
    if (t.kind != TokKind::Identifier) continue;
    auto it = by_name.find(t.text);
    if (it == by_name.end()) continue;
    if (i > 0 && (is_punct_tok(toks[i - 1], ".") || is_punct_tok(toks[i - 1], "->"))) continue;
    if (i > 0 && toks[i - 1].kind == TokKind::Identifier && toks[i - 1].text == "goto") continue;
    if (label_defs.count({t.line, t.text})) continue;

    int owner = owner_of(i);
    bool call_position = i + 1 < toks.size() && is_punct_tok(toks[i + 1], "(");
    if (owner >= 0 && static_cast<std::size_t>(owner) == it->second &&
        i == funcs[it->second].tok_name) {
      continue;  // the definition's own declarator
    }
    if (call_position) {
      if (owner >= 0) calls[static_cast<std::size_t>(owner)].insert(it->second);
      // call-like references at file scope are prototypes, not references
    } else {
      address_taken.insert(it->second);
    }
  }

  // Reachability from main plus everything address-taken.
  std::vector<bool> reachable(funcs.size(), false);
  std::queue<std::size_t> work;
  auto enqueue = [&](std::size_t f) {
    if (!reachable[f]) {
      reachable[f] = true;
      work.push(f);
    }
  };
  enqueue(by_name.at("main"));
  for (std::size_t f : address_taken) enqueue(f);
  while (!work.empty()) {
    std::size_t f = work.front();
    work.pop();
    for (std::size_t callee : calls[f]) enqueue(callee);
  }

  int removed = 0;
  std::vector<std::vector<int>> batches;
  for (std::size_t f = 0; f < funcs.size(); ++f) {
    if (reachable[f]) continue;
    const FunctionDef& fn = funcs[f];
    // Boundary lines must not carry tokens from neighboring declarations.
    bool clean = true;
    for (std::size_t i = 0; i < toks.size(); ++i) {
      bool inside = i >= fn.tok_decl_begin && i <= fn.tok_body_end;
      if (!inside && toks[i].line >= fn.span_begin && toks[i].line <= fn.span_end) {
        clean = false;
        break;
      }
    }
    if (!clean) {
      diag_warn(diags, "dead function '" + fn.name + "' shares lines with other code; kept");
      continue;
    }
    std::vector<int> orig_lines;
    for (int pos = fn.span_begin; pos <= fn.span_end; ++pos) {
      orig_lines.push_back(a.doc.record(pos).index);
    }
    batches.push_back(std::move(orig_lines));
    ++removed;
    diag_info(diags, "removed unreachable function '" + fn.name + "'");
  }
  for (auto& b : batches) src.remove_lines(b, RemovalReason::DeadFunction, log);
  return removed;
}

}  // namespace dbeval
