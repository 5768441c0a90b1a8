#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dbeval/corpus.hpp"
#include "dbeval/source_model.hpp"

namespace dbeval {

// Global flags with statically known integer values. Keys may be member
// paths exactly as written in guards (`verbose`, `x->verbose`).
struct FlagTable {
  enum class Provenance { UserSupplied, InferredFromPrunedCase };

  struct Entry {
    long value = 0;
    Provenance provenance = Provenance::UserSupplied;
  };

  std::map<std::string, Entry> entries;

  bool has(const std::string& key) const { return entries.count(key) > 0; }
  std::optional<long> lookup(const std::string& key) const {
    auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    return it->second.value;
  }
  // User-supplied values win over inferred ones.
  void merge(const std::string& key, long value, Provenance provenance);
};

FlagTable load_flag_table(const std::filesystem::path& path);

// One recognized command-line option: its dispatch value, the case block
// handling it, and the flag assignments inside that block.
struct GetoptOption {
  int code = 0;
  std::optional<char> short_name;
  std::optional<std::string> long_name;
  int case_begin = 0;  // document positions, inclusive
  int case_end = 0;
  std::vector<int> dispatch_lines;          // comparison/jump lines outside the case
  int dispatch_if = -1;                     // IfStmt index for CIL-style chains
  std::vector<std::pair<std::string, long>> flag_assignments;
};

struct GetoptMap {
  std::string dispatch_variable;
  std::vector<GetoptOption> options;

  const GetoptOption* find_code(int code) const {
    for (const auto& o : options) {
      if (o.code == code) return &o;
    }
    return nullptr;
  }
};

// Recognizes `optc = getopt_long(...)` followed by either a switch on the
// result or a CIL-style chain of `if (optc == N) goto case_N;` jumps.
GetoptMap build_getopt_map(const SourceAnalysis& src, Diagnostics* diags = nullptr);

// --- Removal logging ---------------------------------------------------------

enum class RemovalReason { PrunedBranch, PrunedCase, DeadFunction, FoldedConditional };

std::string removal_reason_name(RemovalReason r);

struct RemovalEntry {
  int begin = 0;  // inclusive original line numbers
  int end = 0;
  RemovalReason reason = RemovalReason::PrunedBranch;
  std::uint64_t snippet_key = 0;  // hash of the removed text
};

struct RemovalLog {
  std::vector<RemovalEntry> entries;
};

// Applies the log to the document it was recorded against.
SourceDocument replay_removal_log(const SourceDocument& original, const RemovalLog& log);

// --- Working copy ------------------------------------------------------------

// A document being reduced by whole-line deletion. Retained lines keep their
// original line numbers so the output still aligns against the input.
class WorkingSource {
 public:
  explicit WorkingSource(SourceDocument original);

  const SourceDocument& original() const { return original_; }
  const SourceAnalysis& current() const;
  bool alive(int original_line) const {
    return alive_[static_cast<std::size_t>(original_line - 1)];
  }
  std::size_t alive_count() const;

  // `original_lines` are 1-based line numbers of the underlying original.
  void remove_lines(const std::vector<int>& original_lines, RemovalReason reason,
                    RemovalLog* log);

  std::string render_text() const;

 private:
  SourceDocument original_;
  std::vector<bool> alive_;
  mutable std::optional<SourceAnalysis> current_;
};

// --- Transformations ---------------------------------------------------------

struct FoldStats {
  int folded_true = 0;
  int folded_false = 0;
  int skipped_shared_lines = 0;  // statements not owning whole lines
};

// Evaluates if/else guards decidable from the flag table; removes false
// branches, splices true branches in place. Undecidable guards are untouched.
FoldStats fold_conditionals(WorkingSource& src, const FlagTable& flags, RemovalLog* log,
                            Diagnostics* diags = nullptr);

// Reachability from main over the lexical call graph; a function whose name
// appears anywhere as a non-call identifier is conservatively retained.
int eliminate_dead_functions(WorkingSource& src, RemovalLog* log, Diagnostics* diags = nullptr);

// Deletes the case blocks and dispatch jumps of the removed flags; flag
// assignments inside deleted cases are recorded with their pre-main
// initializer values (default 0).
int prune_option_cases(WorkingSource& src, const GetoptMap& map,
                       const std::vector<RemovedFlag>& removed_flags, FlagTable* flags,
                       RemovalLog* log, Diagnostics* diags = nullptr);

struct PipelineResult {
  SourceDocument reduced;  // line indices point at the original
  RemovalLog log;
  FlagTable flags;
  int rounds_with_changes = 0;
  int rounds_run = 0;
};

// prune once, then (fold + dead-function elimination) to a fixpoint. The
// output is checked for syntax integrity after every round.
PipelineResult assist_pipeline(const SourceDocument& original,
                               const std::vector<RemovedFlag>& removed_flags,
                               const FlagTable& user_flags, int max_rounds = 10,
                               Diagnostics* diags = nullptr);

// Guard evaluation exposed for the residual-path detector: evaluates the
// token range under the table; nullopt when not decidable.
std::optional<long> evaluate_guard(const std::vector<Token>& toks, std::size_t begin,
                                   std::size_t end, const FlagTable& flags);

}  // namespace dbeval
