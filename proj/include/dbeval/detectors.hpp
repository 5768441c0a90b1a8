#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dbeval/align.hpp"
#include "dbeval/corpus.hpp"
#include "dbeval/gt_assist.hpp"
#include "dbeval/source_model.hpp"

namespace dbeval {

// Vocabulary for the error-handling and synchronization detectors. All
// identifier recognition is lexical, so retargeting a non-GNU corpus is a
// config change, not a code change.
struct DetectorConfig {
  std::set<std::string> error_fns;
  std::set<std::string> terminating_fns;  // calls that do not return
  std::vector<std::pair<std::string, std::string>> sync_pairs;         // lock/unlock
  std::vector<std::pair<std::string, std::string>> signal_wait_pairs;  // signal/wait
  std::set<std::string> enabled;  // issue groups: I1, I2, I4, I5, I6, I7

  static DetectorConfig defaults();
  bool issue_enabled(const std::string& group) const { return enabled.count(group) > 0; }
};

DetectorConfig load_detector_config(const std::filesystem::path& path);

enum class IssueClass { I1a, I1b, I1c, I1d, I2, I4, I5Env, I5Input, I6, I7 };

std::string issue_id(IssueClass c);      // "I1a", "I5-env", ...
std::string issue_group(IssueClass c);   // "I1".."I7"
std::string issue_group_title(const std::string& group);
const std::vector<std::string>& issue_groups();  // display order

enum class Confidence { High, Heuristic };

std::string confidence_name(Confidence c);

struct LineSpan {
  int begin = 0;
  int end = 0;
};

// One detected failure instance. Lines are original-anchored except for I7,
// which judges the variant in isolation.
struct Finding {
  IssueClass issue = IssueClass::I7;
  std::string function;  // empty = file scope
  std::vector<LineSpan> lines;
  std::string evidence;
  Confidence confidence = Confidence::High;
  enum class Anchor { Original, Variant } anchor = Anchor::Original;
};

// Pairing of a variant with the original it is compared against.
struct DiffInput {
  const SourceAnalysis* original = nullptr;
  const SourceAnalysis* variant = nullptr;
  const Alignment* alignment = nullptr;
};

std::vector<Finding> detect_branch_merge(const DiffInput& in);                      // I1a
std::vector<Finding> detect_forced_nesting(const DiffInput& in);                    // I1b
std::vector<Finding> detect_block_splits(const DiffInput& in);                      // I1c
std::vector<Finding> detect_guard_removal(const DiffInput& in,
                                          const DetectorConfig& config);            // I1d
std::vector<Finding> detect_residual_paths(const DiffInput& in, const DetectorConfig& config,
                                           const GetoptMap& getopt_map,
                                           const std::vector<RemovedFlag>& removed_flags,
                                           Diagnostics* diags = nullptr);           // I2
std::vector<Finding> detect_sync_removal(const DiffInput& in,
                                         const DetectorConfig& config);             // I4
std::vector<Finding> detect_error_handler_removal(const DiffInput& in,
                                                  const DetectorConfig& config);    // I5
std::vector<Finding> detect_uninitialized_use(const DiffInput& in);                 // I6
std::vector<Finding> detect_syntactic_breakage(const SourceAnalysis& variant);      // I7

void sort_findings(std::vector<Finding>* findings);

struct IssueReport {
  // tool -> findings, deterministically ordered
  std::map<std::string, std::vector<Finding>> findings_by_tool;
  // issue group -> tool -> fired
  std::map<std::string, std::map<std::string, bool>> matrix;
  std::vector<std::string> notes;  // per-detector warnings and isolated failures
};

// Runs every enabled detector for every variant; individual detector failures
// are isolated and recorded as notes.
IssueReport run_all(const DetectorConfig& config, const SourceAnalysis& original,
                    const GetoptMap& getopt_map, const std::vector<RemovedFlag>& removed_flags,
                    const std::map<std::string, DiffInput>& variants_by_tool);

}  // namespace dbeval
