#pragma once

#include <optional>
#include <vector>

#include "dbeval/gt_assist.hpp"

namespace dbeval::gt_detail {

// Whole-line deletion plan for one if statement, split into the statement's
// structural lines (header, braces, else) and the discarded branch body.
// Positions refer to the analyzed (current) document. Empty when the
// statement shares lines with retained code.
struct IfRemoval {
  std::vector<int> structure_positions;
  std::vector<int> pruned_positions;
};

std::optional<IfRemoval> plan_if_removal(const SourceAnalysis& analysis, const IfStmt& st,
                                         bool keep_then);

// File-scope initializer of a global, when it is a plain integer literal;
// 0 when the declaration has no initializer. nullopt when the name is not
// declared at file scope.
std::optional<long> global_initializer(const SourceAnalysis& analysis, const std::string& name);

}  // namespace dbeval::gt_detail
