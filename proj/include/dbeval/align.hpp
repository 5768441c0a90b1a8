#pragma once

#include <string>
#include <vector>

#include "dbeval/source_model.hpp"

namespace dbeval {

enum class Granularity { Loc, Func };

std::string granularity_name(Granularity g);
Granularity granularity_from_name(const std::string& name);

// A set of comparison units at one granularity: original line positions for
// Loc, canonical function names for Func. `foreign_count` counts variant
// lines/functions with no counterpart in the original; they stay out of the
// set arithmetic and are reported separately.
struct UnitSet {
  Granularity granularity = Granularity::Loc;
  std::vector<int> line_units;          // sorted, unique
  std::vector<std::string> name_units;  // sorted, unique
  long foreign_count = 0;

  std::size_t size() const {
    return granularity == Granularity::Loc ? line_units.size() : name_units.size();
  }
};

UnitSet make_line_unit_set(std::vector<int> lines, long foreign_count = 0);
UnitSet make_name_unit_set(std::vector<std::string> names, long foreign_count = 0);

// Line-level correspondence between a variant and the original it was derived
// from. Matched pairs have equal normalized content and original targets are
// strictly increasing in variant order.
struct Alignment {
  enum class Kind : unsigned char { NotUnit, Matched, Foreign };

  std::vector<Kind> kinds;       // per variant line position (1-based -> index 0)
  std::vector<int> to_original;  // variant position -> original position, 0 when none
  std::vector<int> to_variant;   // original position -> variant position, 0 when none
  long matched_count = 0;
  long foreign_count = 0;

  Kind kind(int variant_line) const { return kinds[static_cast<std::size_t>(variant_line - 1)]; }
  int original_of(int variant_line) const {
    return to_original[static_cast<std::size_t>(variant_line - 1)];
  }
  int variant_of(int original_line) const {
    return to_variant[static_cast<std::size_t>(original_line - 1)];
  }
  bool retained(int original_line) const { return variant_of(original_line) != 0; }
};

// Maximum-length common subsequence over the content keys of code and
// preprocessor lines. Among equal-length solutions the result matches the
// earliest original lines (and, within that, the earliest variant lines).
// Unmatched variant unit lines are Foreign.
Alignment align_to_original(const SourceDocument& original, const SourceDocument& variant);

// Projects a variant onto the original's unit space at granularity `g`.
UnitSet project_units(const SourceDocument& original, const SourceDocument& variant,
                      const Alignment& alignment, Granularity g,
                      const std::vector<std::string>& rules = default_strip_rules());

// The original program's own unit set (U_base).
UnitSet base_units(const SourceDocument& original, Granularity g,
                   const std::vector<std::string>& rules = default_strip_rules());

}  // namespace dbeval
