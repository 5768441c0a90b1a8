#include <fstream>
#include <sstream>

#include "dbeval/corpus.hpp"

namespace dbeval {

SourceDocument ingest_source(const std::filesystem::path& path, Diagnostics* diags) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read source file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return document_from_text(buf.str(), diags);
}

UnitSet ingest_symbol_list(const std::filesystem::path& path, Diagnostics* diags,
                           const std::vector<std::string>& rules) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read symbol list '" + path.string() + "'");
  std::vector<std::string> names;
  std::string line;
  while (std::getline(in, line)) {
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    std::size_t last = line.find_last_not_of(" \t\r");
    std::string sym = line.substr(first, last - first + 1);
    if (sym.empty() || sym[0] == '#') continue;
    names.push_back(canonical_function_name(sym, rules));
  }
  if (names.empty()) {
    diag_warn(diags, "symbol list '" + path.string() + "' is effectively empty");
  }
  return make_name_unit_set(std::move(names));
}

}  // namespace dbeval
