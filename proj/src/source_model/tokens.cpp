#include <cctype>

#include "dbeval/source_model.hpp"

namespace dbeval {

namespace {

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Multi-character operators the structural passes care about. Longest first.
const char* kTwoCharOps[] = {"->", "==", "!=", "<=", ">=", "&&", "||", "<<", ">>",
                             "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "++", "--"};

}  // namespace

std::vector<Token> lex_document(const SourceDocument& doc) {
  std::vector<Token> toks;
  for (int pos = 1; pos <= doc.line_count(); ++pos) {
    const LineRecord& rec = doc.record(pos);
    if (rec.cls != LineClass::Code) continue;
    const std::string& s = rec.normalized;
    std::size_t i = 0;
    while (i < s.size()) {
      char c = s[i];
      if (c == ' ') {
        ++i;
        continue;
      }
      Token t;
      t.line = pos;
      t.col = static_cast<int>(i);
      if (ident_start(c)) {
        std::size_t j = i;
        while (j < s.size() && ident_char(s[j])) ++j;
        t.kind = TokKind::Identifier;
        t.text = s.substr(i, j - i);
        i = j;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = i;
        while (j < s.size() && (ident_char(s[j]) || s[j] == '.')) ++j;
        t.kind = TokKind::Number;
        t.text = s.substr(i, j - i);
        i = j;
      } else if (c == '"' || c == '\'') {
        char quote = c;
        std::size_t j = i + 1;
        while (j < s.size()) {
          if (s[j] == '\\' && j + 1 < s.size()) {
            j += 2;
            continue;
          }
          if (s[j] == quote) {
            ++j;
            break;
          }
          ++j;
        }
        t.kind = quote == '"' ? TokKind::String : TokKind::CharLit;
        t.text = s.substr(i, j - i);
        i = j;
      } else {
        t.kind = TokKind::Punct;
        t.text = std::string(1, c);
        if (i + 1 < s.size()) {
          for (const char* op : kTwoCharOps) {
            if (c == op[0] && s[i + 1] == op[1]) {
              t.text = op;
              break;
            }
          }
        }
        i += t.text.size();
      }
      toks.push_back(std::move(t));
    }
  }
  return toks;
}

}  // namespace dbeval
