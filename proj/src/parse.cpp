#include "implic/parse.hpp"

#include <cctype>
#include <sstream>

namespace implic {

namespace {

// Single-line cursor with positions reported 1-based.
class Cursor {
 public:
  explicit Cursor(const std::string& text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  bool try_literal(const std::string& lit) {
    skip_ws();
    if (text_.compare(pos_, lit.size(), lit) == 0) {
      pos_ += lit.size();
      return true;
    }
    return false;
  }

  void expect(const std::string& lit) {
    if (!try_literal(lit)) fail("expected '" + lit + "'");
  }

  bool peek_is(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        ++pos_;
      } else {
        break;
      }
    }
    if (pos_ == start) fail("expected a variable name");
    return text_.substr(start, pos_ - start);
  }

  // "0" denotes the empty set unless it starts a longer identifier.
  bool try_empty_set() {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '0') {
      if (pos_ + 1 == text_.size() ||
          (!std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])) && text_[pos_ + 1] != '_')) {
        ++pos_;
        return true;
      }
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, pos_ + 1);
  }

  std::size_t position() const { return pos_ + 1; }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
};

Mask parse_set(Cursor& cur, const VarUniverse& u) {
  if (cur.try_empty_set()) return 0;
  Mask m = 0;
  while (true) {
    std::size_t at = cur.position();
    std::string name = cur.ident();
    auto idx = u.index_of(name);
    if (!idx) throw ParseError("unknown variable name '" + name + "'", at);
    m |= Mask(1) << *idx;
    if (!cur.try_literal(",")) break;
  }
  return m;
}

}  // namespace

Constraint parse_constraint(const std::string& text, const UniversePtr& universe) {
  const VarUniverse& u = *universe;
  Cursor cur(text);

  if (cur.try_literal("I(")) {
    Mask y = parse_set(cur, u);
    cur.expect(";");
    Mask z = parse_set(cur, u);
    Mask x = 0;
    if (cur.try_literal("|")) x = parse_set(cur, u);
    cur.expect(")");
    if (!cur.at_end()) cur.fail("trailing input after constraint");
    return Constraint::ci(VarSet(universe, y), VarSet(universe, z), VarSet(universe, x));
  }

  if (cur.try_literal("H(")) {
    Mask y = parse_set(cur, u);
    Mask x = 0;
    if (cur.try_literal("|")) x = parse_set(cur, u);
    cur.expect(")");
    if (!cur.at_end()) cur.fail("trailing input after constraint");
    return Constraint::conditional(VarSet(universe, x), VarSet(universe, y));
  }

  if (cur.try_literal("FD:")) {
    Mask x = parse_set(cur, u);
    cur.expect("->");
    Mask y = parse_set(cur, u);
    if (!cur.at_end()) cur.fail("trailing input after constraint");
    return Constraint::conditional(VarSet(universe, x), VarSet(universe, y));
  }

  if (cur.try_literal("MVD:")) {
    Mask x = parse_set(cur, u);
    cur.expect("->>");
    Mask y = parse_set(cur, u);
    bool explicit_z = false;
    Mask z = 0;
    if (cur.try_literal("|")) {
      explicit_z = true;
      z = parse_set(cur, u);
    } else {
      z = u.full_mask() & ~(x | y);
    }
    if (!cur.at_end()) cur.fail("trailing input after constraint");
    if (explicit_z && (x | y | z) != u.full_mask())
      cur.fail("MVD must mention every variable (X u Y u Z must cover the universe)");
    return Constraint::ci(VarSet(universe, y), VarSet(universe, z), VarSet(universe, x));
  }

  if (cur.try_literal("D:")) {
    std::vector<Mask> atoms;
    do {
      cur.expect("{");
      atoms.push_back(parse_set(cur, u));
      cur.expect("}");
    } while (cur.try_literal("+"));
    if (!cur.at_end()) cur.fail("trailing input after constraint");
    return Constraint::differential(universe, std::move(atoms));
  }

  cur.fail("expected a constraint (I/H/FD:/MVD:/D:)");
}

UniversePtr parse_universe_header(const std::string& line) {
  Cursor cur(line);
  cur.expect("vars:");
  std::vector<std::string> names;
  do {
    names.push_back(cur.ident());
  } while (cur.try_literal(","));
  if (!cur.at_end()) cur.fail("trailing input after header");
  return make_universe(std::move(names));
}

Implication parse_implication(const std::string& file_contents) {
  std::istringstream in(file_contents);
  std::string line;
  UniversePtr universe;
  std::vector<Constraint> sigma;
  std::vector<Constraint> tau;
  bool seen_arrow = false;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    Cursor probe(line);
    if (probe.at_end()) continue;

    if (!universe) {
      universe = parse_universe_header(line);
      continue;
    }
    Cursor arrow(line);
    if (arrow.try_literal("=>") && arrow.at_end()) {
      if (seen_arrow) throw ParseError("duplicate '=>' on line " + std::to_string(line_no), 1);
      seen_arrow = true;
      continue;
    }
    try {
      Constraint c = parse_constraint(line, universe);
      (seen_arrow ? tau : sigma).push_back(std::move(c));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), e.position());
    }
  }

  if (!universe) throw ParseError("missing 'vars:' header", 1);
  if (!seen_arrow) throw ParseError("missing '=>' line", 1);
  if (tau.size() != 1)
    throw ParseError("expected exactly one consequent after '=>', found " +
                         std::to_string(tau.size()),
                     1);
  return Implication(std::move(sigma), std::move(tau.front()));
}

}  // namespace implic
