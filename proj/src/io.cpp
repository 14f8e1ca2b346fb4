#include "implic/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "implic/parse.hpp"

namespace implic {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::string& text) {
  CsvTable t;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    // keep '#weight' / '#prob' header tokens; only strip comments that
    // start a line or follow whitespace
    if (hash != std::string::npos && (hash == 0 || std::isspace(static_cast<unsigned char>(
                                                       line[hash - 1])))) {
      bool header_token = line.compare(hash, 7, "#weight") == 0 ||
                          line.compare(hash, 5, "#prob") == 0;
      if (!header_token) line.resize(hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (t.header.empty())
      t.header = fields;
    else
      t.rows.push_back(fields);
  }
  if (t.header.empty()) throw std::invalid_argument("CSV file has no header row");
  return t;
}

UniversePtr universe_from_header(const std::vector<std::string>& names,
                                 const UniversePtr& given) {
  if (!given) return make_universe(names);
  if (names != given->names())
    throw std::invalid_argument("CSV attributes do not match the expected universe");
  return given;
}

}  // namespace

Relation read_relation_csv(const std::string& text, const UniversePtr& universe) {
  CsvTable t = read_csv(text);
  int weight_col = -1;
  std::vector<std::string> attrs;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (t.header[i] == "#weight") {
      weight_col = static_cast<int>(i);
    } else {
      attrs.push_back(t.header[i]);
    }
  }
  UniversePtr u = universe_from_header(attrs, universe);

  std::vector<std::vector<std::string>> rows;
  std::vector<std::uint64_t> weights;
  for (const auto& fields : t.rows) {
    if (fields.size() != t.header.size())
      throw std::invalid_argument("CSV row has wrong arity");
    std::vector<std::string> row;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (static_cast<int>(i) == weight_col) continue;
      row.push_back(fields[i]);
    }
    rows.push_back(std::move(row));
    if (weight_col >= 0) {
      long w = std::stol(fields[static_cast<std::size_t>(weight_col)]);
      if (w <= 0) throw std::invalid_argument("weights must be positive integers");
      weights.push_back(static_cast<std::uint64_t>(w));
    }
  }
  return Relation(u, std::move(rows), std::move(weights));
}

Distribution read_distribution_csv(const std::string& text, const UniversePtr& universe) {
  CsvTable t = read_csv(text);
  int prob_col = -1;
  std::vector<std::string> attrs;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (t.header[i] == "#prob") {
      prob_col = static_cast<int>(i);
    } else {
      attrs.push_back(t.header[i]);
    }
  }
  if (prob_col < 0) throw std::invalid_argument("distribution CSV needs a #prob column");
  UniversePtr u = universe_from_header(attrs, universe);

  std::vector<std::pair<std::vector<std::string>, double>> outcomes;
  for (const auto& fields : t.rows) {
    if (fields.size() != t.header.size())
      throw std::invalid_argument("CSV row has wrong arity");
    std::vector<std::string> row;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (static_cast<int>(i) == prob_col) continue;
      row.push_back(fields[i]);
    }
    outcomes.emplace_back(std::move(row), std::stod(fields[static_cast<std::size_t>(prob_col)]));
  }
  return Distribution(u, std::move(outcomes));
}

BasketSet read_baskets(const std::string& text, const UniversePtr& universe) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<std::string>> lines;
  std::vector<std::string> names;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream items(line);
    std::vector<std::string> basket;
    std::string item;
    while (items >> item) {
      basket.push_back(item);
      if (!universe && std::find(names.begin(), names.end(), item) == names.end())
        names.push_back(item);
    }
    if (!basket.empty()) lines.push_back(std::move(basket));
  }
  UniversePtr u = universe ? universe : make_universe(names);
  std::vector<Mask> baskets;
  for (const auto& basket : lines) {
    Mask m = 0;
    for (const auto& item : basket) {
      auto idx = u->index_of(item);
      if (!idx) throw std::invalid_argument("unknown item name: " + item);
      m |= Mask(1) << *idx;
    }
    baskets.push_back(m);
  }
  return BasketSet(u, std::move(baskets));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

Json to_json(const Certificate& cert) {
  Json j;
  j["vars"] = cert.universe->names();
  Json ants = Json::object();
  for (const auto& [c, coeff] : cert.antecedent_coeffs)
    ants[to_string(c)] = to_string(coeff);
  j["antecedents"] = std::move(ants);
  Json els = Json::object();
  for (const auto& [e, coeff] : cert.elemental_coeffs)
    els[e.to_string(*cert.universe)] = to_string(coeff);
  j["elemental"] = std::move(els);
  return j;
}

Json to_json(const SetFunctionQ& h) {
  Json j = Json::object();
  for (Mask w = 0; w < h.universe()->subset_count(); ++w)
    j[mask_to_string(*h.universe(), w)] = to_string(h(w));
  return j;
}

Json to_json(const SetFunctionD& h) {
  Json j = Json::object();
  for (Mask w = 0; w < h.universe()->subset_count(); ++w)
    j[mask_to_string(*h.universe(), w)] = h(w);
  return j;
}

Json to_json(const DerivationStep& step) {
  Json j;
  j["rule"] = DerivationStep::rule_name(step.rule);
  j["note"] = step.note;
  if (step.selected) j["selected"] = to_string(*step.selected);
  return j;
}

Json to_json(const RelaxationResult& result) {
  Json j;
  j["certificate"] = to_json(result.certificate);
  j["bound_claimed"] = to_string(result.bound_claimed);
  Json steps = Json::array();
  for (const auto& s : result.derivation) steps.push_back(to_json(s));
  j["derivation"] = std::move(steps);
  return j;
}

namespace {

ElementalInequality elemental_from_string(const std::string& key, const UniversePtr& u) {
  auto fail = [&]() -> ElementalInequality {
    throw std::invalid_argument("bad elemental key: " + key);
  };
  auto var_index = [&](const std::string& name) {
    auto idx = u->index_of(name);
    if (!idx) throw std::invalid_argument("unknown variable in elemental key: " + name);
    return *idx;
  };
  if (key.rfind("mono(", 0) == 0 && key.back() == ')') {
    return {ElementalInequality::Kind::Monotonicity, var_index(key.substr(5, key.size() - 6)),
            0, 0};
  }
  if (key.rfind("sub(", 0) == 0 && key.back() == ')') {
    std::string body = key.substr(4, key.size() - 5);
    auto bar = body.find('|');
    if (bar == std::string::npos) return fail();
    std::string pair = body.substr(0, bar), cond = body.substr(bar + 1);
    auto comma = pair.find(',');
    if (comma == std::string::npos) return fail();
    int i = var_index(pair.substr(0, comma));
    int j = var_index(pair.substr(comma + 1));
    Mask k = 0;
    if (cond != "0") {
      std::istringstream in(cond);
      std::string name;
      while (std::getline(in, name, ',')) k |= Mask(1) << var_index(trim(name));
    }
    return {ElementalInequality::Kind::Submodularity, std::min(i, j), std::max(i, j), k};
  }
  return fail();
}

}  // namespace

Certificate certificate_from_json(const Json& j, const UniversePtr& universe) {
  Certificate cert;
  cert.universe = universe;
  for (const auto& [key, value] : j.at("antecedents").items())
    cert.antecedent_coeffs.emplace_back(parse_constraint(key, universe),
                                        rational_from_string(value.get<std::string>()));
  for (const auto& [key, value] : j.at("elemental").items())
    cert.elemental_coeffs.emplace_back(elemental_from_string(key, universe),
                                       rational_from_string(value.get<std::string>()));
  return cert;
}

}  // namespace implic
