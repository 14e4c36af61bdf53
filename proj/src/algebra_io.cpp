#include "rlie/algebra_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace rlie {

namespace {

using Json = nlohmann::json;

std::size_t lookup(const std::map<std::string, std::size_t>& index, const std::string& name, const std::string& where) {
  const auto it = index.find(name);
  if (it == index.end()) {
    throw NameError("undeclared name '" + name + "' in " + where);
  }
  return it->second;
}

LieElement parse_combination(const Json& j, const PrimeField& field, const std::map<std::string, std::size_t>& index,
                             const std::string& where) {
  if (!j.is_object()) {
    throw ParseError(where + " must be an object mapping names to integers");
  }
  LieElement out(field, index.size());
  for (const auto& [name, value] : j.items()) {
    const std::size_t k = lookup(index, name, where);
    if (!value.is_number_integer()) {
      throw ParseError("coefficient of '" + name + "' in " + where + " is not an integer");
    }
    out.set(k, value.get<std::int64_t>());
  }
  return out;
}

}  // namespace

RestrictedLieAlgebra parse_algebra(const std::string& json_text) {
  Json root;
  try {
    root = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) {
    throw ParseError("algebra file must be a JSON object");
  }
  for (const auto& [key, value] : root.items()) {
    if (key != "p" && key != "basis" && key != "brackets" && key != "pmap") {
      throw ParseError("unknown field '" + key + "'");
    }
  }
  if (!root.contains("p") || !root["p"].is_number_integer()) {
    throw ParseError("field 'p' must be an integer");
  }
  const auto p = root["p"].get<std::int64_t>();
  if (p < 2 || p >= (std::int64_t{1} << 31) || !is_prime(static_cast<std::uint64_t>(p))) {
    throw ModulusError("p = " + std::to_string(p) + " is not a prime below 2^31");
  }
  const PrimeField field(static_cast<std::uint64_t>(p));

  if (!root.contains("basis") || !root["basis"].is_array() || root["basis"].empty()) {
    throw ParseError("field 'basis' must be a non-empty array of names");
  }
  std::vector<std::string> names;
  std::map<std::string, std::size_t> index;
  for (const auto& item : root["basis"]) {
    if (!item.is_string() || item.get<std::string>().empty()) {
      throw ParseError("basis names must be non-empty strings");
    }
    const auto name = item.get<std::string>();
    if (name.find(',') != std::string::npos) {
      throw ParseError("basis name '" + name + "' contains a comma");
    }
    if (!index.emplace(name, names.size()).second) {
      throw NameError("basis name '" + name + "' is declared twice");
    }
    names.push_back(name);
  }

  RestrictedLieAlgebra::BracketTable brackets;
  if (root.contains("brackets")) {
    if (!root["brackets"].is_object()) {
      throw ParseError("field 'brackets' must be an object");
    }
    for (const auto& [key, value] : root["brackets"].items()) {
      const auto comma = key.find(',');
      if (comma == std::string::npos) {
        throw ParseError("bracket key '" + key + "' is not of the form \"a,b\"");
      }
      const std::string where = "bracket \"" + key + "\"";
      const std::size_t i = lookup(index, key.substr(0, comma), where);
      const std::size_t j = lookup(index, key.substr(comma + 1), where);
      if (i >= j) {
        throw ParseError("bracket key '" + key + "' must list two distinct names in basis order");
      }
      brackets.emplace(std::pair{i, j}, parse_combination(value, field, index, where));
    }
  }

  std::vector<LieElement> pmap(names.size(), LieElement(field, names.size()));
  if (root.contains("pmap")) {
    if (!root["pmap"].is_object()) {
      throw ParseError("field 'pmap' must be an object");
    }
    for (const auto& [key, value] : root["pmap"].items()) {
      const std::string where = "pmap row \"" + key + "\"";
      pmap[lookup(index, key, where)] = parse_combination(value, field, index, where);
    }
  }
  return RestrictedLieAlgebra(field, std::move(names), brackets, std::move(pmap));
}

RestrictedLieAlgebra parse_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot read '" + path + "'");
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_algebra(text.str());
}

std::string algebra_to_json(const RestrictedLieAlgebra& lie) {
  auto combination = [&](const LieElement& x) {
    nlohmann::ordered_json out = nlohmann::ordered_json::object();
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (x[k] != 0) {
        out[lie.names()[k]] = x[k];
      }
    }
    return out;
  };
  nlohmann::ordered_json root;
  root["p"] = lie.characteristic();
  root["basis"] = lie.names();
  root["brackets"] = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < lie.dim(); ++i) {
    for (std::size_t j = i + 1; j < lie.dim(); ++j) {
      const LieElement c = lie.structure(i, j);
      if (!c.is_zero()) {
        root["brackets"][lie.names()[i] + "," + lie.names()[j]] = combination(c);
      }
    }
  }
  root["pmap"] = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < lie.dim(); ++i) {
    if (!lie.pmap_row(i).is_zero()) {
      root["pmap"][lie.names()[i]] = combination(lie.pmap_row(i));
    }
  }
  return root.dump(2) + "\n";
}

}  // namespace rlie
